import logging
import re
from typing import Any, List, Optional, Tuple

import yaml

from docdrift.exceptions import DuplicateStepId, InvalidRunbook, RunbookSyntaxError, UndeclaredPlaceholder
from docdrift.models.dita import CommandText
from docdrift.models.runbook import Expectation, RunbookSpec, RunbookStep, TopicMeta, Variable, Violation
from docdrift.utils.placeholders import is_placeholder_name, normalize_text

logger = logging.getLogger(__name__)

TOP_LEVEL_KEYS = {'name', 'topic', 'variables', 'steps'}
STEP_KEYS = {'id', 'prose', 'command', 'expect'}
EXPECT_KEYS = {'exit_status', 'output_contains', 'output_regex'}


class RunbookService:
    """Service for reading and validating runbook specifications"""

    @staticmethod
    def parse_runbook(text: str) -> RunbookSpec:
        """
        Parse and validate a runbook file

        Args:
            text: Runbook YAML (see docs/runbook-format.md)

        Returns:
            A RunbookSpec that satisfies every validation rule

        Raises:
            RunbookSyntaxError: Not YAML, or not shaped like a runbook
            UndeclaredPlaceholder: A command uses a placeholder missing from variables
            DuplicateStepId: Two steps share an id
            InvalidRunbook: Any other rule is broken
        """
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise RunbookSyntaxError([f'not valid YAML: {exc}']) from exc

        problems: List[str] = []
        spec = RunbookService._build_spec(data, problems)
        if problems:
            raise RunbookSyntaxError(problems)

        violations = RunbookService.validate_runbook(spec)
        if violations:
            first = violations[0].rule
            if first == 'UndeclaredPlaceholder':
                raise UndeclaredPlaceholder(violations)
            if first == 'DuplicateStepId':
                raise DuplicateStepId(violations)
            raise InvalidRunbook(violations)

        logger.debug('parsed runbook %s with %d steps', spec.name, len(spec.steps))
        return spec

    @staticmethod
    def validate_runbook(spec: RunbookSpec) -> List[Violation]:
        """
        Check every runbook rule

        Args:
            spec: Runbook to check

        Returns:
            Violations in rule order; empty when the runbook is valid
        """
        violations: List[Violation] = []

        if not spec.topic_meta.topic_id.strip():
            violations.append(Violation('EmptyTopicId', 'topic id must not be empty'))

        for variable in spec.variables:
            if not is_placeholder_name(variable.name):
                violations.append(Violation(
                    'InvalidVariableName',
                    f'{variable.name!r} does not match <[a-z][a-z0-9_]*>',
                    names=(variable.name,),
                ))

        declared = set(spec.declared_names)
        seen = set()
        for step in spec.steps:
            if not step.id.strip():
                violations.append(Violation('EmptyStepId', 'step id must not be empty', step_id=step.id))
            elif step.id in seen:
                violations.append(Violation('DuplicateStepId', 'step id is used more than once', step_id=step.id))
            seen.add(step.id)

            undeclared = tuple(n for n in step.command_template.placeholder_names if n not in declared)
            if undeclared:
                violations.append(Violation(
                    'UndeclaredPlaceholder',
                    'placeholders not declared in variables: ' + ', '.join(undeclared),
                    step_id=step.id,
                    names=undeclared,
                ))

            if step.expectation.output_regex is not None:
                try:
                    re.compile(step.expectation.output_regex)
                except re.error as exc:
                    violations.append(Violation(
                        'InvalidPattern', f'output_regex does not compile: {exc}', step_id=step.id,
                    ))

        return violations

    @staticmethod
    def slugify(name: str) -> str:
        slug = re.sub(r'[^a-z0-9]+', '-', name.lower()).strip('-')
        return slug or 'topic'

    @staticmethod
    def _build_spec(data: Any, problems: List[str]) -> RunbookSpec:
        if data is None:
            problems.append('runbook is empty')
            data = {}
        if not isinstance(data, dict):
            problems.append('runbook must be a mapping with keys name, topic, variables, steps')
            data = {}

        unknown = sorted(set(map(str, data)) - TOP_LEVEL_KEYS)
        if unknown:
            problems.append('unknown top-level keys: ' + ', '.join(unknown))

        name = data.get('name')
        if not isinstance(name, str) or not name.strip():
            problems.append('"name" must be a non-empty string')
            name = ''

        topic_meta = RunbookService._build_topic(data.get('topic'), name, problems)
        variables = RunbookService._build_variables(data.get('variables'), problems)

        raw_steps = data.get('steps') or []
        steps: List[RunbookStep] = []
        if not isinstance(raw_steps, list):
            problems.append('"steps" must be a list')
            raw_steps = []
        for number, raw in enumerate(raw_steps, start=1):
            step = RunbookService._build_step(raw, number, problems)
            if step is not None:
                steps.append(step)

        return RunbookSpec(
            name=name.strip(),
            topic_meta=topic_meta,
            steps=tuple(steps),
            variables=tuple(variables),
        )

    @staticmethod
    def _build_topic(raw: Any, name: str, problems: List[str]) -> TopicMeta:
        if raw is None:
            raw = {}
        if not isinstance(raw, dict):
            problems.append('"topic" must be a mapping')
            raw = {}

        topic_id = raw.get('id', RunbookService.slugify(name))
        title = raw.get('title', name)
        short_desc = raw.get('shortdesc', raw.get('short_desc'))
        for key, value in (('id', topic_id), ('title', title)):
            if not isinstance(value, str):
                problems.append(f'topic.{key} must be a string')
        if short_desc is not None and not isinstance(short_desc, str):
            problems.append('topic.shortdesc must be a string')
            short_desc = None

        return TopicMeta(
            topic_id=str(topic_id).strip(),
            title=normalize_text(str(title)),
            short_desc=normalize_text(short_desc) if short_desc is not None else None,
        )

    @staticmethod
    def _build_variables(raw: Any, problems: List[str]) -> List[Variable]:
        if raw is None:
            return []

        pairs: List[Tuple[Any, Any]] = []
        if isinstance(raw, dict):
            pairs = list(raw.items())
        elif isinstance(raw, list):
            for item in raw:
                if isinstance(item, dict) and 'name' in item:
                    pairs.append((item['name'], item.get('default')))
                elif isinstance(item, str):
                    pairs.append((item, None))
                else:
                    problems.append(f'cannot read variable declaration {item!r}')
        else:
            problems.append('"variables" must be a mapping or a list')

        variables = []
        for name, default in pairs:
            if default is not None and not isinstance(default, (str, int, float)):
                problems.append(f'default for variable {name!r} must be a scalar')
                default = None
            variables.append(Variable(
                name=str(name),
                default=str(default) if default is not None else None,
            ))
        return variables

    @staticmethod
    def _build_step(raw: Any, number: int, problems: List[str]) -> Optional[RunbookStep]:
        where = f'step {number}'
        if not isinstance(raw, dict):
            problems.append(f'{where} must be a mapping')
            return None

        unknown = sorted(set(map(str, raw)) - STEP_KEYS)
        if unknown:
            problems.append(f'{where}: unknown keys ' + ', '.join(unknown))

        step_id = raw.get('id')
        if step_id is None or isinstance(step_id, (dict, list)):
            problems.append(f'{where}: "id" is required')
            return None

        command = raw.get('command')
        if not isinstance(command, str):
            problems.append(f'{where}: "command" must be a string')
            return None

        prose = raw.get('prose') or ''
        if not isinstance(prose, str):
            problems.append(f'{where}: "prose" must be a string')
            prose = ''

        return RunbookStep(
            id=str(step_id),
            prose=normalize_text(prose),
            command_template=CommandText(command),
            expectation=RunbookService._build_expectation(raw.get('expect'), where, problems),
        )

    @staticmethod
    def _build_expectation(raw: Any, where: str, problems: List[str]) -> Expectation:
        if raw is None:
            return Expectation()
        if not isinstance(raw, dict):
            problems.append(f'{where}: "expect" must be a mapping')
            return Expectation()

        unknown = sorted(set(map(str, raw)) - EXPECT_KEYS)
        if unknown:
            problems.append(f'{where}: unknown expect keys ' + ', '.join(unknown))

        exit_status = raw.get('exit_status', 0)
        if isinstance(exit_status, bool) or not isinstance(exit_status, int):
            problems.append(f'{where}: expect.exit_status must be an integer')
            exit_status = 0

        contains = raw.get('output_contains') or []
        if isinstance(contains, str):
            contains = [contains]
        if not isinstance(contains, list) or not all(isinstance(c, str) for c in contains):
            problems.append(f'{where}: expect.output_contains must be a string or a list of strings')
            contains = []

        regex = raw.get('output_regex')
        if regex is not None and not isinstance(regex, str):
            problems.append(f'{where}: expect.output_regex must be a string')
            regex = None

        return Expectation(exit_status=exit_status, output_contains=tuple(contains), output_regex=regex)
