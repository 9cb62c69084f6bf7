import logging
import shlex
from typing import Dict, List, Sequence

from docdrift.exceptions import InvalidSpec
from docdrift.models.dita import CommandText, DitaTopic, TopicStep
from docdrift.models.drift import DriftEntry, DriftKind, DriftReport
from docdrift.models.runbook import RunbookSpec
from docdrift.models.taxonomy import (
    ERRONEOUS_CODE_EXAMPLES,
    MISSING_DOC_NEW_FEATURE,
    OTHER_UP_TO_DATENESS,
    OUTDATED_EXAMPLE,
)
from docdrift.services.runbook_service import RunbookService
from docdrift.utils.placeholders import substitute_placeholders

logger = logging.getLogger(__name__)


class DocGenService:
    """Service that generates documentation from a runbook and checks docs against it"""

    @staticmethod
    def generate_topics(spec: RunbookSpec, include_examples: bool = False) -> List[DitaTopic]:
        """
        Generate the DITA topics for a runbook

        Args:
            spec: A valid runbook
            include_examples: Append an example command, rendered with the declared
                default values, to the prose of steps whose placeholders all have defaults

        Returns:
            One task topic; each runbook step becomes one topic step whose only
            code block is the step's command template verbatim

        Raises:
            InvalidSpec: The runbook breaks a validation rule
        """
        violations = RunbookService.validate_runbook(spec)
        if violations:
            raise InvalidSpec(violations)

        defaults = spec.defaults
        steps = []
        for step in spec.steps:
            prose = step.prose
            if include_examples:
                prose = DocGenService._with_example(prose, step.command_template, defaults)
            steps.append(TopicStep(prose=prose, code_blocks=(step.command_template,)))

        topic = DitaTopic(
            id=spec.topic_meta.topic_id,
            title=spec.topic_meta.title,
            short_desc=spec.topic_meta.short_desc,
            steps=tuple(steps),
            topic_type='task',
        )
        return [topic]

    @staticmethod
    def check_sync(
        spec: RunbookSpec,
        existing: Sequence[DitaTopic],
        compare_prose: bool = False,
        report_extra_topics: bool = True,
        include_examples: bool = False,
    ) -> DriftReport:
        """
        Compare existing documentation with what the runbook generates

        Args:
            spec: The runbook that owns the documentation
            existing: Topics currently in the documentation set
            compare_prose: Also report prose differences (writer-owned, off by default)
            report_extra_topics: Report existing topics the runbook does not generate
            include_examples: Generate with example prose before comparing

        Returns:
            DriftReport with entries sorted by topic id and step position
        """
        expected_topics = DocGenService.generate_topics(spec, include_examples=include_examples)
        existing_by_id: Dict[str, DitaTopic] = {topic.id: topic for topic in existing}
        step_ids = [step.id for step in spec.steps]

        entries: List[DriftEntry] = []
        checked_topics = 0
        checked_commands = 0

        for expected in expected_topics:
            doc = existing_by_id.get(expected.id)
            if doc is None:
                entries.append(DriftEntry(
                    topic_id=expected.id,
                    kind=DriftKind.MISSING_TOPIC,
                    source_text=expected.title,
                    suggested_category=MISSING_DOC_NEW_FEATURE,
                ))
                continue

            checked_topics += 1
            if doc.title != expected.title:
                entries.append(DriftEntry(
                    topic_id=expected.id,
                    kind=DriftKind.TITLE_MISMATCH,
                    doc_text=doc.title,
                    source_text=expected.title,
                    suggested_category=OTHER_UP_TO_DATENESS,
                ))

            for position in range(max(len(expected.steps), len(doc.steps))):
                step_id = step_ids[position] if position < len(step_ids) else None
                if position >= len(doc.steps):
                    entries.append(DriftEntry(
                        topic_id=expected.id,
                        kind=DriftKind.MISSING_STEP,
                        step_position=position,
                        step_id=step_id,
                        source_text=DocGenService._commands_text(expected.steps[position]),
                        suggested_category=MISSING_DOC_NEW_FEATURE,
                    ))
                    continue
                if position >= len(expected.steps):
                    entries.append(DriftEntry(
                        topic_id=expected.id,
                        kind=DriftKind.EXTRA_STEP,
                        step_position=position,
                        doc_text=DocGenService._commands_text(doc.steps[position]),
                        suggested_category=OUTDATED_EXAMPLE,
                    ))
                    continue

                doc_step, source_step = doc.steps[position], expected.steps[position]
                checked_commands += 1
                doc_text = DocGenService._commands_text(doc_step)
                source_text = DocGenService._commands_text(source_step)
                if doc_text != source_text:
                    entries.append(DriftEntry(
                        topic_id=expected.id,
                        kind=DriftKind.COMMAND_MISMATCH,
                        step_position=position,
                        step_id=step_id,
                        doc_text=doc_text,
                        source_text=source_text,
                        suggested_category=DocGenService.classify_command_drift(doc_text, source_text),
                    ))
                if compare_prose and doc_step.prose != source_step.prose:
                    entries.append(DriftEntry(
                        topic_id=expected.id,
                        kind=DriftKind.PROSE_MISMATCH,
                        step_position=position,
                        step_id=step_id,
                        doc_text=doc_step.prose,
                        source_text=source_step.prose,
                        suggested_category=OTHER_UP_TO_DATENESS,
                    ))

        if report_extra_topics:
            expected_ids = {topic.id for topic in expected_topics}
            for topic in existing:
                if topic.id not in expected_ids:
                    entries.append(DriftEntry(topic_id=topic.id, kind=DriftKind.EXTRA_TOPIC, doc_text=topic.title))

        entries.sort(key=DriftEntry.sort_key)
        logger.info('checked %d topics and %d commands: %d drift entries',
                    checked_topics, checked_commands, len(entries))
        return DriftReport(entries=tuple(entries), checked_topics=checked_topics, checked_commands=checked_commands)

    @staticmethod
    def classify_command_drift(doc_text: str, source_text: str) -> str:
        """
        Suggest a taxonomy leaf for a command difference

        "Outdated example" when the commands have the same shape and differ only in
        argument values that the source no longer uses; "Erroneous code examples" otherwise.
        """
        doc_tokens = DocGenService._tokens(doc_text)
        source_tokens = DocGenService._tokens(source_text)
        if not doc_tokens or len(doc_tokens) != len(source_tokens) or doc_tokens[0] != source_tokens[0]:
            return ERRONEOUS_CODE_EXAMPLES

        differing = [(d, s) for d, s in zip(doc_tokens, source_tokens) if d != s]
        if differing and all(
            not d.startswith('-') and not s.startswith('-') and d not in source_tokens
            for d, s in differing
        ):
            return OUTDATED_EXAMPLE
        return ERRONEOUS_CODE_EXAMPLES

    @staticmethod
    def _tokens(command: str) -> List[str]:
        try:
            return shlex.split(command)
        except ValueError:
            return command.split()

    @staticmethod
    def _commands_text(step: TopicStep) -> str:
        return '\n'.join(block.raw for block in step.code_blocks)

    @staticmethod
    def _with_example(prose: str, command: CommandText, defaults: Dict[str, str]) -> str:
        names = command.placeholder_names
        if not names or any(name not in defaults for name in names):
            return prose
        example = substitute_placeholders(command.raw, defaults)
        return f'{prose} Example: {example}'.strip()
