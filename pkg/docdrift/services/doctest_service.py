import logging
import re
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from docdrift.config.settings import Config
from docdrift.exceptions import UnboundPlaceholder
from docdrift.models.defects import DefectDraft
from docdrift.models.dita import DitaTopic
from docdrift.models.execution import (
    Bindings,
    ExecutionPlan,
    FailureKind,
    PlanStep,
    RunnerOutcome,
    RunReport,
    StepResult,
    Verdict,
)
from docdrift.models.runbook import Expectation, RunbookSpec
from docdrift.models.taxonomy import ERRONEOUS_CODE_EXAMPLES, OUTDATED_EXAMPLE
from docdrift.services.runners import Runner
from docdrift.utils.placeholders import substitute_placeholders

logger = logging.getLogger(__name__)

FAILURE_CATEGORIES = {
    FailureKind.COMMAND_NOT_FOUND: ERRONEOUS_CODE_EXAMPLES,
    FailureKind.NONZERO_EXIT: ERRONEOUS_CODE_EXAMPLES,
    FailureKind.OUTPUT_MISMATCH: OUTDATED_EXAMPLE,
}

ExpectationMap = Mapping[Tuple[str, int], Expectation]


class DocTestService:
    """Service for testing documented commands against a system"""

    @staticmethod
    def build_plan(
        topics: Sequence[DitaTopic],
        bindings: Bindings,
        defaults: Optional[Expectation] = None,
        expectations: Optional[ExpectationMap] = None,
        quote: bool = False,
    ) -> ExecutionPlan:
        """
        Extract the commands of a set of topics into an execution plan

        Args:
            topics: Topics in document order
            bindings: Values for every placeholder used by the topics
            defaults: Expectation for commands without one (exit status 0 if None)
            expectations: Per (topic_id, step_position) expectations, e.g. from a runbook
            quote: Wrap substituted values in POSIX single quotes

        Returns:
            ExecutionPlan with one step per code block, in document order

        Raises:
            UnboundPlaceholder: Some placeholder has no binding
        """
        defaults = defaults or Expectation()
        expectations = expectations or {}

        missing = []
        for topic in topics:
            for position, _, command in topic.iter_commands():
                for name in command.placeholder_names:
                    if name not in bindings:
                        missing.append((name, topic.id, position))
        if missing:
            raise UnboundPlaceholder(missing)

        steps = []
        for topic in topics:
            for position, index, command in topic.iter_commands():
                steps.append(PlanStep(
                    source_topic_id=topic.id,
                    step_position=position,
                    block_index=index,
                    resolved_command=substitute_placeholders(command.raw, bindings.values, quote=quote),
                    expectation=expectations.get((topic.id, position), defaults),
                ))

        logger.info('planned %d commands from %d topics', len(steps), len(topics))
        return ExecutionPlan(steps=tuple(steps))

    @staticmethod
    def expectations_from_runbook(spec: RunbookSpec) -> Dict[Tuple[str, int], Expectation]:
        """Map each generated step location to the runbook step's expectation"""
        return {
            (spec.topic_meta.topic_id, position): step.expectation
            for position, step in enumerate(spec.steps)
        }

    @staticmethod
    def execute_plan(plan: ExecutionPlan, runner: Runner, fail_fast: bool = False) -> RunReport:
        """
        Run every plan step in order and judge it against its expectation

        Args:
            plan: Steps to run
            runner: Runner executing each resolved command
            fail_fast: Stop after the first failing step

        Returns:
            RunReport with one result per executed step

        Raises:
            RunnerUnavailable: The runner cannot execute commands
        """
        runner.check_available()
        runner.reset()
        results: List[StepResult] = []

        for step in plan.steps:
            try:
                outcome = runner.run(step.resolved_command)
            except OSError as exc:
                logger.error('runner failed on %s: %s', step.location, exc)
                outcome = RunnerOutcome(exit_status=-1, stderr=str(exc))

            result = DocTestService.evaluate(step, outcome)
            results.append(result)
            logger.info('%s %s: %s', result.verdict.value, step.location, step.resolved_command)

            if fail_fast and result.verdict is Verdict.FAIL:
                logger.warning('stopping after first failure at %s', step.location)
                break

        return RunReport(results=tuple(results), planned=len(plan.steps), runner=runner.name)

    @staticmethod
    def evaluate(step: PlanStep, outcome: RunnerOutcome) -> StepResult:
        """Judge one outcome against the step's expectation"""
        expectation = step.expectation
        kind = None
        detail = ''

        if not outcome.command_found:
            kind = FailureKind.COMMAND_NOT_FOUND
            detail = 'command not found'
        elif outcome.exit_status != expectation.exit_status:
            kind = FailureKind.NONZERO_EXIT
            detail = f'exit status {outcome.exit_status}, expected {expectation.exit_status}'
        else:
            absent = [text for text in expectation.output_contains if text not in outcome.stdout]
            if absent:
                kind = FailureKind.OUTPUT_MISMATCH
                detail = 'output lacks: ' + ', '.join(repr(text) for text in absent)
            elif expectation.output_regex is not None and not re.search(expectation.output_regex, outcome.stdout):
                kind = FailureKind.OUTPUT_MISMATCH
                detail = f'output does not match /{expectation.output_regex}/'

        if kind is None:
            return StepResult(step=step, outcome=outcome, verdict=Verdict.PASS)
        return StepResult(
            step=step,
            outcome=outcome,
            verdict=Verdict.FAIL,
            failure_kind=kind,
            suggested_category=FAILURE_CATEGORIES[kind],
            detail=detail,
        )

    @staticmethod
    def report_to_defects(report: RunReport) -> List[DefectDraft]:
        """
        Turn each failed step into a candidate bug report

        Args:
            report: A run report

        Returns:
            One draft per failed step, labeled with its suggested category
        """
        drafts = []
        for result in report.results:
            if result.verdict is not Verdict.FAIL:
                continue
            step = result.step
            excerpt = (result.outcome.stderr.strip() or result.outcome.stdout.strip())
            excerpt = excerpt[:Config.ANNOTATION_EXCERPT_CHARS]
            annotation = f'{step.resolved_command} -> exit {result.outcome.exit_status}'
            if result.detail:
                annotation += f' ({result.detail})'
            if excerpt:
                annotation += f': {excerpt}'
            drafts.append(DefectDraft(
                id=f'ADT-{step.source_topic_id}-{step.step_position}-{step.block_index}',
                document=step.source_topic_id,
                labels=(result.suggested_category,) if result.suggested_category else (),
                annotation=annotation,
            ))
        return drafts
