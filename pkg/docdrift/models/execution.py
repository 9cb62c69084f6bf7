"""Models for documentation testing: bindings, plans, runner outcomes and reports."""

from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Any, Dict, Mapping, Optional, Tuple

from docdrift.exceptions import InvalidBindings, InvalidPlan
from docdrift.models.runbook import Expectation
from docdrift.utils.placeholders import find_placeholders, is_placeholder_name


@dataclass(frozen=True)
class Bindings:
    """Site-specific values for placeholders"""

    values: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        problems = []
        for name, value in self.values.items():
            if not is_placeholder_name(name):
                problems.append(f'{name!r} is not a valid placeholder name')
            if not isinstance(value, str) or not value:
                problems.append(f'value for {name!r} must be a non-empty string')
            elif find_placeholders(value):
                problems.append(f'value for {name!r} must not itself contain a placeholder')
        if problems:
            raise InvalidBindings('; '.join(problems))
        object.__setattr__(self, 'values', MappingProxyType(dict(self.values)))

    def __contains__(self, name: str) -> bool:
        return name in self.values

    def __hash__(self):
        return hash(tuple(sorted(self.values.items())))

    def __eq__(self, other):
        return isinstance(other, Bindings) and dict(self.values) == dict(other.values)


@dataclass(frozen=True)
class PlanStep:
    source_topic_id: str
    step_position: int
    resolved_command: str
    expectation: Expectation = Expectation()
    block_index: int = 0

    def __post_init__(self):
        if find_placeholders(self.resolved_command):
            raise InvalidPlan(f'unresolved placeholder in plan step: {self.resolved_command}')

    @property
    def location(self) -> str:
        return f'{self.source_topic_id}#{self.step_position}.{self.block_index}'

    def to_dict(self) -> Dict[str, Any]:
        return {
            'source_topic_id': self.source_topic_id,
            'step_position': self.step_position,
            'block_index': self.block_index,
            'resolved_command': self.resolved_command,
            'expectation': self.expectation.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'PlanStep':
        try:
            return cls(
                source_topic_id=data['source_topic_id'],
                step_position=int(data['step_position']),
                block_index=int(data.get('block_index', 0)),
                resolved_command=data['resolved_command'],
                expectation=Expectation.from_dict(data.get('expectation') or {}),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidPlan(f'malformed plan step {data!r}: {exc}') from exc


@dataclass(frozen=True)
class ExecutionPlan:
    steps: Tuple[PlanStep, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {'steps': [step.to_dict() for step in self.steps]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ExecutionPlan':
        if not isinstance(data, dict) or not isinstance(data.get('steps'), list):
            raise InvalidPlan('plan must be an object with a "steps" list')
        return cls(steps=tuple(PlanStep.from_dict(step) for step in data['steps']))


@dataclass(frozen=True)
class RunnerOutcome:
    """What a runner observed; command_found is False when the runner could not find the command"""

    exit_status: int
    stdout: str = ''
    stderr: str = ''
    duration_ms: float = 0.0
    command_found: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            'exit_status': self.exit_status,
            'stdout': self.stdout,
            'stderr': self.stderr,
            'duration_ms': round(self.duration_ms, 3),
            'command_found': self.command_found,
        }


class Verdict(str, Enum):
    PASS = 'Pass'
    FAIL = 'Fail'


class FailureKind(str, Enum):
    NONZERO_EXIT = 'NonzeroExit'
    OUTPUT_MISMATCH = 'OutputMismatch'
    COMMAND_NOT_FOUND = 'CommandNotFound'


@dataclass(frozen=True)
class StepResult:
    step: PlanStep
    outcome: RunnerOutcome
    verdict: Verdict
    failure_kind: Optional[FailureKind] = None
    suggested_category: Optional[str] = None
    detail: str = ''

    def to_dict(self) -> Dict[str, Any]:
        return {
            'step': self.step.to_dict(),
            'outcome': self.outcome.to_dict(),
            'verdict': self.verdict.value,
            'failure_kind': self.failure_kind.value if self.failure_kind else None,
            'suggested_category': self.suggested_category,
            'detail': self.detail,
        }


@dataclass(frozen=True)
class RunReport:
    results: Tuple[StepResult, ...] = ()
    planned: int = 0
    runner: str = ''

    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.verdict is Verdict.PASS)

    @property
    def failed(self) -> int:
        return sum(1 for r in self.results if r.verdict is Verdict.FAIL)

    @property
    def executed(self) -> int:
        return len(self.results)

    @property
    def skipped(self) -> int:
        return self.planned - self.executed

    @property
    def all_passed(self) -> bool:
        return self.failed == 0 and self.skipped == 0

    def summary(self) -> Dict[str, int]:
        return {
            'planned': self.planned,
            'executed': self.executed,
            'passed': self.passed,
            'failed': self.failed,
            'skipped': self.skipped,
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            'runner': self.runner,
            'summary': self.summary(),
            'results': [result.to_dict() for result in self.results],
        }
