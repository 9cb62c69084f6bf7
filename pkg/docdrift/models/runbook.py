"""Runbook specification: the single source both docs and execution derive from."""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

from docdrift.models.dita import CommandText


@dataclass(frozen=True)
class Expectation:
    """Expected outcome of one command; exit status 0 and no output checks by default"""

    exit_status: int = 0
    output_contains: Tuple[str, ...] = ()
    output_regex: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'exit_status': self.exit_status,
            'output_contains': list(self.output_contains),
            'output_regex': self.output_regex,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Expectation':
        return cls(
            exit_status=int(data.get('exit_status', 0)),
            output_contains=tuple(data.get('output_contains') or ()),
            output_regex=data.get('output_regex'),
        )


@dataclass(frozen=True)
class TopicMeta:
    topic_id: str
    title: str
    short_desc: Optional[str] = None


@dataclass(frozen=True)
class Variable:
    """A declared placeholder; default is an example value for docs only"""

    name: str
    default: Optional[str] = None


@dataclass(frozen=True)
class RunbookStep:
    id: str
    prose: str
    command_template: CommandText
    expectation: Expectation = Expectation()


@dataclass(frozen=True)
class RunbookSpec:
    name: str
    topic_meta: TopicMeta
    steps: Tuple[RunbookStep, ...] = ()
    variables: Tuple[Variable, ...] = ()

    @property
    def declared_names(self) -> Tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    @property
    def defaults(self) -> Dict[str, str]:
        return {v.name: v.default for v in self.variables if v.default is not None}


@dataclass(frozen=True)
class Violation:
    """One broken rule; step_id is None for runbook-level rules"""

    rule: str
    message: str
    step_id: Optional[str] = None
    names: Tuple[str, ...] = ()

    def __str__(self) -> str:
        where = f'step {self.step_id!r}: ' if self.step_id is not None else ''
        return f'{where}{self.rule}: {self.message}'

    def to_dict(self) -> Dict[str, Any]:
        return {'rule': self.rule, 'step_id': self.step_id, 'names': list(self.names),
                'message': self.message}
