"""Domain models for the command-bearing subset of DITA topics.

All models are frozen; a topic read from disk and a topic built in memory
compare equal when their titles, steps and commands match.
"""

from dataclasses import dataclass, field
from typing import Iterator, Optional, Tuple

from docdrift.utils.placeholders import PlaceholderOccurrence, find_placeholders, normalize_command

TOPIC_TYPES = ('task', 'concept')


@dataclass(frozen=True)
class CommandText:
    """One documented command, held as a single normalized line; placeholders are derived from it"""

    raw: str
    placeholders: Tuple[PlaceholderOccurrence, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'raw', normalize_command(self.raw))
        object.__setattr__(self, 'placeholders', tuple(find_placeholders(self.raw)))

    @property
    def placeholder_names(self) -> Tuple[str, ...]:
        """Unique names in first-occurrence order"""
        return tuple(dict.fromkeys(p.name for p in self.placeholders))


@dataclass(frozen=True)
class TopicStep:
    prose: str = ''
    code_blocks: Tuple[CommandText, ...] = ()


@dataclass(frozen=True)
class DitaTopic:
    """
    A parsed topic

    Attributes:
        id: Topic id, unique within a collection
        title: Topic title
        short_desc: Short description, None when the topic has no <shortdesc>
        steps: Steps in document order
        topic_type: 'task' or 'concept'
        warnings: Messages about skipped elements; not part of equality
    """
    id: str
    title: str
    short_desc: Optional[str] = None
    steps: Tuple[TopicStep, ...] = ()
    topic_type: str = 'task'
    warnings: Tuple[str, ...] = field(default=(), compare=False)

    def iter_commands(self) -> Iterator[Tuple[int, int, CommandText]]:
        """Yield (step_position, block_index, command) in document order"""
        for position, step in enumerate(self.steps):
            for index, command in enumerate(step.code_blocks):
                yield position, index, command
