from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Tuple


class DriftKind(str, Enum):
    MISSING_TOPIC = 'MissingTopic'
    EXTRA_TOPIC = 'ExtraTopic'
    COMMAND_MISMATCH = 'CommandMismatch'
    TITLE_MISMATCH = 'TitleMismatch'
    MISSING_STEP = 'MissingStep'
    EXTRA_STEP = 'ExtraStep'
    PROSE_MISMATCH = 'ProseMismatch'


@dataclass(frozen=True)
class DriftEntry:
    """One difference between the documentation and the runbook it should mirror"""

    topic_id: str
    kind: DriftKind
    step_position: Optional[int] = None
    step_id: Optional[str] = None
    doc_text: Optional[str] = None
    source_text: Optional[str] = None
    suggested_category: Optional[str] = None

    def sort_key(self) -> Tuple[str, int]:
        return self.topic_id, -1 if self.step_position is None else self.step_position

    def to_dict(self) -> Dict[str, Any]:
        return {
            'topic_id': self.topic_id,
            'kind': self.kind.value,
            'step_position': self.step_position,
            'step_id': self.step_id,
            'doc_text': self.doc_text,
            'source_text': self.source_text,
            'suggested_category': self.suggested_category,
        }


@dataclass(frozen=True)
class DriftReport:
    entries: Tuple[DriftEntry, ...] = ()
    checked_topics: int = 0
    checked_commands: int = 0

    @property
    def in_sync(self) -> bool:
        return not self.entries

    def to_dict(self) -> Dict[str, Any]:
        return {
            'in_sync': self.in_sync,
            'checked_topics': self.checked_topics,
            'checked_commands': self.checked_commands,
            'entries': [entry.to_dict() for entry in self.entries],
        }
