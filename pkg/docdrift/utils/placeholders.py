import re
from dataclasses import dataclass
from typing import List, Mapping, Tuple

# <name> where name is a lowercase identifier
PLACEHOLDER_PATTERN = re.compile(r'<([a-z][a-z0-9_]*)>')
NAME_PATTERN = re.compile(r'[a-z][a-z0-9_]*\Z')


@dataclass(frozen=True)
class PlaceholderOccurrence:
    """One <name> occurrence; start/end are offsets into the raw command"""

    name: str
    start: int
    end: int

    @property
    def span(self) -> Tuple[int, int]:
        return self.start, self.end


def is_placeholder_name(name: str) -> bool:
    return bool(NAME_PATTERN.match(name))


def find_placeholders(raw: str) -> List[PlaceholderOccurrence]:
    """
    Find every placeholder occurrence in a command, left to right

    Args:
        raw: Command text

    Returns:
        One occurrence per match, duplicates included
    """
    return [
        PlaceholderOccurrence(name=m.group(1), start=m.start(), end=m.end())
        for m in PLACEHOLDER_PATTERN.finditer(raw)
    ]


def normalize_command(text: str) -> str:
    """
    Join a multi-line command into one logical line

    Each line is stripped, trailing backslash continuations are dropped, empty
    lines are skipped and the rest are joined with single spaces.
    """
    parts = []
    for line in text.splitlines():
        line = line.strip()
        while line.endswith('\\'):
            line = line[:-1].rstrip()
        if line:
            parts.append(line)
    return ' '.join(parts)


def normalize_text(text: str) -> str:
    """Collapse whitespace runs in prose, titles and short descriptions"""
    return ' '.join(text.split())


def posix_quote(value: str) -> str:
    return "'" + value.replace("'", "'\"'\"'") + "'"


def substitute_placeholders(raw: str, values: Mapping[str, str], quote: bool = False) -> str:
    """
    Replace every placeholder occurrence by its value

    Args:
        raw: Command text
        values: Placeholder name to value; every name in raw must be present
        quote: Wrap each value in POSIX single quotes

    Returns:
        The command with all placeholders substituted
    """
    pieces = []
    cursor = 0
    for occurrence in find_placeholders(raw):
        value = values[occurrence.name]
        pieces.append(raw[cursor:occurrence.start])
        pieces.append(posix_quote(value) if quote else value)
        cursor = occurrence.end
    pieces.append(raw[cursor:])
    return ''.join(pieces)
