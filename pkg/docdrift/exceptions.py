"""Error hierarchy shared by every docdrift module.

Every error carries a human message plus the structured fields the CLI
renders with ``to_dict()`` when ``--format json`` is active.
"""

from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple


class DocdriftError(Exception):
    """Base class for all expected docdrift failures"""

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def to_dict(self) -> Dict[str, Any]:
        return {'error': type(self).__name__, 'message': self.message}


# --- DITA -----------------------------------------------------------------

class DitaError(DocdriftError):
    pass


class MalformedXml(DitaError):
    def __init__(self, detail: str, line: Optional[int] = None, column: Optional[int] = None,
                 source: Optional[str] = None):
        where = f'line {line}, column {column}' if line is not None else 'unknown position'
        prefix = f'{source}: ' if source else ''
        super().__init__(f'{prefix}malformed XML at {where}: {detail}')
        self.line = line
        self.column = column
        self.source = source

    def to_dict(self) -> Dict[str, Any]:
        return {**super().to_dict(), 'line': self.line, 'column': self.column}


class UnsupportedRootElement(DitaError):
    def __init__(self, tag: str):
        super().__init__(f'unsupported root element <{tag}>; expected <concept> or <task>')
        self.tag = tag


class MissingTopicId(DitaError):
    def __init__(self, tag: str):
        super().__init__(f'root element <{tag}> has no id attribute')


class DuplicateTopicId(DitaError):
    def __init__(self, topic_id: str, sources: Sequence[str] = ()):
        found_in = f" (found in {', '.join(sources)})" if sources else ''
        super().__init__(f'topic id {topic_id!r} is not unique{found_in}')
        self.topic_id = topic_id


# --- Runbook --------------------------------------------------------------

class RunbookError(DocdriftError):
    pass


class RunbookSyntaxError(RunbookError):
    """Runbook text is not YAML or does not have the runbook shape"""

    def __init__(self, problems: Iterable[str]):
        self.problems: List[str] = list(problems)
        super().__init__('invalid runbook: ' + '; '.join(self.problems))

    def to_dict(self) -> Dict[str, Any]:
        return {**super().to_dict(), 'problems': self.problems}


class InvalidRunbook(RunbookError):
    """Runbook parsed but broke one or more validation rules"""

    def __init__(self, violations: Sequence[Any]):
        self.violations = list(violations)
        super().__init__('runbook validation failed: ' + '; '.join(str(v) for v in self.violations))

    def to_dict(self) -> Dict[str, Any]:
        return {**super().to_dict(), 'violations': [v.to_dict() for v in self.violations]}


class UndeclaredPlaceholder(InvalidRunbook):
    @property
    def names(self) -> List[str]:
        names: List[str] = []
        for violation in self.violations:
            if violation.rule == 'UndeclaredPlaceholder':
                names.extend(n for n in violation.names if n not in names)
        return names


class DuplicateStepId(InvalidRunbook):
    @property
    def step_ids(self) -> List[str]:
        return [v.step_id for v in self.violations if v.rule == 'DuplicateStepId']


class InvalidSpec(RunbookError):
    """Raised by generation when handed a spec with violations"""

    def __init__(self, violations: Sequence[Any]):
        self.violations = list(violations)
        super().__init__('cannot generate from an invalid runbook: '
                         + '; '.join(str(v) for v in self.violations))

    def to_dict(self) -> Dict[str, Any]:
        return {**super().to_dict(), 'violations': [v.to_dict() for v in self.violations]}


# --- Documentation testing --------------------------------------------------

class DocTestError(DocdriftError):
    pass


class InvalidBindings(DocTestError):
    pass


class InvalidPlan(DocTestError):
    pass


class UnboundPlaceholder(DocTestError):
    """One or more placeholders have no binding; locations are (name, topic_id, step_position)"""

    def __init__(self, missing: Sequence[Tuple[str, str, int]]):
        self.missing = list(missing)
        listed = ', '.join(f'{name} ({topic}#{pos})' for name, topic, pos in self.missing)
        super().__init__(f'unbound placeholders: {listed}')

    @property
    def names(self) -> List[str]:
        names: List[str] = []
        for name, _, _ in self.missing:
            if name not in names:
                names.append(name)
        return names

    def to_dict(self) -> Dict[str, Any]:
        return {**super().to_dict(),
                'missing': [{'name': n, 'topic_id': t, 'step_position': p} for n, t, p in self.missing]}


class RunnerUnavailable(DocTestError):
    pass


class FixtureMiss(DocTestError):
    def __init__(self, command: str):
        super().__init__(f'no mock fixture for command: {command}')
        self.command = command


class UnsatisfiableExpectation(DocTestError):
    """No mock output could meet a step's output_regex together with its output_contains"""

    def __init__(self, command: str, pattern: str, reason: str = ''):
        detail = f': {reason}' if reason else ''
        super().__init__(f'cannot build mock output for {command!r} matching /{pattern}/{detail}')
        self.command = command
        self.pattern = pattern

    def to_dict(self) -> Dict[str, Any]:
        return {**super().to_dict(), 'command': self.command, 'pattern': self.pattern}


# --- Debt analysis ----------------------------------------------------------

class AnalysisError(DocdriftError):
    pass


class SchemaError(AnalysisError):
    """Dataset rows that do not match the schema; rows are (line_number, problem)"""

    def __init__(self, rows: Sequence[Tuple[int, str]]):
        self.rows = list(rows)
        listed = '; '.join(f'line {n}: {problem}' for n, problem in self.rows[:10])
        more = f' (+{len(self.rows) - 10} more)' if len(self.rows) > 10 else ''
        super().__init__(f'dataset does not match the schema: {listed}{more}')

    def to_dict(self) -> Dict[str, Any]:
        return {**super().to_dict(), 'rows': [{'line': n, 'problem': p} for n, p in self.rows]}


class InvalidTimestampOrder(AnalysisError):
    def __init__(self, rows: Sequence[int]):
        self.rows = list(rows)
        super().__init__('timestamps out of order (registered <= assigned <= resolved) on lines '
                         + ', '.join(str(n) for n in self.rows))

    def to_dict(self) -> Dict[str, Any]:
        return {**super().to_dict(), 'rows': self.rows}


class UnknownLabel(AnalysisError):
    def __init__(self, name: str, reason: str = 'is not a taxonomy node'):
        super().__init__(f'label {name!r} {reason}')
        self.name = name


class NonLeafLabel(UnknownLabel):
    def __init__(self, name: str):
        super().__init__(name, reason='names an internal taxonomy node; labels must name leaves')


class TaxonomyError(AnalysisError):
    pass


class ZeroTotal(AnalysisError):
    pass
