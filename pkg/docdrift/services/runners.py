"""Pluggable command runners used to execute documented commands.

A runner turns one resolved command string into a RunnerOutcome. The shell
runner is for field use against a real system; the mock runner answers from
a fixture map and is what automated tests use.
"""

import json
import logging
import random
import re
import shutil
import subprocess
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Union

import click
from rstr import Rstr

from docdrift.config.settings import Config
from docdrift.exceptions import FixtureMiss, RunnerUnavailable, UnsatisfiableExpectation
from docdrift.models.execution import Bindings, RunnerOutcome
from docdrift.models.runbook import Expectation, RunbookSpec
from docdrift.utils.placeholders import substitute_placeholders

logger = logging.getLogger(__name__)

COMMAND_NOT_FOUND_STATUS = 127
TIMEOUT_STATUS = 124


class Runner(ABC):
    name = 'runner'

    def check_available(self) -> None:
        """Raise RunnerUnavailable when the runner cannot execute anything"""

    def reset(self) -> None:
        """Forget what earlier plan runs consumed"""

    @abstractmethod
    def run(self, command: str) -> RunnerOutcome:
        ...


class ShellRunner(Runner):
    """Spawns each command through the POSIX shell"""

    name = 'shell'

    def __init__(self, timeout: float = Config.SHELL_TIMEOUT_SECONDS, cwd: Optional[Path] = None):
        self.timeout = timeout
        self.cwd = cwd

    def check_available(self) -> None:
        if shutil.which('sh') is None:
            raise RunnerUnavailable('shell runner needs /bin/sh on PATH')

    def run(self, command: str) -> RunnerOutcome:
        start = time.perf_counter()
        try:
            completed = subprocess.run(
                command,
                shell=True,
                capture_output=True,
                text=True,
                timeout=self.timeout,
                cwd=self.cwd,
            )
        except subprocess.TimeoutExpired as exc:
            return RunnerOutcome(
                exit_status=TIMEOUT_STATUS,
                stdout=self._decode(exc.stdout),
                stderr=f'timed out after {self.timeout}s',
                duration_ms=(time.perf_counter() - start) * 1000,
            )
        duration_ms = (time.perf_counter() - start) * 1000
        return RunnerOutcome(
            exit_status=completed.returncode,
            stdout=completed.stdout,
            stderr=completed.stderr,
            duration_ms=duration_ms,
            command_found=completed.returncode != COMMAND_NOT_FOUND_STATUS,
        )

    @staticmethod
    def _decode(output: Union[str, bytes, None]) -> str:
        if output is None:
            return ''
        return output.decode('utf-8', 'replace') if isinstance(output, bytes) else output


class DryRunRunner(Runner):
    """Prints each command and reports success without executing it"""

    name = 'dry-run'

    def __init__(self, echo: Optional[Callable[[str], None]] = None):
        self.echo = echo or (lambda line: click.echo(line, err=True))
        self.commands: List[str] = []

    def run(self, command: str) -> RunnerOutcome:
        self.commands.append(command)
        self.echo(f'$ {command}')
        return RunnerOutcome(exit_status=0)


@dataclass(frozen=True)
class Fixture:
    command: str
    exit_status: int = 0
    stdout: str = ''
    stderr: str = ''

    @classmethod
    def from_dict(cls, data: Dict) -> 'Fixture':
        return cls(
            command=data['command'],
            exit_status=int(data.get('exit_status', 0)),
            stdout=data.get('stdout', ''),
            stderr=data.get('stderr', ''),
        )

    def to_dict(self) -> Dict:
        return {'command': self.command, 'exit_status': self.exit_status,
                'stdout': self.stdout, 'stderr': self.stderr}


def satisfying_stdout(expectation: Expectation, command: str = '') -> str:
    """
    Build mock stdout that meets an expectation's output checks

    Args:
        expectation: The step's expectation
        command: Resolved command; seeds the regex sampler so the result is repeatable

    Returns:
        The expected substrings one per line, plus a sample of output_regex when they do not already match it

    Raises:
        UnsatisfiableExpectation: No sample met the regex together with the substrings
    """
    contains = '\n'.join(expectation.output_contains)
    if expectation.output_regex is None:
        return contains

    pattern = re.compile(expectation.output_regex)
    if pattern.search(contains):
        return contains

    sampler = Rstr(random.Random(f'{command}\n{expectation.output_regex}'))
    for _ in range(Config.MOCK_REGEX_SAMPLES):
        try:
            sample = sampler.xeger(pattern)
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise UnsatisfiableExpectation(command, expectation.output_regex, str(exc)) from exc
        candidates = [f'{contains}\n{sample}', f'{sample}\n{contains}'] if contains else [sample]
        for stdout in candidates:
            if pattern.search(stdout) and all(text in stdout for text in expectation.output_contains):
                return stdout
    raise UnsatisfiableExpectation(command, expectation.output_regex,
                                   f'no match after {Config.MOCK_REGEX_SAMPLES} samples')


class MockRunner(Runner):
    """
    Answers commands from a fixture map

    Lookup is by exact command text, or by longest fixture prefix when
    prefix_match is set. Several fixtures for one command answer its
    successive runs in order and the last one keeps answering after that;
    reset() starts every command from its first fixture again. Misses are
    handled per `miss`: 'not-found' reports the command as not found
    (exit 127), 'pass' reports success, 'raise' raises FixtureMiss.
    """

    name = 'mock'

    def __init__(self, fixtures: Iterable[Fixture], miss: str = 'not-found', prefix_match: bool = False):
        if miss not in Config.MOCK_MISS_BEHAVIORS:
            raise ValueError(f'unknown miss behavior {miss!r}')
        self.fixtures: Dict[str, List[Fixture]] = {}
        for fixture in fixtures:
            self.fixtures.setdefault(fixture.command, []).append(fixture)
        self.miss = miss
        self.prefix_match = prefix_match
        self._served: Dict[str, int] = {}

    @classmethod
    def load(cls, path: Path, miss: str = 'not-found', prefix_match: bool = False) -> 'MockRunner':
        """
        Load fixtures from a JSON array of {command, exit_status, stdout, stderr}

        Raises:
            RunnerUnavailable: The file is missing or malformed
        """
        try:
            data = json.loads(Path(path).read_text(encoding='utf-8'))
            fixtures = [Fixture.from_dict(item) for item in data]
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise RunnerUnavailable(f'cannot load mock fixtures from {path}: {exc}') from exc
        logger.info('loaded %d mock fixtures from %s', len(fixtures), path)
        return cls(fixtures, miss=miss, prefix_match=prefix_match)

    @classmethod
    def from_runbook(cls, spec: RunbookSpec, bindings: Bindings, quote: bool = False, **kwargs) -> 'MockRunner':
        """
        Seed one fixture per runbook step whose outcome satisfies the step's expectation

        Steps that resolve to the same command queue up in step order.

        Raises:
            UnsatisfiableExpectation: A step's output checks cannot be met by any output
        """
        fixtures = []
        for step in spec.steps:
            command = substitute_placeholders(step.command_template.raw, bindings.values, quote=quote)
            fixtures.append(Fixture(
                command=command,
                exit_status=step.expectation.exit_status,
                stdout=satisfying_stdout(step.expectation, command),
            ))
        return cls(fixtures, **kwargs)

    def reset(self) -> None:
        self._served.clear()

    def run(self, command: str) -> RunnerOutcome:
        key = self._lookup(command)
        if key is not None:
            queue = self.fixtures[key]
            served = self._served.get(key, 0)
            self._served[key] = served + 1
            fixture = queue[min(served, len(queue) - 1)]
            return RunnerOutcome(exit_status=fixture.exit_status, stdout=fixture.stdout, stderr=fixture.stderr)

        logger.debug('mock miss: %s', command)
        if self.miss == 'raise':
            raise FixtureMiss(command)
        if self.miss == 'pass':
            return RunnerOutcome(exit_status=0)
        return RunnerOutcome(
            exit_status=COMMAND_NOT_FOUND_STATUS,
            stderr=f'command not found in fixtures: {command}',
            command_found=False,
        )

    def _lookup(self, command: str) -> Optional[str]:
        if command in self.fixtures:
            return command
        if not self.prefix_match:
            return None
        candidates = [key for key in self.fixtures if command.startswith(key)]
        return max(candidates, key=len, default=None)


def build_runner(kind: str, fixtures: Optional[Path] = None, miss: str = 'not-found',
                 prefix_match: bool = False) -> Runner:
    """
    Create a runner by name

    Args:
        kind: 'shell', 'dry-run' or 'mock'
        fixtures: Fixture file, required for 'mock'

    Raises:
        RunnerUnavailable: Unknown kind, or mock without fixtures
    """
    if kind == 'shell':
        return ShellRunner()
    if kind == 'dry-run':
        return DryRunRunner()
    if kind == 'mock':
        if fixtures is None:
            raise RunnerUnavailable('the mock runner needs --fixtures')
        return MockRunner.load(fixtures, miss=miss, prefix_match=prefix_match)
    raise RunnerUnavailable(f'unknown runner {kind!r}')
