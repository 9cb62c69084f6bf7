import json
import re
import subprocess

import pytest

from docdrift.exceptions import FixtureMiss, RunnerUnavailable, UnsatisfiableExpectation
from docdrift.models.execution import Bindings
from docdrift.models.runbook import Expectation
from docdrift.services import runners
from docdrift.services.runbook_service import RunbookService
from docdrift.services.runners import DryRunRunner, Fixture, MockRunner, ShellRunner, build_runner


@pytest.fixture
def mock_runner():
    return MockRunner([
        Fixture('helm upgrade relx chart --reuse-values', stdout='has been upgraded'),
        Fixture('kubectl get', exit_status=3, stderr='too short'),
        Fixture('kubectl get pods', stdout='Running'),
    ])


def test_exact_match(mock_runner):
    outcome = mock_runner.run('helm upgrade relx chart --reuse-values')
    assert (outcome.exit_status, outcome.stdout, outcome.command_found) == (0, 'has been upgraded', True)


def test_miss_reports_command_not_found(mock_runner):
    outcome = mock_runner.run('helm upgrade relx chart')
    assert outcome.exit_status == 127
    assert outcome.command_found is False


def test_miss_can_pass_or_raise():
    assert MockRunner([], miss='pass').run('anything').exit_status == 0
    with pytest.raises(FixtureMiss):
        MockRunner([], miss='raise').run('anything')


def test_prefix_match_prefers_longest(mock_runner):
    mock_runner.prefix_match = True
    assert mock_runner.run('kubectl get pods -n ns1').stdout == 'Running'
    assert mock_runner.run('kubectl get svc').exit_status == 3


def test_load_fixtures(tmp_path):
    path = tmp_path / 'fixtures.json'
    path.write_text(json.dumps([Fixture('true').to_dict()]))
    runner = MockRunner.load(path)
    assert runner.run('true').exit_status == 0


def test_load_bad_fixtures(tmp_path):
    path = tmp_path / 'fixtures.json'
    path.write_text('{"not": "a list"')
    with pytest.raises(RunnerUnavailable):
        MockRunner.load(path)


def test_from_runbook_satisfies_expectations(helm_spec, helm_bindings):
    runner = MockRunner.from_runbook(helm_spec, helm_bindings)
    outcome = runner.run('helm upgrade relx chart --reuse-values -n ns1')
    assert 'has been upgraded' in outcome.stdout


@pytest.mark.parametrize('expectation', [
    Expectation(),
    Expectation(output_contains=('has been upgraded',)),
    Expectation(output_regex='Running'),
    Expectation(output_regex=r'\d+/\d+ Running'),
    Expectation(output_contains=('pod-a',), output_regex=r'^NAME\s+READY'),
    Expectation(output_contains=('STATUS: deployed',), output_regex='(deployed|failed)'),
    Expectation(output_contains=('a', 'b'), output_regex='done$'),
    Expectation(output_regex=r'^\d{3}$'),
])
def test_satisfying_stdout_meets_every_check(expectation):
    stdout = runners.satisfying_stdout(expectation, 'kubectl get pods -n ns1')
    assert all(text in stdout for text in expectation.output_contains)
    if expectation.output_regex is not None:
        assert re.search(expectation.output_regex, stdout)


def test_satisfying_stdout_is_repeatable():
    expectation = Expectation(output_regex=r'[a-z]{4,9}-\d+')
    first = runners.satisfying_stdout(expectation, 'helm list')
    assert runners.satisfying_stdout(expectation, 'helm list') == first


def test_satisfying_stdout_keeps_matching_substrings():
    expectation = Expectation(output_contains=('Running',), output_regex='Run')
    assert runners.satisfying_stdout(expectation) == 'Running'


@pytest.mark.parametrize('expectation', [
    Expectation(output_contains=('ok',), output_regex=r'^\d+$'),
    Expectation(output_regex='a(?!a)a'),
])
def test_unsatisfiable_expectation(expectation):
    with pytest.raises(UnsatisfiableExpectation) as excinfo:
        runners.satisfying_stdout(expectation, 'true')
    assert excinfo.value.pattern == expectation.output_regex
    assert excinfo.value.command == 'true'


def test_from_runbook_satisfies_output_regex():
    spec = RunbookService.parse_runbook(
        'name: List pods\nvariables: {namespace: null}\nsteps:\n'
        '  - {id: pods, command: "kubectl get pods -n <namespace>", expect: {output_regex: Running}}\n'
    )
    outcome = MockRunner.from_runbook(spec, Bindings({'namespace': 'ns1'})).run('kubectl get pods -n ns1')
    assert re.search('Running', outcome.stdout)


def test_repeated_command_answers_in_order():
    runner = MockRunner([
        Fixture('kubectl get pods', stdout='ContainerCreating'),
        Fixture('kubectl get pods', stdout='Running'),
    ])
    assert [runner.run('kubectl get pods').stdout for _ in range(3)] == [
        'ContainerCreating', 'Running', 'Running']


def test_reset_restarts_fixture_queues():
    runner = MockRunner([Fixture('helm status relx', exit_status=1), Fixture('helm status relx')])
    assert [runner.run('helm status relx').exit_status for _ in range(2)] == [1, 0]
    runner.reset()
    assert runner.run('helm status relx').exit_status == 1


def test_prefix_match_shares_the_queue():
    runner = MockRunner([Fixture('kubectl get', stdout='first'), Fixture('kubectl get', stdout='second')],
                        prefix_match=True)
    assert runner.run('kubectl get pods').stdout == 'first'
    assert runner.run('kubectl get svc').stdout == 'second'


def test_dry_run_records_commands():
    lines = []
    runner = DryRunRunner(echo=lines.append)
    assert runner.run('rm -rf /tmp/x').exit_status == 0
    assert runner.commands == ['rm -rf /tmp/x']
    assert lines == ['$ rm -rf /tmp/x']


def test_shell_runner_marks_missing_command(monkeypatch):
    completed = subprocess.CompletedProcess('nope', 127, stdout='', stderr='sh: nope: not found')
    monkeypatch.setattr(runners.subprocess, 'run', lambda *args, **kwargs: completed)

    outcome = ShellRunner().run('nope')
    assert outcome.exit_status == 127
    assert outcome.command_found is False


def test_shell_runner_timeout(monkeypatch):
    def fake_run(command, **kwargs):
        raise subprocess.TimeoutExpired(command, kwargs['timeout'], output=b'partial')

    monkeypatch.setattr(runners.subprocess, 'run', fake_run)

    outcome = ShellRunner(timeout=1).run('sleep 10')
    assert outcome.exit_status == 124
    assert outcome.stdout == 'partial'
    assert outcome.command_found is True


def test_shell_runner_passes_shell_and_timeout(monkeypatch):
    calls = []

    def fake_run(command, **kwargs):
        calls.append((command, kwargs))
        return subprocess.CompletedProcess(command, 0, stdout='ok\n', stderr='')

    monkeypatch.setattr(runners.subprocess, 'run', fake_run)
    ShellRunner(timeout=5).run('echo ok')

    command, kwargs = calls[0]
    assert command == 'echo ok'
    assert kwargs['shell'] is True
    assert kwargs['timeout'] == 5


def test_build_runner(tmp_path):
    assert build_runner('dry-run').name == 'dry-run'
    assert build_runner('shell').name == 'shell'
    with pytest.raises(RunnerUnavailable):
        build_runner('mock')
    with pytest.raises(RunnerUnavailable):
        build_runner('ssh')
