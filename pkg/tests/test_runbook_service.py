import random
from dataclasses import replace

import pytest

from docdrift.exceptions import DuplicateStepId, InvalidRunbook, RunbookSyntaxError, UndeclaredPlaceholder
from docdrift.models.dita import CommandText
from docdrift.models.runbook import Expectation, RunbookStep, TopicMeta, Variable
from docdrift.services.runbook_service import RunbookService
from tests.conftest import KUBECTL_COMMAND, KUBECTL_RUNBOOK
from tests.generators import random_runbook, runbook_yaml


def test_parse_kubectl_runbook(kubectl_spec):
    assert kubectl_spec.name == 'Back up a customized ConfigMap'
    assert kubectl_spec.topic_meta.topic_id == 'backup-configmap'
    assert len(kubectl_spec.steps) == 1
    assert kubectl_spec.declared_names == ('customized_configmap_name', 'namespace')
    assert kubectl_spec.steps[0].command_template.raw == KUBECTL_COMMAND
    assert kubectl_spec.steps[0].expectation == Expectation()


def test_zero_steps_is_valid():
    spec = RunbookService.parse_runbook('name: Nothing yet\nsteps: []\n')
    assert spec.steps == ()
    assert spec.topic_meta.topic_id == 'nothing-yet'
    assert spec.topic_meta.title == 'Nothing yet'


def test_variables_as_list():
    spec = RunbookService.parse_runbook(
        'name: x\nvariables:\n  - ns\n  - {name: release, default: relx}\n'
        'steps:\n  - {id: a, command: "helm status <release> -n <ns>"}\n'
    )
    assert spec.variables == (Variable('ns'), Variable('release', 'relx'))
    assert spec.defaults == {'release': 'relx'}


def test_undeclared_placeholder():
    text = KUBECTL_RUNBOOK.replace('-n <namespace>', '-n <namespace> --context <cluster>')
    with pytest.raises(UndeclaredPlaceholder) as excinfo:
        RunbookService.parse_runbook(text)
    assert excinfo.value.names == ['cluster']
    assert excinfo.value.violations[0].step_id == 'export-configmap'


def test_duplicate_step_id():
    text = ('name: dup\nsteps:\n'
            '  - {id: a, command: "true"}\n'
            '  - {id: a, command: "false"}\n')
    with pytest.raises(DuplicateStepId) as excinfo:
        RunbookService.parse_runbook(text)
    assert excinfo.value.step_ids == ['a']


def test_invalid_regex_and_variable_name():
    text = ('name: x\nvariables: {Bad-Name: null}\nsteps:\n'
            '  - {id: a, command: "true", expect: {output_regex: "("}}\n')
    with pytest.raises(InvalidRunbook) as excinfo:
        RunbookService.parse_runbook(text)
    assert [v.rule for v in excinfo.value.violations] == ['InvalidVariableName', 'InvalidPattern']


@pytest.mark.parametrize('text', [
    'name: [unclosed',
    '- just\n- a list\n',
    'name: x\nsteps:\n  - {command: "true"}\n',
    'name: x\nsteps:\n  - {id: a, command: "true", timeout: 3}\n',
    'name: x\nsteps:\n  - {id: a, command: "true", expect: {exit_status: "zero"}}\n',
    'steps: []\n',
])
def test_syntax_errors(text):
    with pytest.raises(RunbookSyntaxError):
        RunbookService.parse_runbook(text)


@pytest.mark.parametrize('seed', range(100))
def test_runbook_text_round_trip(seed):
    spec = random_runbook(random.Random(seed))
    assert RunbookService.parse_runbook(runbook_yaml(spec)) == spec


def test_same_text_parses_to_same_spec(helm_spec):
    text = runbook_yaml(helm_spec)
    first = RunbookService.parse_runbook(text)
    second = RunbookService.parse_runbook(text)
    assert first == second == helm_spec
    assert runbook_yaml(first) == text


def rules_by_hand(spec):
    """Independent, order-free statement of the validation rules"""
    rules = set()
    if not spec.topic_meta.topic_id.strip():
        rules.add('EmptyTopicId')
    declared = {v.name for v in spec.variables}
    for variable in spec.variables:
        name = variable.name
        if not (name and name[0] in 'abcdefghijklmnopqrstuvwxyz'
                and all(c in 'abcdefghijklmnopqrstuvwxyz0123456789_' for c in name)):
            rules.add('InvalidVariableName')
    ids = [step.id for step in spec.steps]
    for step in spec.steps:
        if not step.id.strip():
            rules.add('EmptyStepId')
        elif ids.count(step.id) > 1:
            rules.add('DuplicateStepId')
        if any(name not in declared for name in step.command_template.placeholder_names):
            rules.add('UndeclaredPlaceholder')
        if step.expectation.output_regex == '(':
            rules.add('InvalidPattern')
    return rules


def mutate(spec, rng):
    choice = rng.randrange(6)
    steps = list(spec.steps)
    if choice == 0:
        return replace(spec, topic_meta=replace(spec.topic_meta, topic_id=''))
    if choice == 1:
        return replace(spec, variables=spec.variables + (Variable('Not-Valid'),))
    if choice == 2:
        steps.append(RunbookStep(id=steps[0].id if steps else 'x', prose='', command_template=CommandText('true')))
        if len(steps) == 1:
            steps.append(steps[0])
    elif choice == 3:
        steps.append(RunbookStep(id='', prose='', command_template=CommandText('true')))
    elif choice == 4:
        steps.append(RunbookStep(id='undeclared', prose='', command_template=CommandText('echo <zz_undeclared>')))
    else:
        steps.append(RunbookStep(id='bad-regex', prose='', command_template=CommandText('true'),
                                 expectation=Expectation(output_regex='(')))
    return replace(spec, steps=tuple(steps))


@pytest.mark.parametrize('seed', range(100))
def test_validation_matches_rules_by_hand(seed):
    rng = random.Random(seed)
    spec = random_runbook(rng)
    assert RunbookService.validate_runbook(spec) == []

    for _ in range(rng.randint(1, 3)):
        spec = mutate(spec, rng)
    assert {v.rule for v in RunbookService.validate_runbook(spec)} == rules_by_hand(spec)


def test_violations_keep_rule_order():
    spec = random_runbook(random.Random(7))
    spec = replace(
        spec,
        topic_meta=TopicMeta(topic_id='', title='t'),
        steps=spec.steps + (RunbookStep(id='', prose='', command_template=CommandText('echo <zz_not_declared_9>')),),
    )
    rules = [v.rule for v in RunbookService.validate_runbook(spec)]
    assert rules[0] == 'EmptyTopicId'
    assert rules[-2:] == ['EmptyStepId', 'UndeclaredPlaceholder']
