import random
from pathlib import Path

import pytest

from docdrift.config.settings import Config
from docdrift.models.execution import Bindings
from docdrift.services.docgen_service import DocGenService
from docdrift.services.runbook_service import RunbookService
from docdrift.services.taxonomy_service import TaxonomyService

SAMPLES_DIR = Path(__file__).resolve().parent.parent / 'samples'

KUBECTL_COMMAND = ('kubectl get configmap <customized_configmap_name> -o yaml -n <namespace> '
                   '<customized_configmap_name>-<namespace>.yaml')

KUBECTL_RUNBOOK = """\
name: Back up a customized ConfigMap
topic:
  id: backup-configmap
  title: Back up a customized ConfigMap
variables:
  customized_configmap_name: my-config
  namespace: default
steps:
  - id: export-configmap
    prose: Export the customized ConfigMap to a YAML file.
    command: |
      kubectl get configmap <customized_configmap_name> -o yaml \\
        -n <namespace> <customized_configmap_name>-<namespace>.yaml
"""

HELM_RUNBOOK = """\
name: Upgrade the release
topic:
  id: upgrade-release
  title: Upgrade the release
variables:
  release: relx
  chart: chart
  namespace: default
steps:
  - id: show-values
    prose: Show the current values.
    command: helm get values <release> -n <namespace>
  - id: upgrade
    prose: Upgrade the release and keep the current values.
    command: helm upgrade <release> <chart> --reuse-values -n <namespace>
    expect:
      output_contains: has been upgraded
  - id: status
    prose: Check the release status.
    command: helm status <release> -n <namespace>
    expect:
      output_contains:
        - "STATUS: deployed"
"""


@pytest.fixture
def rng(request):
    """Random generator seeded from the test id, so failures replay"""
    return random.Random(request.node.nodeid)


@pytest.fixture
def kubectl_spec():
    return RunbookService.parse_runbook(KUBECTL_RUNBOOK)


@pytest.fixture
def helm_spec():
    return RunbookService.parse_runbook(HELM_RUNBOOK)


@pytest.fixture
def kubectl_bindings():
    return Bindings({'customized_configmap_name': 'cm-prod', 'namespace': 'ns1'})


@pytest.fixture
def helm_bindings():
    return Bindings({'release': 'relx', 'chart': 'chart', 'namespace': 'ns1'})


@pytest.fixture
def helm_topics(helm_spec):
    return DocGenService.generate_topics(helm_spec)


@pytest.fixture
def taxonomy():
    return TaxonomyService.load()


@pytest.fixture
def system_a_path():
    return Config.SYSTEM_A_DATASET


@pytest.fixture
def sample_path():
    return Config.SAMPLE_DATASET


@pytest.fixture
def write_file(tmp_path):
    def _write(name: str, content: str) -> Path:
        path = tmp_path / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content, encoding='utf-8')
        return path
    return _write
