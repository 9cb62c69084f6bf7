import pytest

from docdrift.exceptions import NonLeafLabel, TaxonomyError, UnknownLabel
from docdrift.services.taxonomy_service import TaxonomyService


def test_packaged_taxonomy(taxonomy):
    assert [root.key for root in taxonomy.roots] == ['InformationContentWhat', 'InformationContentHow']
    assert len(taxonomy.leaves) == 15
    assert {leaf.key for leaf in taxonomy.automation_leaves} == {
        'ErroneousCodeExamples', 'FaultyTutorial', 'InappropriateInstallationInstructions',
        'MissingConfigurationInstructions', 'InstallationDeploymentRelease',
        'MissingDocNewFeature', 'OutdatedExample',
    }


def test_walk_is_pre_order(taxonomy):
    keys = [node.key for node in taxonomy.walk()]
    assert keys[:5] == ['InformationContentWhat', 'Correctness', 'ErroneousCodeExamples',
                        'FaultyTutorial', 'InappropriateInstallationInstructions']
    assert keys[-1] == 'Usefulness'
    assert taxonomy.depth('OutdatedExample') == 2


@pytest.mark.parametrize('label', ['Erroneous code examples', 'erroneous CODE examples', 'ErroneousCodeExamples'])
def test_labels_resolve_by_name_or_key(taxonomy, label):
    assert TaxonomyService.leaf_for(taxonomy, label).key == 'ErroneousCodeExamples'


def test_unknown_and_internal_labels(taxonomy):
    with pytest.raises(UnknownLabel):
        TaxonomyService.leaf_for(taxonomy, 'Typos')
    with pytest.raises(NonLeafLabel):
        TaxonomyService.leaf_for(taxonomy, 'Correctness')


@pytest.mark.parametrize('nodes', [
    [{'key': 'a'}, {'key': 'a'}],
    [{'key': 'a', 'name': 'Same'}, {'key': 'b', 'name': 'same'}],
    [{'key': 'A', 'name': 'Beta'}, {'key': 'beta', 'name': 'Gamma'}],
    [{'key': 'leaf'}, {'key': 'LEAF', 'name': 'Other'}],
    [{'key': 'a', 'parent': 'missing'}],
    [{'key': 'root'}, {'key': 'a', 'parent': 'b'}, {'key': 'b', 'parent': 'a'}],
    [{'key': 'root', 'automation': True}, {'key': 'leaf', 'parent': 'root'}],
    [{'name': 'no key'}],
])
def test_invalid_taxonomies(nodes):
    with pytest.raises(TaxonomyError):
        TaxonomyService.from_data({'nodes': nodes})


def test_load_from_file(tmp_path):
    path = tmp_path / 'tiny.yaml'
    path.write_text('nodes:\n  - {key: top, name: Top}\n  - {key: leaf, name: Leaf, parent: top, automation: true}\n')
    taxonomy = TaxonomyService.load(path)
    assert [n.key for n in taxonomy.automation_leaves] == ['leaf']


def test_unreadable_file(tmp_path):
    with pytest.raises(TaxonomyError):
        TaxonomyService.load(tmp_path / 'missing.yaml')


def test_key_that_spells_another_name_is_rejected():
    with pytest.raises(TaxonomyError) as excinfo:
        TaxonomyService.from_data({'nodes': [{'key': 'A', 'name': 'Beta'}, {'key': 'beta', 'name': 'Gamma'}]})
    assert "'beta'" in excinfo.value.message


def test_key_equal_to_its_own_name_is_fine():
    taxonomy = TaxonomyService.from_data({'nodes': [{'key': 'Usability', 'name': 'usability'}]})
    assert taxonomy.resolve('USABILITY').key == 'Usability'
