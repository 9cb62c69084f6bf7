"""Tests for reading and writing the command-bearing DITA subset."""

import logging
import random

import pytest

from docdrift.exceptions import MalformedXml, MissingTopicId, UnsupportedRootElement
from docdrift.models.dita import CommandText, DitaTopic, TopicStep
from docdrift.utils.dita_parser import DitaParser
from tests.conftest import KUBECTL_COMMAND
from tests.generators import random_topic

KUBECTL_TOPIC = """<?xml version="1.0" encoding="UTF-8"?>
<!DOCTYPE task PUBLIC "-//OASIS//DTD DITA Task//EN" "task.dtd">
<task id="backup-configmap">
  <title>Back up a
     customized ConfigMap</title>
  <taskbody>
    <steps>
      <step>
        <cmd>Export the customized ConfigMap.</cmd>
        <info>
          <codeblock>kubectl get configmap &lt;customized_configmap_name&gt; -o yaml \\
  -n &lt;namespace&gt; &lt;customized_configmap_name&gt;-&lt;namespace&gt;.yaml</codeblock>
        </info>
      </step>
    </steps>
  </taskbody>
</task>
"""


def test_parse_kubectl_topic():
    topic = DitaParser.parse_topic(KUBECTL_TOPIC)

    assert topic.id == 'backup-configmap'
    assert topic.title == 'Back up a customized ConfigMap'
    assert len(topic.steps) == 1
    assert topic.steps[0].prose == 'Export the customized ConfigMap.'
    assert [block.raw for block in topic.steps[0].code_blocks] == [KUBECTL_COMMAND]
    assert topic.steps[0].code_blocks[0].placeholder_names == ('customized_configmap_name', 'namespace')


def test_codeblock_directly_under_step():
    xml = ('<task id="t"><title>T</title><taskbody><steps>'
           '<step><cmd>Run it.</cmd><codeblock>ls -l</codeblock><codeblock>pwd</codeblock></step>'
           '</steps></taskbody></task>')
    topic = DitaParser.parse_topic(xml)
    assert [b.raw for b in topic.steps[0].code_blocks] == ['ls -l', 'pwd']


def test_concept_paragraphs_open_steps():
    xml = ('<concept id="c"><title>About</title><conbody>'
           '<codeblock>whoami</codeblock>'
           '<p>First.</p><codeblock>echo 1</codeblock>'
           '<p>Second.</p>'
           '</conbody></concept>')
    topic = DitaParser.parse_topic(xml)

    assert topic.topic_type == 'concept'
    assert topic.steps == (
        TopicStep(prose='', code_blocks=(CommandText('whoami'),)),
        TopicStep(prose='First.', code_blocks=(CommandText('echo 1'),)),
        TopicStep(prose='Second.'),
    )


def test_topic_without_steps_round_trips_without_body():
    topic = DitaTopic(id='empty', title='Nothing to do')
    xml = DitaParser.serialize_topic(topic)

    assert '<taskbody' not in xml
    assert DitaParser.parse_topic(xml) == topic


def test_serialized_topic_has_declaration_and_doctype():
    xml = DitaParser.serialize_topic(DitaTopic(id='c', title='C', topic_type='concept'))
    assert xml.startswith('<?xml')
    assert '<!DOCTYPE concept PUBLIC "-//OASIS//DTD DITA Concept//EN" "concept.dtd">' in xml


def test_placeholders_are_escaped_in_xml():
    topic = DitaTopic(id='t', title='T', steps=(TopicStep('Run.', (CommandText('echo <name>'),)),))
    xml = DitaParser.serialize_topic(topic)
    assert 'echo &lt;name&gt;' in xml


@pytest.mark.parametrize('text', [
    '  kubectl get \\\n  pods  ',
    'kubectl get pods',
    'kubectl get \\\n\\\n pods',
])
def test_command_text_is_normalized_on_construction(text):
    command = CommandText(text)
    assert command.raw == 'kubectl get pods'
    assert CommandText(command.raw) == command


def test_unnormalized_command_round_trips():
    topic = DitaTopic(id='t', title='T', steps=(
        TopicStep('Run.', (CommandText('helm status \\\n    <release> -n <namespace>'),)),
    ))
    assert topic.steps[0].code_blocks[0].raw == 'helm status <release> -n <namespace>'
    assert DitaParser.parse_topic(DitaParser.serialize_topic(topic)) == topic


@pytest.mark.parametrize('seed', range(200))
def test_round_trip(seed):
    topic = random_topic(random.Random(seed))
    assert DitaParser.parse_topic(DitaParser.serialize_topic(topic)) == topic


def test_unknown_elements_are_skipped_with_warning(caplog):
    xml = ('<task id="t"><title>T</title><prolog/><taskbody><steps>'
           '<step><cmd>Go.</cmd><stepresult>done</stepresult><codeblock>true</codeblock></step>'
           '</steps><result>ok</result></taskbody></task>')
    with caplog.at_level(logging.WARNING, logger='docdrift'):
        topic = DitaParser.parse_topic(xml, source='t.dita')

    assert [b.raw for b in topic.steps[0].code_blocks] == ['true']
    assert len(topic.warnings) == 3
    assert any('<stepresult>' in w for w in topic.warnings)
    assert 'skipped unsupported element' in caplog.text


def test_warnings_do_not_affect_equality():
    plain = DitaParser.parse_topic('<task id="t"><title>T</title></task>')
    noisy = DitaParser.parse_topic('<task id="t"><title>T</title><prolog/></task>')
    assert noisy.warnings and not plain.warnings
    assert plain == noisy


def test_malformed_xml_reports_position():
    with pytest.raises(MalformedXml) as excinfo:
        DitaParser.parse_topic('<task id="t">\n<title>T</title>\n<taskbody>\n</task>', source='bad.dita')
    assert excinfo.value.line is not None
    assert 'bad.dita' in str(excinfo.value)


def test_unsupported_root():
    with pytest.raises(UnsupportedRootElement) as excinfo:
        DitaParser.parse_topic('<reference id="r"><title>R</title></reference>')
    assert excinfo.value.tag == 'reference'


def test_missing_id():
    with pytest.raises(MissingTopicId):
        DitaParser.parse_topic('<task><title>T</title></task>')


def test_external_entities_are_not_expanded(tmp_path):
    secret = tmp_path / 'secret.txt'
    secret.write_text('do not read')
    xml = (f'<?xml version="1.0"?><!DOCTYPE task [<!ENTITY x SYSTEM "file://{secret}">]>'
           '<task id="t"><title>&x;</title></task>')
    topic = DitaParser.parse_topic(xml)
    assert 'do not read' not in topic.title
