import logging
from typing import List, Optional, Union

from lxml import etree

from docdrift.exceptions import MalformedXml, MissingTopicId, UnsupportedRootElement
from docdrift.models.dita import TOPIC_TYPES, CommandText, DitaTopic, TopicStep
from docdrift.utils.placeholders import normalize_text

logger = logging.getLogger(__name__)

DOCTYPES = {
    'task': '<!DOCTYPE task PUBLIC "-//OASIS//DTD DITA Task//EN" "task.dtd">',
    'concept': '<!DOCTYPE concept PUBLIC "-//OASIS//DTD DITA Concept//EN" "concept.dtd">',
}
BODY_ELEMENTS = {'task': 'taskbody', 'concept': 'conbody'}


class DitaParser:
    """Parser for the command-bearing DITA subset (see docs/dita-subset.md)"""

    @staticmethod
    def parse_topic(xml_text: Union[str, bytes], source: Optional[str] = None) -> DitaTopic:
        """
        Parse a DITA topic

        Args:
            xml_text: Topic XML, UTF-8
            source: File name used in error messages

        Returns:
            DitaTopic with steps and code blocks in document order; elements
            outside the subset are skipped and listed in topic.warnings

        Raises:
            MalformedXml: Input is not well-formed XML
            UnsupportedRootElement: Root is not <task> or <concept>
            MissingTopicId: Root has no id
        """
        data = xml_text.encode('utf-8') if isinstance(xml_text, str) else xml_text
        parser = etree.XMLParser(
            resolve_entities=False,
            no_network=True,
            load_dtd=False,
            remove_comments=True,
            remove_pis=True,
        )
        try:
            root = etree.fromstring(data, parser=parser)
        except etree.XMLSyntaxError as exc:
            line, column = getattr(exc, 'position', (None, None))
            raise MalformedXml(exc.msg, line, column, source) from exc

        tag = etree.QName(root).localname
        if tag not in TOPIC_TYPES:
            raise UnsupportedRootElement(tag)

        topic_id = (root.get('id') or '').strip()
        if not topic_id:
            raise MissingTopicId(tag)

        warnings: List[str] = []
        title = ''
        short_desc = None
        steps: List[TopicStep] = []

        for child in DitaParser._elements(root):
            name = etree.QName(child).localname
            if name == 'title':
                title = DitaParser._text(child)
            elif name == 'shortdesc':
                short_desc = DitaParser._text(child)
            elif name == BODY_ELEMENTS[tag]:
                if tag == 'task':
                    steps.extend(DitaParser._parse_taskbody(child, warnings))
                else:
                    steps.extend(DitaParser._parse_conbody(child, warnings))
            else:
                DitaParser._skip(child, warnings)

        for warning in warnings:
            logger.warning('%s: %s', source or topic_id, warning)

        return DitaTopic(
            id=topic_id,
            title=title,
            short_desc=short_desc,
            steps=tuple(steps),
            topic_type=tag,
            warnings=tuple(warnings),
        )

    @staticmethod
    def serialize_topic(topic: DitaTopic) -> str:
        """
        Serialize a topic to XML in the supported subset

        Args:
            topic: Topic to serialize

        Returns:
            XML text; angle brackets in commands are written as &lt; and &gt;
        """
        root = etree.Element(topic.topic_type, id=topic.id)
        etree.SubElement(root, 'title').text = topic.title
        if topic.short_desc is not None:
            etree.SubElement(root, 'shortdesc').text = topic.short_desc

        if topic.steps:
            body = etree.SubElement(root, BODY_ELEMENTS[topic.topic_type])
            if topic.topic_type == 'task':
                steps_el = etree.SubElement(body, 'steps')
                for step in topic.steps:
                    step_el = etree.SubElement(steps_el, 'step')
                    etree.SubElement(step_el, 'cmd').text = step.prose
                    if step.code_blocks:
                        info = etree.SubElement(step_el, 'info')
                        for command in step.code_blocks:
                            etree.SubElement(info, 'codeblock').text = command.raw
            else:
                for step in topic.steps:
                    etree.SubElement(body, 'p').text = step.prose
                    for command in step.code_blocks:
                        etree.SubElement(body, 'codeblock').text = command.raw

        return etree.tostring(
            root,
            xml_declaration=True,
            encoding='UTF-8',
            pretty_print=True,
            doctype=DOCTYPES[topic.topic_type],
        ).decode('utf-8')

    @staticmethod
    def _parse_taskbody(body, warnings: List[str]) -> List[TopicStep]:
        steps = []
        for child in DitaParser._elements(body):
            if etree.QName(child).localname != 'steps':
                DitaParser._skip(child, warnings)
                continue
            for step_el in DitaParser._elements(child):
                if etree.QName(step_el).localname != 'step':
                    DitaParser._skip(step_el, warnings)
                    continue
                steps.append(DitaParser._parse_step(step_el, warnings))
        return steps

    @staticmethod
    def _parse_step(step_el, warnings: List[str]) -> TopicStep:
        prose = ''
        blocks: List[CommandText] = []
        for child in DitaParser._elements(step_el):
            name = etree.QName(child).localname
            if name == 'cmd':
                prose = DitaParser._text(child)
            elif name == 'codeblock':
                blocks.append(DitaParser._command(child))
            elif name == 'info':
                for item in DitaParser._elements(child):
                    if etree.QName(item).localname == 'codeblock':
                        blocks.append(DitaParser._command(item))
                    else:
                        DitaParser._skip(item, warnings)
            else:
                DitaParser._skip(child, warnings)
        return TopicStep(prose=prose, code_blocks=tuple(blocks))

    @staticmethod
    def _parse_conbody(body, warnings: List[str]) -> List[TopicStep]:
        # every <p> opens a step; code blocks attach to the step before them
        steps: List[TopicStep] = []
        prose: Optional[str] = None
        blocks: List[CommandText] = []
        for child in DitaParser._elements(body):
            name = etree.QName(child).localname
            if name == 'p':
                if prose is not None or blocks:
                    steps.append(TopicStep(prose=prose or '', code_blocks=tuple(blocks)))
                prose, blocks = DitaParser._text(child), []
            elif name == 'codeblock':
                blocks.append(DitaParser._command(child))
            else:
                DitaParser._skip(child, warnings)
        if prose is not None or blocks:
            steps.append(TopicStep(prose=prose or '', code_blocks=tuple(blocks)))
        return steps

    @staticmethod
    def _elements(parent):
        return [child for child in parent if isinstance(child.tag, str)]

    @staticmethod
    def _text(element) -> str:
        return normalize_text(''.join(element.itertext()))

    @staticmethod
    def _command(element) -> CommandText:
        return CommandText(''.join(element.itertext()))

    @staticmethod
    def _skip(element, warnings: List[str]) -> None:
        warnings.append(
            f'skipped unsupported element <{etree.QName(element).localname}> at line {element.sourceline}'
        )
