import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

from docdrift.config.settings import Config
from docdrift.exceptions import DuplicateTopicId, InvalidBindings
from docdrift.models.dita import DitaTopic
from docdrift.models.execution import Bindings
from docdrift.models.runbook import RunbookSpec
from docdrift.services.runbook_service import RunbookService
from docdrift.utils.dita_parser import DitaParser

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class FileService:
    """Service for file operations"""

    @staticmethod
    def allowed_file(filename: str, extension: str = Config.TOPIC_EXTENSION) -> bool:
        """
        Check if the file has the expected extension

        Args:
            filename: Name of the file
            extension: Extension including the dot

        Returns:
            True if the filename ends with the extension (case-insensitive)
        """
        return filename.lower().endswith(extension.lower())

    @staticmethod
    def get_topic_files_from_folder(folder_path: PathLike) -> List[Path]:
        """
        Get all topic files below a folder

        Args:
            folder_path: Path to the folder

        Returns:
            Sorted list of .dita files, searched recursively
        """
        folder = Path(folder_path)
        return sorted(p for p in folder.rglob('*') if p.is_file() and FileService.allowed_file(p.name))

    @staticmethod
    def load_topics(folder_path: PathLike) -> List[DitaTopic]:
        """
        Parse every topic in a folder

        Args:
            folder_path: Documentation folder

        Returns:
            Topics in file-path order

        Raises:
            DuplicateTopicId: Two files declare the same topic id
        """
        topics: List[DitaTopic] = []
        sources: Dict[str, Path] = {}
        for path in FileService.get_topic_files_from_folder(folder_path):
            topic = DitaParser.parse_topic(path.read_bytes(), source=str(path))
            if topic.id in sources:
                raise DuplicateTopicId(topic.id, [str(sources[topic.id]), str(path)])
            sources[topic.id] = path
            topics.append(topic)
        logger.info('loaded %d topics from %s', len(topics), folder_path)
        return topics

    @staticmethod
    def write_topics(topics: Sequence[DitaTopic], output_dir: PathLike) -> List[Path]:
        """Write each topic to <output_dir>/<topic_id>.dita"""
        folder = Path(output_dir)
        folder.mkdir(parents=True, exist_ok=True)
        written = []
        for topic in topics:
            path = folder / f'{topic.id}{Config.TOPIC_EXTENSION}'
            path.write_text(DitaParser.serialize_topic(topic), encoding='utf-8')
            written.append(path)
        return written

    @staticmethod
    def load_runbook(path: PathLike) -> RunbookSpec:
        return RunbookService.parse_runbook(Path(path).read_text(encoding='utf-8'))

    @staticmethod
    def load_bindings(path: PathLike) -> Bindings:
        """
        Read a bindings file

        Args:
            path: Either a flat JSON object or key=value lines ('#' starts a comment)

        Returns:
            Bindings

        Raises:
            InvalidBindings: The file cannot be read as either format
        """
        text = Path(path).read_text(encoding=Config.BINDINGS_ENCODING)
        return FileService.parse_bindings(text)

    @staticmethod
    def parse_bindings(text: str) -> Bindings:
        if text.lstrip().startswith('{'):
            try:
                data = json.loads(text)
            except ValueError as exc:
                raise InvalidBindings(f'bindings JSON is invalid: {exc}') from exc
            if not isinstance(data, dict) or not all(isinstance(v, str) for v in data.values()):
                raise InvalidBindings('bindings JSON must be a flat object of strings')
            return Bindings(data)

        values = {}
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            if '=' not in line:
                raise InvalidBindings(f'line {number}: expected key=value')
            key, value = line.split('=', 1)
            values[key.strip()] = value.strip()
        return Bindings(values)

    @staticmethod
    def read_json(path: PathLike) -> Any:
        return json.loads(Path(path).read_text(encoding='utf-8'))

    @staticmethod
    def write_json(data: Any, path: PathLike) -> Path:
        target = Path(path)
        if target.parent != Path('.'):
            target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(json.dumps(data, indent=2, ensure_ascii=False) + '\n', encoding='utf-8')
        return target
