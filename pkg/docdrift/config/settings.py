import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import click


class Config:
    """Application configuration"""

    # File settings
    TOPIC_EXTENSION = '.dita'
    BINDINGS_ENCODING = 'utf-8'

    # Packaged data
    DATA_DIR = Path(__file__).resolve().parent.parent / 'data'
    DEFAULT_TAXONOMY = DATA_DIR / 'taxonomy.yaml'
    SYSTEM_A_DATASET = DATA_DIR / 'system_a_318.csv'
    SAMPLE_DATASET = DATA_DIR / 'sample_101.csv'

    # Cost approximation settings
    DEFAULT_ALL_BUG_TOTAL = 1663

    # Runner settings
    SHELL_TIMEOUT_SECONDS = 300
    MOCK_MISS_BEHAVIORS = ('not-found', 'pass', 'raise')
    MOCK_REGEX_SAMPLES = 25
    ANNOTATION_EXCERPT_CHARS = 200

    # Output settings
    OUTPUT_FORMATS = ('table', 'json')
    COLOR_MODES = ('auto', 'always', 'never')
    NO_COLOR_ENV = 'DOCDRIFT_NO_COLOR'
    DATA_DIR_ENV = 'DOCDRIFT_DATA_DIR'
    LOG_FORMAT = '%(levelname)s %(name)s: %(message)s'


@dataclass(frozen=True)
class GlobalConfig:
    """Per-invocation settings shared by every subcommand"""

    verbosity: int = 0
    output_format: str = 'table'
    color: bool = False
    data_dir: Path = Config.DATA_DIR

    @classmethod
    def from_options(cls, verbosity: int, output_format: str, color: str = 'auto',
                     data_dir: Optional[Path] = None) -> 'GlobalConfig':
        """
        Build the invocation config from root options and the environment

        Args:
            verbosity: Number of -v flags
            output_format: 'table' or 'json'
            color: 'always', 'never' or 'auto' (color only on a terminal)
            data_dir: Directory holding the default taxonomy and datasets

        Returns:
            GlobalConfig with color resolved against DOCDRIFT_NO_COLOR and the terminal
        """
        if output_format not in Config.OUTPUT_FORMATS:
            raise click.BadParameter(f'unknown output format: {output_format}')
        if color not in Config.COLOR_MODES:
            raise click.BadParameter(f'unknown color mode: {color}')

        if os.environ.get(Config.NO_COLOR_ENV) or color == 'never':
            use_color = False
        elif color == 'always':
            use_color = True
        else:
            use_color = sys.stdout.isatty()

        return cls(
            verbosity=verbosity,
            output_format=output_format,
            color=use_color,
            data_dir=Path(data_dir) if data_dir is not None else Config.DATA_DIR,
        )

    @property
    def default_taxonomy(self) -> Path:
        return self.data_dir / Config.DEFAULT_TAXONOMY.name

    @property
    def is_json(self) -> bool:
        return self.output_format == 'json'

    @property
    def log_level(self) -> int:
        if self.verbosity >= 2:
            return logging.DEBUG
        if self.verbosity == 1:
            return logging.INFO
        return logging.WARNING

    def configure_logging(self) -> None:
        """Send library logging to the current stderr at the requested verbosity"""
        root = logging.getLogger('docdrift')
        root.setLevel(self.log_level)
        for handler in [h for h in root.handlers if getattr(h, 'docdrift_stderr', False)]:
            root.removeHandler(handler)
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(Config.LOG_FORMAT))
        handler.docdrift_stderr = True
        root.addHandler(handler)
