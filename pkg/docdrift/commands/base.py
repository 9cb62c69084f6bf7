import json
import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Type

import click

from docdrift.config.settings import GlobalConfig
from docdrift.services.file_service import FileService

logger = logging.getLogger(__name__)

pass_config = click.make_pass_decorator(GlobalConfig)

ErrorHandler = Callable[[BaseException, GlobalConfig], int]


class DocdriftGroup(click.Group):
    """Root command group that also owns the exception-to-exit-code handlers"""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.error_handlers: List[Tuple[Type[BaseException], ErrorHandler]] = []

    def errorhandler(self, exc_type: Type[BaseException]) -> Callable[[ErrorHandler], ErrorHandler]:
        """Register a handler; the most specific registered type wins"""
        def decorator(func: ErrorHandler) -> ErrorHandler:
            self.error_handlers.append((exc_type, func))
            return func
        return decorator

    def handle_error(self, exc: BaseException, config: GlobalConfig) -> int:
        for cls in type(exc).__mro__:
            for exc_type, handler in self.error_handlers:
                if exc_type is cls:
                    return handler(exc, config)
        raise exc


def status(config: GlobalConfig, message: str, **styles) -> None:
    """Progress line on stderr"""
    if config.color and styles:
        message = click.style(message, **styles)
    click.echo(message, err=True)


def emit(config: GlobalConfig, data: Dict[str, Any], text: Optional[str] = None) -> None:
    """Write command data to stdout: JSON with --format json, otherwise the rendered text"""
    if config.is_json or text is None:
        click.echo(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        click.echo(text)


def save_json(config: GlobalConfig, data: Any, path: Optional[Path], what: str) -> None:
    if path is None:
        return
    FileService.write_json(data, path)
    status(config, f'📄 {what} written to {path}')
