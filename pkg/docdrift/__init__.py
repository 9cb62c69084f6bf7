from pathlib import Path
from typing import Optional

import click

__version__ = '0.1.0'


def create_cli() -> click.Group:
    """Command-line application factory"""
    from docdrift.commands.base import DocdriftGroup
    from docdrift.config.settings import Config, GlobalConfig

    @click.group(cls=DocdriftGroup, name='docdrift', context_settings={'help_option_names': ['-h', '--help']})
    @click.option('-v', '--verbose', 'verbosity', count=True, help='More logging on stderr (-vv for debug).')
    @click.option('--format', 'output_format', type=click.Choice(Config.OUTPUT_FORMATS), default='table',
                  show_default=True, help='Output format for command data.')
    @click.option('--color', 'color', type=click.Choice(Config.COLOR_MODES), default='auto', show_default=True,
                  help='Colorize table output.')
    @click.option('--no-color', is_flag=True, help='Same as --color never.')
    @click.option('--data-dir', type=click.Path(exists=True, file_okay=False, path_type=Path),
                  envvar=Config.DATA_DIR_ENV, help='Directory with the default taxonomy and datasets.')
    @click.version_option(__version__, '--version', prog_name='docdrift', message='%(prog)s %(version)s')
    @click.pass_context
    def cli(ctx: click.Context, verbosity: int, output_format: str, color: str, no_color: bool,
            data_dir: Optional[Path]) -> None:
        """Keep runbooks, DITA documentation and the running system in step"""
        config = GlobalConfig.from_options(verbosity, output_format, 'never' if no_color else color, data_dir)
        config.configure_logging()
        ctx.obj = config

    # Register commands
    from docdrift.commands import analyze_commands, docgen_commands, doctest_commands
    docgen_commands.register_commands(cli)
    doctest_commands.register_commands(cli)
    analyze_commands.register_commands(cli)

    # Register error handlers
    from docdrift.commands import error_handlers
    error_handlers.register_error_handlers(cli)

    return cli
