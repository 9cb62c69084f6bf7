import json
import logging

import click

from docdrift.commands.base import DocdriftGroup
from docdrift.config.settings import GlobalConfig
from docdrift.exceptions import DocdriftError

logger = logging.getLogger(__name__)

USAGE_ERROR_STATUS = 2
# click >= 8.2 already prints the help for a bare group invocation
NO_ARGS_IS_HELP = getattr(click.exceptions, 'NoArgsIsHelpError', ())


def register_error_handlers(cli: DocdriftGroup) -> None:
    """Register error handlers for the command line"""

    @cli.errorhandler(click.UsageError)
    def usage_error(error: click.UsageError, config: GlobalConfig) -> int:
        """Handler for bad arguments: message plus the failing command's help"""
        error.show()
        if error.ctx is not None and not isinstance(error, NO_ARGS_IS_HELP):
            click.echo('', err=True)
            click.echo(error.ctx.get_help(), err=True)
        return USAGE_ERROR_STATUS

    @cli.errorhandler(click.ClickException)
    def click_error(error: click.ClickException, config: GlobalConfig) -> int:
        """Handler for files click could not open"""
        error.show()
        return USAGE_ERROR_STATUS

    @cli.errorhandler(click.Abort)
    def aborted(error: click.Abort, config: GlobalConfig) -> int:
        click.echo('Aborted!', err=True)
        return USAGE_ERROR_STATUS

    @cli.errorhandler(DocdriftError)
    def docdrift_error(error: DocdriftError, config: GlobalConfig) -> int:
        """Handler for invalid input files"""
        click.echo(f'❌ {error.message}', err=True)
        if config.is_json:
            click.echo(json.dumps(error.to_dict(), indent=2, ensure_ascii=False))
        return USAGE_ERROR_STATUS

    @cli.errorhandler(OSError)
    def os_error(error: OSError, config: GlobalConfig) -> int:
        click.echo(f'❌ {error}', err=True)
        if config.is_json:
            click.echo(json.dumps({'error': type(error).__name__, 'message': str(error)}))
        return USAGE_ERROR_STATUS

    @cli.errorhandler(Exception)
    def internal_error(error: Exception, config: GlobalConfig) -> int:
        """Handler for anything unexpected"""
        logger.debug('internal error', exc_info=error)
        click.echo(f'❌ internal error: {error}', err=True)
        if config.is_json:
            click.echo(json.dumps({'error': 'InternalError', 'message': str(error)}))
        return USAGE_ERROR_STATUS
