"""Process entry point: argv in, exit code out.

Exit codes: 0 success, 1 drift found or a documented command failed,
2 usage or input error.
"""

import sys
from typing import Optional, Sequence

import click

from docdrift import create_cli
from docdrift.config.settings import GlobalConfig


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one docdrift invocation

    Args:
        argv: Arguments without the program name; sys.argv[1:] when None

    Returns:
        Process exit code
    """
    cli = create_cli()
    args = list(sys.argv[1:] if argv is None else argv)
    ctx = None
    try:
        ctx = cli.make_context('docdrift', args)
        with ctx:
            result = cli.invoke(ctx)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except Exception as exc:
        config = ctx.obj if ctx is not None and isinstance(ctx.obj, GlobalConfig) else GlobalConfig()
        return cli.handle_error(exc, config)
    return result if isinstance(result, int) else 0


def main() -> None:
    sys.exit(dispatch())
