from pathlib import Path
from typing import Optional

import click

from docdrift.commands.base import emit, pass_config, save_json, status
from docdrift.config.settings import Config, GlobalConfig
from docdrift.models.execution import ExecutionPlan
from docdrift.services.doctest_service import DocTestService
from docdrift.services.file_service import FileService
from docdrift.services.runners import build_runner
from docdrift.utils.report_formatter import ReportFormatter


@click.command('extract')
@click.option('--docs', 'docs_dir', required=True,
              type=click.Path(exists=True, file_okay=False, path_type=Path), help='Documentation folder.')
@click.option('--bindings', 'bindings_path', required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help='Placeholder values: a JSON object or key=value lines.')
@click.option('-o', '--output', 'plan_path', required=True,
              type=click.Path(dir_okay=False, path_type=Path), help='Where to write the plan JSON.')
@click.option('--runbook', 'runbook_path', type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help='Take step expectations from this runbook.')
@click.option('--quote', is_flag=True, help='Single-quote substituted values for the shell.')
@pass_config
def extract(config: GlobalConfig, docs_dir: Path, bindings_path: Path, plan_path: Path,
            runbook_path: Optional[Path], quote: bool) -> int:
    """Extract documented commands into an execution plan"""
    topics = FileService.load_topics(docs_dir)
    bindings = FileService.load_bindings(bindings_path)
    expectations = None
    if runbook_path is not None:
        expectations = DocTestService.expectations_from_runbook(FileService.load_runbook(runbook_path))

    plan = DocTestService.build_plan(topics, bindings, expectations=expectations, quote=quote)
    FileService.write_json(plan.to_dict(), plan_path)
    status(config, f'📄 plan written to {plan_path}')

    emit(config, plan.to_dict(),
         f'✅ {len(plan.steps)} command(s) from {len(topics)} topic(s) planned into {plan_path}')
    return 0


@click.command('run')
@click.argument('plan_path', metavar='PLAN', type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option('--runner', 'runner_kind', type=click.Choice(['shell', 'dry-run', 'mock']), default='shell',
              show_default=True, help='How to execute commands.')
@click.option('--fixtures', 'fixtures_path', type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help='Mock runner fixtures (JSON array).')
@click.option('--miss', type=click.Choice(Config.MOCK_MISS_BEHAVIORS), default='not-found', show_default=True,
              help='Mock runner behavior for commands without a fixture.')
@click.option('--prefix-match', is_flag=True, help='Let mock fixtures match by command prefix.')
@click.option('--fail-fast', is_flag=True, help='Stop at the first failing step.')
@click.option('-o', '--output', 'report_path', type=click.Path(dir_okay=False, path_type=Path),
              help='Write the run report JSON here.')
@click.option('--defects', 'defects_path', type=click.Path(dir_okay=False, path_type=Path),
              help='Write candidate bug reports for failed steps here.')
@pass_config
def run(config: GlobalConfig, plan_path: Path, runner_kind: str, fixtures_path: Optional[Path], miss: str,
        prefix_match: bool, fail_fast: bool, report_path: Optional[Path], defects_path: Optional[Path]) -> int:
    """
    Run an execution plan and judge every step

    Exits 0 only when every planned step ran and passed.
    """
    plan = ExecutionPlan.from_dict(FileService.read_json(plan_path))
    runner = build_runner(runner_kind, fixtures=fixtures_path, miss=miss, prefix_match=prefix_match)
    status(config, f'🚀 running {len(plan.steps)} step(s) with the {runner.name} runner')

    report = DocTestService.execute_plan(plan, runner, fail_fast=fail_fast)

    save_json(config, report.to_dict(), report_path, 'run report')
    if defects_path is not None:
        drafts = DocTestService.report_to_defects(report)
        save_json(config, [draft.to_dict() for draft in drafts], defects_path, f'{len(drafts)} defect draft(s)')

    emit(config, report.to_dict(), ReportFormatter(config.color).format_run(report))
    return 0 if report.all_passed else 1


def register_commands(cli: click.Group) -> None:
    cli.add_command(extract)
    cli.add_command(run)
