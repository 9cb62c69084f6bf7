from pathlib import Path
from typing import Optional

import click

from docdrift.commands.base import emit, pass_config, save_json, status
from docdrift.config.settings import GlobalConfig
from docdrift.services.docgen_service import DocGenService
from docdrift.services.file_service import FileService
from docdrift.utils.report_formatter import ReportFormatter


@click.command('generate')
@click.argument('spec_path', metavar='SPEC', type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option('-o', '--output', 'output_dir', required=True,
              type=click.Path(file_okay=False, path_type=Path), help='Directory for the generated topics.')
@click.option('--examples', is_flag=True, help='Append an example command with variable defaults to step prose.')
@pass_config
def generate(config: GlobalConfig, spec_path: Path, output_dir: Path, examples: bool) -> int:
    """
    Generate DITA topics from a runbook

    Writes one <topic_id>.dita file per topic into the output directory.
    """
    spec = FileService.load_runbook(spec_path)
    topics = DocGenService.generate_topics(spec, include_examples=examples)
    written = FileService.write_topics(topics, output_dir)

    for path in written:
        status(config, f'📄 {path}')
    emit(config,
         {'runbook': spec.name, 'topics': [topic.id for topic in topics], 'written': [str(p) for p in written]},
         f'✅ Generated {len(written)} topic(s) from {spec_path} into {output_dir}')
    return 0


@click.command('check-sync')
@click.argument('spec_path', metavar='SPEC', type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option('--docs', 'docs_dir', required=True,
              type=click.Path(exists=True, file_okay=False, path_type=Path), help='Documentation folder to check.')
@click.option('--report', 'report_path', type=click.Path(dir_okay=False, path_type=Path),
              help='Also write the drift report as JSON to this file.')
@click.option('--compare-prose', is_flag=True, help='Report prose differences too.')
@click.option('--ignore-extra-topics', is_flag=True, help='Do not report topics the runbook does not generate.')
@click.option('--examples', is_flag=True, help='Compare against topics generated with --examples.')
@pass_config
def check_sync(config: GlobalConfig, spec_path: Path, docs_dir: Path, report_path: Optional[Path],
               compare_prose: bool, ignore_extra_topics: bool, examples: bool) -> int:
    """
    Check that documentation still matches its runbook

    Exits 1 when any drift is found, so it can gate CI.
    """
    spec = FileService.load_runbook(spec_path)
    topics = FileService.load_topics(docs_dir)
    for topic in topics:
        for warning in topic.warnings:
            status(config, f'⚠️  {topic.id}: {warning}')

    report = DocGenService.check_sync(
        spec,
        topics,
        compare_prose=compare_prose,
        report_extra_topics=not ignore_extra_topics,
        include_examples=examples,
    )

    save_json(config, report.to_dict(), report_path, 'drift report')
    emit(config, report.to_dict(), ReportFormatter(config.color).format_drift(report))
    return 0 if report.in_sync else 1


def register_commands(cli: click.Group) -> None:
    cli.add_command(generate)
    cli.add_command(check_sync)
