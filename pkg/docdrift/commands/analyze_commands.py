from pathlib import Path
from typing import Optional, Tuple

import click

from docdrift.commands.base import emit, pass_config, save_json, status
from docdrift.config.settings import GlobalConfig
from docdrift.services.debt_service import DebtService
from docdrift.services.taxonomy_service import TaxonomyService
from docdrift.utils.report_formatter import ReportFormatter


def parse_totals(ctx: click.Context, param: click.Parameter, value: Optional[str]) -> Optional[Tuple[int, int]]:
    """Parse 'DOC_TOTAL,ALL_TOTAL', e.g. 318,1663"""
    if value is None:
        return None
    parts = [part.strip() for part in value.split(',')]
    if len(parts) != 2 or not all(part.isdigit() for part in parts):
        raise click.BadParameter('expected two whole numbers, e.g. 318,1663')
    return int(parts[0]), int(parts[1])


@click.command('analyze')
@click.option('--dataset', 'dataset_path', required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path), help='Bug-report CSV.')
@click.option('--taxonomy', 'taxonomy_path', type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help='Taxonomy YAML; the packaged taxonomy by default.')
@click.option('--totals', callback=parse_totals, metavar='DOC,ALL',
              help='Documentation and overall bug totals for the savings estimate.')
@click.option('-o', '--output', 'summary_path', type=click.Path(dir_okay=False, path_type=Path),
              help='Write the summary JSON here.')
@pass_config
def analyze(config: GlobalConfig, dataset_path: Path, taxonomy_path: Optional[Path],
            totals: Optional[Tuple[int, int]], summary_path: Optional[Path]) -> int:
    """Summarize documentation debt in a bug-report dataset"""
    taxonomy = TaxonomyService.load(taxonomy_path or config.default_taxonomy)
    records = DebtService.load_dataset(dataset_path)
    status(config, f'📂 {len(records)} records loaded from {dataset_path}')

    doc_total, all_total = totals if totals is not None else (None, None)
    summary = DebtService.summarize(records, taxonomy, doc_bug_total=doc_total, all_bug_total=all_total)

    save_json(config, summary.to_dict(), summary_path, 'summary')
    emit(config, summary.to_dict(), ReportFormatter(config.color).format_summary(summary, taxonomy))
    return 0


def register_commands(cli: click.Group) -> None:
    cli.add_command(analyze)
