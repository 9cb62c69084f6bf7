from typing import List, Optional, Sequence

import click

from docdrift.models.defects import DOC_TYPE_TITLES, DebtSummary, Origin, Severity
from docdrift.models.drift import DriftReport
from docdrift.models.execution import RunReport, Verdict
from docdrift.models.taxonomy import Taxonomy


class ReportFormatter:
    """Renders reports as human-readable tables"""

    def __init__(self, color: bool = False):
        self.color = color

    def style(self, text: str, **styles) -> str:
        return click.style(text, **styles) if self.color else text

    @staticmethod
    def table(headers: Sequence[str], rows: Sequence[Sequence[object]]) -> List[str]:
        """
        Lay out rows as aligned columns

        Args:
            headers: Column titles
            rows: Cell values; None renders as '-'

        Returns:
            Lines: header, rule, one line per row
        """
        cells = [[('-' if value is None else str(value)) for value in row] for row in rows]
        widths = [len(h) for h in headers]
        for row in cells:
            for i, value in enumerate(row):
                widths[i] = max(widths[i], len(value))
        lines = ['  '.join(h.ljust(w) for h, w in zip(headers, widths)).rstrip(),
                 '  '.join('-' * w for w in widths)]
        lines.extend('  '.join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells)
        return lines

    def format_drift(self, report: DriftReport) -> str:
        if report.in_sync:
            return self.style(f'✅ Documentation in sync ({report.checked_topics} topics, '
                              f'{report.checked_commands} commands checked)', fg='green')

        rows = [
            (entry.topic_id,
             entry.step_position,
             entry.step_id,
             entry.kind.value,
             entry.suggested_category,
             ReportFormatter._clip(entry.doc_text),
             ReportFormatter._clip(entry.source_text))
            for entry in report.entries
        ]
        lines = [self.style(f'❌ {len(report.entries)} drift entries', fg='red', bold=True), '']
        lines += self.table(('topic', 'pos', 'step', 'kind', 'category', 'documented', 'runbook'), rows)
        return '\n'.join(lines)

    def format_run(self, report: RunReport) -> str:
        lines = []
        for result in report.results:
            step = result.step
            if result.verdict is Verdict.PASS:
                lines.append(self.style(f'✅ {step.location}  {step.resolved_command}', fg='green'))
                continue
            lines.append(self.style(f'❌ {step.location}  {step.resolved_command}', fg='red'))
            lines.append(f'   {result.failure_kind.value}: {result.detail}')
            lines.append(f'   suggested category: {result.suggested_category}')
            stderr = result.outcome.stderr.strip()
            if stderr:
                lines.append(f'   stderr: {ReportFormatter._clip(stderr, 120)}')

        summary = report.summary()
        lines.append('')
        lines.append(f"📊 {summary['planned']} planned, {summary['executed']} executed, "
                     f"{summary['passed']} passed, {summary['failed']} failed, {summary['skipped']} skipped "
                     f'(runner: {report.runner})')
        return '\n'.join(lines)

    def format_summary(self, summary: DebtSummary, taxonomy: Optional[Taxonomy] = None) -> str:
        lines = [self.style(f'📂 {summary.record_count} documentation bug reports', bold=True), '']

        lines.append(self.style('Bug reports by document type', underline=True))
        lines += self.table(
            ('document type', 'reports'),
            [(DOC_TYPE_TITLES[doc_type], count) for doc_type, count in summary.doc_type_counts.items()],
        )

        lines += ['', self.style('Taxonomy frequencies', underline=True)]
        if taxonomy is not None:
            for node in taxonomy.walk():
                marker = ' *' if node.automation_flag else ''
                indent = '  ' * taxonomy.depth(node.key)
                lines.append(f'{indent}{node.name}: {summary.taxonomy_counts.get(node.key, 0)}{marker}')
            lines.append('(* automation-preventable)')
        else:
            for key, count in summary.taxonomy_counts.items():
                lines.append(f'{summary.taxonomy_names.get(key, key)}: {count}')

        cost = summary.cost
        lines += ['', self.style('Cost approximation', underline=True)]
        lines += self.table(
            ('', *(o.value for o in Origin), 'overall'),
            [
                ('reports', *(cost.origin_counts[o] for o in Origin), summary.record_count),
                ('mean days to assign', *(cost.mean_assign_days[o.value] for o in Origin),
                 cost.mean_assign_days['overall']),
                ('mean days to resolve', *(cost.mean_resolve_days[o.value] for o in Origin),
                 cost.mean_resolve_days['overall']),
            ],
        )
        lines.append('severity: ' + ', '.join(f'{s.value}={cost.severity_counts[s]}' for s in Severity))

        savings = summary.savings
        lines += ['', self.style('Automation savings', underline=True)]
        lines.append(f'coverage of automation-preventable categories: {savings.coverage_fraction:.1%}')
        lines.append(f'prevented reports: {savings.coverage_fraction:.4f} x {savings.doc_bug_total} '
                     f'= {savings.prevented_reports} (with coverage rounded first: '
                     f'{savings.prevented_reports_rounded})')
        lines.append(f'share of all bug reports: {savings.prevented_reports} / {savings.all_bug_total} '
                     f'= {savings.fraction_of_all:.1%}')
        if savings.mean_resolve_days_automation is not None:
            lines.append(f'mean resolve days, automation-preventable reports: '
                         f'{savings.mean_resolve_days_automation} ({savings.automation_records} reports)')
        return '\n'.join(lines)

    @staticmethod
    def _clip(text: Optional[str], width: int = 60) -> Optional[str]:
        if text is None:
            return None
        text = ' '.join(text.split())
        return text if len(text) <= width else text[:width - 3] + '...'
