"""Documentation debt analysis over bug-report datasets.

Counts follow the dataset exactly; durations are fractional days rounded to
one decimal. Assign time runs from registration to assignment, resolve time
from assignment until the fix was accepted.
"""

import logging
import math
from collections import Counter
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd

from docdrift.config.settings import Config
from docdrift.exceptions import InvalidTimestampOrder, SchemaError, ZeroTotal
from docdrift.models.defects import (
    CostMetrics,
    DebtSummary,
    DefectRecord,
    DocType,
    Origin,
    SavingsEstimate,
    Severity,
)
from docdrift.models.taxonomy import Taxonomy
from docdrift.services.taxonomy_service import TaxonomyService

logger = logging.getLogger(__name__)

COLUMNS = ('id', 'document', 'doc_type', 'origin', 'severity', 'registered_at',
           'assigned_at', 'resolved_at', 'labels', 'annotation')
LABEL_SEPARATOR = ';'


class DebtService:
    """Service computing documentation debt metrics"""

    @staticmethod
    def load_dataset(path: Union[str, Path]) -> List[DefectRecord]:
        """
        Load a bug-report CSV

        Args:
            path: CSV with header id,document,doc_type,origin,severity,registered_at,
                assigned_at,resolved_at,labels,annotation

        Returns:
            One DefectRecord per row, in file order

        Raises:
            SchemaError: Rows that do not match the schema, by file line number
            InvalidTimestampOrder: Rows whose timestamps run backwards
        """
        try:
            frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding='utf-8')
        except pd.errors.EmptyDataError as exc:
            raise SchemaError([(1, 'file is empty; a header row is required')]) from exc
        except (pd.errors.ParserError, UnicodeDecodeError) as exc:
            raise SchemaError([(0, f'cannot read CSV: {exc}')]) from exc

        missing = [column for column in COLUMNS if column not in frame.columns]
        if missing:
            raise SchemaError([(1, 'missing columns: ' + ', '.join(missing))])

        stamps = {
            column: pd.to_datetime(frame[column].str.strip(), utc=True, errors='coerce', format='ISO8601')
            for column in ('registered_at', 'assigned_at', 'resolved_at')
        }

        records: List[DefectRecord] = []
        problems: List[Tuple[int, str]] = []
        out_of_order: List[int] = []

        for offset, row in enumerate(frame.to_dict('records')):
            line = offset + 2
            row_problems: List[str] = []

            record_id = row['id'].strip()
            if not record_id:
                row_problems.append('id is empty')
            doc_type = DebtService._enum(DocType, row['doc_type'], 'doc_type', row_problems)
            origin = DebtService._enum(Origin, row['origin'], 'origin', row_problems)
            severity = DebtService._enum(Severity, row['severity'], 'severity', row_problems)

            times: Dict[str, Optional[datetime]] = {}
            for column, parsed in stamps.items():
                raw = row[column].strip()
                value = parsed.iloc[offset]
                if not raw:
                    times[column] = None
                    if column == 'registered_at':
                        row_problems.append('registered_at is required')
                elif pd.isna(value):
                    times[column] = None
                    row_problems.append(f'{column} is not an RFC 3339 timestamp: {raw!r}')
                else:
                    times[column] = value.to_pydatetime()

            if row_problems:
                problems.extend((line, problem) for problem in row_problems)
                continue

            present = [t for t in (times['registered_at'], times['assigned_at'], times['resolved_at']) if t is not None]
            if any(a > b for a, b in zip(present, present[1:])):
                out_of_order.append(line)
                continue

            records.append(DefectRecord(
                id=record_id,
                document=row['document'].strip(),
                doc_type=doc_type,
                origin=origin,
                severity=severity,
                registered_at=times['registered_at'],
                assigned_at=times['assigned_at'],
                resolved_at=times['resolved_at'],
                labels=tuple(label.strip() for label in row['labels'].split(LABEL_SEPARATOR) if label.strip()),
                annotation=row['annotation'] or None,
            ))

        if problems:
            raise SchemaError(problems)
        if out_of_order:
            raise InvalidTimestampOrder(out_of_order)

        logger.info('loaded %d defect records from %s', len(records), path)
        return records

    @staticmethod
    def doc_type_distribution(records: Sequence[DefectRecord]) -> Dict[DocType, int]:
        """Bug reports per document type; every type is present, zero or not"""
        counts = Counter(record.doc_type for record in records)
        return {doc_type: counts.get(doc_type, 0) for doc_type in DocType}

    @staticmethod
    def taxonomy_frequencies(records: Sequence[DefectRecord], taxonomy: Taxonomy) -> Dict[str, int]:
        """
        Count label occurrences per taxonomy node

        Args:
            records: Labeled records; a record counts once per label it carries
            taxonomy: Taxonomy whose leaves the labels name

        Returns:
            Node key to count, in pre-order; internal nodes sum their leaves

        Raises:
            UnknownLabel: A label names no node (NonLeafLabel for internal nodes)
        """
        counts = {node.key: 0 for node in taxonomy.walk()}
        for record in records:
            for label in record.labels:
                leaf = TaxonomyService.leaf_for(taxonomy, label)
                counts[leaf.key] += 1
                for ancestor in taxonomy.ancestors(leaf.key):
                    counts[ancestor.key] += 1
        return counts

    @staticmethod
    def cost_metrics(records: Sequence[DefectRecord]) -> CostMetrics:
        """
        Cost approximation: detection origin, severity and mean durations

        Args:
            records: Records; durations use only records with the needed timestamps

        Returns:
            CostMetrics with means keyed by origin value and 'overall'
        """
        origin_counts = Counter(record.origin for record in records)
        severity_counts = Counter(record.severity for record in records)

        frame = pd.DataFrame({
            'origin': pd.Series([record.origin.value for record in records], dtype='object'),
            'assign_days': pd.Series([record.assign_days for record in records], dtype='float64'),
            'resolve_days': pd.Series([record.resolve_days for record in records], dtype='float64'),
        })

        return CostMetrics(
            origin_counts={origin: origin_counts.get(origin, 0) for origin in Origin},
            severity_counts={severity: severity_counts.get(severity, 0) for severity in Severity},
            mean_assign_days=DebtService._means(frame, 'assign_days'),
            mean_resolve_days=DebtService._means(frame, 'resolve_days'),
        )

    @staticmethod
    def automation_savings(
        records: Sequence[DefectRecord],
        taxonomy: Taxonomy,
        doc_bug_total: int,
        all_bug_total: int,
    ) -> SavingsEstimate:
        """
        Estimate how many reports automated documentation checks would prevent

        Args:
            records: Labeled records (the classified sample)
            taxonomy: Taxonomy carrying automation flags
            doc_bug_total: Documentation bug reports the sample represents
            all_bug_total: All bug reports in the same period

        Returns:
            SavingsEstimate; coverage is automation-flagged label occurrences over
            all label occurrences

        Raises:
            ZeroTotal: Either total is not positive
        """
        if doc_bug_total <= 0 or all_bug_total <= 0:
            raise ZeroTotal(f'totals must be positive, got {doc_bug_total} and {all_bug_total}')

        occurrences = 0
        automated = 0
        automation_resolve: List[float] = []
        automation_records = 0
        for record in records:
            flags = [TaxonomyService.leaf_for(taxonomy, label).automation_flag for label in record.labels]
            occurrences += len(flags)
            automated += sum(flags)
            if any(flags):
                automation_records += 1
                if record.resolve_days is not None:
                    automation_resolve.append(record.resolve_days)

        coverage = automated / occurrences if occurrences else 0.0
        prevented = DebtService._round_half_up(coverage * doc_bug_total)
        prevented_rounded = DebtService._round_half_up(round(coverage, 2) * doc_bug_total)
        mean_resolve = None
        if automation_resolve:
            mean_resolve = round(float(pd.Series(automation_resolve, dtype='float64').mean()), 1)

        return SavingsEstimate(
            coverage_fraction=coverage,
            prevented_reports=prevented,
            prevented_reports_rounded=prevented_rounded,
            fraction_of_all=prevented / all_bug_total,
            doc_bug_total=doc_bug_total,
            all_bug_total=all_bug_total,
            automation_records=automation_records,
            mean_resolve_days_automation=mean_resolve,
        )

    @staticmethod
    def summarize(
        records: Sequence[DefectRecord],
        taxonomy: Taxonomy,
        doc_bug_total: Optional[int] = None,
        all_bug_total: Optional[int] = None,
    ) -> DebtSummary:
        """Run every analysis; doc_bug_total defaults to the record count"""
        doc_total = doc_bug_total if doc_bug_total is not None else len(records)
        all_total = all_bug_total if all_bug_total is not None else Config.DEFAULT_ALL_BUG_TOTAL
        return DebtSummary(
            record_count=len(records),
            doc_type_counts=DebtService.doc_type_distribution(records),
            taxonomy_counts=DebtService.taxonomy_frequencies(records, taxonomy),
            cost=DebtService.cost_metrics(records),
            savings=DebtService.automation_savings(records, taxonomy, doc_total, all_total),
            taxonomy_names={node.key: node.name for node in taxonomy.walk()},
        )

    @staticmethod
    def _enum(enum_type, raw: str, column: str, problems: List[str]):
        try:
            return enum_type(raw.strip())
        except ValueError:
            allowed = ', '.join(member.value for member in enum_type)
            problems.append(f'{column} {raw!r} is not one of {allowed}')
            return None

    @staticmethod
    def _means(frame: pd.DataFrame, column: str) -> Dict[str, Optional[float]]:
        by_origin = frame.groupby('origin')[column].mean()
        means: Dict[str, Optional[float]] = {}
        for origin in Origin:
            value = by_origin.get(origin.value)
            means[origin.value] = None if value is None or pd.isna(value) else round(float(value), 1)
        overall = frame[column].mean()
        means['overall'] = None if pd.isna(overall) else round(float(overall), 1)
        return means

    @staticmethod
    def _round_half_up(value: float) -> int:
        return int(math.floor(value + 0.5))
