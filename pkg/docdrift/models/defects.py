"""Bug-report records and the summaries computed from them."""

from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Dict, Optional, Tuple


class DocType(str, Enum):
    DEPLOYMENT_GUIDE = 'DeploymentGuide'
    INSTALLATION_GUIDE = 'InstallationGuide'
    API_REFERENCE = 'ApiReference'
    USER_MANUAL = 'UserManual'
    GETTING_STARTED_GUIDE = 'GettingStartedGuide'
    RELEASE_NOTE = 'ReleaseNote'


DOC_TYPE_TITLES = {
    DocType.DEPLOYMENT_GUIDE: 'Deployment Guides',
    DocType.INSTALLATION_GUIDE: 'Installation Guides',
    DocType.API_REFERENCE: 'API References',
    DocType.USER_MANUAL: 'User Manuals',
    DocType.GETTING_STARTED_GUIDE: 'Getting Started Guides',
    DocType.RELEASE_NOTE: 'Release Note/Change Log',
}


class Origin(str, Enum):
    INTERNAL = 'Internal'
    EXTERNAL = 'External'


class Severity(str, Enum):
    A = 'A'
    B = 'B'
    C = 'C'


@dataclass(frozen=True)
class DefectRecord:
    """One documentation bug report"""

    id: str
    document: str
    doc_type: DocType
    origin: Origin
    severity: Severity
    registered_at: datetime
    assigned_at: Optional[datetime] = None
    resolved_at: Optional[datetime] = None
    labels: Tuple[str, ...] = ()
    annotation: Optional[str] = None

    @property
    def assign_days(self) -> Optional[float]:
        if self.assigned_at is None:
            return None
        return (self.assigned_at - self.registered_at).total_seconds() / 86400

    @property
    def resolve_days(self) -> Optional[float]:
        """Days from assignment until the fix was accepted"""
        if self.assigned_at is None or self.resolved_at is None:
            return None
        return (self.resolved_at - self.assigned_at).total_seconds() / 86400


@dataclass(frozen=True)
class DefectDraft:
    """A candidate bug report produced from a failed documentation test"""

    id: str
    document: str
    labels: Tuple[str, ...]
    annotation: str
    origin: Origin = Origin.INTERNAL
    severity: Severity = Severity.C
    doc_type: Optional[DocType] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'id': self.id,
            'document': self.document,
            'doc_type': self.doc_type.value if self.doc_type else None,
            'origin': self.origin.value,
            'severity': self.severity.value,
            'labels': list(self.labels),
            'annotation': self.annotation,
        }


@dataclass(frozen=True)
class CostMetrics:
    """Cost approximation: origin and severity counts plus mean durations in days"""

    origin_counts: Dict[Origin, int]
    severity_counts: Dict[Severity, int]
    mean_assign_days: Dict[str, Optional[float]]
    mean_resolve_days: Dict[str, Optional[float]]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'origin_counts': {k.value: v for k, v in self.origin_counts.items()},
            'severity_counts': {k.value: v for k, v in self.severity_counts.items()},
            'mean_assign_days': dict(self.mean_assign_days),
            'mean_resolve_days': dict(self.mean_resolve_days),
        }


@dataclass(frozen=True)
class SavingsEstimate:
    """
    Projected effect of automated documentation checks

    Attributes:
        coverage_fraction: Share of label occurrences on automation-flagged leaves
        prevented_reports: round(coverage_fraction * doc_bug_total)
        prevented_reports_rounded: Same chain with the coverage first rounded to a whole percent
        fraction_of_all: prevented_reports / all_bug_total
        automation_records: Records with at least one automation-flagged label
        mean_resolve_days_automation: Mean resolve time over those records
    """
    coverage_fraction: float
    prevented_reports: int
    prevented_reports_rounded: int
    fraction_of_all: float
    doc_bug_total: int
    all_bug_total: int
    automation_records: int = 0
    mean_resolve_days_automation: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'coverage_fraction': round(self.coverage_fraction, 4),
            'prevented_reports': self.prevented_reports,
            'prevented_reports_rounded_chain': self.prevented_reports_rounded,
            'fraction_of_all': round(self.fraction_of_all, 4),
            'doc_bug_total': self.doc_bug_total,
            'all_bug_total': self.all_bug_total,
            'automation_records': self.automation_records,
            'mean_resolve_days_automation': self.mean_resolve_days_automation,
        }


@dataclass(frozen=True)
class DebtSummary:
    record_count: int
    doc_type_counts: Dict[DocType, int]
    taxonomy_counts: Dict[str, int]
    cost: CostMetrics
    savings: SavingsEstimate
    taxonomy_names: Dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'record_count': self.record_count,
            'doc_type_counts': {k.value: v for k, v in self.doc_type_counts.items()},
            'taxonomy_counts': dict(self.taxonomy_counts),
            **self.cost.to_dict(),
            'automation_savings': self.savings.to_dict(),
        }
