from .scores import (
    RULE_LABELS,
    AttachmentScores,
    LabelPR,
    MetricTable,
    attachment_scores,
    check_alignment,
    label_report,
    metric_table,
    per_label_pr,
)
from .significance import ComparisonResult, chi_squared_compare

__all__ = [
    "RULE_LABELS",
    "AttachmentScores",
    "LabelPR",
    "MetricTable",
    "attachment_scores",
    "check_alignment",
    "label_report",
    "metric_table",
    "per_label_pr",
    "ComparisonResult",
    "chi_squared_compare",
]
