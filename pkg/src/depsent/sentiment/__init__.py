from .composer import (
    OpKind,
    PolarityLabel,
    QueuedOperation,
    SentimentAnalyzer,
    TreeAnalysis,
    analyze_tree,
    apply_but,
    apply_if,
    apply_intensification,
    apply_negation,
    classify_document,
    classify_documents,
)
from .lexicon import Lexicon, dump_lexicon, load_lexicon, parse_lexicon
from .rules import SUBSET_COLUMNS, Flip, Rule, RuleSet, Shift, canonical_subset, rules_for_subset

__all__ = [
    "OpKind",
    "PolarityLabel",
    "QueuedOperation",
    "SentimentAnalyzer",
    "TreeAnalysis",
    "analyze_tree",
    "apply_but",
    "apply_if",
    "apply_intensification",
    "apply_negation",
    "classify_document",
    "classify_documents",
    "Lexicon",
    "dump_lexicon",
    "load_lexicon",
    "parse_lexicon",
    "SUBSET_COLUMNS",
    "Flip",
    "Rule",
    "RuleSet",
    "Shift",
    "canonical_subset",
    "rules_for_subset",
]
