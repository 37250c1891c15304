from .api import (
    AblationTable,
    AttachmentScores,
    ComparisonResult,
    Corpus,
    CurveSeries,
    DepsentError,
    DepTree,
    Experiment,
    ExperimentSpec,
    LabelPR,
    Lexicon,
    MetricTable,
    PerturbationConfig,
    PerturbationReport,
    PolarityLabel,
    RuleSet,
    Token,
    Treebank,
    TreebankPerturber,
    TreeVerifier,
    analyze_tree,
    attachment_scores,
    chi_squared_compare,
    classify_document,
    compare_systems,
    emit_reports,
    evaluate_files,
    label_report,
    load_corpus,
    load_experiment,
    load_lexicon,
    metric_table,
    open_experiment,
    parse_conll,
    per_label_pr,
    perturb_treebank,
    read_conll,
    run_ablation,
    run_curve,
    validate_tree,
    write_conll,
)

__version__ = "0.1.0"

__all__ = [
    "AblationTable",
    "AttachmentScores",
    "ComparisonResult",
    "Corpus",
    "CurveSeries",
    "DepsentError",
    "DepTree",
    "Experiment",
    "ExperimentSpec",
    "LabelPR",
    "Lexicon",
    "MetricTable",
    "PerturbationConfig",
    "PerturbationReport",
    "PolarityLabel",
    "RuleSet",
    "Token",
    "Treebank",
    "TreebankPerturber",
    "TreeVerifier",
    "analyze_tree",
    "attachment_scores",
    "chi_squared_compare",
    "classify_document",
    "compare_systems",
    "emit_reports",
    "evaluate_files",
    "label_report",
    "load_corpus",
    "load_experiment",
    "load_lexicon",
    "metric_table",
    "open_experiment",
    "parse_conll",
    "per_label_pr",
    "perturb_treebank",
    "read_conll",
    "run_ablation",
    "run_curve",
    "validate_tree",
    "write_conll",
]
