from .corpus import Corpus, Document, load_corpus, write_corpus
from .experiments import (
    AblationTable,
    CorpusSpec,
    CurvePoint,
    CurveSeries,
    DocumentResult,
    Experiment,
    ExperimentSpec,
    TimingRow,
    accuracy,
    classify_corpus,
    compare_systems,
    load_experiment,
    run_ablation,
    run_curve,
    run_experiment_curve,
    time_classification,
)
from .reports import emit_reports
from .synthetic import generate_benchmark, generate_treebank, toy_lexicon, write_benchmark

__all__ = [
    "Corpus",
    "Document",
    "load_corpus",
    "write_corpus",
    "AblationTable",
    "CorpusSpec",
    "CurvePoint",
    "CurveSeries",
    "DocumentResult",
    "Experiment",
    "ExperimentSpec",
    "TimingRow",
    "accuracy",
    "classify_corpus",
    "compare_systems",
    "load_experiment",
    "run_ablation",
    "run_curve",
    "run_experiment_curve",
    "time_classification",
    "emit_reports",
    "generate_benchmark",
    "generate_treebank",
    "toy_lexicon",
    "write_benchmark",
]
