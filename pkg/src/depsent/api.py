"""
Flat entry points over the subpackages, for scripts and notebooks.
"""

from __future__ import annotations

from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from depsent.errors import DepsentError
from depsent.evaluation.scores import (
    AttachmentScores,
    LabelPR,
    MetricTable,
    attachment_scores,
    label_report,
    metric_table,
    per_label_pr,
)
from depsent.evaluation.significance import ComparisonResult, chi_squared_compare
from depsent.harness.corpus import Corpus, load_corpus
from depsent.harness.experiments import (
    AblationTable,
    CurveSeries,
    Experiment,
    ExperimentSpec,
    compare_systems,
    load_experiment,
    run_ablation,
    run_curve,
)
from depsent.harness.reports import emit_reports
from depsent.sentiment.composer import PolarityLabel, analyze_tree, classify_document
from depsent.sentiment.lexicon import Lexicon, load_lexicon
from depsent.sentiment.rules import RuleSet
from depsent.transform.perturber import PerturbationConfig, PerturbationReport, TreebankPerturber, perturb_treebank
from depsent.treebank.conll import DepTree, Token, Treebank, parse_conll, read_conll, write_conll
from depsent.validation.verifier import TreeVerifier, validate_tree

PathLike = Union[str, Path]


def evaluate_files(
    gold_path: PathLike, pred_path: PathLike, exclude_punct: bool = False, labels: Optional[Sequence[str]] = None
) -> Tuple[AttachmentScores, List[LabelPR]]:
    """Attachment scores and per-label P/R of one parse file against a gold file."""
    gold, pred = read_conll(gold_path), read_conll(pred_path)
    return attachment_scores(gold, pred, exclude_punct), label_report(gold, pred, labels, exclude_punct)


def open_experiment(spec_path: PathLike, seed: Optional[int] = None) -> Experiment:
    """Load an experiment spec file and everything it points at."""
    spec = ExperimentSpec.from_json(spec_path)
    exp = load_experiment(spec)
    if seed is not None:
        exp.seed = seed
    return exp


__all__ = [
    "DepsentError",
    "AttachmentScores",
    "LabelPR",
    "MetricTable",
    "attachment_scores",
    "label_report",
    "metric_table",
    "per_label_pr",
    "ComparisonResult",
    "chi_squared_compare",
    "Corpus",
    "load_corpus",
    "AblationTable",
    "CurveSeries",
    "Experiment",
    "ExperimentSpec",
    "compare_systems",
    "load_experiment",
    "run_ablation",
    "run_curve",
    "emit_reports",
    "PolarityLabel",
    "analyze_tree",
    "classify_document",
    "Lexicon",
    "load_lexicon",
    "RuleSet",
    "PerturbationConfig",
    "PerturbationReport",
    "TreebankPerturber",
    "perturb_treebank",
    "DepTree",
    "Token",
    "Treebank",
    "parse_conll",
    "read_conll",
    "write_conll",
    "TreeVerifier",
    "validate_tree",
    "evaluate_files",
    "open_experiment",
]
