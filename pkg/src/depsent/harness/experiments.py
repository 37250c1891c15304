"""
Task-oriented experiments: classify corpora from different parses and
compare sentiment accuracy across rule subsets, parses and LAS levels.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from depsent.errors import ConfigError, CorpusError
from depsent.evaluation.scores import check_alignment
from depsent.evaluation.significance import ComparisonResult, chi_squared_compare
from depsent.harness.corpus import Corpus, load_corpus
from depsent.sentiment.composer import PolarityLabel, SentimentAnalyzer
from depsent.sentiment.lexicon import Lexicon, load_lexicon
from depsent.sentiment.rules import SUBSET_COLUMNS, RuleSet, canonical_subset
from depsent.transform.perturber import PerturbationConfig, TreebankPerturber
from depsent.treebank.conll import Treebank, read_conll

logger = logging.getLogger(__name__)

CORPUS_INPUT = "corpus"
TIMING_RUNS = 5


# --- experiment files ---------------------------------------------------


def _convert(what: str, convert: Callable[[Any], Any], value: Any) -> Any:
    try:
        return convert(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"{what}: cannot read {value!r} ({e})") from e


def _path(what: str, base: Path, value: Any) -> Path:
    if not isinstance(value, str) or not value:
        raise ConfigError(f"{what} must be a path string, got {value!r}")
    return base / value


@dataclass(frozen=True)
class CurveSpec:
    targets: Tuple[float, ...] = (0.5, 0.75, 0.85, 0.92, 1.0)
    seeds: Tuple[int, ...] = (0, 1, 2, 3, 4)
    label_error_share: float = 0.5
    reference: Optional[Path] = None

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], base_dir: Path) -> "CurveSpec":
        if not isinstance(data, Mapping):
            raise ConfigError("curve must be an object")
        targets = data.get("targets", cls.targets)
        seeds = data.get("seeds", cls.seeds)
        if isinstance(targets, (str, Mapping)) or isinstance(seeds, (str, Mapping)):
            raise ConfigError("curve targets and seeds must be lists")
        reference = data.get("reference")
        return cls(
            targets=_convert("curve.targets", lambda v: tuple(float(t) for t in v), targets),
            seeds=_convert("curve.seeds", lambda v: tuple(int(s) for s in v), seeds),
            label_error_share=_convert("curve.label_error_share", float, data.get("label_error_share", 0.5)),
            reference=_path("curve.reference", base_dir, reference) if reference else None,
        )


@dataclass(frozen=True)
class CorpusSpec:
    """One labelled corpus: trees plus the labels sidecar, and an optional display name."""

    path: Path
    labels: Path
    name: Optional[str] = None

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], base_dir: Path) -> "CorpusSpec":
        if not isinstance(data, Mapping) or "corpus" not in data or "labels" not in data:
            raise ConfigError("each corpora entry needs 'corpus' and 'labels'")
        name = data.get("name")
        return cls(
            _path("corpus", base_dir, data["corpus"]),
            _path("labels", base_dir, data["labels"]),
            str(name) if name is not None else None,
        )


@dataclass(frozen=True)
class ExperimentSpec:
    """
    An experiment file, paths resolved against its directory.

    `corpus`/`labels` name the primary corpus, the one parses in `inputs`
    must align with. `corpora` lists every corpus a curve is run over,
    the primary one first.
    """

    corpus: Path
    labels: Path
    lexicon: Path
    rules: RuleSet = field(default_factory=RuleSet.all)
    subsets: Tuple[str, ...] = SUBSET_COLUMNS
    inputs: Mapping[str, Path] = field(default_factory=dict)
    seed: int = 0
    provenance: str = ""
    curve: CurveSpec = field(default_factory=CurveSpec)
    corpora: Tuple[CorpusSpec, ...] = ()

    def __post_init__(self):
        if not self.corpora:
            object.__setattr__(self, "corpora", (CorpusSpec(self.corpus, self.labels),))

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], base_dir: Union[str, Path] = ".") -> "ExperimentSpec":
        base = Path(base_dir)
        if not isinstance(data, Mapping):
            raise ConfigError("experiment spec must be an object")

        corpora_value = data.get("corpora", [])
        if not isinstance(corpora_value, list):
            raise ConfigError("corpora must be a list of {corpus, labels} objects")
        corpora = [CorpusSpec.from_dict(entry, base) for entry in corpora_value]
        if "corpus" in data or "labels" in data:
            for key in ("corpus", "labels"):
                if key not in data:
                    raise ConfigError(f"experiment spec is missing {key!r}")
            primary = CorpusSpec(_path("corpus", base, data["corpus"]), _path("labels", base, data["labels"]))
            corpora = [primary] + [c for c in corpora if (c.path, c.labels) != (primary.path, primary.labels)]
        elif not corpora:
            raise ConfigError("experiment spec is missing 'corpus'")
        if "lexicon" not in data:
            raise ConfigError("experiment spec is missing 'lexicon'")

        rules_value = data.get("rules")
        if rules_value is None:
            rules = RuleSet.all()
        elif isinstance(rules_value, str):
            rules = RuleSet.from_json(base / rules_value)
        elif isinstance(rules_value, Mapping):
            rules = RuleSet.from_dict(rules_value)
        else:
            raise ConfigError("rules must be a path or an object")

        inputs = data.get("inputs", {})
        if not isinstance(inputs, Mapping):
            raise ConfigError("inputs must map names to CoNLL paths")
        subsets = data.get("subsets", SUBSET_COLUMNS)
        if isinstance(subsets, str):
            subsets = [subsets]

        return cls(
            corpus=corpora[0].path,
            labels=corpora[0].labels,
            lexicon=_path("lexicon", base, data["lexicon"]),
            rules=rules,
            subsets=tuple(canonical_subset(str(s)) for s in subsets),
            inputs={str(name): _path(f"inputs.{name}", base, p) for name, p in inputs.items()},
            seed=_convert("seed", int, data.get("seed", 0)),
            provenance=str(data.get("provenance", "")),
            curve=CurveSpec.from_dict(data.get("curve", {}), base),
            corpora=tuple(corpora),
        )

    @classmethod
    def from_json(cls, path: Union[str, Path]) -> "ExperimentSpec":
        path = Path(path)
        with open(path, "r", encoding="utf-8") as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise ConfigError(f"{path}: invalid JSON: {e}") from e
        return cls.from_dict(data, path.parent)


@dataclass
class Experiment:
    """An ExperimentSpec with its files loaded and aligned. `corpora` starts with `corpus`."""

    corpus: Corpus
    lexicon: Lexicon
    rules: RuleSet
    inputs: Dict[str, Treebank]
    subsets: Tuple[str, ...] = SUBSET_COLUMNS
    seed: int = 0
    curve: CurveSpec = field(default_factory=CurveSpec)
    corpora: List[Corpus] = field(default_factory=list)

    def __post_init__(self):
        if not self.corpora:
            self.corpora = [self.corpus]

    def input(self, name: str) -> Treebank:
        if name not in self.inputs:
            raise ConfigError(f"unknown input {name!r}; available: {', '.join(self.inputs)}")
        return self.inputs[name]


def load_experiment(spec: ExperimentSpec) -> Experiment:
    corpora: List[Corpus] = []
    for entry in spec.corpora:
        corpus = load_corpus(entry.path, entry.labels)
        if entry.name:
            corpus = replace(corpus, name=entry.name)
        corpora.append(corpus)
    names = [c.name for c in corpora]
    if len(set(names)) != len(names):
        raise ConfigError(f"corpus names must be unique, got {names}; give entries a 'name'")
    corpus = corpora[0]
    lexicon = load_lexicon(spec.lexicon)

    inputs: Dict[str, Treebank] = {}
    for name, path in spec.inputs.items():
        tb = read_conll(path)
        check_alignment(corpus.treebank, tb)
        inputs[name] = tb
    if not inputs:
        inputs[CORPUS_INPUT] = corpus.treebank

    return Experiment(corpus, lexicon, spec.rules, inputs, spec.subsets, spec.seed, spec.curve, corpora)


# --- classification -----------------------------------------------------


@dataclass(frozen=True)
class DocumentResult:
    doc_id: str
    predicted: PolarityLabel
    gold: Optional[PolarityLabel]
    so: float

    @property
    def correct(self) -> bool:
        return self.gold is not None and self.predicted is self.gold


def classify_corpus(corpus: Corpus, treebank: Treebank, lexicon: Lexicon, rules: RuleSet) -> List[DocumentResult]:
    analyzer = SentimentAnalyzer(lexicon, rules)
    results = []
    for doc in corpus.documents:
        so = analyzer.document_so(corpus.doc_trees(doc, treebank))
        predicted = PolarityLabel.POSITIVE if so > rules.classification_threshold else PolarityLabel.NEGATIVE
        results.append(DocumentResult(doc.doc_id, predicted, doc.label, so))
    if analyzer.diagnostics.get("discarded"):
        logger.info(f"{analyzer.diagnostics['discarded']} operations discarded at sentence roots")
    return results


def accuracy(results: Sequence[DocumentResult]) -> float:
    """Percentage of correctly classified documents, 2 decimals."""
    if not results:
        return 0.0
    return round(100.0 * sum(r.correct for r in results) / len(results), 2)


# --- ablation -----------------------------------------------------------


@dataclass
class AblationTable:
    inputs: List[str]
    subsets: List[str]
    cells: Dict[Tuple[str, str], float]

    def cell(self, input_name: str, subset: str) -> float:
        return self.cells[(input_name, canonical_subset(subset))]

    def column(self, subset: str) -> List[float]:
        return [self.cell(name, subset) for name in self.inputs]


def run_ablation(exp: Experiment, subsets: Optional[Sequence[str]] = None) -> AblationTable:
    exp.corpus.require_labels()
    columns = [canonical_subset(s) for s in (subsets or exp.subsets)]
    cells: Dict[Tuple[str, str], float] = {}
    for name, tb in exp.inputs.items():
        for subset in columns:
            results = classify_corpus(exp.corpus, tb, exp.lexicon, exp.rules.for_subset(subset))
            cells[(name, subset)] = accuracy(results)
        logger.info(f"Ablation {name}: {[cells[(name, s)] for s in columns]}")
    return AblationTable(list(exp.inputs), columns, cells)


# --- timing -------------------------------------------------------------


@dataclass(frozen=True)
class TimingRow:
    input: str
    average: float
    minimum: float
    maximum: float


def time_classification(exp: Experiment, subset: str = "All", runs: int = TIMING_RUNS) -> List[TimingRow]:
    """Wall-clock seconds to classify the corpus from each input; file loading excluded."""
    rules = exp.rules.for_subset(subset)
    rows = []
    for name, tb in exp.inputs.items():
        samples = np.empty(runs)
        for i in range(runs):
            start = time.perf_counter()
            classify_corpus(exp.corpus, tb, exp.lexicon, rules)
            samples[i] = time.perf_counter() - start
        rows.append(TimingRow(name, float(samples.mean()), float(samples.min()), float(samples.max())))
    return rows


# --- LAS vs accuracy curve ----------------------------------------------


@dataclass(frozen=True)
class CurvePoint:
    target: float
    las: float
    uas: float
    la: float
    accuracy_by_corpus: Dict[str, float]


@dataclass(frozen=True)
class MetricPoint:
    target: float
    las: float
    uas: float
    la: float


@dataclass
class CurveSeries:
    points: List[CurvePoint]
    metrics: List[MetricPoint] = field(default_factory=list)


def run_curve(
    corpora: Sequence[Corpus],
    lexicon: Lexicon,
    rules: RuleSet,
    las_targets: Sequence[float],
    template: PerturbationConfig,
    seeds: Sequence[int],
    reference: Optional[Treebank] = None,
) -> CurveSeries:
    """
    For each target x seed, perturb every corpus's gold trees, classify them
    with all rules and average accuracy over seeds.

    Every (target, seed) run is seeded independently, so runs can be
    reordered or parallelised without changing results.
    """
    if not corpora:
        raise ConfigError("run_curve needs at least one corpus")
    if not seeds:
        raise ConfigError("run_curve needs at least one seed")
    for corpus in corpora:
        corpus.require_labels()
    all_rules = rules.for_subset("All")

    points: List[CurvePoint] = []
    metrics: List[MetricPoint] = []
    for target in las_targets:
        las, uas, la = [], [], []
        acc: Dict[str, List[float]] = {c.name: [] for c in corpora}
        ref_scores = []
        for seed in seeds:
            cfg = replace(template, target_las=float(target), seed=int(seed))
            for corpus in corpora:
                perturbed, report = TreebankPerturber(cfg).transform(corpus.treebank)
                las.append(report.achieved_las)
                uas.append(report.achieved_uas)
                la.append(report.achieved_la)
                acc[corpus.name].append(accuracy(classify_corpus(corpus, perturbed, lexicon, all_rules)))
            if reference is not None:
                _, ref_report = TreebankPerturber(cfg).transform(reference)
                ref_scores.append((ref_report.achieved_las, ref_report.achieved_uas, ref_report.achieved_la))

        point = CurvePoint(
            target=float(target),
            las=float(np.mean(las)),
            uas=float(np.mean(uas)),
            la=float(np.mean(la)),
            accuracy_by_corpus={name: round(float(np.mean(v)), 2) for name, v in acc.items()},
        )
        points.append(point)
        logger.info(f"Curve target {target}: las={point.las:.4f} accuracy={point.accuracy_by_corpus}")
        if ref_scores:
            mean = np.mean(np.asarray(ref_scores), axis=0)
            metrics.append(MetricPoint(float(target), float(mean[0]), float(mean[1]), float(mean[2])))

    points.sort(key=lambda p: (p.las, p.target))
    metrics.sort(key=lambda m: (m.las, m.target))
    return CurveSeries(points, metrics)


def run_experiment_curve(exp: Experiment, reference: Optional[Treebank] = None) -> CurveSeries:
    """Curve from the experiment's `curve` block; its seeds are offsets from the experiment seed."""
    template = PerturbationConfig(label_error_share=exp.curve.label_error_share, seed=exp.seed)
    if reference is None and exp.curve.reference is not None:
        reference = read_conll(exp.curve.reference)
    seeds = [exp.seed + s for s in exp.curve.seeds]
    return run_curve(exp.corpora, exp.lexicon, exp.rules, exp.curve.targets, template, seeds, reference)


# --- significance -------------------------------------------------------


def document_outcomes(exp: Experiment, input_name: str, subset: str) -> List[bool]:
    exp.corpus.require_labels()
    results = classify_corpus(exp.corpus, exp.input(input_name), exp.lexicon, exp.rules.for_subset(subset))
    return [r.correct for r in results]


def compare_systems(exp: Experiment, input_a: str, input_b: str, subset: str = "All") -> ComparisonResult:
    if not exp.corpus.documents:
        raise CorpusError("corpus has no documents")
    outcomes_a = document_outcomes(exp, input_a, subset)
    outcomes_b = document_outcomes(exp, input_b, subset)
    result = chi_squared_compare(outcomes_a, outcomes_b)
    logger.info(f"{input_a} vs {input_b} ({subset}): chi2={result.statistic:.4f} p={result.p_value:.4f}")
    return result
