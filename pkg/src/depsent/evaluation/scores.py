"""
Attachment scores (LAS/UAS/LA) and per-dependency-type precision/recall.

A token counts for a label's true positives only when its head is also
correct, so summing tp over all labels gives the LAS numerator.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from depsent.errors import AlignmentError
from depsent.treebank.conll import Treebank

logger = logging.getLogger(__name__)

PUNCT_TAGS = frozenset({"PUNCT", "."})

# Dependency types the sentiment rules depend on.
RULE_LABELS: Tuple[str, ...] = ("acomp", "advmod", "amod", "attr", "cc", "mark", "neg", "nmod")


@dataclass(frozen=True)
class AttachmentScores:
    las: float
    uas: float
    la: float
    scored_tokens: int

    def to_dict(self) -> Dict[str, float]:
        return {"las": self.las, "uas": self.uas, "la": self.la, "scored_tokens": self.scored_tokens}


@dataclass(frozen=True)
class LabelPR:
    label: str
    tp: int
    fp: int
    fn: int
    precision: Optional[float]
    recall: Optional[float]

    @property
    def precision_defined(self) -> bool:
        return self.precision is not None

    @property
    def recall_defined(self) -> bool:
        return self.recall is not None


@dataclass
class _Arcs:
    gold_heads: np.ndarray
    pred_heads: np.ndarray
    gold_labels: np.ndarray
    pred_labels: np.ndarray
    scored: np.ndarray


def check_alignment(gold: Treebank, pred: Treebank) -> None:
    """Raise AlignmentError unless both treebanks hold the same sentences and forms."""
    if len(gold) != len(pred):
        raise AlignmentError(f"gold has {len(gold)} trees, prediction has {len(pred)}")
    for idx, (g, p) in enumerate(zip(gold, pred)):
        if len(g) != len(p):
            raise AlignmentError(
                f"gold has {len(g)} tokens, prediction has {len(p)}",
                sentence_index=idx,
                sentence_id=g.sentence_id,
            )
        if g.forms != p.forms:
            raise AlignmentError("token forms differ", sentence_index=idx, sentence_id=g.sentence_id)


def _aligned_arcs(gold: Treebank, pred: Treebank, exclude_punct: bool) -> _Arcs:
    check_alignment(gold, pred)

    gh: List[int] = []
    ph: List[int] = []
    gl: List[str] = []
    pl: List[str] = []
    scored: List[bool] = []
    for g, p in zip(gold, pred):
        for gt, pt in zip(g, p):
            gh.append(gt.head)
            ph.append(pt.head)
            gl.append(gt.deprel)
            pl.append(pt.deprel)
            scored.append(not (exclude_punct and gt.upos in PUNCT_TAGS))

    return _Arcs(
        gold_heads=np.asarray(gh, dtype=np.int64),
        pred_heads=np.asarray(ph, dtype=np.int64),
        gold_labels=np.asarray(gl, dtype=object),
        pred_labels=np.asarray(pl, dtype=object),
        scored=np.asarray(scored, dtype=bool),
    )


def attachment_scores(gold: Treebank, pred: Treebank, exclude_punct: bool = False) -> AttachmentScores:
    """LAS/UAS/LA of `pred` against `gold` over all scored tokens."""
    arcs = _aligned_arcs(gold, pred, exclude_punct)
    total = int(arcs.scored.sum())
    if total == 0:
        logger.warning("No scored tokens; reporting zero scores")
        return AttachmentScores(0.0, 0.0, 0.0, 0)

    head_ok = (arcs.gold_heads == arcs.pred_heads) & arcs.scored
    label_ok = (arcs.gold_labels == arcs.pred_labels) & arcs.scored
    return AttachmentScores(
        las=int((head_ok & label_ok).sum()) / total,
        uas=int(head_ok.sum()) / total,
        la=int(label_ok.sum()) / total,
        scored_tokens=total,
    )


def _label_pr(arcs: _Arcs, label: str) -> LabelPR:
    predicted = (arcs.pred_labels == label) & arcs.scored
    in_gold = (arcs.gold_labels == label) & arcs.scored
    hit = predicted & in_gold & (arcs.gold_heads == arcs.pred_heads)

    tp = int(hit.sum())
    fp = int(predicted.sum()) - tp
    fn = int(in_gold.sum()) - tp
    return LabelPR(
        label=label,
        tp=tp,
        fp=fp,
        fn=fn,
        precision=tp / (tp + fp) if tp + fp else None,
        recall=tp / (tp + fn) if tp + fn else None,
    )


def per_label_pr(gold: Treebank, pred: Treebank, label: str, exclude_punct: bool = False) -> LabelPR:
    return _label_pr(_aligned_arcs(gold, pred, exclude_punct), label)


def label_report(
    gold: Treebank,
    pred: Treebank,
    labels: Optional[Sequence[str]] = None,
    exclude_punct: bool = False,
) -> List[LabelPR]:
    """LabelPR for each label; defaults to the rule-relevant dependency types."""
    arcs = _aligned_arcs(gold, pred, exclude_punct)
    return [_label_pr(arcs, label) for label in (labels or RULE_LABELS)]


@dataclass
class MetricRow:
    metric: str
    values: Dict[str, Optional[float]]
    ranks: Dict[str, int] = field(default_factory=dict)


@dataclass
class MetricTable:
    """Metrics as rows, systems as columns, with a rank per row (1 = best)."""

    systems: List[str]
    rows: List[MetricRow]

    def row(self, metric: str) -> MetricRow:
        for r in self.rows:
            if r.metric == metric:
                return r
        raise KeyError(metric)


def rank_values(values: Mapping[str, Optional[float]]) -> Dict[str, int]:
    """Competition ranking, higher is better; ties share the lowest rank, undefined ranks last."""
    ordered = sorted(values, key=lambda s: (values[s] is None, -(values[s] or 0.0)))
    ranks: Dict[str, int] = {}
    for position, system in enumerate(ordered, start=1):
        prev = ordered[position - 2] if position > 1 else None
        if prev is not None and values[prev] == values[system]:
            ranks[system] = ranks[prev]
        else:
            ranks[system] = position
    return ranks


def metric_table(
    gold: Treebank,
    preds: Mapping[str, Treebank],
    labels: Optional[Sequence[str]] = None,
    exclude_punct: bool = False,
) -> MetricTable:
    systems = list(preds)
    scores = {name: attachment_scores(gold, tb, exclude_punct) for name, tb in preds.items()}
    reports = {name: label_report(gold, tb, labels, exclude_punct) for name, tb in preds.items()}

    rows: List[MetricRow] = []
    for metric in ("las", "uas", "la"):
        rows.append(MetricRow(metric.upper(), {s: getattr(scores[s], metric) for s in systems}))

    for i, label in enumerate(labels or RULE_LABELS):
        rows.append(MetricRow(f"P({label})", {s: reports[s][i].precision for s in systems}))
        rows.append(MetricRow(f"R({label})", {s: reports[s][i].recall for s in systems}))

    for row in rows:
        row.ranks = rank_values(row.values)
    return MetricTable(systems, rows)
