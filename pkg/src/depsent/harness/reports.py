"""
CSV/JSON rendering of experiment results.

Column order and float formatting are fixed so that identical runs give
byte-identical files. Undefined precision/recall values render as "0.00*"
in CSV and as null plus a `*_defined: false` flag in JSON.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, List, Mapping, Optional, Sequence, TextIO, Tuple, Union

from depsent.evaluation.scores import AttachmentScores, LabelPR, MetricTable
from depsent.evaluation.significance import ComparisonResult
from depsent.harness.experiments import AblationTable, CurveSeries, DocumentResult, TimingRow
from depsent.transform.perturber import PerturbationReport

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")
UNDEFINED = "0.00*"


def _pct(x: Optional[float]) -> str:
    return UNDEFINED if x is None else f"{100.0 * x:.2f}"


def _f(x: float, digits: int = 4) -> str:
    return f"{x:.{digits}f}"


def _round(x: Optional[float], digits: int = 6) -> Optional[float]:
    return None if x is None else round(float(x), digits)


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json(payload: Any) -> str:
    return json.dumps(payload, indent=2) + "\n"


# --- renderers ---------------------------------------------------------------


def render_ablation(table: AblationTable, fmt: str) -> str:
    if fmt == "csv":
        rows = [[name] + [f"{table.cell(name, s):.2f}" for s in table.subsets] for name in table.inputs]
        return _csv(["input"] + list(table.subsets), rows)
    return _json([{"input": name, **{s: table.cell(name, s) for s in table.subsets}} for name in table.inputs])


def render_timing(rows: Sequence[TimingRow], fmt: str) -> str:
    if fmt == "csv":
        return _csv(
            ["input", "average", "minimum", "maximum"],
            [[r.input, _f(r.average, 6), _f(r.minimum, 6), _f(r.maximum, 6)] for r in rows],
        )
    return _json(
        [
            {"input": r.input, "average": _round(r.average), "minimum": _round(r.minimum), "maximum": _round(r.maximum)}
            for r in rows
        ]
    )


def render_curve(series: CurveSeries, fmt: str) -> str:
    corpora = sorted({name for p in series.points for name in p.accuracy_by_corpus})
    if fmt == "csv":
        rows = [
            [_f(p.target), _f(p.las), _f(p.uas), _f(p.la)] + [f"{p.accuracy_by_corpus[c]:.2f}" for c in corpora]
            for p in series.points
        ]
        return _csv(["target", "las", "uas", "la"] + corpora, rows)
    return _json(
        [
            {
                "las": _round(p.las),
                "accuracy_by_corpus": {c: p.accuracy_by_corpus[c] for c in corpora},
                "uas": _round(p.uas),
                "la": _round(p.la),
                "target": p.target,
            }
            for p in series.points
        ]
    )


def render_curve_metrics(series: CurveSeries, fmt: str) -> str:
    if fmt == "csv":
        return _csv(
            ["target", "las", "uas", "la"],
            [[_f(m.target), _f(m.las), _f(m.uas), _f(m.la)] for m in series.metrics],
        )
    return _json(
        [{"target": m.target, "las": _round(m.las), "uas": _round(m.uas), "la": _round(m.la)} for m in series.metrics]
    )


def render_comparison(result: ComparisonResult, fmt: str, names: Tuple[str, str] = ("a", "b")) -> str:
    (ca, ia), (cb, ib) = result.contingency
    if fmt == "csv":
        return _csv(
            ["system_a", "system_b", "a_correct", "a_incorrect", "b_correct", "b_incorrect", "statistic", "p_value"],
            [[names[0], names[1], ca, ia, cb, ib, _f(result.statistic, 6), _f(result.p_value, 6)]],
        )
    payload = {"system_a": names[0], "system_b": names[1], **result.to_dict()}
    payload["statistic"] = _round(result.statistic, 9)
    payload["p_value"] = _round(result.p_value, 9)
    return _json(payload)


def render_evaluation(scores: AttachmentScores, labels: Sequence[LabelPR], fmt: str) -> str:
    if fmt == "csv":
        rows: List[List[Any]] = [
            ["LAS", _pct(scores.las), "", ""],
            ["UAS", _pct(scores.uas), "", ""],
            ["LA", _pct(scores.la), "", ""],
        ]
        for pr in labels:
            rows.append([pr.label, "", _pct(pr.precision), _pct(pr.recall)])
        return _csv(["metric", "value", "precision", "recall"], rows)
    return _json(
        {
            "attachment": {
                "las": _round(scores.las),
                "uas": _round(scores.uas),
                "la": _round(scores.la),
                "scored_tokens": scores.scored_tokens,
            },
            "labels": [
                {
                    "label": pr.label,
                    "tp": pr.tp,
                    "fp": pr.fp,
                    "fn": pr.fn,
                    "precision": _round(pr.precision),
                    "precision_defined": pr.precision_defined,
                    "recall": _round(pr.recall),
                    "recall_defined": pr.recall_defined,
                }
                for pr in labels
            ],
        }
    )


def render_metric_table(table: MetricTable, fmt: str) -> str:
    if fmt == "csv":
        header = ["metric"] + [f"{s}" for s in table.systems] + [f"rank({s})" for s in table.systems]
        rows = [
            [r.metric] + [_pct(r.values[s]) for s in table.systems] + [r.ranks[s] for s in table.systems]
            for r in table.rows
        ]
        return _csv(header, rows)
    return _json(
        [
            {
                "metric": r.metric,
                "values": {s: _round(r.values[s]) for s in table.systems},
                "ranks": {s: r.ranks[s] for s in table.systems},
            }
            for r in table.rows
        ]
    )


def render_classification(results: Sequence[DocumentResult], fmt: str) -> str:
    if fmt == "csv":
        return _csv(
            ["doc_id", "predicted", "gold", "so"],
            [[r.doc_id, r.predicted.value, r.gold.value if r.gold else "", _f(r.so)] for r in results],
        )
    return _json(
        [
            {"doc_id": r.doc_id, "predicted": r.predicted.value, "gold": r.gold.value if r.gold else None, "so": _round(r.so)}
            for r in results
        ]
    )


def render_perturbation(report: PerturbationReport, fmt: str) -> str:
    data = report.to_dict()
    if fmt == "csv":
        return _csv(list(data), [[_f(v) if isinstance(v, float) else v for v in data.values()]])
    return _json({k: _round(v) if isinstance(v, float) else v for k, v in data.items()})


# --- emission ----------------------------------------------------------------


def _render(result: Any, fmt: str) -> List[Tuple[str, str]]:
    """(suffix, text) pairs for one result; suffix is appended to the report name."""
    if isinstance(result, AblationTable):
        return [("", render_ablation(result, fmt))]
    if isinstance(result, CurveSeries):
        out = [("", render_curve(result, fmt))]
        if result.metrics:
            out.append(("_metrics", render_curve_metrics(result, fmt)))
        return out
    if isinstance(result, ComparisonResult):
        return [("", render_comparison(result, fmt))]
    if isinstance(result, MetricTable):
        return [("", render_metric_table(result, fmt))]
    if isinstance(result, PerturbationReport):
        return [("", render_perturbation(result, fmt))]
    if isinstance(result, tuple) and len(result) == 2 and isinstance(result[0], AttachmentScores):
        return [("", render_evaluation(result[0], result[1], fmt))]
    if isinstance(result, tuple) and len(result) == 2 and isinstance(result[0], ComparisonResult):
        return [("", render_comparison(result[0], fmt, result[1]))]
    if isinstance(result, list) and all(isinstance(r, TimingRow) for r in result):
        return [("", render_timing(result, fmt))]
    if isinstance(result, list) and all(isinstance(r, DocumentResult) for r in result):
        return [("", render_classification(result, fmt))]
    raise TypeError(f"no renderer for {type(result).__name__}")


def emit_reports(
    results: Mapping[str, Any],
    fmt: str = "csv",
    out_dir: Optional[Union[str, Path]] = None,
    stream: Optional[TextIO] = None,
) -> List[Path]:
    """
    Write each named result as `<name>.<fmt>` under `out_dir`, in the order
    given; with no `out_dir` everything goes to `stream` (stdout).

    Returns the paths written.
    """
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {', '.join(FORMATS)}, got {fmt!r}")

    written: List[Path] = []
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
    for name, result in results.items():
        for suffix, text in _render(result, fmt):
            if out_dir is None:
                (stream or sys.stdout).write(text)
                continue
            path = out / f"{name}{suffix}.{fmt}"
            path.write_text(text, encoding="utf-8")
            logger.info(f"Wrote {path}")
            written.append(path)
    return written
