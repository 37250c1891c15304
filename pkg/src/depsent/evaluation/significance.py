"""
Pearson chi-squared comparison of two systems' per-document outcomes.

The 2x2 table has one row per system and columns (correct, incorrect).
No continuity correction is applied; df = 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np
from scipy.stats import chi2_contingency

from depsent.errors import AlignmentError, DegenerateTableError

logger = logging.getLogger(__name__)

Contingency = Tuple[Tuple[int, int], Tuple[int, int]]


@dataclass(frozen=True)
class ComparisonResult:
    statistic: float
    p_value: float
    contingency: Contingency

    def to_dict(self) -> Dict[str, object]:
        (ca, ia), (cb, ib) = self.contingency
        return {
            "statistic": self.statistic,
            "p_value": self.p_value,
            "a_correct": ca,
            "a_incorrect": ia,
            "b_correct": cb,
            "b_incorrect": ib,
        }


def contingency_table(outcomes_a: Sequence[bool], outcomes_b: Sequence[bool]) -> Contingency:
    a = np.asarray(outcomes_a, dtype=bool)
    b = np.asarray(outcomes_b, dtype=bool)
    if a.size == 0 or b.size == 0:
        raise AlignmentError("outcome sequences must be non-empty")
    if a.shape != b.shape:
        raise AlignmentError(f"outcome sequences differ in length: {a.size} vs {b.size}")
    ca, cb = int(a.sum()), int(b.sum())
    return (ca, a.size - ca), (cb, b.size - cb)


def chi_squared_compare(outcomes_a: Sequence[bool], outcomes_b: Sequence[bool]) -> ComparisonResult:
    """Pearson's chi-squared test on the system x (correct, incorrect) table."""
    table = contingency_table(outcomes_a, outcomes_b)
    observed = np.asarray(table, dtype=float)

    column_totals = observed.sum(axis=0)
    if (column_totals == 0).any():
        kind = "correct" if column_totals[0] == 0 else "incorrect"
        raise DegenerateTableError(
            f"expected count of 0 in the '{kind}' column (both systems have no {kind} outcomes)",
            contingency={"table": table},
        )

    if table[0] == table[1]:
        return ComparisonResult(0.0, 1.0, table)

    statistic, p_value, dof, _ = chi2_contingency(observed, correction=False)
    logger.debug(f"chi2={statistic:.6f} p={p_value:.6f} dof={dof} table={table}")
    return ComparisonResult(float(statistic), float(p_value), table)
