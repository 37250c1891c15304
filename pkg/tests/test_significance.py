import math

import numpy as np
import pytest

from depsent import chi_squared_compare
from depsent.errors import AlignmentError, DegenerateTableError
from depsent.evaluation.significance import contingency_table


def outcomes(correct, incorrect):
    return [True] * correct + [False] * incorrect


def closed_form(a, b, c, d):
    """Pearson statistic of [[a, b], [c, d]] with df = 1; p = erfc(sqrt(x / 2))."""
    n = a + b + c + d
    stat = n * (a * d - b * c) ** 2 / ((a + b) * (c + d) * (a + c) * (b + d))
    return stat, math.erfc(math.sqrt(stat / 2))


def test_identical_outcomes():
    a = outcomes(30, 10)
    r = chi_squared_compare(a, list(a))
    assert r.statistic == 0.0
    assert r.p_value == 1.0


def test_same_counts_different_documents():
    a = [True, False] * 20
    b = [False, True] * 20
    r = chi_squared_compare(a, b)
    assert r.statistic == 0.0
    assert r.p_value == 1.0


def test_146_vs_136_matches_closed_form():
    r = chi_squared_compare(outcomes(146, 54), outcomes(136, 64))
    stat, p = closed_form(146, 54, 136, 64)
    assert r.statistic == pytest.approx(stat, abs=1e-9)
    assert r.p_value == pytest.approx(p, abs=1e-9)
    assert r.contingency == ((146, 54), (136, 64))
    assert r.p_value > 0.05


def test_random_tables_match_closed_form():
    rng = np.random.default_rng(11)
    checked = 0
    while checked < 20:
        n = int(rng.integers(20, 400))
        ca, cb = int(rng.integers(1, n)), int(rng.integers(1, n))
        if ca == cb:
            continue
        r = chi_squared_compare(outcomes(ca, n - ca), outcomes(cb, n - cb))
        stat, p = closed_form(ca, n - ca, cb, n - cb)
        assert r.statistic == pytest.approx(stat, abs=1e-9)
        assert r.p_value == pytest.approx(p, abs=1e-9)
        checked += 1


def test_symmetric():
    a, b = outcomes(80, 20), outcomes(65, 35)
    ab, ba = chi_squared_compare(a, b), chi_squared_compare(b, a)
    assert ab.statistic == pytest.approx(ba.statistic)
    assert ab.p_value == pytest.approx(ba.p_value)


def test_all_correct_is_degenerate():
    with pytest.raises(DegenerateTableError):
        chi_squared_compare(outcomes(10, 0), outcomes(10, 0))
    with pytest.raises(DegenerateTableError):
        chi_squared_compare(outcomes(0, 10), outcomes(0, 10))


def test_length_mismatch_and_empty():
    with pytest.raises(AlignmentError):
        contingency_table([True], [True, False])
    with pytest.raises(AlignmentError):
        contingency_table([], [])


def test_result_dict():
    r = chi_squared_compare(outcomes(146, 54), outcomes(136, 64))
    d = r.to_dict()
    assert (d["a_correct"], d["a_incorrect"], d["b_correct"], d["b_incorrect"]) == (146, 54, 136, 64)
