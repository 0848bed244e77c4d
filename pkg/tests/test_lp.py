import math

import numpy as np
import pytest

from fuzzreg.lp import (EQ, FREE, GE, INFEASIBLE, LE, OPTIMAL, UNBOUNDED, LinearProgram, LPError,
                        solve)

from oracles import enumerate_vertices

FREE4 = (FREE,) * 4
WIDTH_ROWS = [([-1, 1, 0, 0], GE, 0), ([0, 0, -1, 1], GE, 0)]


def _lp(obj, rows, kinds=None):
    prog = LinearProgram(obj, kinds=kinds)
    for coefs, rel, b in rows:
        prog.add(coefs, rel, b)
    return prog


def center_lp():
    rows = list(WIDTH_ROWS)
    for e1, e2, lo, hi in [(6.70, 6.84, 8.00, 17.56), (7.29, 6.25, 10.54, 16.14),
                           (6.66, 6.79, 7.89, 18.27), (6.92, 6.98, 10.98, 15.34)]:
        rows += [([e1, 0, e2, 0], LE, lo), ([0, e1, 0, e2], GE, hi)]
    return _lp([-1, 1, -1, 1], rows, FREE4)


def signed_lp():
    rows = list(WIDTH_ROWS) + [([1, 0, 0, 0], GE, 0), ([0, 0, 1, 0], GE, 0)]
    for lo1, hi1, lo2, hi2, ylo, yhi in [
            (4.19, 9.21, 2.92, 10.76, 8.00, 17.56), (2.53, 12.05, 3.95, 8.55, 10.54, 16.14),
            (5.55, 7.77, 6.01, 7.51, 7.89, 18.27), (5.52, 8.32, 4.50, 9.46, 10.98, 15.34)]:
        rows += [([lo1, 0, lo2, 0], LE, ylo), ([0, hi1, 0, hi2], GE, yhi)]
    return _lp([-1, 1, -1, 1], rows, FREE4)


def test_trivial():
    sol = solve(_lp([1], [([1], GE, 3)]))
    assert sol.status == OPTIMAL and sol.objective == pytest.approx(3)


def test_center_lp():
    prog = center_lp()
    sol = solve(prog)
    assert sol.status == OPTIMAL
    assert sol.objective == pytest.approx(1.53, abs=0.02)
    assert prog.is_feasible(sol.values)


def test_center_lp_is_degenerate():
    # two different optimal points reach the same objective
    prog = center_lp()
    opt = solve(prog).objective
    alt = (0.0, 0.0, 1.1621, 2.6906)
    assert prog.is_feasible(alt, 1e-3)
    assert sum(c * v for c, v in zip(prog.objective, alt)) == pytest.approx(opt, abs=2e-3)


def test_signed_lp():
    sol = solve(signed_lp())
    assert sol.objective == pytest.approx(0.93, abs=0.02)
    assert sol.values == pytest.approx((1.4216, 2.3514, 0, 0), abs=0.02)
    # binding rows: lower bound from 7.89/5.55, upper from 18.27/7.77
    assert sol.values[0] == pytest.approx(7.89 / 5.55, abs=1e-9)
    assert sol.values[1] == pytest.approx(18.27 / 7.77, abs=1e-9)


def test_infeasible():
    sol = solve(_lp([1, 1], [([1, 1], LE, 1), ([1, 1], GE, 2)]))
    assert sol.status == INFEASIBLE and math.isnan(sol.objective) and sol.values == ()


def test_unbounded():
    sol = solve(_lp([-1, 0], [([1, -1], LE, 1)]))
    assert sol.status == UNBOUNDED and sol.objective == -math.inf


def test_free_variable_negative_optimum():
    sol = solve(_lp([1], [([1], GE, -5)], (FREE,)))
    assert sol.objective == pytest.approx(-5) and sol.values == pytest.approx((-5,))


def test_equality_and_redundant_rows():
    sol = solve(_lp([1, 2], [([1, 1], EQ, 4), ([2, 2], EQ, 8), ([1, 0], LE, 3)]))
    assert sol.status == OPTIMAL
    assert sol.values == pytest.approx((3, 1))


def test_deterministic():
    a, b = solve(center_lp()), solve(center_lp())
    assert a.values == b.values and a.objective == b.objective


@pytest.mark.parametrize("prog", [
    LinearProgram([]),
    _lp([1, 1], [([1], LE, 1)]),
    _lp([1], [([1], "<", 1)]),
    _lp([math.inf], []),
    LinearProgram([1], kinds=("integer",)),
])
def test_validation(prog):
    with pytest.raises(LPError):
        solve(prog)


def test_size_limit():
    with pytest.raises(LPError):
        solve(LinearProgram([1.0] * 1001))


def test_cycling_example():
    # Beale's classic cycling LP; must terminate at the optimum
    prog = _lp([-0.75, 150, -0.02, 6], [
        ([0.25, -60, -0.04, 9], LE, 0),
        ([0.5, -90, -0.02, 3], LE, 0),
        ([0, 0, 1, 0], LE, 1)])
    sol = solve(prog)
    assert sol.status == OPTIMAL and sol.objective == pytest.approx(-0.05)


def test_random_lps_against_vertex_enumeration():
    rng = np.random.default_rng(20240611)
    counts = {OPTIMAL: 0, INFEASIBLE: 0, UNBOUNDED: 0}
    for trial in range(1000):
        n = int(rng.integers(1, 4))
        m = int(rng.integers(1, 9))
        obj = rng.integers(-5, 6, n).astype(float)
        rows = []
        for _ in range(m):
            coefs = rng.integers(-5, 6, n).astype(float)
            rel = (LE, GE, EQ)[int(rng.choice(3, p=[0.45, 0.45, 0.1]))]
            rows.append((list(coefs), rel, float(rng.integers(-10, 11))))
        status, best = enumerate_vertices(obj, rows, n)
        sol = solve(_lp(obj, rows))
        counts[status] += 1
        assert sol.status == status, (trial, obj, rows)
        if status == OPTIMAL:
            assert abs(sol.objective - best) <= 1e-6, (trial, sol.objective, best)
            assert _lp(obj, rows).is_feasible(sol.values, 1e-7)
    assert min(counts.values()) > 0


def test_random_free_lps_against_vertex_enumeration():
    # free variables split as x = u - v; bounded by |x| <= 50 so vertices exist
    rng = np.random.default_rng(7)
    for trial in range(300):
        n = int(rng.integers(1, 4))
        m = int(rng.integers(1, 6))
        obj = rng.integers(-5, 6, n).astype(float)
        rows = [(list(rng.integers(-5, 6, n).astype(float)), (LE, GE)[int(rng.integers(2))],
                 float(rng.integers(-10, 11))) for _ in range(m)]
        for j in range(n):
            e = [0.0] * n
            e[j] = 1.0
            rows += [(e, LE, 50.0), (e, GE, -50.0)]
        sol = solve(_lp(obj, rows, (FREE,) * n))
        # shift x = y - 50 with y >= 0 for the oracle
        shifted = [(c, rel, b + 50.0 * sum(c)) for c, rel, b in rows]
        status, best = enumerate_vertices(obj, shifted, n)
        assert sol.status == status, trial
        if status == OPTIMAL:
            assert abs(sol.objective - (best - 50.0 * sum(obj))) <= 1e-6, trial
