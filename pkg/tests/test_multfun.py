import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from mobrec.classify import classify
from mobrec.multfun import (
    CONSTANT_ONE, ArchChar, Custom, ModDirichlet, RootChar, add_turns, aset_scan, cells_for,
    chord, circular, constant_gap, dio_scan, evaluate, exact_turn_table, gap, pigeonhole_pairs,
    symbolic_bound, witness_for,
)
from mobrec.ratio_sets import MoebiusParams as P, value_at

F = Fraction
SPECS = [
    ArchChar.of(1), ArchChar.of("0.37"), ModDirichlet(2, 2, (1,)), ModDirichlet(2, 4, (1, 3)),
    ModDirichlet(3, 2, (1,)), ModDirichlet(7, 1, (4,)), RootChar(2, 1), RootChar(3, 4),
    Custom.of({2: F(1, 3), 5: F(3, 4)}, F(1, 6)), Custom.of({3: mpmath.mpf("0.1")}),
]


def _same_turn(x, y):
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x == y
    with mpmath.workprec(128):
        d = (mpmath.mpf(x) - mpmath.mpf(y)) % 1
        return min(d, 1 - d) < mpmath.mpf(2) ** -100


def test_eval_examples():
    assert evaluate(RootChar(2, 1), 12) == 0
    assert evaluate(RootChar(2, 1), 6) == F(1, 2)
    assert evaluate(ModDirichlet(2, 2, (1,)), 7) == F(1, 2)
    assert evaluate(ModDirichlet(2, 2, (1,)), 2) == 0
    for f in SPECS:
        assert evaluate(f, 1) == 0
    with pytest.raises(ValueError):
        evaluate(RootChar(2, 1), 0)


def test_arch_eval_value():
    with mpmath.workprec(200):
        want = mpmath.log(10) / (2 * mpmath.pi)
    assert _same_turn(evaluate(ArchChar.of(1), 10), want)


@settings(max_examples=1000)
@given(st.sampled_from(SPECS), st.integers(1, 1000), st.integers(1, 1000))
def test_complete_multiplicativity(f, m, n):
    assert _same_turn(evaluate(f, m * n), add_turns(evaluate(f, m), evaluate(f, n)))


@given(st.sampled_from([ModDirichlet(2, 3, (1, 1)), ModDirichlet(3, 3, (5,)), ModDirichlet(5, 2, (7,))]),
       st.integers(1, 10**6))
def test_mod_dirichlet_periodic(f, n):
    if n % f.p:
        assert evaluate(f, n) == evaluate(f, n + f.modulus)


def test_turn_helpers():
    assert add_turns(F(3, 4), F(1, 2)) == F(1, 4)
    assert circular(F(3, 4)) == F(1, 4)
    assert chord(F(1, 2)) == 2.0 and chord(F(0)) == 0.0
    assert chord(F(1, 6)) == pytest.approx(1.0)
    assert chord(mpmath.mpf("0.25")) == pytest.approx(math.sqrt(2))


def test_witness_examples():
    assert witness_for(P(4, 1, 4, 3)) == ModDirichlet(2, 2, (1,))
    assert witness_for(P(4, 2, 4, 1)) == RootChar(2, 1)
    f = witness_for(P(2, 1, 1, 0))
    assert isinstance(f, ArchChar)
    with mpmath.workprec(128):
        assert abs(f.t - mpmath.pi / mpmath.log(2)) < mpmath.mpf(2) ** -120
    with pytest.raises(ValueError):
        witness_for(P(6, 3, 6, 2))


@pytest.mark.parametrize("abcd", [(4, 1, 4, 3), (8, 1, 8, 5), (9, 1, 9, 4), (27, 2, 27, 11),
                                  (12, 6, 12, -6), (25, 5, 25, 15), (16, 3, 16, -5), (49, 1, 49, 8)])
def test_case_ii_witness_separates(abcd):
    params = P(*abcd)
    cl = classify(params)
    assert cl.case.label == "ii"
    f = cl.witness
    c = constant_gap(f, params)
    assert c is not None and c > 0
    for n in range(1, 400):
        x, y = params.a * n + params.b, params.c * n + params.d
        if x >= 1 and y >= 1:
            assert circular(evaluate(f, x) - evaluate(f, y)) == c


@pytest.mark.parametrize("abcd", [(4, 2, 4, 1), (8, 4, 8, 1), (27, 9, 27, 1), (16, 8, 16, 1)])
def test_case_iii_gap_is_two(abcd):
    params = P(*abcd)
    f = witness_for(params)
    for n in range(1, 300):
        x, y = params.a * n + params.b, params.c * n + params.d
        if x >= 1 and y >= 1:
            assert circular(evaluate(f, x) - evaluate(f, y)) == F(1, 2)


def test_arch_gap_on_constant_ratio_family():
    params = P(2, 0, 1, 0)
    f = ArchChar.of("0.7")
    want = float(2 * abs(mpmath.sin(mpmath.mpf("0.7") * mpmath.log(2) / 2)))
    rep = dio_scan(f, params, 2000)
    assert rep.min_gap == pytest.approx(want, abs=1e-9)
    assert rep.max_gap == pytest.approx(want, abs=1e-9)


def test_exact_table_matches_pointwise():
    for f in SPECS:
        if isinstance(f, ArchChar) or (isinstance(f, Custom) and not f.exact):
            continue
        h, D = exact_turn_table(f, 3000)
        for n in range(1, 3001):
            assert F(int(h[n]), D) == evaluate(f, n)


def test_dio_scan_examples():
    for abcd in [(4, 1, 4, 3), (4, 2, 4, 1)]:
        params = P(*abcd)
        rep = dio_scan(witness_for(params), params, 10**5)
        assert rep.min_gap == 2.0 and rep.min_gap_turn == F(1, 2)
        assert rep.tail_min == 2.0 and rep.count == 10**5
    rep = dio_scan(ArchChar.of(1), P(2, 2, 2, 1), 10**5)
    assert rep.min_gap < 1e-4 and rep.min_gap_turn is None


def test_dio_scan_pointwise_agreement():
    params = P(3, -2, 5, 4)
    for f in [ModDirichlet(3, 2, (1,)), ArchChar.of(2), Custom.of({3: mpmath.mpf("0.3")})]:
        rep = dio_scan(f, params, 300)
        gaps = {n: gap(f, 3 * n - 2, 5 * n + 4) for n in range(1, 301)}
        assert rep.min_gap == pytest.approx(min(gaps.values()), abs=1e-9)
        assert gaps[rep.argmin] == pytest.approx(rep.min_gap, abs=1e-9)


def test_dio_scan_skips_invalid_n():
    rep = dio_scan(RootChar(2, 1), P(1, -5, 1, 0), 20)
    assert rep.count == 15


def test_dio_scan_workers_agree():
    params = P(8, 1, 8, 5)
    f = witness_for(params)
    a = dio_scan(f, params, 50_000)
    b = dio_scan(f, params, 50_000, workers=2)
    assert (a.min_gap, a.argmin, a.tail_min, a.min_gap_turn) == (b.min_gap, b.argmin, b.tail_min, b.min_gap_turn)


def test_aset_scan_examples():
    rep = aset_scan([CONSTANT_ONE], 0.1, P(2, 2, 2, 1), 10**4)
    assert rep.count == 10**4 and rep.density == 1.0
    rep = aset_scan([ArchChar.of(1)], 0.1, P(2, 2, 2, 1), 10**5)
    assert rep.density >= 0.9
    assert sum(rep.block_counts) == rep.count and len(rep.block_counts) == 10
    assert rep.block_bounds[0] == (1, 9999) and rep.block_bounds[-1] == (90000, 100000)
    rep = aset_scan([witness_for(P(4, 1, 4, 3))], 0.1, P(4, 1, 4, 3), 10**4)
    assert rep.count == 0 and rep.bound is None


def test_aset_scan_intersection():
    params = P(2, 2, 2, 1)
    fs = [ArchChar.of(1), RootChar(3, 1)]
    rep = aset_scan(fs, 0.5, params, 3000)
    want = sum(all(gap(f, 2 * n + 2, 2 * n + 1) < 0.5 for f in fs) for n in range(1, 3001))
    assert rep.count == want


def test_cells_for():
    assert cells_for(2.1) == 1
    assert cells_for(2.0) == 3  # 2 sin(pi/2) = 2 is not < 2
    assert cells_for(1.0) == 7
    assert cells_for(0.1) == 63
    for eps in (0.05, 0.3, 1.5):
        k = cells_for(eps)
        assert 2 * math.sin(math.pi / k) < eps <= 2 * math.sin(math.pi / (k - 1))
    with pytest.raises(ValueError):
        cells_for(0)


def test_symbolic_bound():
    b = symbolic_bound(P(2, 2, 2, 1), 1, 0.25)
    assert (b.k, b.K) == (cells_for(0.25), cells_for(0.25) + 1)
    assert b.expression.startswith(f"1/(1 * H_{b.K}^2)")
    assert "H_2 = 4" in b.expression and "!" in b.expression
    assert symbolic_bound(P(4, 1, 4, 3), 1, 0.25) is None


def test_pigeonhole_examples():
    params = P(2, 2, 2, 1)
    (res,) = pigeonhole_pairs([CONSTANT_ONE], 0.1, params, [(1, 30)])
    x, y, n = res.pair
    assert value_at(params, n) == F(x, y) and res.max_gap == 0.0
    (res,) = pigeonhole_pairs([RootChar(3, 1)], 0.5, params, [(1, 100)])
    assert res.pair is not None and res.max_gap < 0.5
    x, y, n = res.pair
    assert value_at(params, n) == F(x, y)
    assert x in res.clique and y in res.clique


def test_pigeonhole_large_eps_windows_of_length_h2():
    params = P(2, 2, 2, 1)
    windows = [(n + 1, n + 4) for n in range(200)]
    for res in pigeonhole_pairs([ArchChar.of(1)], 2.1, params, windows):
        assert res.needed == 2 and res.guaranteed and res.pair is not None


def test_pigeonhole_reports_obstruction():
    (res,) = pigeonhole_pairs([ArchChar.of(1)], 0.01, P(2, 2, 2, 1), [(1, 2)])
    assert res.pair is None and "needed" in res.obstruction
    with pytest.raises(ValueError):
        pigeonhole_pairs([CONSTANT_ONE], 0.1, P(4, 1, 4, 3), [(1, 10)])
