"""Acceptance gate: one test (and one PASS/FAIL line) per criterion.

Run alone with ``pytest tests/test_acceptance.py -v``; the summary lines are
printed at the end of the session.
"""

import contextlib
import json
import math
import random
import re
import time
from fractions import Fraction

import mpmath
import pytest

from mobrec import checker
from mobrec.certificates import classification_to_dict, clique_to_dict
from mobrec.classify import Verdict, classify
from mobrec.cliques import big_clique, construct_clique, normalize, reduce
from mobrec.colorings import PAdic, Parity
from mobrec.graph import (
    adjacent, build_window, count_triangles, max_cliques, verify_coloring,
)
from mobrec.multfun import (
    ArchChar, Custom, ModDirichlet, RootChar, add_turns, aset_scan, dio_scan, evaluate,
    witness_for,
)
from mobrec.arith import rat, vp
from mobrec.ratio_sets import MoebiusParams as P, value_at

from conftest import ACCEPTANCE_LINES
from oracles import edges_by_pairs, is_prime_naive, vp_by_division


@contextlib.contextmanager
def criterion(num, name, limit):
    start = time.perf_counter()
    notes = []
    ok = False
    try:
        yield notes
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < limit
        status = "PASS" if ok and within else "FAIL"
        detail = "; ".join(notes)
        line = f"[{status}] criterion {num}: {name} ({elapsed:.2f}s, limit {limit}s){' - ' + detail if detail else ''}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    assert within, f"criterion {num} took {elapsed:.2f}s (limit {limit}s)"


# --------------------------------------------------------------------------
# the 200-case classification matrix


def oracle_verdict(a, b, c, d):
    if (a, b) == (c, d):
        return "Empty"
    if a != c:
        return "NonRecurrent"
    for p in range(2, a + 1):
        if is_prime_naive(p) and vp_by_division(p, a) > max(vp_by_division(p, b), vp_by_division(p, d)):
            return "NonRecurrent"
    return "Recurrent"


def _category(a, b, c, d):
    if (a, b) == (c, d):
        return "empty"
    if a != c:
        return "a!=c"
    for p in range(2, a + 1):
        if is_prime_naive(p) and vp_by_division(p, a) > max(vp_by_division(p, b), vp_by_division(p, d)):
            return "equal-v" if vp_by_division(p, b) == vp_by_division(p, d) else "unequal-v"
    return "recurrent"


def build_matrix():
    rng = random.Random(20240601)
    quotas = {"a!=c": 36, "recurrent": 36, "equal-v": 30, "unequal-v": 30, "zero": 20, "negative": 20}
    cases = [(6, 3, 6, 2), (3, 1, 3, 1), (4, 1, 4, 3), (4, 2, 4, 1), (2, 1, 1, 0), (2, 0, 1, 0),
             (1, 0, 2, 0), (7, 0, 7, 0)]
    seen = set(cases)
    counts = dict.fromkeys(quotas, 0)
    while any(counts[k] < quotas[k] for k in quotas):
        a = rng.choice([1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 16, 18, 20, 24, 25, 27])
        c = a if rng.random() < 0.75 else rng.randint(1, 24)
        b, d = rng.randint(-30, 30), rng.randint(-30, 30)
        if rng.random() < 0.3:
            # push b, d towards multiples of prime powers dividing a
            q = rng.choice([2, 3, 4, 6, 8, 9])
            b, d = b - b % q, d - d % q + rng.choice([0, 1, q // 2])
        t = (a, b, c, d)
        if t in seen:
            continue
        if b * d == 0:
            kind = "zero"
        elif b < 0 or d < 0:
            kind = "negative"
        else:
            kind = _category(*t)
            if kind == "empty":
                continue
        if counts[kind] >= quotas[kind]:
            continue
        counts[kind] += 1
        seen.add(t)
        cases.append(t)
    # gcd-scaled duplicates of earlier cases
    base = list(cases)
    while len(cases) < 200:
        a, b, c, d = rng.choice(base)
        g = rng.randint(2, 4)
        t = (g * a, g * b, g * c, g * d)
        if t not in seen:
            seen.add(t)
            cases.append(t)
    return cases


MATRIX = build_matrix()


def _nonrecurrent():
    return [t for t in MATRIX if oracle_verdict(*t) == "NonRecurrent"]


def test_matrix_shape():
    assert len(MATRIX) == len(set(MATRIX)) == 200
    kinds = {_category(*t) for t in MATRIX}
    assert {"empty", "a!=c", "recurrent", "equal-v", "unequal-v"} <= kinds
    assert any(b * d == 0 for _, b, _, d in MATRIX)
    assert any(min(b, d) < 0 for _, b, _, d in MATRIX)
    assert (6, 3, 6, 2) in MATRIX


# --------------------------------------------------------------------------


def test_criterion_1_classification_matrix():
    with criterion(1, "classification matrix (200 cases)", 1.0) as notes:
        t0 = time.perf_counter()
        got = {t: classify(P(*t)) for t in MATRIX}
        elapsed = time.perf_counter() - t0
        bad = [t for t in MATRIX if got[t].verdict.value != oracle_verdict(*t)]
        assert not bad, f"disagreements: {bad[:5]}"
        assert got[(6, 3, 6, 2)].verdict is Verdict.RECURRENT
        tally = {}
        for cl in got.values():
            tally[cl.verdict.value] = tally.get(cl.verdict.value, 0) + 1
        notes.append(", ".join(f"{k} {v}" for k, v in sorted(tally.items())))
        notes.append(f"classify time {elapsed:.3f}s")


def test_criterion_2_coloring_properness():
    with criterion(2, "coloring properness on [1, 10^5]", 120.0) as notes:
        N = 10**5
        cases = _nonrecurrent()
        failures = []
        two_bound = 0
        max_omega_ratio = 0.0
        for t in cases:
            params = P(*t)
            cl = classify(params)
            g = build_window(params, 1, N)
            chk = verify_coloring(g, cl.coloring)
            if chk.violations or chk.ambiguous:
                failures.append((t, len(chk.violations), len(chk.ambiguous)))
                continue
            bound = cl.chromatic_upper_bound
            # a proper coloring with <= bound colors caps every clique at bound
            if chk.colors_used > bound:
                failures.append((t, "colors", chk.colors_used, bound))
            if bound == 2:
                two_bound += 1
                if count_triangles(g):
                    failures.append((t, "triangle"))
            omega = len(max_cliques(build_window(params, 1, 2000))[0])
            if omega > bound:
                failures.append((t, "omega", omega, bound))
            max_omega_ratio = max(max_omega_ratio, omega / bound)
        assert not failures, failures[:5]
        notes.append(f"{len(cases)} NonRecurrent cases, 0 violations, 0 ambiguous")
        notes.append(f"{two_bound} bound-2 cases triangle-free on [1, 10^5]")


def test_criterion_3_clique_construction():
    with criterion(3, "clique construction certificates", 10.0) as notes:
        certs = {"big_clique(6,3,2,3)": big_clique(6, 3, 2, 3),
                 "construct_clique(2,3,0)": construct_clique(2, 3, 0)}
        params = {"big_clique(6,3,2,3)": P(6, 3, 6, 2), "construct_clique(2,3,0)": P(2, 2, 2, 1)}
        for name, cert in certs.items():
            assert len(cert) == 3 and cert.verify(params[name])
            ok, msg = checker.check(json.loads(json.dumps(clique_to_dict(cert))))
            assert ok, msg
            digits = max(len(str(v)) for v in cert.vertices)
            notes.append(f"{name}: {digits} digits, multiplier {cert.meta['multiplier']}")
        assert certs["construct_clique(2,3,0)"].meta["multiplier"] == "(949)!"
        assert min(len(str(v)) for v in certs["construct_clique(2,3,0)"].vertices) >= 1000
        for a, b, d in [(6, 3, 2), (2, 2, 1)]:
            nz = normalize(a, b, d)
            red = reduce(nz.a, nz.b, nz.d, nz)
            for m in range(1, 101):
                assert value_at(P(a, b, a, d), red.C * m + red.D) == value_at(red.target, m)
        notes.append("reduction identity exact for m = 1..100")


def test_criterion_4_window_guarantee():
    with criterion(4, "every [n+1, n+4], n <= 10^4, has an edge of G(2,2,2,1)", 5.0) as notes:
        g = build_window(P(2, 2, 2, 1), 1, 10**4 + 4)
        short = set()
        for s, l in g.edges():
            if l - s < 4:
                short.add((s, l))
        lows = {}
        for s, l in short:
            lows[s] = min(lows.get(s, l), l)
        missing = [n for n in range(0, 10**4 + 1)
                   if not any(lows.get(s, 10**9) <= n + 4 for s in range(n + 1, n + 4))]
        assert not missing, missing[:10]
        notes.append("10001 windows checked")


PARAM_SETS_5 = [
    (2, 2, 2, 1), (6, 3, 6, 2), (4, 1, 4, 3), (4, 2, 4, 1), (2, 1, 1, 0), (1, 0, 2, 0), (2, 0, 1, 0),
    (3, -2, 5, 4), (1, -5, 1, -7), (5, 1, 3, 0), (7, 3, 2, -1), (1, 2, 1, 0), (12, 4, 12, 3),
    (9, 1, 9, 4), (3, 0, 3, 1), (2, -1, 3, -2), (1, 3, 4, 1), (6, -4, 6, 2), (10, 5, 10, 2), (8, 7, 8, -1),
]


def test_criterion_5_oracle_agreement():
    with criterion(5, "witness enumeration vs all-pairs on [1, 500]", 30.0) as notes:
        total = 0
        for t in PARAM_SETS_5:
            params = P(*t)
            fast = build_window(params, 1, 500).edge_set()
            assert fast == build_window(params, 1, 500, method="pairs").edge_set(), t
            assert fast == edges_by_pairs(*t, 1, 500), t
            total += len(fast)
        found = max_cliques(build_window(P(2, 2, 2, 1), 1, 30))
        assert len(found[0]) == 3
        assert (15, 18, 20) in [c.vertices for c in found]
        notes.append(f"20 parameter sets, {total} edges identical; omega(G(2,2,2,1)[1..30]) = 3")


def test_criterion_6_diophantine_gaps():
    with criterion(6, "Diophantine gaps", 60.0) as notes:
        for t in [(4, 1, 4, 3), (4, 2, 4, 1)]:
            params = P(*t)
            rep = dio_scan(witness_for(params), params, 10**5)
            assert rep.min_gap_turn == Fraction(1, 2) and rep.min_gap == 2.0
            notes.append(f"{t}: min gap 2 exact")
        params = P(2, 1, 1, 0)
        f = witness_for(params)
        with mpmath.workprec(128):
            assert abs(f.t - mpmath.pi / mpmath.log(2)) < mpmath.mpf(2) ** -120
        rep = dio_scan(f, params, 10**5, start=10**3)
        assert abs(rep.min_gap - 2) < 0.05
        notes.append(f"(2,1,1,0): min gap {rep.min_gap:.6f} on [10^3, 10^5]")


def test_criterion_7_density():
    with criterion(7, "approximation-set density", 60.0) as notes:
        params = P(2, 2, 2, 1)
        rep = aset_scan([ArchChar.of(1)], 0.1, params, 10**5)
        assert rep.density >= 0.9
        assert all(d > 0 for d in rep.block_densities)
        expr = rep.bound.expression
        assert re.fullmatch(r"1/\(\d+ \* H_\d+\^2\), H_2 = \d+, H_\(j\+1\) = \d+\*\(M_j \+ H_j\)!, "
                            r"M_j = prod_\(1<=h<=H_j\) \(\d+h\+1\)", expr)
        assert rep.bound.K == rep.bound.k ** 1 + 1
        none = aset_scan([witness_for(P(4, 1, 4, 3))], 0.1, P(4, 1, 4, 3), 10**5)
        assert none.count == 0
        notes.append(f"density {rep.density:.5f}, min block density {min(rep.block_densities):.4f}")
        notes.append(f"bound {expr.split(',')[0]} (symbolic)")


def test_criterion_8_property_suites():
    with criterion(8, "property suites", 60.0) as notes:
        rng = random.Random(8)
        # adjacency symmetry
        for _ in range(10**4):
            t = rng.choice(PARAM_SETS_5)
            m, n = rng.randint(1, 10**6), rng.randint(1, 10**6)
            if rng.random() < 0.5:
                # force many adjacent pairs: scale a genuine value
                k = rng.randint(1, 2000)
                r = value_at(P(*t), k)
                if r is not None:
                    g = rng.randint(1, 50)
                    m, n = g * r.numerator, g * r.denominator
            params = P(*t)
            assert (adjacent(params, m, n) is None) == (adjacent(params, n, m) is None)
        # complete multiplicativity
        specs = [ArchChar.of(1), ModDirichlet(2, 3, (1, 1)), ModDirichlet(3, 2, (1,)),
                 RootChar(2, 1), RootChar(5, 3), Custom.of({2: Fraction(1, 3)}, Fraction(1, 7)),
                 Custom.of({3: mpmath.mpf("0.123")})]
        for _ in range(10**3):
            m = rng.randint(1, 1000)
            n = rng.randint(1, 10**6 // m)
            for f in specs:
                lhs, rhs = evaluate(f, m * n), add_turns(evaluate(f, m), evaluate(f, n))
                if isinstance(lhs, Fraction) and isinstance(rhs, Fraction):
                    assert lhs == rhs
                else:
                    with mpmath.workprec(128):
                        dlt = (mpmath.mpf(lhs) - mpmath.mpf(rhs)) % 1
                        assert min(dlt, 1 - dlt) < mpmath.mpf(2) ** -100
        # Rat normalization and vp additivity
        for _ in range(10**3):
            u, v, g = rng.randint(-10**9, 10**9), rng.randint(1, 10**9), rng.randint(1, 10**6)
            assert rat(u * g, v * g) == rat(u, v)
            x = rat(rng.randint(1, 10**12), rng.randint(1, 10**12))
            y = rat(-rng.randint(1, 10**12), rng.randint(1, 10**12))
            for p in (2, 3, 5, 7):
                assert vp(p, x * y) == vp(p, x) + vp(p, y)
        # every certificate this suite emits re-verifies with the standalone checker
        emitted = [classification_to_dict(classify(P(*t))) for t in MATRIX]
        emitted += [clique_to_dict(big_clique(6, 3, 2, 3)), clique_to_dict(construct_clique(2, 3, 0))]
        emitted += [clique_to_dict(c) for c in max_cliques(build_window(P(2, 2, 2, 1), 1, 30))]
        for data in emitted:
            ok, msg = checker.check(json.loads(json.dumps(data)))
            assert ok, msg
        notes.append(f"10^4 symmetry pairs, 10^3 multiplicativity pairs x {len(specs)} specs, "
                     f"{len(emitted)} certificates re-verified")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
