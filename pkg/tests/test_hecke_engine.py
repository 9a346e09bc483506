from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from artifact.binomial_lab import FAIL, INCONCLUSIVE, PASS
from artifact.hecke_engine import (
    CosetIndex,
    InducedFunction,
    binom_elem,
    class_sum,
    int_elem,
    minus_ap,
    reduce_check,
    t_apply,
    t_minus,
    t_plus,
)
from artifact.hecke_oracle import Oracle
from artifact.padic_core import PadicElem, binom, teichmuller_int

G00 = CosetIndex.std()
ALPHA = CosetIndex.alpha()


def to_engine(p, r, fd, K):
    f = InducedFunction(p, 1, r, cap=K)
    for lab, v in fd.items():
        g = ALPHA if lab[0] == "G1" else CosetIndex.std(*lab[1])
        for j, x in v.items():
            f.add_term(g, j, int_elem(p, 1, x, K + 5))
    return f


def to_dict(f, K):
    p = f.p
    out = {}
    for g in f.terms:
        lab = ("G1", 0, ()) if g.branch == "ALPHA" else ("STD", g.digits)
        d = {}
        for j, c in f.dense(g).items():
            if not c.is_inexact_zero:
                d[j] = c.to_int() % p ** K
        d = {j: x for j, x in d.items() if x}
        if d:
            out[lab] = d
    return out


def oracle_apply(O, fd, K):
    mod = O.p ** K
    o = O.T(fd)
    o = {lab: {j: x % mod for j, x in w.items() if x % mod} for lab, w in o.items()}
    return {a: b for a, b in o.items() if b}


# -- cosets -----------------------------------------------------------------------------

def test_coset_invariants():
    with pytest.raises(ValueError):
        CosetIndex("ALPHA", 1, (0,))
    with pytest.raises(ValueError):
        CosetIndex("STD", 2, (0,))
    with pytest.raises(ValueError):
        CosetIndex.std(7).check_digits(7)
    g = CosetIndex.std(1, 2)
    assert g.child(3).parent() == g and g.n == 2


# -- worked examples ----------------------------------------------------------------------

def test_t_plus_degree_zero():
    f = InducedFunction.single(7, 1, 0, G00, {0: 1}, cap=5)
    out = t_plus(f)
    assert out.support() == [CosetIndex.std(l) for l in range(7)]
    for g in out.support():
        assert out.coefficient(g, 0).congruent(1, 5)


def test_t_plus_single_top_coefficient_at_M1():
    p, r = 7, 10
    f = InducedFunction.single(p, 1, r, G00, {r: 1}, cap=10)
    out = t_plus(f, 1)
    for l in range(p):
        poly = out.terms.get(CosetIndex.std(l))
        want = (-teichmuller_int(l, p, 3)) ** r % p if l else 0
        if want == 0:
            assert poly is None or not poly.explicit
        else:
            assert set(poly.explicit) == {0}
            assert poly.explicit[0].residue() == want % p


def test_t_minus_degree_zero_lands_on_alpha():
    out = t_minus(InducedFunction.single(5, 1, 0, G00, {0: 1}, cap=5))
    assert out.support() == [ALPHA]
    assert out.coefficient(ALPHA, 0).congruent(1, 5)


def test_t_minus_level_one_x_r_vanishes():
    f = InducedFunction.single(7, 1, 12, CosetIndex.std(0), {0: 1}, cap=10)
    assert t_minus(f).terms == {}


def test_t_minus_level_one_y_r():
    f = InducedFunction.single(7, 1, 12, CosetIndex.std(0), {12: 1}, cap=10)
    out = t_minus(f)
    assert out.support() == [G00]
    assert set(out.dense(G00)) == {12}
    assert out.coefficient(G00, 12).congruent(1, 10)


def test_t_apply_degree_zero_has_p_plus_one_terms():
    out = t_apply(InducedFunction.single(7, 1, 0, G00, {0: 1}, cap=5))
    assert len(out.support()) == 8


def test_minus_ap_shifts_scaling_valuation():
    p, E = 7, 2
    ap = PadicElem.from_int(p, E, 1, 20).scale_pi(2 * E)
    f = InducedFunction.single(p, E, 3, CosetIndex.std(1), {0: 1}, cap=20)
    g = minus_ap(f, ap) - t_apply(f)
    c = g.coefficient(CosetIndex.std(1), 0)
    assert c.v == 2 * E


def test_alpha_support_rejected():
    f = InducedFunction.single(5, 1, 3, ALPHA, {0: 1}, cap=5)
    with pytest.raises(ValueError):
        t_plus(f)
    with pytest.raises(ValueError):
        t_minus(f)


def test_reduce_check_examples():
    p, r = 7, 9
    tgt = InducedFunction.single(p, 1, r, G00, {2: 3, 5: 1}, cap=6)
    assert reduce_check(tgt.copy(), tgt).status == PASS
    noisy = tgt + InducedFunction.single(p, 1, r, CosetIndex.std(3), {1: 7, 4: 49}, cap=6)
    assert reduce_check(noisy, tgt).status == PASS
    bad = tgt + InducedFunction.single(p, 1, r, G00, {r: 1}, cap=6)
    v = reduce_check(bad, tgt)
    assert v.status == FAIL
    assert v.witness["j"] == r and v.witness["valuation"] == 0 and v.witness["coset"] == str(G00)


def test_reduce_check_mismatched_parameters():
    with pytest.raises(ValueError):
        reduce_check(InducedFunction.zero(7, 1, 5, 3), InducedFunction.zero(7, 1, 6, 3))


def test_reduce_check_starved_precision_is_inconclusive():
    f = InducedFunction.single(7, 1, 5, G00, {0: 1}, cap=0)
    assert reduce_check(f, InducedFunction.zero(7, 1, 5, 0)).status == INCONCLUSIVE


# -- oracle agreement ---------------------------------------------------------------------

@pytest.mark.parametrize("p", [3, 5, 7])
def test_oracle_agreement(p):
    rng = random.Random(p)
    O = Oracle(p, 0, K=40, max_level=2)
    K = 12
    for r in range(0, 7):
        O.r = r
        for _ in range(4):
            lvl = rng.choice([0, 0, 1])
            digs = tuple(rng.randrange(p) for _ in range(lvl))
            fd = {("STD", digs): {j: rng.randrange(-50, 50) for j in range(r + 1)}}
            fd = {k: {j: x for j, x in v.items() if x} for k, v in fd.items()}
            assert oracle_apply(O, fd, K) == to_dict(t_apply(to_engine(p, r, fd, K), K), K)


def test_oracle_central_character():
    p = 5
    O = Oracle(p, 3, K=30, max_level=1)
    for label, g in list(O.reps.items())[:8]:
        scaled = tuple(tuple(x * p for x in row) for row in g)
        lab, k0 = O.standardize(scaled)
        assert lab == label and k0 == ((1, 0), (0, 1))


# -- structural properties ---------------------------------------------------------------------

def random_function(rng, p, r, cap, levels=(0, 1, 2)):
    f = InducedFunction(p, 1, r, cap)
    for _ in range(rng.randrange(1, 4)):
        n = rng.choice(levels)
        g = CosetIndex.std(*[rng.randrange(p) for _ in range(n)])
        for _ in range(rng.randrange(1, 5)):
            f.add_term(g, rng.randrange(r + 1), int_elem(p, 1, rng.randrange(1, 10 ** 6), cap + 4))
    return f


def test_level_shift():
    rng = random.Random(3)
    for _ in range(30):
        f = random_function(rng, 5, 8, 6, levels=(1, 2, 3))
        below = {g.n for g in t_minus(f).terms}
        above = {g.n for g in t_plus(f).terms}
        assert above <= {n + 1 for n in f.levels()}
        assert below <= {n - 1 for n in f.levels()}


def test_linearity_on_random_functions():
    rng = random.Random(11)
    p, r, cap = 7, 13, 5
    for _ in range(100):
        f, g = random_function(rng, p, r, cap), random_function(rng, p, r, cap)
        lhs = t_apply(f + g)
        rhs = t_apply(f) + t_apply(g)
        assert reduce_check(lhs, rhs, threshold=cap).status == PASS


def test_runs_match_explicit_terms():
    p, r, cap = 5, 40, 6
    run = InducedFunction(p, 1, r, cap).add_run(CosetIndex.std(2), 3, 37, 1, 4, 33)
    exp = InducedFunction(p, 1, r, cap)
    for j in range(4, 34):
        if j % (p - 1) == 1:
            exp.add_term(CosetIndex.std(2), j, 3 * binom(37, j))
    for op in (t_plus, t_minus, t_apply):
        assert reduce_check(op(run), op(exp), threshold=cap).status == PASS


@given(st.integers(0, 60), st.integers(0, 3), st.integers(0, 60), st.integers(0, 60))
def test_class_sum_matches_direct(N, rho, k0, k1):
    p, K = 5, 6
    want = sum(binom(N, k) for k in range(max(k0, 0), min(k1, N) + 1) if k % 4 == rho) % p ** K
    assert class_sum(N, rho, k0, k1, p, K) == want


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6), st.integers(1, 6))
def test_truncation_soundness(seed, extra):
    """Raising the threshold never flips a decided verdict."""
    rng = random.Random(seed)
    p, r = 5, 11
    f = random_function(rng, p, r, 8)
    tgt = t_apply(f) if rng.random() < 0.5 else random_function(rng, p, r, 8)
    lo = reduce_check(t_apply(f, 2), tgt.with_cap(2)).status
    hi = reduce_check(t_apply(f, 2 + extra), tgt.with_cap(2 + extra)).status
    if lo != INCONCLUSIVE:
        assert lo == hi


def test_binom_elem_out_of_range_is_exact_zero():
    assert binom_elem(5, 1, 3, 4, 5).exact_zero
