from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from artifact.binomial_lab import (
    FAIL,
    PASS,
    SKIPPED,
    check_cmbi1,
    check_cmbi4,
    check_coeff51,
    check_grinberg,
    check_invmt1,
    check_invmt2,
    check_lmk68,
    check_srjm,
    combine,
    det_exact,
    det_mod_p,
    grinberg_closed_form,
    invmt2_matrix,
    rank_mod_p,
    rk315_valuation,
    s_sum,
    s_sum_raw,
    skipped,
    solve_fraction,
    solve_mod_p,
    solve_mod_pk,
    superfactorial,
)
from artifact.padic_core import ParamPoint, binom_valuation, factorial_valuation, vp


def P(p, b, c, t):
    return ParamPoint.make(p, b, c, t=t)


# -- identities --------------------------------------------------------------------

@pytest.mark.parametrize("args,status", [((5, 2, 1, 1), PASS), ((9, 3, 2, 4), PASS), ((5, 2, 4, 2), SKIPPED)])
def test_cmbi4_examples(args, status):
    assert check_cmbi4(*args).status == status


@pytest.mark.parametrize("m,j", [(4, 1), (3, 5), (1, 10)])
def test_cmbi1_examples(m, j):
    v = check_cmbi1(m, j)
    assert v.status == PASS and v.witness["value"] == math.comb(m + j, j)


def test_cmbi4_fault_is_caught_with_witness():
    v = check_cmbi4(6, 1, 1, 3, fault=1)
    assert v.status == FAIL and v.witness["identity"] == 1 and v.witness["terms"]


@given(st.integers(0, 14), st.integers(0, 14), st.integers(0, 14), st.integers(1, 9))
def test_cmbi4_holds_where_defined(b, c, m, k):
    v = check_cmbi4(b, c, m, k)
    assert v.status == (PASS if m <= b - c else SKIPPED)


# -- the double sum ---------------------------------------------------------------------

def test_s_sum_first_example():
    Q = P(7, 2, 0, 1)
    assert Q.r == 44
    direct = sum(math.comb(44, j) for j in range(2, 44, 6))
    assert s_sum(Q, 0, 0, 0) == direct and direct % 7 == 0


def test_s_sum_empty_range():
    assert s_sum_raw(10, 10, 7, 0, 0, 0) == 0


def test_s_sum_floor_example():
    S = s_sum(P(7, 5, 1, 3), 1, 0, 0)
    assert S != 0 and vp(S, 7) >= 2


@pytest.mark.parametrize("p,b,c,t", [(7, 2, 0, 2), (7, 7, 1, 3)])
def test_srjm_examples_pass(p, b, c, t):
    v = check_srjm(P(p, b, c, t), 0, 0, 0)
    assert v.status == PASS and v.witness["reference_form_holds"]


def test_srjm_t1_c1_b5_m1_interior():
    Q = P(7, 5, 1, 1)
    for l in range(7):
        for i in range(Q.s - l):
            assert check_srjm(Q, i, l, 1).status in (PASS, SKIPPED)


def test_srjm_boundary_hand_example():
    # p=5, b=2, c=0, t=1: r=22, i = s - l = 2 with l = m = 0 lies on the failing boundary
    Q = P(5, 2, 0, 1)
    S = s_sum(Q, 2, 0, 0)
    assert S % 5 == 1
    assert check_srjm(Q, 2, 0, 0).status == FAIL


# -- Lucas and p-divided coefficients ----------------------------------------------------------

def test_coeff51_examples():
    Q = P(7, 5, 2, 2)
    v = check_coeff51(Q, 0, 0, 0)
    assert v.status == PASS and v.witness["lhs"] == 0
    assert check_coeff51(Q, 1, 1, 0).status == PASS


def test_coeff51_known_failure_at_b_equals_p():
    # b - m - j = p is not a base-p digit, so the digitwise factorisation breaks at (b, m) = (p, 0)
    fails = [(c, j, l) for c in range(1, 6) for j in range(c) for l in range(c)
             if check_coeff51(P(7, 7, c, 2), 0, j, l).status == FAIL]
    assert fails
    others = [check_coeff51(P(7, 7, c, 2), m, j, l).status
              for c in range(2, 6) for m in range(1, c) for j in range(c) for l in range(c)]
    assert FAIL not in others


def test_lmk68_examples():
    assert check_lmk68(P(7, 5, 2, 2), 1, 0, 1, 1).status == PASS
    assert check_lmk68(P(7, 3, 2, 2), 3, 1, 3, 2).status == PASS
    assert check_lmk68(P(7, 7, 2, 2), 0, 0, 0, 1).status == SKIPPED


@pytest.mark.parametrize("b,c,m,want", [(5, 1, 2, 0), (5, 1, 5, 1), (7, 0, 0, 0)])
def test_rk315_examples(b, c, m, want):
    v = rk315_valuation(P(7, b, c, 2), 0, m)
    assert v.status == PASS and v.witness["nu_r_minus_m"] == want


@given(st.integers(0, 5000), st.integers(0, 5000), st.sampled_from([3, 5, 7]))
def test_three_valuation_routes_agree(A, B, p):
    A, B = max(A, B), min(A, B)
    kummer = binom_valuation(A, B, p)
    legendre = factorial_valuation(A, p) - factorial_valuation(B, p) - factorial_valuation(A - B, p)
    assert kummer == legendre == vp(math.comb(A, B), p)


# -- matrices ----------------------------------------------------------------------------------

def test_invmt_examples():
    v = check_invmt1(2, 3, 7)
    assert v.status == PASS and v.witness["det"] == 1
    v = check_invmt2(5, 2, 1, 7)
    assert v.status == PASS and v.witness["det"] == -10
    assert check_invmt1(1, 1, 7).status == PASS


def test_invmt2_fault_is_caught():
    v = check_invmt2(5, 1, 2, 7, fault=(0, 0, 1))
    assert v.status == FAIL and v.witness["det"] != v.witness["closed_form"]


def test_invmt2_singular_outside_used_range():
    # b - m + 1 = p makes the closing binomial vanish mod p
    assert check_invmt2(7, 1, 1, 7).status == FAIL


@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12))
def test_invmt2_closed_form_exact(b, c, m):
    if m <= b - c:
        d = det_exact(invmt2_matrix(b, c, m))
        assert d == (-1) ** (c * (c + 1) // 2) * math.comb(b - m + 1, b - m - c)


def test_superfactorial_and_grinberg_examples():
    assert superfactorial(3) == 2
    v = check_grinberg(1, 1, 1)
    assert v.status == PASS and v.witness["det1"] == 2
    assert check_grinberg(0, 5, 4).witness["det1"] == 1


@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
def test_grinberg_both_forms_match(a, b, c):
    v = check_grinberg(a, b, c)
    assert v.status == PASS
    assert v.witness["det1"] == v.witness["det2"] == grinberg_closed_form(a, b, c)


# -- linear algebra helpers -------------------------------------------------------------------

int_mats = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n), min_size=n, max_size=n))


@given(int_mats, st.sampled_from([5, 7, 11]))
def test_det_mod_p_matches_exact(M, p):
    assert det_mod_p(M, p) == det_exact(M) % p
    assert (rank_mod_p(M, p) == len(M)) == (det_exact(M) % p != 0)


@given(int_mats, st.sampled_from([5, 7]), st.integers(1, 5), st.data())
def test_solve_mod_pk(M, p, K, data):
    n = len(M)
    rhs = data.draw(st.lists(st.integers(0, p ** K - 1), min_size=n, max_size=n))
    d = solve_mod_pk(M, rhs, p, K)
    if det_exact(M) % p == 0:
        assert d is None
        return
    mod = p ** K
    assert [sum(a * x for a, x in zip(row, d)) % mod for row in M] == [x % mod for x in rhs]


@given(int_mats, st.data())
def test_solve_fraction(M, data):
    n = len(M)
    rhs = data.draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n))
    d = solve_fraction(M, rhs)
    if det_exact(M) == 0:
        assert d is None
    else:
        assert [sum(Fraction(a) * x for a, x in zip(row, d)) for row in M] == rhs


def test_solve_mod_p_consistent_singular():
    M = [[1, 2], [2, 4]]
    x = solve_mod_p(M, [3, 6], 7)
    assert x is not None and (x[0] + 2 * x[1]) % 7 == 3
    assert solve_mod_p(M, [1, 0], 7) is None


def test_combine_and_skipped():
    a = skipped("r", {}, "why")
    assert a.witness == {"violated": "why"}
    ok = combine("r", {}, [check_cmbi1(1, 1), check_cmbi1(2, 2)])
    assert ok.status == PASS and ok.witness["checked"] == 2
    bad = combine("r", {}, [check_cmbi1(1, 1), check_cmbi4(6, 1, 1, 3, fault=0)])
    assert bad.status == FAIL and "first_failure" in bad.witness
