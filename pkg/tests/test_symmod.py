from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from artifact.binomial_lab import FAIL, PASS
from artifact.padic_core import ParamPoint, binom
from artifact.symmod import (
    F_poly,
    SparseHomogPoly,
    alpha_coeff,
    check_F_divisibility,
    check_generation,
    check_jh_maps,
    dense_layer_dim,
    generators,
    gl2_act,
    jh_sequence,
    layer_dim,
    theta_poly,
    theta_power_divide,
    theta_valuation,
)


def polys(p, r):
    return st.dictionaries(st.integers(0, r), st.integers(1, p - 1), max_size=8).map(
        lambda d: SparseHomogPoly(r, p, d))


# -- action ------------------------------------------------------------------------------

def test_identity_scalar_and_swap():
    p, r = 7, 10
    f = SparseHomogPoly(r, p, {0: 1, 3: 2, 10: 5})
    assert gl2_act(((1, 0), (0, 1)), f) == f
    assert gl2_act(((3, 0), (0, 3)), f) == f.scale(pow(3, r, p))
    assert gl2_act(((0, 1), (1, 0)), SparseHomogPoly.monomial(r, 0, p)) == SparseHomogPoly.monomial(r, r, p)


def test_singular_matrix_rejected():
    with pytest.raises(ValueError):
        gl2_act(((1, 2), (2, 4)), SparseHomogPoly.monomial(4, 0, 7))


@pytest.mark.parametrize("p", [5, 7, 11])
def test_theta_transforms_by_determinant(p):
    th = theta_poly(p)
    for g in generators(p):
        det = (g[0][0] * g[1][1] - g[0][1] * g[1][0]) % p
        assert gl2_act(g, th) == th.scale(det)


@given(st.sampled_from([5, 7]), st.integers(0, 2), st.data())
def test_filtration_is_stable(p, m, data):
    deg = data.draw(st.integers(0, 3 * p))
    g = data.draw(polys(p, deg))
    f = (theta_poly(p) ** m) * g
    for h in generators(p):
        assert theta_power_divide(gl2_act(h, f), m) is not None


# -- theta division ------------------------------------------------------------------------

def test_theta_divides_itself():
    q = theta_power_divide(theta_poly(7), 1)
    assert q == SparseHomogPoly(0, 7, {0: 1})


def test_F1_divisible_once():
    F = F_poly(302, 8, 1, 7)
    assert F.coeffs == {301: 1, 7: 6}
    assert theta_power_divide(F, 1) is not None
    assert theta_power_divide(F, 2) is None
    assert theta_valuation(F) == 1


def test_monomial_x_r_not_divisible():
    assert theta_power_divide(SparseHomogPoly.monomial(50, 0, 7), 1) is None


@given(st.sampled_from([5, 7]), st.integers(0, 3), st.data())
def test_theta_division_roundtrip(p, m, data):
    g = data.draw(polys(p, data.draw(st.integers(0, 40))))
    f = (theta_poly(p) ** m) * g
    q = theta_power_divide(f, m)
    assert q == g


def test_F_poly_special_values():
    assert F_poly(20, 8, 0, 7).coeffs == {20: 1, 8: 6}
    assert F_poly(20, 8, 8, 7).coeffs == {12: 1, 0: 6}
    with pytest.raises(ValueError):
        F_poly(21, 8, 1, 7)


@pytest.mark.parametrize("p,b,c,t", [(5, 3, 1, 1), (7, 5, 2, 1), (7, 2, 4, 2), (11, 4, 3, 1)])
def test_F_divisibility_grid(p, b, c, t):
    P = ParamPoint.make(p, b, c, t=t)
    for m in range(1, min(P.s // 2, p - 1) + 1):
        assert check_F_divisibility(P.r, P.s, m, p).status == PASS


# -- layers and JH sequences ---------------------------------------------------------------

@pytest.mark.parametrize("r,n,sub,quot,rp,dp", [
    (44, 0, (2, 0), (4, 2), 8, 6),
    (7 + 6 * 49, 0, (1, 0), (5, 1), 7, 49),
    (44, 3, (2, 3), (4, 5), 8, 2),
])
def test_jh_sequence_examples(r, n, sub, quot, rp, dp):
    s, q, rp_, dp_, alpha = jh_sequence(r, n, 7)
    assert (s.weight, s.twist) == sub and (q.weight, q.twist) == quot and (rp_, dp_) == (rp, dp)


@pytest.mark.parametrize("r,n", [(44, 0), (7 + 6 * 49, 1), (44, 3)])
def test_jh_maps(r, n):
    assert check_jh_maps(r, n, 7).status == PASS


def test_alpha_nonvanishing():
    p = 7
    for rp in range(p + 1, 2 * p - 1):
        for i in range(rp - (p - 1), p):
            assert alpha_coeff(rp, i, p) % p != 0
        assert binom(rp, p - 1) % p == 0


@pytest.mark.parametrize("p,r", [(5, 30), (7, 44), (7, 60)])
def test_layer_dimensions(p, r):
    for m in range(0, r // (p + 1) + 1):
        want = (r - m * (p + 1) + 1) - max(0, r - (m + 1) * (p + 1) + 1)
        assert dense_layer_dim(r, m, p) == want
        if r - m * (p + 1) >= 0:
            assert layer_dim(r - m * (p + 1), p) == want


# -- generation ---------------------------------------------------------------------------------

@pytest.mark.parametrize("p,b,c,t,m", [(7, 5, 2, 1, 1), (7, 2, 4, 1, 2), (5, 4, 2, 1, 1), (7, 4, 3, 1, 2)])
def test_F_generates_layer(p, b, c, t, m):
    P = ParamPoint.make(p, b, c, t=t)
    assert P.s > 2 * m
    assert check_generation(F_poly(P.r, P.s, m, p), P, m).status == PASS


def test_generation_fails_inside_next_layer():
    p, r, m = 7, 44, 1
    f = (theta_poly(p) ** (m + 1)) * SparseHomogPoly.monomial(r - (m + 1) * (p + 1), 3, p)
    assert check_generation(f, None, m).status == FAIL


def test_generation_fails_on_zero():
    assert check_generation(SparseHomogPoly(44, 7, {}), None, 1).status == FAIL
