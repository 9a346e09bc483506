from __future__ import annotations

from fractions import Fraction

import pytest

from artifact.binomial_lab import FAIL, PASS, SKIPPED
from artifact.padic_core import ParamPoint, binom
from artifact.proof_harness import (
    combining_check,
    eta_sequence,
    final_prop_check,
    gen1_build_and_check,
    gen1_f0_sign,
    gen2_build_and_check,
    gen2_violations,
    layer0_eta,
    m_greater_case,
    m_greater_check,
    m_greater_range,
    m_less_slope_check,
    mono1_case,
    mono1_check,
    mono12_case,
    mono12_check,
    other_generator_check,
    surviving_layers,
)

H = Fraction(1, 2)


# -- first generator -------------------------------------------------------------------------

def test_gen1_unhalved_integral_slope():
    P = ParamPoint.make(7, 5, 1, t=4, nu=2)
    w = gen1_build_and_check(P, 0, 0)
    assert w.status == PASS


def test_gen1_ramified_slope():
    P = ParamPoint.make(7, 5, 2, t=5, nu=Fraction(5, 2))
    assert P.E == 2
    assert gen1_build_and_check(P, 1, 0).status == PASS


def test_gen1_special_point_needs_larger_t():
    P = ParamPoint.make(7, 7, 1, t=3, nu=2)
    assert gen1_build_and_check(P, 0, 0).status == SKIPPED


def test_gen1_replays_deterministically():
    P = ParamPoint.make(7, 5, 2, t=5, nu=Fraction(5, 2))
    a = gen1_build_and_check(P, 1, 1)
    b = gen1_build_and_check(P, 1, 1, precision=a.precision)
    assert a.status == b.status == PASS
    assert a.verdict.to_dict() == b.verdict.to_dict()


def test_gen1_precision_monotone():
    P = ParamPoint.make(7, 5, 2, t=5, nu=Fraction(5, 2))
    base = gen1_build_and_check(P, 0, 1)
    assert base.status == PASS
    for N in (base.precision * 2, base.precision * 3):
        assert gen1_build_and_check(P, 0, 1, precision=N).status == PASS


def test_gen1_fault_is_caught():
    P = ParamPoint.make(7, 5, 1, t=4, nu=2)
    assert gen1_build_and_check(P, 0, 0, fault="f2").status == FAIL


def test_gen1_f0_sign_is_minus():
    P = ParamPoint.make(7, 5, 1, t=4, nu=2)
    v = gen1_f0_sign(P)
    assert v.status == PASS and v.witness["holding"] == ["minus"]


# -- kernel monomials ------------------------------------------------------------------------------

def test_mono1_case_i():
    P = ParamPoint.make(7, 5, 2, t=6, nu=Fraction(5, 2))
    ws = mono1_check(P, 1)
    assert [w.indices["j"] for w in ws] == [0, 1]
    assert all(w.status == PASS for w in ws)
    assert mono1_case(5, 2, 1, 7).label == "i"


def test_mono12_case_i():
    P = ParamPoint.make(11, 3, 5, t=11, nu=Fraction(11, 2))
    ws = mono12_check(P, 2)
    assert sorted(w.indices["j"] for w in ws) == [0, 1, 3, 4]
    assert all(w.status == PASS for w in ws)


@pytest.mark.parametrize("m", [3, 4])
def test_mono12_upper_range(m):
    P = ParamPoint.make(11, 3, 5, t=11, nu=Fraction(11, 2))
    ws = mono12_check(P, m)
    assert sorted(w.indices["j"] for w in ws) == [1, 2, 3, 4]
    assert all(w.status == PASS for w in ws)


def test_mono_outside_hypotheses_skips():
    P = ParamPoint.make(7, 5, 2, t=3, nu=Fraction(5, 2))
    assert all(w.status == SKIPPED for w in mono1_check(P, 1))


# -- case coverage ------------------------------------------------------------------------------------

@pytest.mark.parametrize("p", [7, 11, 13])
def test_case_guards_tile_the_regions(p):
    for c in range(0, p - 1):
        for b in range(2, p + 1):
            for m in range(1, c):
                one = mono1_case(b, c, m, p)
                two = mono12_case(b, c, m, p)
                if c <= b <= p:
                    assert one is not None and two is None, (b, c, m)
                if 2 <= b <= c - 1 <= p - 3:
                    assert two is not None and one is None, (b, c, m)
                    low = set(range(0, b - m + 1)) | set(range(c - m, c))
                    assert set(two.claimed) == (low if m <= b - 1 else set(range(1, c)))


@pytest.mark.parametrize("p", [7, 11, 13])
def test_greater_guards_cover_every_layer(p):
    for c in range(0, p - 1):
        for b in range(2, p + 1):
            try:
                P = ParamPoint.make(p, b, c, t=1, nu=Fraction(2 * p - 3, 2))
            except ValueError:
                continue
            for m in range(max(1, c + 1 - P.eps), p - 1):
                if (b, c, m) == (p, 0, 1):
                    continue
                assert m_greater_case(b, c, m, p) is not None, (b, c, m)


# -- second generator ------------------------------------------------------------------------------------

def test_gen2_part_i():
    P = ParamPoint.make(7, 5, 1, t=4, nu=2)
    w = gen2_build_and_check(P, 2, 0)
    assert w.status == PASS and w.indices["part"] == "i"


def test_gen2_part_ii():
    P = ParamPoint.make(7, 2, 4, t=10, nu=Fraction(9, 2))
    assert not gen2_violations(P, 4, 0)
    w = gen2_build_and_check(P, 4, 0)
    assert w.status == PASS and w.indices["part"] == "ii"


def test_gen2_l_zero_always_admissible():
    for p in (7, 11):
        for c in range(0, p - 1):
            for b in range(2, p + 1):
                try:
                    P = ParamPoint.make(p, b, c, t=2 * p, nu=Fraction(2 * c + 1, 2))
                except ValueError:
                    continue
                for m in range(max(1, c + 1 - P.eps), P.nu_floor + 1):
                    if (b, c, m) == (p, 0, 1):
                        continue
                    assert not [v for v in gen2_violations(P, m, 0) if "nu(C(" in v]


# -- other generator and layers below the slope ----------------------------------------------------------

def test_other_generator_coefficient():
    P = ParamPoint.make(7, 5, 2, t=6, nu=Fraction(5, 2))
    v = other_generator_check(P, 1, certify=True)
    assert v.status == PASS
    assert v.witness["coefficients_mod_p"][1] == (-1) % 7


def test_eta_sequence():
    assert eta_sequence(3, 1) == [1]
    for m in range(0, 7):
        assert eta_sequence(m, 6) == [binom(m + a - 1, a - 1) for a in range(1, 7)]


def test_layer0_eta_unit():
    P = ParamPoint.make(7, 5, 1, t=4, nu=2)
    eta, want = layer0_eta(P)
    assert want == 3 and eta == 3


def test_m_less_slope():
    assert m_less_slope_check(ParamPoint.make(7, 5, 2, t=6, nu=Fraction(5, 2))).status == PASS


# -- layers above c and combining ----------------------------------------------------------------------

@pytest.mark.parametrize("p,b,c,t,nu", [(7, 5, 1, 4, 2), (7, 2, 4, 10, Fraction(9, 2)), (7, 7, 0, 4, 2)])
def test_m_greater(p, b, c, t, nu):
    assert m_greater_check(ParamPoint.make(p, b, c, t=t, nu=nu)).status == PASS


def test_combining_surviving_layer():
    P = ParamPoint.make(7, 5, 1, t=4, nu=2)
    v = combining_check(P, certify=True)
    assert v.status == PASS
    assert v.witness["surviving"] == [1] and v.witness["n"] == 1 == P.c - P.eps


def test_combining_p0_keeps_layer_one():
    P = ParamPoint.make(7, 7, 0, t=4, nu=2)
    left, n = surviving_layers(P)
    assert left == [1] and n == 1
    assert list(m_greater_range(P)) == [2]


# -- final reduction --------------------------------------------------------------------------------------

def test_final_generic():
    P = ParamPoint.make(7, 5, 1, t=3, nu=Fraction(3, 2))
    v = final_prop_check(P)
    assert v.status == PASS and v.witness["exponent"] == 12 and P.k == 13


def test_final_p_minus_2_zero():
    P = ParamPoint.make(7, 5, 0, t=2, nu=H)
    v = final_prop_check(P)
    assert v.status == PASS and v.witness["exponent"] == 2 + 5 * 8 and P.k == 7


def test_final_p_one_certified():
    P = ParamPoint.make(7, 7, 1, t=4, nu=Fraction(3, 2))
    v = final_prop_check(P, certify=True)
    assert v.status == PASS and v.witness["exponent"] == 2 and P.k - 1 == 14


def test_final_excluded_skips():
    assert final_prop_check(ParamPoint.make(7, 3, 1, t=3, nu=Fraction(3, 2))).status == SKIPPED
