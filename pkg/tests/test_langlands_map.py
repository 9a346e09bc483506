from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from artifact.binomial_lab import FAIL, PASS, SKIPPED
from artifact.langlands_map import (
    REDUCIBLE_UNDETERMINED,
    GaloisRepClass,
    HypothesisError,
    berger_radius,
    check_prediction,
    dictionary_entry,
    epsilon_of,
    exceptional_set_member,
    exponent_equivalent,
    normalize_exponent,
    predict_reduction,
    theorem_exclusion,
    vrc1_exclusion,
    vrc1_reduction,
    vrc1_row,
)
from artifact.padic_core import ParamPoint


def legal_points(p):
    for c in range(0, p - 1):
        for b in range(2, p + 1):
            try:
                yield ParamPoint.make(p, b, c, t=1)
            except ValueError:
                continue


# -- epsilon and the exceptional set ----------------------------------------------------------

@pytest.mark.parametrize("b,c,p,eps", [(5, 1, 7, 0), (2, 2, 7, 1), (2, 8, 11, 2)])
def test_epsilon_examples(b, c, p, eps):
    assert epsilon_of(b, c, p) == eps


def test_epsilon_rejects_illegal():
    with pytest.raises(ValueError):
        epsilon_of(2, 6, 7)
    with pytest.raises(ValueError):
        epsilon_of(1, 0, 7)


@pytest.mark.parametrize("p", [7, 11, 13])
def test_epsilon_windows_cover_legal_range(p):
    for c in range(0, p - 1):
        for b in range(2, p + 1):
            assert epsilon_of(b, c, p) in (0, 1, 2)


def test_exceptional_set():
    assert exceptional_set_member(5, 0, 7)
    assert not exceptional_set_member(5, 1, 7)
    assert exceptional_set_member(3, 1, 7)


# -- dictionary -----------------------------------------------------------------------------------

def test_normalize_exponent():
    assert normalize_exponent(12, 7) == 12
    assert normalize_exponent(36, 7) == 12
    assert exponent_equivalent(2, 14, 7)
    p = 7
    for c in range(2, p - 1):
        assert exponent_equivalent(2 + (c - 2) * (p + 1), c * (p + 1) - 2, p)


@given(st.sampled_from([5, 7, 11, 13]), st.integers(-10 ** 6, 10 ** 6))
def test_normalize_idempotent_and_orbit_constant(p, a):
    n = normalize_exponent(a, p)
    assert normalize_exponent(n, p) == n
    assert normalize_exponent(p * a, p) == n


def test_galois_class_invariants():
    with pytest.raises(ValueError):
        GaloisRepClass.ind(8, 7)
    with pytest.raises(ValueError):
        GaloisRepClass("IRREDUCIBLE", 7, 36)
    u = GaloisRepClass.undetermined(7, "why")
    assert u.kind == REDUCIBLE_UNDETERMINED and not u.is_irreducible


def test_dictionary_entry_formats():
    e = dictionary_entry(3, 0, 7)
    assert e["automorphic"] == ("pi", 3, 0) and e["galois"].exponent == 4
    e = dictionary_entry(3, 2, 7)
    assert e["automorphic"] == ("pi", 3, 2)
    assert e["galois"] == (("mu", 4, "omega", 4), ("mu", 2, "omega", 0))
    with pytest.raises(ValueError):
        dictionary_entry(7, 0, 7)


# -- layer table -------------------------------------------------------------------------------------

def test_vrc1_examples():
    assert vrc1_reduction(5, 1, 7).exponent == 12
    assert vrc1_reduction(2, 1, 7).raw_exponent == 15
    assert vrc1_reduction(3, 1, 7).kind == REDUCIBLE_UNDETERMINED


@pytest.mark.parametrize("p", [7, 11, 13])
def test_vrc1_rows_tile_and_lower_endpoints_are_excluded(p):
    for n in range(0, p - 1):
        for b in range(2, p + 1):
            if _eps_ok(b, n, p):
                assert vrc1_row(b, n, p) is not None
        for low in (2 * n + 1, 2 * (n + 1) - p):
            if 2 <= low <= p:
                assert vrc1_exclusion(low, n, p) is not None


def _eps_ok(b, n, p):
    try:
        epsilon_of(b, n, p)
        return True
    except ValueError:
        return False


# -- main theorem ------------------------------------------------------------------------------------

def test_berger_example():
    P = ParamPoint.make(7, 5, 1, t=3, nu=Fraction(3, 2))
    v = berger_radius(P)
    assert v.status == PASS
    assert v.witness["bound"] == 4 and v.witness["t_min"] == 3
    assert v.witness["inequality_rhs"] == Fraction(9, 2) + Fraction(84, 36) + 1
    assert v.witness["inequality_holds"]


def test_berger_skips_exceptional():
    P = ParamPoint.make(7, 3, 1, t=3, nu=Fraction(3, 2))
    v = berger_radius(P)
    assert v.status == SKIPPED and "2c+1" in v.witness["violated"]


def test_predict_examples():
    P = ParamPoint.make(7, 5, 1, t=3, nu=Fraction(3, 2))
    assert predict_reduction(P).exponent == 12
    P = ParamPoint.make(7, 5, 0, t=3, nu=1)
    assert P.k == 7 and predict_reduction(P).equivalent_to(P.k - 1)
    P = ParamPoint.make(7, 7, 1, t=3, nu=Fraction(3, 2))
    cls = predict_reduction(P)
    assert cls.equivalent_to(2 * 7) and cls.equivalent_to(2)


def test_predict_rejects_excluded():
    with pytest.raises(HypothesisError):
        predict_reduction(ParamPoint.make(7, 7, 0, t=3, nu=Fraction(1, 2)))
    assert check_prediction(ParamPoint.make(7, 3, 1, t=3, nu=Fraction(3, 2))).status == SKIPPED


@pytest.mark.parametrize("p", [7, 11, 13, 17])
def test_headline_claim_is_total(p):
    """Outside the exclusions the predicted class always matches k-1."""
    n = 0
    for P in legal_points(p):
        if theorem_exclusion(P.b, P.c, p):
            continue
        v = check_prediction(P, check_slope=False)
        assert v.status == PASS, (P.b, P.c, v.witness)
        assert v.witness["predicted"]["exponent"] % (p + 1) != 0
        n += 1
    assert n > 0
