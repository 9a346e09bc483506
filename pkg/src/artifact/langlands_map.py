"""Bookkeeping for the supersingular mod-p Langlands dictionary.

An irreducible two-dimensional mod-p representation ind(omega_2^a) only
depends on a modulo p^2 - 1 up to the Frobenius twist a -> p a, so
classes are stored through a canonical representative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .binomial_lab import FAIL, PASS, Verdict, skipped
from .padic_core import ParamPoint, _epsilon

IRREDUCIBLE = "IRREDUCIBLE"
REDUCIBLE_UNDETERMINED = "REDUCIBLE-UNDETERMINED"


class HypothesisError(ValueError):
    """A theorem hypothesis fails; the message names the clause."""


def normalize_exponent(a: int, p: int) -> int:
    """min(a mod p^2-1, p a mod p^2-1)."""
    n = p * p - 1
    return min(a % n, (p * a) % n)


def exponent_equivalent(a: int, a2: int, p: int) -> bool:
    return normalize_exponent(a, p) == normalize_exponent(a2, p)


@dataclass(frozen=True)
class GaloisRepClass:
    """ind(omega_2^a) for a canonical exponent, or the undetermined sentinel."""

    kind: str
    p: int
    exponent: int | None = None
    raw_exponent: int | None = None
    note: str = ""

    def __post_init__(self) -> None:
        if self.kind == IRREDUCIBLE:
            if self.exponent is None:
                raise ValueError("irreducible class needs an exponent")
            if self.exponent % (self.p + 1) == 0:
                raise ValueError(f"(p+1) divides the exponent {self.exponent}")
            if self.exponent != normalize_exponent(self.exponent, self.p):
                raise ValueError("exponent is not canonical")
        elif self.kind == REDUCIBLE_UNDETERMINED:
            if self.exponent is not None:
                raise ValueError("the sentinel carries no exponent")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")

    @staticmethod
    def ind(a: int, p: int, note: str = "") -> "GaloisRepClass":
        return GaloisRepClass(IRREDUCIBLE, p, normalize_exponent(a, p), a, note)

    @staticmethod
    def undetermined(p: int, note: str = "") -> "GaloisRepClass":
        return GaloisRepClass(REDUCIBLE_UNDETERMINED, p, None, None, note)

    @property
    def is_irreducible(self) -> bool:
        return self.kind == IRREDUCIBLE

    def equivalent_to(self, a: int) -> bool:
        return self.is_irreducible and exponent_equivalent(self.exponent, a, self.p)

    def as_dict(self) -> dict:
        return {"kind": self.kind, "p": self.p, "exponent": self.exponent,
                "raw_exponent": self.raw_exponent, "note": self.note}

    def __str__(self) -> str:
        if self.is_irreducible:
            return f"ind(omega_2^{self.exponent})"
        return "reducible-undetermined"


def dictionary_entry(r: int, lam: int, p: int) -> dict:
    """The two lines of the semisimple correspondence as data (trivial twist).

    lam = 0 pairs ind(omega_2^{r+1}) with pi(r, 0, 1).  For lam != 0 the
    Galois side is a sum of two characters, which is recorded but not
    used elsewhere.
    """
    if not 0 <= r <= p - 1:
        raise ValueError("r must lie in [0, p-1]")
    if lam % p == 0:
        return {"automorphic": ("pi", r, 0), "galois": GaloisRepClass.ind(r + 1, p)}
    lam %= p
    inv = pow(lam, -1, p)
    return {"automorphic": ("pi", r, lam),
            "galois": (("mu", inv, "omega", r + 1), ("mu", lam, "omega", 0))}


def epsilon_of(b: int, c: int, p: int) -> int:
    if not (2 <= b <= p and 0 <= c <= p - 2):
        raise ValueError(f"illegal (b, c) = ({b}, {c}) for p = {p}")
    e = _epsilon(b, c, p)
    assert e is not None, "every legal (b, c) lies in an epsilon window"
    return e


def exceptional_patterns(c: int, p: int) -> list[tuple[int, int]]:
    return [(p - 2, 0), (p, 0), (p, 1), (2 * c + 1, c), (2 * c - 1, c), (2 * c - 3, c),
            (2 * c - p, c), (2 * c - 2 - p, c), (2 * c - 4 - p, c)]


def exceptional_set_member(b: int, c: int, p: int) -> bool:
    """(b, c) in E', the points where the reduction may be reducible."""
    return (b, c) in exceptional_patterns(c, p)


def theorem_exclusion(b: int, c: int, p: int) -> str | None:
    """The excluded clause of the main theorem met by (b, c), if any."""
    if (b, c) == (p, 0):
        return "(b, c) = (p, 0)"
    for name, val in (("2c+1", 2 * c + 1), ("2c-1", 2 * c - 1), ("2c-p", 2 * c - p),
                      ("2(c-1)-p", 2 * (c - 1) - p)):
        if b == val:
            return f"b = {name}"
    return None


def vrc1_exclusion(b: int, n: int, p: int) -> str | None:
    if (b, n) in ((p - 2, 0), (p, 0), (p, 1)):
        return f"(b, n) = ({b}, {n})"
    for name, val in (("2n+1", 2 * n + 1), ("2n-1", 2 * n - 1), ("2(n+1)-p", 2 * (n + 1) - p),
                      ("2n-p", 2 * n - p)):
        if b == val:
            return f"b = {name}"
    return None


def vrc1_row(b: int, n: int, p: int) -> int | None:
    """Row index (0, 1, 2) of the layer table containing b, or None."""
    if 2 * n + 1 <= b <= p:
        return 0
    if 2 * n + 1 - (p - 1) <= b <= 2 * n:
        return 1
    if 2 * (n + 1) - 2 * (p - 1) <= b <= 2 * n - (p - 1):
        return 2
    return None


def vrc1_reduction(b: int, n: int, p: int) -> GaloisRepClass:
    """Reduction when P factors through the layer n (generic inputs only)."""
    if not (2 <= b <= p and 0 <= n <= p - 1):
        raise ValueError(f"illegal (b, n) = ({b}, {n})")
    why = vrc1_exclusion(b, n, p)
    if why is not None:
        return GaloisRepClass.undetermined(p, why)
    row = vrc1_row(b, n, p)
    if row is None:
        raise ValueError(f"b = {b} lies in no row of the table for n = {n}")
    return GaloisRepClass.ind(b + (n + row) * (p - 1) + 1, p, f"table row {row + 1}")


def theorem_violations(param: ParamPoint, check_t: bool = False) -> list[str]:
    """Clauses of the main theorem's hypotheses that fail at param."""
    p, b, c, nu = param.p, param.b, param.c, param.nu
    out = []
    if p < 7:
        out.append("p >= 7")
    eps = param.eps
    if not param.s > 2 * nu:
        out.append("k > 2 nu(a_p) + 2")
    if not c < nu:
        out.append("c < nu(a_p)")
    if not nu < min(Fraction(p, 2) + c - eps, p - 1):
        out.append("nu(a_p) < min(p/2 + c - eps, p - 1)")
    excl = theorem_exclusion(b, c, p)
    if excl is not None:
        out.append(f"excluded point {excl}")
    if check_t:
        if b >= 2 * c - 1 and not param.t >= 2 * nu:
            out.append("t >= 2 nu(a_p)")
        if b <= 2 * c - 2 and not param.t > 2 * nu + eps - 1:
            out.append("t > 2 nu(a_p) + eps - 1")
    return out


def berger_bound(nu, eps: int) -> tuple[int, int]:
    """(ceil(2 nu) + eps + 1, ceil(2 nu) + eps)."""
    t_min = math.ceil(2 * Fraction(nu)) + eps
    return t_min + 1, t_min


REF_BERGER = "Berger constant bound ceil(2 nu) + eps + 1"
REF_PREDICT = "main theorem: reduction is ind(omega_2^{k-1})"


def berger_radius(param: ParamPoint) -> Verdict:
    """Bound on m(k, a_p) and the minimal t, with the Berger-inequality report.

    The weight-side hypothesis k > 3 nu + (k-1)p/(p-1)^2 + 1 is only needed
    when c >= 1 and nu <= c + 1; otherwise the reduction at k is known
    directly.  It is evaluated in every case and reported.
    """
    params = param.as_dict()
    bad = theorem_violations(param)
    if bad:
        return skipped(REF_BERGER, params, "; ".join(bad))
    k, p, nu, c = param.k, param.p, param.nu, param.c
    bound, t_min = berger_bound(nu, param.eps)
    rhs = 3 * nu + Fraction((k - 1) * p, (p - 1) ** 2) + 1
    holds = k > rhs
    if nu > c + 1:
        route = "large slope"
    elif c == 0:
        route = "small weight"
    else:
        route = "Berger inequality"
    wit = {"bound": bound, "t_min": t_min, "inequality_rhs": rhs, "k": k,
           "inequality_holds": holds, "route": route}
    if route == "Berger inequality" and not holds:
        return Verdict(FAIL, REF_BERGER, params, wit)
    return Verdict(PASS, REF_BERGER, params, wit)


def _special_case(b: int, c: int, p: int) -> tuple[str, int] | None:
    """Exceptional points resolved by a separate argument: (label, exponent)."""
    if (b, c) == (p - 2, 0):
        return "case (p-2, 0)", 2 + (p - 2) * (p + 1)
    if (b, c) == (p, 1):
        return "case (p, 1)", 2
    if b == 2 * c - 3:
        return "case b = 2c-3", 2 + (c - 2) * (p + 1)
    if b == 2 * c - 4 - p:
        return "case b = 2c-4-p", 2 + (c - 3) * (p + 1)
    return None


def predict_reduction(param: ParamPoint, check_slope: bool = True) -> GaloisRepClass:
    """Predicted reduction at every k' = k + p^t (p-1) d; raises HypothesisError."""
    bad = theorem_violations(param) if check_slope else (
        [f"excluded point {theorem_exclusion(param.b, param.c, param.p)}"]
        if theorem_exclusion(param.b, param.c, param.p) else [])
    if bad:
        raise HypothesisError("; ".join(bad))
    p, b, c = param.p, param.b, param.c
    n = c - param.eps
    special = _special_case(b, c, p)
    if special is not None:
        label, a = special
        return GaloisRepClass.ind(a, p, label)
    out = vrc1_reduction(b, n, p)
    if not out.is_irreducible:
        raise AssertionError(f"generic point ({b}, {c}) hit a table exclusion: {out.note}")
    return out


def check_prediction(param: ParamPoint, check_slope: bool = True) -> Verdict:
    params = param.as_dict()
    try:
        cls = predict_reduction(param, check_slope)
    except HypothesisError as exc:
        return skipped(REF_PREDICT, params, str(exc))
    ok = cls.equivalent_to(param.k - 1)
    wit = {"predicted": cls.as_dict(), "k_minus_1": param.k - 1,
           "n": param.c - param.eps}
    return Verdict(PASS if ok else FAIL, REF_PREDICT, params, wit)
