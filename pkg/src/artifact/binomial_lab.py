"""Instance checks of the binomial identities, congruences and valuation tables.

Every check returns a Verdict.  All decisions use exact integer arithmetic;
there is no tolerance anywhere.  The small exact linear-algebra helpers used
by the matrix lemmas (and by the kernel constructions later on) live here too.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

import numpy as np

from .padic_core import (
    INF,
    ParamPoint,
    binom,
    binom_valuation,
    factorial_valuation,
    k68_unit,
    lucas_binom_mod_p,
    vp,
)

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"
SKIPPED = "SKIPPED"


@dataclass
class Verdict:
    """Outcome of one check.  FAIL carries a counterexample, SKIPPED the violated clause."""

    status: str
    ref: str
    params: dict = field(default_factory=dict)
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {"status": self.status, "ref": self.ref, "params": self.params,
                "witness": _jsonable(self.witness)}


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float) and x == INF:
        return "inf"
    if isinstance(x, int) and abs(x) > 2 ** 62:
        return str(x)
    return x


def skipped(ref: str, params: dict, why: str) -> Verdict:
    return Verdict(SKIPPED, ref, params, {"violated": why})


def combine(ref: str, params: dict, parts: Sequence[Verdict], **extra) -> Verdict:
    """FAIL if any part fails, else INCONCLUSIVE if any is undecided, else PASS."""
    witness = dict(extra)
    for v in parts:
        if v.status == FAIL:
            witness["first_failure"] = v.to_dict()
            return Verdict(FAIL, ref, params, witness)
    for v in parts:
        if v.status == INCONCLUSIVE:
            witness["first_inconclusive"] = v.to_dict()
            return Verdict(INCONCLUSIVE, ref, params, witness)
    witness["checked"] = sum(1 for v in parts if v.status == PASS)
    return Verdict(PASS, ref, params, witness)


# ---------------------------------------------------------------------------
# Exact linear algebra
# ---------------------------------------------------------------------------

def det_exact(M: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def det_mod_p(M: Sequence[Sequence[int]], p: int) -> int:
    n = len(M)
    A = [[x % p for x in row] for row in M]
    det = 1
    for i in range(n):
        piv = next((k for k in range(i, n) if A[k][i]), None)
        if piv is None:
            return 0
        if piv != i:
            A[i], A[piv] = A[piv], A[i]
            det = -det
        det = det * A[i][i] % p
        inv = pow(A[i][i], -1, p)
        for k in range(i + 1, n):
            if A[k][i]:
                f = A[k][i] * inv % p
                A[k] = [(a - f * b) % p for a, b in zip(A[k], A[i])]
    return det % p


def rref_mod_p(M: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F_p and the pivot columns."""
    A = [[x % p for x in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((k for k in range(r, rows) if A[k][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for k in range(rows):
            if k != r and A[k][c]:
                f = A[k][c]
                A[k] = [(a - f * b) % p for a, b in zip(A[k], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank_mod_p(M: Sequence[Sequence[int]], p: int) -> int:
    if not M:
        return 0
    return len(rref_mod_p(M, p)[1])


def solve_mod_p(A: Sequence[Sequence[int]], rhs: Sequence[int], p: int) -> list[int] | None:
    """Some solution x of A x = rhs over F_p (free variables set to 0), or None."""
    n_rows = len(A)
    n_cols = len(A[0]) if n_rows else 0
    aug = [list(A[i]) + [rhs[i]] for i in range(n_rows)]
    R, pivots = rref_mod_p(aug, p)
    if n_cols in pivots:
        return None
    x = [0] * n_cols
    for row, c in zip(R, pivots):
        x[c] = row[n_cols] % p
    return x


def solve_mod_pk(A: Sequence[Sequence[int]], rhs: Sequence[int], p: int, K: int) -> list[int] | None:
    """The solution of a square system over Z/p^K, None unless A is invertible mod p."""
    n = len(A)
    mod = p ** K
    M = [[x % mod for x in A[i]] + [rhs[i] % mod] for i in range(n)]
    for c in range(n):
        piv = next((k for k in range(c, n) if M[k][c] % p), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        inv = pow(M[c][c], -1, mod)
        M[c] = [x * inv % mod for x in M[c]]
        for k in range(n):
            if k != c and M[k][c]:
                f = M[k][c]
                M[k] = [(a - f * b) % mod for a, b in zip(M[k], M[c])]
    return [M[i][n] for i in range(n)]


def solve_fraction(A: Sequence[Sequence[Fraction | int]], rhs: Sequence[Fraction | int]) -> list[Fraction] | None:
    """Exact solution of a square rational system by Gauss-Jordan, None if singular."""
    n = len(A)
    M = [[Fraction(x) for x in A[i]] + [Fraction(rhs[i])] for i in range(n)]
    for c in range(n):
        piv = next((k for k in range(c, n) if M[k][c] != 0), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for k in range(n):
            if k != c and M[k][c] != 0:
                f = M[k][c]
                M[k] = [a - f * b for a, b in zip(M[k], M[c])]
    return [M[i][n] for i in range(n)]


def frac_mod_p(x: Fraction | int, p: int) -> int:
    x = Fraction(x)
    if x.denominator % p == 0:
        raise ZeroDivisionError(f"{x} is not p-integral")
    return x.numerator * pow(x.denominator, -1, p) % p


# ---------------------------------------------------------------------------
# Identity lemmas
# ---------------------------------------------------------------------------

REF_CMBI4 = "alternating binomial sums: both identities"
REF_CMBI1 = "binomial recurrence: sum_{i<=j} (-1)^{i+1} C(m+1,i) C(m+j-i,j-i) = C(m+j,j)"


def check_cmbi4(b: int, c: int, m: int, k: int, *, fault: int | None = None) -> Verdict:
    """Both identities of the lemma, exactly.

    fault, when given, flips the sign of term i = fault in the first sum; it
    exists only so the regression suite can confirm that corruption is caught.
    """
    params = {"b": b, "c": c, "m": m, "k": k}
    if min(b, c, m) < 0 or k < 1 or m > b - c:
        return skipped(REF_CMBI4, params, "needs b,c,m >= 0, k >= 1, m <= b-c")
    n = b - m - c
    terms = []
    for i in range(k + 1):
        term = (-1) ** i * binom(n + 1, i) * binom(n + k - i, n)
        if fault is not None and i == fault:
            term = -term
        terms.append(term)
    first = sum(terms)
    second = sum((-1) ** (c - l) * binom(n + 1, n - l) * binom(b - m - l, c - l) for l in range(c + 1))
    target = (-1) ** c * binom(b - m + 1, n)
    if first != 0:
        nz = [(i, t) for i, t in enumerate(terms) if t]
        return Verdict(FAIL, REF_CMBI4, params, {"identity": 1, "value": first, "terms": nz[:6]})
    if second != target:
        return Verdict(FAIL, REF_CMBI4, params, {"identity": 2, "lhs": second, "rhs": target})
    return Verdict(PASS, REF_CMBI4, params, {"rhs": target})


def check_cmbi1(m: int, j: int) -> Verdict:
    params = {"m": m, "j": j}
    if m < 1 or j < 1:
        return skipped(REF_CMBI1, params, "needs m, j >= 1")
    lhs = sum((-1) ** (i + 1) * binom(m + 1, i) * binom(m + j - i, j - i) for i in range(1, j + 1))
    rhs = binom(m + j, j)
    if lhs != rhs:
        return Verdict(FAIL, REF_CMBI1, params, {"lhs": lhs, "rhs": rhs})
    return Verdict(PASS, REF_CMBI1, params, {"value": rhs})


# ---------------------------------------------------------------------------
# The double sum S_{r,i,l,m}
# ---------------------------------------------------------------------------

REF_SRJM = "double sum S_{r,i,l,m}: congruences and valuation floors"


def s_sum_raw(r: int, s: int, p: int, i: int, l: int, m: int) -> int:
    """sum of C(r-l, j) C(j, i) over s-m <= j < r-m with j = r-m mod p-1."""
    lo = s - m
    hi = r - m
    if lo >= hi:
        return 0
    q = p - 1
    start = lo + ((r - m - lo) % q)
    return sum(binom(r - l, j) * binom(j, i) for j in range(start, hi, q))


def s_sum(param: ParamPoint, i: int, l: int, m: int) -> int:
    """Exact S_{r,i,l,m} at the parameter point."""
    return s_sum_raw(param.r, param.s, param.p, i, l, m)


SRJM_GUARD = 6


@lru_cache(maxsize=4096)
def _s_row(r: int, s: int, p: int, l: int, m: int, K: int) -> tuple[int, ...]:
    """S_{r,i,l,m} mod p^K for i = 0..s-l.

    The row C(r-l, j) is computed once exactly and reduced; the sum over j
    for all i at once is an int64 matrix product, which stays exact because
    p^{2K} times the number of terms is below 2^63 for the grids used here.
    """
    n_i = max(s - l + 1, 0)
    lo, hi, q = s - m, r - m, p - 1
    if lo >= hi or n_i == 0:
        return tuple(0 for _ in range(n_i))
    mod = p ** K
    start = lo + ((r - m - lo) % q)
    js = list(range(start, hi, q))
    if mod * mod * len(js) >= 2 ** 63:
        return tuple(s_sum_raw(r, s, p, i, l, m) % mod for i in range(n_i))
    full = _binom_row_mod(r - l, mod)
    row = np.array([full[j] for j in js], dtype=np.int64)
    table = _pascal_mod(r, s, mod)[js, :n_i]
    return tuple(int(x) for x in (row @ table) % mod)


@lru_cache(maxsize=256)
def _binom_row_mod(n: int, mod: int) -> tuple[int, ...]:
    """(C(n, j) mod `mod` for j = 0..n), from the exact multiplicative recurrence."""
    out = [1]
    x = 1
    for j in range(n):
        x = x * (n - j) // (j + 1)
        out.append(x % mod)
    return tuple(out)


@lru_cache(maxsize=64)
def _pascal_mod(n_max: int, i_max: int, mod: int) -> np.ndarray:
    """Array P[n, i] = C(n, i) mod `mod` for n <= n_max, i <= i_max."""
    P = np.zeros((n_max + 1, i_max + 1), dtype=np.int64)
    P[0, 0] = 1
    for n in range(1, n_max + 1):
        P[n, 0] = 1
        P[n, 1:] = (P[n - 1, 1:] + P[n - 1, :-1]) % mod
    return P


def _srjm_case_a(r: int, s: int, p: int, i: int, l: int, m: int, congruent_only: bool) -> int:
    q = p - 1
    total = 0
    for j in range(i, s - m):
        if congruent_only and (j - (s - m)) % q:
            continue
        total += binom(s - l - i, j - i) - binom(r - l - i, j - i)
    return binom(r - l, i) * total


def check_srjm(param: ParamPoint, i: int, l: int, m: int) -> Verdict:
    """Part one closed forms modulo p^t and part two valuation floors.

    For the i < s-m closed form, three stated forms disagree: the
    statement sums over all i <= j < s-m with sign (s-term minus r-term), the
    intermediate claim restricts to j = s-m mod p-1 with the opposite sign, and
    the end of the proof restricts j and keeps the statement's sign.  The last
    one is the reference form; the witness records which variants hold.
    """
    p, b, c, t, r, s = param.p, param.b, param.c, param.t, param.r, param.s
    params = {"param": param.as_dict(), "i": i, "l": l, "m": m}
    if not (0 <= l <= p - 1 and 0 <= m <= p - 1 and s - l >= 0 and s - m >= 0 and 0 <= i <= s - l):
        return skipped(REF_SRJM, params, "needs 0 <= l,m <= p-1, s-l >= 0, s-m >= 0, 0 <= i <= s-l")
    K = t + SRJM_GUARD
    S = _s_row(r, s, p, l, m, K)[i]
    pt = p ** t
    nuS = min(vp(S, p), K)
    witness: dict[str, Any] = {"nu_S_capped": nuS, "modulus_exponent": K}
    checked = False
    if i < s - m and l <= c:
        ref_form = _srjm_case_a(r, s, p, i, l, m, congruent_only=True)
        stmt_form = _srjm_case_a(r, s, p, i, l, m, congruent_only=False)
        witness["case"] = "i<s-m"
        witness["reference_form_holds"] = (S - ref_form) % pt == 0
        witness["statement_form_holds"] = (S - stmt_form) % pt == 0
        witness["claim_form_holds"] = (S + ref_form) % pt == 0
        if not witness["reference_form_holds"]:
            return Verdict(FAIL, REF_SRJM, params, witness)
        checked = True
    elif i == s - m and l <= m:
        witness["case"] = "i=s-m"
        if S % pt:
            return Verdict(FAIL, REF_SRJM, params, witness)
        checked = True
    elif i > s - m and l <= m:
        val = binom(r - l, r - m) * binom(r - m, i)
        witness["case"] = "i>s-m"
        witness["statement_sign_holds"] = (S + val) % pt == 0
        witness["claim_sign_holds"] = (S - val) % pt == 0
        if not witness["statement_sign_holds"]:
            return Verdict(FAIL, REF_SRJM, params, witness)
        checked = True
    # part two: valuation floors on 0 <= i <= min(s-l, s-m), within the cases above
    if checked and i <= min(s - l, s - m):
        if c == 0:
            floor = t
        elif b <= p - 1 or c + m >= 2:
            floor = t - (c - 1)
        else:
            floor = t - c
        witness["floor"] = floor
        if nuS < floor:
            return Verdict(FAIL, REF_SRJM, params, witness)
    if not checked:
        return skipped(REF_SRJM, params, "(i, l, m) lies in no stated case")
    return Verdict(PASS, REF_SRJM, params, witness)


# ---------------------------------------------------------------------------
# Lucas and Kummer lemmas
# ---------------------------------------------------------------------------

REF_COEFF51 = "C(r-l, b-m+j(p-1)) mod p via Lucas"
REF_LMK68 = "C(r-l, b-m+j(p-1))/p mod p when the valuation is one"
REF_RK315 = "valuation tables of C(r-l, r-m)"


def coeff51_formula(p: int, b: int, c: int, m: int, j: int, l: int) -> int | None:
    """The listed product for (j, l), or None outside all eight windows."""
    jw = 0 if 0 <= j <= b - m else (1 if b - m + 1 <= j <= b - m + p else (2 if b - m + p + 1 <= j <= b - m + 2 * p else None))
    lw = 0 if 0 <= l <= b - c else (1 if b - c + 1 <= l <= b - c + p else (2 if b - c + p + 1 <= l <= b - c + 2 * p else None))
    if jw is None or lw is None or (jw, lw) == (2, 0):
        return None
    top = lw * p + b - c - l
    bottom = jw * p + b - m - j
    return binom(top, bottom) * binom(c - lw, j - jw)


def check_coeff51(param: ParamPoint, m: int, j: int, l: int) -> Verdict:
    p, b, c, t, r = param.p, param.b, param.c, param.t, param.r
    params = {"param": param.as_dict(), "m": m, "j": j, "l": l}
    if t < 2 or not (0 <= m <= c - 1) or not (0 <= j <= c - 1 and 0 <= l <= c - 1):
        return skipped(REF_COEFF51, params, "needs t >= 2, 0 <= m <= c-1, 0 <= j,l <= c-1")
    rhs = coeff51_formula(p, b, c, m, j, l)
    if rhs is None:
        return skipped(REF_COEFF51, params, "(j, l) outside all eight windows")
    lhs = binom(r - l, b - m + j * (p - 1)) % p
    lucas = lucas_binom_mod_p(r - l, b - m + j * (p - 1), p)
    wit = {"lhs": lhs, "rhs": rhs % p, "lucas": lucas}
    if lhs != rhs % p or lucas != lhs:
        return Verdict(FAIL, REF_COEFF51, params, wit)
    return Verdict(PASS, REF_COEFF51, params, wit)


def lmk68_formula(p: int, b: int, c: int, m: int, j: int, l: int, part: int) -> int | None:
    """Right-hand side modulo p, or None if a denominator vanishes mod p."""
    sign = (-1) ** (l - m)
    if part == 1:
        num = binom(b - m, j) * binom(p - 1 + m - l, c - 1 - j)
        den = binom(b - m - c, l - m) * binom(b - m, c)
    else:
        num = binom(p + b - m - 1, j - 1) * binom(p - 1 + m - l, c - 1 - j)
        den = binom(p + b - m - c, l - m) * binom(p + b - m - 1, c - 1)
    if den % p == 0:
        return None
    return sign * num * pow(den, -1, p) % p


def check_lmk68(param: ParamPoint, m: int, j: int, l: int, part: int) -> Verdict:
    p, b, c, t, r = param.p, param.b, param.c, param.t, param.r
    params = {"param": param.as_dict(), "m": m, "j": j, "l": l, "part": part}
    if t < 2 or not 1 <= c <= p - 2 or not 0 <= m <= p - 1:
        return skipped(REF_LMK68, params, "needs t >= 2, 1 <= c <= p-2, 0 <= m <= p-1")
    if part == 1:
        if (b, m) == (p, 0) or not (0 <= m <= l <= b - c and 0 <= j <= c - 1):
            return skipped(REF_LMK68, params, "part 1 needs 0 <= m <= l <= b-c, 0 <= j <= c-1, (b,m) != (p,0)")
    elif part == 2:
        if not (b <= m <= l <= p + b - c and 1 <= j <= c - 1):
            return skipped(REF_LMK68, params, "part 2 needs b <= m <= l <= p+b-c, 1 <= j <= c-1")
    else:
        raise ValueError("part must be 1 or 2")
    A, B = r - l, b - m + j * (p - 1)
    val = binom(A, B)
    e = vp(val, p)
    if e != 1:
        return Verdict(FAIL, REF_LMK68, params, {"reason": "valuation is not exactly 1", "nu": e})
    lhs = (val // p) % p
    e68, u = k68_unit(A, B, p)
    via_k68 = (-u) % p
    rhs = lmk68_formula(p, b, c, m, j, l, part)
    wit = {"lhs": lhs, "rhs": rhs, "k68": via_k68}
    if rhs is None:
        return Verdict(FAIL, REF_LMK68, params, dict(wit, reason="denominator vanishes mod p"))
    if lhs != rhs or via_k68 != lhs:
        return Verdict(FAIL, REF_LMK68, params, wit)
    return Verdict(PASS, REF_LMK68, params, wit)


def _in(x: int, lo: int, hi: int) -> bool:
    return lo <= x <= hi


def rk315_main_entry(p: int, b: int, c: int, l: int, m: int) -> int | None:
    if (b, c) == (p, 0):
        if m == 0:
            return 0
        return 1 if l == 0 else 0
    if 0 <= m <= b - c:
        return 0
    if _in(m, b - c + 1, b - c + p):
        if 0 <= l <= b - c:
            return 1
        if _in(l, b - c + 1, b - c + p):
            return 0
    if _in(m, b - c + p + 1, b - c + 2 * p):
        if _in(l, b - c + 1, b - c + p):
            return 1
        if _in(l, b - c + p + 1, b - c + 2 * p):
            return 0
    return None


def rk315_A_entries(p: int, b: int, c: int, l: int, m: int) -> tuple[int | None, int | None]:
    """(nu C(r-l, b-m), nu of p^{2m-b} C(r-l,b-m)/C(r-l,r-m)) from part (A)."""
    first = None
    if 0 <= l <= m - c:
        first = 0
    elif _in(l, m - c + 1, b - c):
        first = 1
    elif _in(l, b - c + 1, b - c + p):
        first = 0
    second = None
    if m == b - c and 0 <= l <= m - c:
        second = 2 * m - b
    elif m >= b - c + 1 and 0 <= l <= m - c:
        second = 2 * m - b - 1
    elif m == b - c and _in(l, m - c + 1, b - c):
        second = 2 * m - b + 1
    elif m >= b - c + 1 and _in(l, m - c + 1, b - c):
        second = 2 * m - b
    elif m >= b - c + 1 and _in(l, b - c + 1, b - c + p):
        second = 2 * m - b
    return first, second


def rk315_B_entries(p: int, b: int, c: int, l: int, m: int) -> tuple[int | None, int | None]:
    """(nu C(r-l, b-m+p-1), nu(c_0)) from part (B)."""
    first = None
    if 0 <= l <= m - c + 1:
        first = 0
    elif _in(l, m - c + 2, b - c + p):
        first = 1
    elif _in(l, b - c + p + 1, b - c + 2 * p):
        first = 0
    base = 2 * m - b - (p - 1)
    second = None
    if _in(m, b - c + p - 1, b - c + p) and 0 <= l <= m - c + 1:
        second = base
    elif _in(m, b - c + p + 1, b - c + 2 * p) and 0 <= l <= m - c + 1:
        second = base - 1
    elif _in(m, b - c + p - 1, b - c + p) and _in(l, m - c + 2, b - c + p):
        second = base + 1
    elif _in(m, b - c + p + 1, b - c + 2 * p) and _in(l, m - c + 2, b - c + p):
        second = base
    elif _in(m, b - c + p + 1, b - c + 2 * p) and _in(l, b - c + p + 1, b - c + 2 * p):
        second = base
    return first, second


def rk315_valuation(param: ParamPoint, l: int, m: int, which: str = "main") -> Verdict:
    """Compare Kummer carry counts with the table rows.

    which is "main", "A" or "B".  The main check also confirms
    nu C(r-l, r-m) = nu C(r-l, s-m).
    """
    p, b, c, t, r, s = param.p, param.b, param.c, param.t, param.r, param.s
    params = {"param": param.as_dict(), "l": l, "m": m, "which": which}
    if t < 2 or s < m or not (0 <= m <= p - 1) or not (0 <= l <= m):
        return skipped(REF_RK315, params, "needs t >= 2, s >= m, 0 <= m <= p-1, 0 <= l <= m")
    nu_rm = binom_valuation(r - l, r - m, p)
    if which == "main":
        nu_sm = binom_valuation(r - l, s - m, p)
        table = rk315_main_entry(p, b, c, l, m)
        wit = {"nu_r_minus_m": nu_rm, "nu_s_minus_m": nu_sm, "table": table}
        if nu_rm != nu_sm:
            return Verdict(FAIL, REF_RK315, params, dict(wit, reason="nu C(r-l,r-m) != nu C(r-l,s-m)"))
        if table is None:
            return skipped(REF_RK315, params, "no row of the main table applies")
        if table != nu_rm:
            return Verdict(FAIL, REF_RK315, params, wit)
        return Verdict(PASS, REF_RK315, params, wit)
    if which == "A":
        if not 0 <= b - m <= c:
            return skipped(REF_RK315, params, "part (A) needs 0 <= b-m <= c")
        nu1 = binom_valuation(r - l, b - m, p)
        nu2 = (2 * m - b) + nu1 - nu_rm
        t1, t2 = rk315_A_entries(p, b, c, l, m)
        tag = "C(r-l,b-m)"
    elif which == "B":
        if not (0 <= b - m + p - 1 <= c and m < p - 1):
            return skipped(REF_RK315, params, "part (B) needs 0 <= b-m+p-1 <= c, m < p-1")
        nu1 = binom_valuation(r - l, b - m + p - 1, p)
        nu2 = (2 * m - b - (p - 1)) + nu1 - nu_rm
        t1, t2 = rk315_B_entries(p, b, c, l, m)
        tag = "C(r-l,b-m+p-1)"
    else:
        raise ValueError("which must be main, A or B")
    wit = {"nu_" + tag: nu1, "nu_ratio": nu2, "table": [t1, t2]}
    if t1 is None and t2 is None:
        return skipped(REF_RK315, params, "no row of the part table applies")
    if (t1 is not None and t1 != nu1) or (t2 is not None and t2 != nu2):
        return Verdict(FAIL, REF_RK315, params, wit)
    return Verdict(PASS, REF_RK315, params, wit)


# ---------------------------------------------------------------------------
# Matrix lemmas
# ---------------------------------------------------------------------------

REF_INVMT2 = "binomial matrix (C(b-m-c+1+i, b-m-j)) invertible mod p"
REF_INVMT1 = "binomial matrix (C(m-c+j, i)) invertible mod p"
REF_GRINBERG = "binomial determinant superfactorial closed form"


def invmt2_matrix(b: int, c: int, m: int) -> list[list[int]]:
    return [[binom(b - m - c + 1 + i, b - m - j) for i in range(c + 1)] for j in range(c + 1)]


def invmt1_matrix(c: int, m: int) -> list[list[int]]:
    return [[binom(m - c + j, i) for i in range(c)] for j in range(1, c + 1)]


def check_invmt2(b: int, c: int, m: int, p: int, *, fault: tuple[int, int, int] | None = None) -> Verdict:
    """Nonsingularity mod p.  fault = (row, col, delta) perturbs one entry."""
    params = {"b": b, "c": c, "m": m, "p": p}
    if min(b, c, m) < 0 or m > b - c:
        return skipped(REF_INVMT2, params, "needs m <= b-c")
    B = invmt2_matrix(b, c, m)
    if fault is not None:
        jj, ii, delta = fault
        B[jj][ii] += delta
    det = det_exact(B)
    # exact evaluation: det = (-1)^{c(c+1)/2} C(b-m+1, b-m-c)
    closed = (-1) ** (c * (c + 1) // 2) * binom(b - m + 1, b - m - c)
    wit = {"det": det, "det_mod_p": det % p, "closed_form": closed}
    if det != closed:
        return Verdict(FAIL, REF_INVMT2, params, dict(wit, reason="determinant differs from its closed form"))
    if det % p == 0:
        return Verdict(FAIL, REF_INVMT2, params, dict(wit, reason="singular mod p"))
    return Verdict(PASS, REF_INVMT2, params, wit)


def check_invmt1(c: int, m: int, p: int) -> Verdict:
    params = {"c": c, "m": m, "p": p}
    if c < 1 or m < c:
        return skipped(REF_INVMT1, params, "needs 1 <= c <= m")
    det = det_exact(invmt1_matrix(c, m))
    wit = {"det": det}
    # the matrix is unipotent up to column operations, so det = 1 exactly
    if det != 1 or det % p == 0:
        return Verdict(FAIL, REF_INVMT1, params, wit)
    return Verdict(PASS, REF_INVMT1, params, wit)


def superfactorial(n: int) -> int:
    """H(n) = prod_{i<n} i!."""
    out = 1
    f = 1
    for i in range(n):
        if i > 0:
            f *= i
        out *= f
    return out


def grinberg_closed_form(a: int, b: int, c: int) -> Fraction:
    H = superfactorial
    return Fraction(H(a) * H(b) * H(c) * H(a + b + c), H(b + c) * H(c + a) * H(a + b))


def check_grinberg(a: int, b: int, c: int, p: int | None = None) -> Verdict:
    params = {"a": a, "b": b, "c": c, "p": p}
    if min(a, b, c) < 0:
        return skipped(REF_GRINBERG, params, "needs a, b, c >= 0")
    M1 = [[binom(a + b + i - 1, a + i - j) for j in range(1, c + 1)] for i in range(1, c + 1)]
    M2 = [[binom(a + b, a + i - j) for j in range(1, c + 1)] for i in range(1, c + 1)]
    d1, d2 = det_exact(M1), det_exact(M2)
    closed = grinberg_closed_form(a, b, c)
    wit: dict[str, Any] = {"det1": d1, "det2": d2, "closed_form": closed}
    if not (d1 == d2 == closed):
        return Verdict(FAIL, REF_GRINBERG, params, wit)
    if p is not None and a + b + c <= p:
        wit["unit_mod_p"] = d1 % p != 0
        if d1 % p == 0:
            return Verdict(FAIL, REF_GRINBERG, params, wit)
    return Verdict(PASS, REF_GRINBERG, params, wit)
