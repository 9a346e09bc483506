"""Exact integer and truncated p-adic arithmetic.

Elements live in the totally ramified ring Z_p[pi]/(pi^E - p).  A nonzero
element is stored as pi^v * u with u a unit known modulo pi^prec; the unit is
a tuple of E integers (u_0, ..., u_{E-1}) meaning sum u_i pi^i, where u_i is
reduced modulo p^ceil((prec - i)/E).

The module also houses the binomial valuation toolkit (Legendre, Kummer,
Lucas, the digitwise unit of a binomial modulo p^{e+1}) and the parameter
record shared by every other module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

INF = math.inf


# ---------------------------------------------------------------------------
# Integer binomial toolkit
# ---------------------------------------------------------------------------

def binom(n: int, k: int) -> int:
    """C(n, k) with the convention C(n, k) = 0 for k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binom requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def digits(n: int, p: int) -> list[int]:
    """Base-p digits of n >= 0, least significant first ([] for 0)."""
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    return out


def vp(n: int, p: int) -> float | int:
    """p-adic valuation of an integer (INF for 0)."""
    if n == 0:
        return INF
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def factorial_valuation(n: int, p: int) -> int:
    """nu_p(n!) by Legendre's digit-sum formula."""
    if n < 0:
        raise ValueError("factorial_valuation requires n >= 0")
    return (n - sum(digits(n, p))) // (p - 1)


def binom_valuation(A: int, B: int, p: int) -> float | int:
    """nu_p(C(A, B)) as the number of carries when adding B and A-B in base p.

    Returns INF when the binomial is zero (B < 0 or B > A).
    """
    if B < 0 or B > A:
        return INF
    carries = 0
    carry = 0
    x, y = B, A - B
    while x or y or carry:
        s = x % p + y % p + carry
        carry = 1 if s >= p else 0
        carries += carry
        x //= p
        y //= p
    return carries


def lucas_binom_mod_p(A: int, B: int, p: int) -> int:
    """C(A, B) mod p via Lucas' theorem."""
    if B < 0 or B > A:
        return 0
    out = 1
    while A or B:
        a, b = A % p, B % p
        if b > a:
            return 0
        out = out * math.comb(a, b) % p
        A //= p
        B //= p
    return out


def k68_unit(A: int, B: int, p: int) -> tuple[int, int]:
    """Return (e, u) with C(A, B) = (-p)^e * u mod p^{e+1}.

    The unit is computed digitwise as prod a_i! / (b_i! c_i!) mod p where a, b, c
    are the base-p digits of A, B and A - B.
    """
    if B < 0 or B > A:
        raise ValueError("k68_unit requires 0 <= B <= A")
    e = binom_valuation(A, B, p)
    C = A - B
    num, den = 1, 1
    while A or B or C:
        num = num * math.factorial(A % p) % p
        den = den * math.factorial(B % p) * math.factorial(C % p) % p
        A //= p
        B //= p
        C //= p
    return e, num * pow(den, -1, p) % p


def _split_p(n: int, p: int) -> tuple[int, int]:
    """Write n != 0 as p^a * u with p not dividing u."""
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return a, n


def binom_padic(n: int, k: int, p: int, K: int) -> tuple[float | int, int]:
    """(nu_p(C(n,k)), unit part of C(n,k) mod p^K).

    Uses an exact product over min(k, n-k) factors, so it is intended for
    binomials near either end of a row (n itself may be huge).
    """
    if k < 0 or k > n:
        return INF, 0
    k = min(k, n - k)
    mod = p ** K
    v = 0
    unit_num, unit_den = 1, 1
    for i in range(k):
        a, u = _split_p(n - i, p)
        b, w = _split_p(i + 1, p)
        v += a - b
        unit_num = unit_num * u % mod
        unit_den = unit_den * w % mod
    return v, unit_num * pow(unit_den, -1, mod) % mod


def iter_binom_padic(n: int, k0: int, k1: int, p: int, K: int) -> Iterator[tuple[int, int, int]]:
    """Yield (k, nu_p(C(n,k)), unit mod p^K) for k0 <= k <= k1 consecutively.

    The first value is computed by binom_padic, so k0 (or n - k0) should be
    modest; later values use C(n, k+1) = C(n, k) (n-k)/(k+1).
    """
    k0 = max(k0, 0)
    k1 = min(k1, n)
    if k0 > k1:
        return
    mod = p ** K
    v, u = binom_padic(n, k0, p, K)
    k = k0
    while True:
        yield k, v, u
        if k == k1:
            return
        a, x = _split_p(n - k, p)
        b, y = _split_p(k + 1, p)
        v += a - b
        u = u * x % mod * pow(y, -1, mod) % mod
        k += 1


def min_binom_valuation_ap(n: int, lo: int, hi: int, a: int, q: int, p: int) -> tuple[float | int, int | None]:
    """Minimum of nu_p(C(n, j)) over lo <= j <= hi with j = a mod q, plus an argmin.

    q must divide p - 1, so that j mod q equals the base-p digit sum mod q.
    The search is a least-significant-digit-first dynamic program whose state
    is (borrow of n - j, comparison of j with lo, comparison with hi, digit sum
    mod q); each borrow is one Kummer carry.  Returns (INF, None) on an empty
    range.
    """
    if (p - 1) % q:
        raise ValueError("q must divide p - 1")
    lo = max(lo, 0)
    hi = min(hi, n)
    if lo > hi:
        return INF, None
    L = max(len(digits(n, p)), 1)
    nd = digits(n, p) + [0] * L
    lod = digits(lo, p) + [0] * L
    hid = digits(hi, p) + [0] * L
    # comparison codes: 0 less, 1 equal, 2 greater (of the low part of j)
    start = (0, 1, 1, 0)
    layer: dict[tuple[int, int, int, int], int] = {start: 0}
    parents: list[dict[tuple[int, int, int, int], tuple[tuple[int, int, int, int], int]]] = []
    for pos in range(L):
        nxt: dict[tuple[int, int, int, int], int] = {}
        par: dict[tuple[int, int, int, int], tuple[tuple[int, int, int, int], int]] = {}
        nk, lk, hk = nd[pos], lod[pos], hid[pos]
        for state, cost in layer.items():
            borrow, clo, chi, sm = state
            for d in range(p):
                diff = nk - d - borrow
                nb = 1 if diff < 0 else 0
                nlo = 2 if d > lk else (0 if d < lk else clo)
                nhi = 2 if d > hk else (0 if d < hk else chi)
                key = (nb, nlo, nhi, (sm + d) % q)
                c = cost + nb
                if key not in nxt or c < nxt[key]:
                    nxt[key] = c
                    par[key] = (state, d)
        parents.append(par)
        layer = nxt
    best = INF
    best_key = None
    for key, cost in layer.items():
        borrow, clo, chi, sm = key
        if borrow == 0 and clo >= 1 and chi <= 1 and sm == a % q and cost < best:
            best, best_key = cost, key
    if best_key is None:
        return INF, None
    j = 0
    key = best_key
    for pos in range(L - 1, -1, -1):
        key, d = parents[pos][key]
        j += d * p ** pos
    return best, j


# ---------------------------------------------------------------------------
# Unit-tuple helpers for Z_p[pi]/(pi^E - p)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _moduli(p: int, E: int, n: int) -> tuple[int, ...]:
    return tuple(p ** max(0, -(-(n - i) // E)) for i in range(E))


def _reduce(a: Sequence[int], p: int, E: int, n: int) -> tuple[int, ...]:
    mods = _moduli(p, E, n)
    return tuple(x % m for x, m in zip(a, mods))


def _tuple_val(a: Sequence[int], p: int, E: int) -> float | int:
    best = INF
    for i, x in enumerate(a):
        if x:
            best = min(best, E * vp(x, p) + i)
    return best


def _shift_up(a: Sequence[int], p: int, E: int, k: int) -> tuple[int, ...]:
    """Multiply by pi^k, k >= 0."""
    if k == 0:
        return tuple(a)
    qq, rr = divmod(k, E)
    res = [0] * E
    pq = p ** qq
    for i, x in enumerate(a):
        j = i + rr
        if j < E:
            res[j] = x * pq
        else:
            res[j - E] = x * pq * p
    return tuple(res)


def _shift_down(a: Sequence[int], p: int, E: int, k: int) -> tuple[int, ...]:
    """Divide by pi^k exactly; requires valuation >= k."""
    if k == 0:
        return tuple(a)
    qq, rr = divmod(k, E)
    res = [0] * E
    for i, x in enumerate(a):
        if i >= rr:
            res[i - rr] = x // p ** qq
        else:
            res[i - rr + E] = x // p ** (qq + 1)
    return tuple(res)


def _tuple_mul(a: Sequence[int], b: Sequence[int], p: int, E: int) -> tuple[int, ...]:
    if E == 1:
        return (a[0] * b[0],)
    res = [0] * E
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            k = i + j
            if k < E:
                res[k] += x * y
            else:
                res[k - E] += p * x * y
    return tuple(res)


def _tuple_inv(a: Sequence[int], p: int, E: int, n: int) -> tuple[int, ...]:
    """Inverse of a unit modulo pi^n (Newton iteration for E > 1)."""
    if E == 1:
        return (pow(a[0], -1, p ** max(n, 1)),)
    x = (pow(a[0], -1, p),) + (0,) * (E - 1)
    k = 1
    while k < n:
        k = min(2 * k, n)
        ax = _reduce(_tuple_mul(a, x, p, E), p, E, k)
        two_minus = tuple((2 if i == 0 else 0) - y for i, y in enumerate(ax))
        x = _reduce(_tuple_mul(x, two_minus, p, E), p, E, k)
    return _reduce(x, p, E, n)


# ---------------------------------------------------------------------------
# PadicElem
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PadicElem:
    """Element pi^v * unit of Z_p[pi]/(pi^E - p), capped relative precision.

    prec is the relative precision in pi-units.  An inexact zero O(pi^v) has
    prec 0 and a zero unit.  An exact zero has exact_zero set.
    """

    p: int
    E: int
    v: int
    unit: tuple[int, ...]
    prec: int
    exact_zero: bool = False

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero(p: int, E: int = 1) -> "PadicElem":
        return PadicElem(p, E, 0, (0,) * E, 0, True)

    @staticmethod
    def big_oh(p: int, E: int, absprec: int) -> "PadicElem":
        """The inexact zero O(pi^absprec)."""
        return PadicElem(p, E, absprec, (0,) * E, 0, False)

    @staticmethod
    def from_int(p: int, E: int, z: int, prec: int) -> "PadicElem":
        if z == 0:
            return PadicElem.zero(p, E)
        a, u = _split_p(z, p)
        return PadicElem(p, E, E * a, _reduce((u,) + (0,) * (E - 1), p, E, prec), prec)

    @staticmethod
    def from_valuation_unit(p: int, E: int, v: int, u: int, prec: int) -> "PadicElem":
        """pi^v times an integer unit u (p must not divide u)."""
        return PadicElem(p, E, v, _reduce((u,) + (0,) * (E - 1), p, E, prec), prec)

    @staticmethod
    def from_pi_poly(p: int, E: int, coeffs: Sequence[int], prec: int) -> "PadicElem":
        """sum coeffs[i] pi^i as an element; coefficients may be any integers."""
        acc = [0] * E
        for i, c in enumerate(coeffs):
            qq, rr = divmod(i, E)
            acc[rr] += c * p ** qq
        return PadicElem._normalize(p, E, 0, tuple(acc), prec)

    @staticmethod
    def from_fraction(p: int, E: int, x: Fraction | int, prec: int) -> "PadicElem":
        x = Fraction(x)
        num = PadicElem.from_int(p, E, x.numerator, prec)
        if x.denominator == 1:
            return num
        return num / PadicElem.from_int(p, E, x.denominator, prec)

    @staticmethod
    def _normalize(p: int, E: int, v: int, a: tuple[int, ...], absprec_rel: int) -> "PadicElem":
        """Build pi^v * a where a is known modulo pi^absprec_rel (not nec. a unit)."""
        if absprec_rel <= 0:
            return PadicElem.big_oh(p, E, v + absprec_rel)
        a = _reduce(a, p, E, absprec_rel)
        w = _tuple_val(a, p, E)
        if w == INF or w >= absprec_rel:
            return PadicElem.big_oh(p, E, v + absprec_rel)
        w = int(w)
        unit = _reduce(_shift_down(a, p, E, w), p, E, absprec_rel - w)
        return PadicElem(p, E, v + w, unit, absprec_rel - w)

    # -- basic properties --------------------------------------------------
    @property
    def is_inexact_zero(self) -> bool:
        return not self.exact_zero and self.prec == 0

    @property
    def abs_prec(self) -> float | int:
        """Absolute precision in pi-units (INF for an exact zero)."""
        if self.exact_zero:
            return INF
        return self.v + self.prec

    @property
    def valuation(self) -> Fraction | float:
        """Normalized valuation (nu(p) = 1); for O(pi^k) a lower bound k/E."""
        if self.exact_zero:
            return INF
        return Fraction(self.v, self.E)

    def is_zero_mod(self, k: int) -> bool | None:
        """Is the valuation >= k pi-units?  None when precision cannot decide."""
        if self.exact_zero or self.v >= k:
            return True
        if self.prec > 0:
            return False
        return None

    def residue(self) -> int:
        """Image in the residue field F_p; requires nonnegative valuation."""
        if self.exact_zero or self.v > 0:
            return 0
        if self.v < 0:
            raise ValueError("element is not integral")
        if self.prec == 0:
            raise ValueError("precision exhausted")
        return self.unit[0] % self.p

    def to_int(self) -> int:
        """Integer representative modulo pi^abs_prec (E = 1, v >= 0 only)."""
        if self.E != 1:
            raise ValueError("to_int needs E = 1")
        if self.exact_zero or self.prec == 0:
            return 0
        if self.v < 0:
            raise ValueError("element is not integral")
        return self.unit[0] * self.p ** self.v % self.p ** (self.v + self.prec)

    def with_prec(self, prec: int) -> "PadicElem":
        """Lower the relative precision to prec."""
        if self.exact_zero or prec >= self.prec:
            return self
        if prec <= 0:
            return PadicElem.big_oh(self.p, self.E, self.v + max(prec, 0))
        return PadicElem(self.p, self.E, self.v, _reduce(self.unit, self.p, self.E, prec), prec)

    def cap_abs(self, absprec: int) -> "PadicElem":
        """Lower the absolute precision to absprec (never raises it)."""
        if self.exact_zero:
            return PadicElem.big_oh(self.p, self.E, absprec)
        if self.v >= absprec:
            return PadicElem.big_oh(self.p, self.E, min(absprec, self.abs_prec))
        return self.with_prec(absprec - self.v)

    def _check(self, other: "PadicElem") -> None:
        if self.p != other.p or self.E != other.E:
            raise ValueError("operands live in different rings")

    def _coerce(self, other) -> "PadicElem":
        if isinstance(other, PadicElem):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            ap = self.abs_prec
            base = 64 * self.E if ap == INF else max(1, int(ap) + 2 * self.E)
            return PadicElem.from_fraction(self.p, self.E, other, max(base, self.E))
        return NotImplemented

    # -- arithmetic ----------------------------------------------------------
    def __neg__(self) -> "PadicElem":
        if self.exact_zero or self.prec == 0:
            return self
        return PadicElem(self.p, self.E, self.v, _reduce(tuple(-x for x in self.unit), self.p, self.E, self.prec), self.prec)

    def __add__(self, other) -> "PadicElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.exact_zero:
            return other
        if other.exact_zero:
            return self
        p, E = self.p, self.E
        A = min(self.abs_prec, other.abs_prec)
        vmin = min(self.v, other.v)
        if A <= vmin:
            return PadicElem.big_oh(p, E, int(A))
        a = _shift_up(self.unit, p, E, self.v - vmin)
        b = _shift_up(other.unit, p, E, other.v - vmin)
        s = tuple(x + y for x, y in zip(a, b))
        return PadicElem._normalize(p, E, vmin, s, int(A) - vmin)

    __radd__ = __add__

    def __sub__(self, other) -> "PadicElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PadicElem":
        return (-self) + other

    def __mul__(self, other) -> "PadicElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p, E = self.p, self.E
        if self.exact_zero or other.exact_zero:
            return PadicElem.zero(p, E)
        v = self.v + other.v
        n = min(self.prec, other.prec)
        if n == 0:
            return PadicElem.big_oh(p, E, v)
        return PadicElem(p, E, v, _reduce(_tuple_mul(self.unit, other.unit, p, E), p, E, n), n)

    __rmul__ = __mul__

    def inverse(self) -> "PadicElem":
        if self.exact_zero:
            raise ZeroDivisionError("division by exact zero")
        if self.prec == 0:
            raise ZeroDivisionError("division by an element of unknown valuation")
        return PadicElem(self.p, self.E, -self.v, _tuple_inv(self.unit, self.p, self.E, self.prec), self.prec)

    def __truediv__(self, other) -> "PadicElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "PadicElem":
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "PadicElem":
        if k < 0:
            return self.inverse() ** (-k)
        out = PadicElem.from_int(self.p, self.E, 1, self.prec if not self.exact_zero else self.E)
        if k == 0:
            return out
        if self.exact_zero:
            return self
        if self.prec == 0:
            return PadicElem.big_oh(self.p, self.E, self.v * k)
        base = self.unit
        acc = (1,) + (0,) * (self.E - 1)
        e = k
        while e:
            if e & 1:
                acc = _reduce(_tuple_mul(acc, base, self.p, self.E), self.p, self.E, self.prec)
            base = _reduce(_tuple_mul(base, base, self.p, self.E), self.p, self.E, self.prec)
            e >>= 1
        return PadicElem(self.p, self.E, self.v * k, acc, self.prec)

    def scale_pi(self, k: int) -> "PadicElem":
        """Multiply by pi^k exactly (k may be negative)."""
        if self.exact_zero:
            return self
        return PadicElem(self.p, self.E, self.v + k, self.unit, self.prec)

    def scale_by_p_power(self, q: Fraction | int) -> "PadicElem":
        """Multiply by p^q for rational q with denominator dividing E."""
        k = Fraction(q) * self.E
        if k.denominator != 1:
            raise ValueError(f"p^{q} is not in the ring with E={self.E}")
        return self.scale_pi(int(k))

    def congruent(self, other, k: int | None = None) -> bool | None:
        """Is self - other zero modulo pi^k (default: the common precision)?"""
        diff = self - self._coerce(other)
        if k is None:
            return diff.exact_zero or diff.prec == 0
        return diff.is_zero_mod(k)

    def __repr__(self) -> str:
        if self.exact_zero:
            return "0"
        if self.prec == 0:
            return f"O(pi^{self.v})"
        u = self.unit[0] if self.E == 1 else self.unit
        return f"pi^{self.v}*{u} + O(pi^{self.v + self.prec})"


@lru_cache(maxsize=None)
def _teich_int(p: int, lam0: int, K: int) -> int:
    mod = p ** K
    x = lam0 % p
    for _ in range(K):
        x = pow(x, p, mod)
    return x


def teichmuller_int(lam0: int, p: int, K: int) -> int:
    """Integer representative of the Teichmuller lift of lam0 modulo p^K."""
    return _teich_int(p, lam0 % p, K)


def teichmuller(lam0: int, p: int, prec: int, E: int = 1) -> PadicElem:
    """Teichmuller lift of lam0 in F_p, to relative precision prec (pi-units)."""
    lam0 %= p
    if lam0 == 0:
        return PadicElem.zero(p, E)
    K = max(1, -(-prec // E))
    return PadicElem.from_int(p, E, _teich_int(p, lam0, K), prec)


# ---------------------------------------------------------------------------
# Parameter points
# ---------------------------------------------------------------------------

def _epsilon(b: int, c: int, p: int) -> int | None:
    if 2 * c - 1 <= b <= p:
        return 0
    if 2 * (c - 1) - p <= b <= 2 * (c - 1):
        return 1
    if 2 <= b <= 2 * (c - 1) - (p + 1):
        return 2
    return None


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class ParamPoint:
    """A point (p, b, c, d, t, slope) of the standing conventions.

    The slope is a_p = pi^{E nu} * u(pi) with nu = e/E and u an integer
    polynomial in pi given by its coefficient tuple (default u = 1).
    prec is the working relative precision in pi-units (None selects
    E * (t + 8)).
    """

    p: int
    b: int
    c: int
    d: int = 1
    t: int = 1
    nu: Fraction = Fraction(0)
    E: int = 1
    unit: tuple[int, ...] = (1,)
    prec: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "nu", Fraction(self.nu))
        if (self.nu * self.E).denominator != 1:
            raise ValueError(f"slope {self.nu} needs E divisible by {self.nu.denominator}")
        bad = self.violations()
        if bad:
            raise ValueError("illegal parameter point: " + "; ".join(bad))

    @staticmethod
    def make(p: int, b: int, c: int, d: int = 1, t: int = 1, nu=0, E: int | None = None,
             unit: Sequence[int] = (1,), prec: int | None = None) -> "ParamPoint":
        nu = Fraction(nu)
        if E is None:
            E = nu.denominator
        return ParamPoint(p, b, c, d, t, nu, E, tuple(unit), prec)

    def violations(self) -> list[str]:
        out = []
        p, b, c = self.p, self.b, self.c
        if not _is_prime(p) or p < 3:
            out.append(f"p={p} is not an odd prime")
        if not 2 <= b <= p:
            out.append(f"b={b} outside [2, p]")
        if not 0 <= c <= p - 2:
            out.append(f"c={c} outside [0, p-2]")
        if self.d < 1 or self.d % p == 0:
            out.append(f"d={self.d} must be >= 1 and prime to p")
        if self.t < 1:
            out.append(f"t={self.t} must be >= 1")
        if self.E < 1:
            out.append("E must be >= 1")
        if not self.unit or self.unit[0] % p == 0:
            out.append("slope unit must be a unit")
        if not out and _epsilon(b, c, p) is None:
            out.append(f"(b, c) = ({b}, {c}) lies in no epsilon window")
        return out

    # -- derived quantities ------------------------------------------------
    @property
    def s(self) -> int:
        return self.b + self.c * (self.p - 1)

    @property
    def r(self) -> int:
        return self.s + self.p ** self.t * (self.p - 1) * self.d

    @property
    def k(self) -> int:
        return self.s + 2

    @property
    def kprime(self) -> int:
        return self.r + 2

    @property
    def eps(self) -> int:
        e = _epsilon(self.b, self.c, self.p)
        assert e is not None
        return e

    @property
    def nu_floor(self) -> int:
        return math.floor(self.nu)

    @property
    def nu_pi(self) -> int:
        """Valuation of a_p in pi-units."""
        return int(self.nu * self.E)

    @property
    def working_prec(self) -> int:
        return self.prec if self.prec is not None else self.E * (self.t + 8)

    def ap(self, prec: int | None = None) -> PadicElem:
        n = prec if prec is not None else self.working_prec
        u = PadicElem.from_pi_poly(self.p, self.E, self.unit, n)
        return u.scale_pi(self.nu_pi)

    def elem(self, x, prec: int | None = None) -> PadicElem:
        """Coerce an integer or fraction into the ring at working precision."""
        n = prec if prec is not None else self.working_prec
        return PadicElem.from_fraction(self.p, self.E, x, n)

    def replace(self, **kw) -> "ParamPoint":
        data = dict(p=self.p, b=self.b, c=self.c, d=self.d, t=self.t, nu=self.nu, E=self.E,
                    unit=self.unit, prec=self.prec)
        data.update(kw)
        return ParamPoint(**data)

    def as_dict(self) -> dict:
        return {"p": self.p, "b": self.b, "c": self.c, "d": self.d, "t": self.t,
                "nu": str(self.nu), "E": self.E, "unit": list(self.unit),
                "prec": self.working_prec, "s": self.s, "r": self.r}
