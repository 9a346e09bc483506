"""Compact induction ind_{KZ}^G Sym^r and the Hecke operator T = T+ + T-.

A function is a finite sum of [g, v] with g = g0_{n, mu} (coset key STD,
level n, Teichmuller digits of mu) or g = alpha.  Each v is a LazyPoly:
explicit coefficients plus BinomialRuns

    sum_{lo <= j <= hi, j = a mod (p-1)} kappa * C(n, j) x^{r-j} y^j

which is how the long binomial sums of the constructions are entered and
how T- of a monomial of huge degree is represented.  Coefficients live in
Z_p[pi]/(pi^E - p) (PadicElem).

Every function carries a cap (pi-units): all terms of valuation >= cap
have been dropped, so the function is only meaningful modulo pi^cap.  T
with threshold M returns cap min(cap_in, M); multiplying by a_p raises
the cap by v(a_p).
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from .binomial_lab import FAIL, INCONCLUSIVE, PASS, Verdict
from .padic_core import (
    INF,
    PadicElem,
    binom_padic,
    iter_binom_padic,
    min_binom_valuation_ap,
    teichmuller_int,
)

STD = "STD"
ALPHA = "ALPHA"

# Runs with at most this many class members are expanded into explicit terms
# when their first binomial is cheap to reach (min(lo, n - lo) <= REACH).
MATERIALIZE_COUNT = 4096
MATERIALIZE_REACH = 1 << 20
# Longest stretch of a binomial class sum evaluated term by term; longer
# sums use the roots-of-unity filter minus their (short) end pieces.
DIRECT_SUM_LIMIT = 1 << 16
END_PIECE_LIMIT = 1 << 20

REF_REDUCE = "congruence modulo the maximal ideal"


@dataclass(frozen=True, order=True)
class CosetIndex:
    """g0_{n, mu} (STD, mu = sum [digits[i]] p^i) or alpha = g1_{0,0} (ALPHA)."""

    branch: str = STD
    n: int = 0
    digits: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.branch == ALPHA:
            if self.n != 0 or self.digits:
                raise ValueError("ALPHA carries no level or digits")
        elif self.branch == STD:
            if len(self.digits) != self.n:
                raise ValueError("digit list length must equal the level")
        else:
            raise ValueError(f"unknown branch {self.branch!r}")

    @staticmethod
    def std(*digits: int) -> "CosetIndex":
        return CosetIndex(STD, len(digits), tuple(digits))

    @staticmethod
    def alpha() -> "CosetIndex":
        return CosetIndex(ALPHA)

    def check_digits(self, p: int) -> None:
        if any(not 0 <= d < p for d in self.digits):
            raise ValueError(f"digits of {self} must lie in [0, {p - 1}]")

    def child(self, lam0: int) -> "CosetIndex":
        return CosetIndex(STD, self.n + 1, self.digits + (lam0,))

    def parent(self) -> "CosetIndex":
        if self.branch != STD or self.n == 0:
            raise ValueError("no parent")
        return CosetIndex(STD, self.n - 1, self.digits[:-1])

    def __str__(self) -> str:
        if self.branch == ALPHA:
            return "alpha"
        return f"g0[{self.n};{','.join(map(str, self.digits))}]"


@dataclass(frozen=True)
class BinomialRun:
    kappa: PadicElem
    n: int
    a: int
    lo: int
    hi: int

    def members(self, q: int) -> tuple[int, int, int]:
        """(first, last, count) of j in [max(lo,0), min(hi,n)] with j = a mod q."""
        lo = max(self.lo, 0)
        hi = min(self.hi, self.n)
        if lo > hi:
            return 0, -1, 0
        first = lo + (self.a - lo) % q
        last = hi - (hi - self.a) % q
        if first > last:
            return 0, -1, 0
        return first, last, (last - first) // q + 1


@dataclass
class LazyPoly:
    explicit: dict = field(default_factory=dict)
    runs: list = field(default_factory=list)

    def copy(self) -> "LazyPoly":
        return LazyPoly(dict(self.explicit), list(self.runs))

    @property
    def is_empty(self) -> bool:
        return not self.explicit and not self.runs


# ---------------------------------------------------------------------------
# small helpers
# ---------------------------------------------------------------------------

def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def int_elem(p: int, E: int, z: int, K: int) -> PadicElem:
    """The integer z known modulo p^K, as an element with absolute precision K E."""
    mod = p ** K
    z %= mod
    if z == 0:
        return PadicElem.big_oh(p, E, K * E)
    a = 0
    while z % p == 0:
        z //= p
        a += 1
    return PadicElem.from_valuation_unit(p, E, E * a, z, E * (K - a))


def binom_elem(p: int, E: int, n: int, k: int, K: int) -> PadicElem:
    """C(n, k) with relative precision K E (exact zero outside the range)."""
    if k < 0 or k > n:
        return PadicElem.zero(p, E)
    v, u = binom_padic(n, k, p, K)
    return PadicElem.from_valuation_unit(p, E, E * int(v), u, E * K)


def const_elem(p: int, E: int, x, absprec: int) -> PadicElem:
    """Rational x as an element with absolute precision >= absprec (pi-units)."""
    if isinstance(x, PadicElem):
        return x
    x = Fraction(x)
    if x == 0:
        return PadicElem.zero(p, E)
    num, den = x.numerator, x.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    rel = max(E, absprec - E * v)
    return PadicElem.from_fraction(p, E, Fraction(num, den), rel).scale_pi(E * v)


def _val(x: PadicElem) -> float:
    """Valuation lower bound in pi-units (INF for exact zero)."""
    return INF if x.exact_zero else x.v


@lru_cache(maxsize=4096)
def _class_sum_full(N: int, rho: int, p: int, K: int) -> int:
    """sum_{0 <= k <= N, k = rho mod (p-1)} C(N, k) modulo p^K (roots-of-unity filter)."""
    q = p - 1
    mod = p ** K
    acc = 0
    for z0 in range(1, p):
        zeta = teichmuller_int(z0, p, K)
        acc += pow(zeta, (-rho) % q, mod) * pow((1 + zeta) % mod, N, mod)
    return acc * pow(q, -1, mod) % mod


def _class_sum_direct(N: int, rho: int, k0: int, k1: int, p: int, K: int) -> int:
    q = p - 1
    mod = p ** K
    k0 = max(k0, 0)
    k1 = min(k1, N)
    if k0 > k1:
        return 0
    first = k0 + (rho - k0) % q
    acc = 0
    for k, v, u in iter_binom_padic(N, first, k1, p, K):
        if (k - rho) % q == 0 and v < K:
            acc += p ** int(v) * u
    return acc % mod


def class_sum(N: int, rho: int, k0: int, k1: int, p: int, K: int) -> int:
    """sum_{k0 <= k <= k1, k = rho mod (p-1)} C(N, k) modulo p^K."""
    k0 = max(k0, 0)
    k1 = min(k1, N)
    if k0 > k1:
        return 0
    rho %= p - 1
    if (k1 - k0) <= DIRECT_SUM_LIMIT and min(k0, N - k0) <= MATERIALIZE_REACH:
        return _class_sum_direct(N, rho, k0, k1, p, K)
    head = k0
    tail = N - k1
    if head > END_PIECE_LIMIT or tail > END_PIECE_LIMIT:
        raise NotImplementedError("binomial class sum with long pieces at both ends")
    total = _class_sum_full(N, rho, p, K)
    total -= _class_sum_direct(N, rho, 0, k0 - 1, p, K)
    total -= _class_sum_direct(N, rho, k1 + 1, N, p, K)
    return total % p ** K


# ---------------------------------------------------------------------------
# Induced functions
# ---------------------------------------------------------------------------

class InducedFunction:
    """Finite sum of [g, v]; terms maps CosetIndex -> LazyPoly."""

    def __init__(self, p: int, E: int, r: int, cap: float = INF, terms: dict | None = None):
        self.p, self.E, self.r = p, E, r
        self.cap = cap
        self.terms: dict[CosetIndex, LazyPoly] = terms if terms is not None else {}

    # -- construction --------------------------------------------------------
    @staticmethod
    def zero(p: int, E: int, r: int, cap: float = INF) -> "InducedFunction":
        return InducedFunction(p, E, r, cap)

    def _coeff(self, x) -> PadicElem:
        if isinstance(x, PadicElem):
            if x.p != self.p or x.E != self.E:
                raise ValueError("coefficient from a different ring")
            return x
        if self.cap == INF:
            raise ValueError("rational coefficients need a finite cap")
        return const_elem(self.p, self.E, x, int(self.cap) + 2 * self.E)

    def _poly(self, g: CosetIndex) -> LazyPoly:
        g.check_digits(self.p)
        if g not in self.terms:
            self.terms[g] = LazyPoly()
        return self.terms[g]

    def add_term(self, g: CosetIndex, j: int, c) -> "InducedFunction":
        if not 0 <= j <= self.r:
            raise ValueError(f"exponent {j} outside [0, {self.r}]")
        c = self._coeff(c)
        poly = self._poly(g)
        old = poly.explicit.get(j)
        poly.explicit[j] = c if old is None else old + c
        return self

    def add_run(self, g: CosetIndex, kappa, n: int, a: int, lo: int, hi: int) -> "InducedFunction":
        if n > self.r:
            raise ValueError("run binomial top exceeds r")
        kappa = self._coeff(kappa)
        self._poly(g).runs.append(BinomialRun(kappa, n, a % (self.p - 1), lo, min(hi, n)))
        return self

    def add_poly(self, g: CosetIndex, coeffs: dict) -> "InducedFunction":
        for j, c in coeffs.items():
            self.add_term(g, j, c)
        return self

    @staticmethod
    def single(p: int, E: int, r: int, g: CosetIndex, coeffs: dict, cap: float = INF) -> "InducedFunction":
        return InducedFunction(p, E, r, cap).add_poly(g, coeffs)

    def copy(self) -> "InducedFunction":
        return InducedFunction(self.p, self.E, self.r, self.cap,
                               {g: v.copy() for g, v in self.terms.items()})

    # -- arithmetic -------------------------------------------------------------
    def _check(self, other: "InducedFunction") -> None:
        if (self.p, self.E, self.r) != (other.p, other.E, other.r):
            raise ValueError("functions with different (p, E, r)")

    def __add__(self, other: "InducedFunction") -> "InducedFunction":
        self._check(other)
        out = self.copy()
        out.cap = min(self.cap, other.cap)
        for g, poly in other.terms.items():
            dst = out._poly(g)
            for j, c in poly.explicit.items():
                old = dst.explicit.get(j)
                dst.explicit[j] = c if old is None else old + c
            dst.runs.extend(poly.runs)
        return out.canonical()

    def scale(self, c) -> "InducedFunction":
        """c * f; the cap moves by v(c)."""
        c = self._coeff(c) if not isinstance(c, PadicElem) else c
        if c.exact_zero:
            return InducedFunction(self.p, self.E, self.r, INF)
        out = InducedFunction(self.p, self.E, self.r, self.cap + c.v)
        for g, poly in self.terms.items():
            out.terms[g] = LazyPoly({j: x * c for j, x in poly.explicit.items()},
                                    [BinomialRun(run.kappa * c, run.n, run.a, run.lo, run.hi) for run in poly.runs])
        return out.canonical()

    def __neg__(self) -> "InducedFunction":
        out = InducedFunction(self.p, self.E, self.r, self.cap)
        for g, poly in self.terms.items():
            out.terms[g] = LazyPoly({j: -x for j, x in poly.explicit.items()},
                                    [BinomialRun(-run.kappa, run.n, run.a, run.lo, run.hi) for run in poly.runs])
        return out

    def __sub__(self, other: "InducedFunction") -> "InducedFunction":
        return self + (-other)

    def with_cap(self, cap: float) -> "InducedFunction":
        out = self.copy()
        out.cap = min(self.cap, cap)
        return out.canonical()

    # -- normal form --------------------------------------------------------------
    def canonical(self) -> "InducedFunction":
        """Merge runs, expand short ones, drop everything of valuation >= cap."""
        q = self.p - 1
        cap = self.cap
        new_terms: dict[CosetIndex, LazyPoly] = {}
        for g, poly in self.terms.items():
            explicit = dict(poly.explicit)
            runs_out: list[BinomialRun] = []
            groups: dict[tuple[int, int], list[BinomialRun]] = defaultdict(list)
            for run in poly.runs:
                if run.kappa.exact_zero or _val(run.kappa) >= cap:
                    continue
                groups[(run.n, run.a)].append(run)
            for (n, a), runs in groups.items():
                for run in _merge_runs(runs, q):
                    if run.kappa.exact_zero or _val(run.kappa) >= cap:
                        continue
                    first, last, count = run.members(q)
                    if count == 0:
                        continue
                    if count <= MATERIALIZE_COUNT and min(first, n - first) <= MATERIALIZE_REACH:
                        _expand_run(explicit, run, first, last, self.p, self.E, cap)
                    else:
                        runs_out.append(BinomialRun(run.kappa, n, a, first, last))
            kept = {}
            for j, c in explicit.items():
                if c.exact_zero or _val(c) >= cap:
                    continue
                kept[j] = c
            if kept or runs_out:
                new_terms[g] = LazyPoly(kept, runs_out)
        return InducedFunction(self.p, self.E, self.r, cap, new_terms)

    # -- inspection ---------------------------------------------------------------
    def support(self) -> list[CosetIndex]:
        return sorted(self.terms)

    def levels(self) -> set[int]:
        return {g.n for g in self.terms if g.branch == STD}

    def nnz(self) -> int:
        return sum(len(p.explicit) + len(p.runs) for p in self.terms.values())

    def coefficient(self, g: CosetIndex, j: int, K: int | None = None) -> PadicElem:
        """The coefficient of x^{r-j} y^j at g (runs evaluated)."""
        poly = self.terms.get(g)
        acc = PadicElem.zero(self.p, self.E)
        if poly is None:
            return acc
        if j in poly.explicit:
            acc = acc + poly.explicit[j]
        q = self.p - 1
        for run in poly.runs:
            first, last, count = run.members(q)
            if count and first <= j <= last and (j - run.a) % q == 0:
                KK = K if K is not None else max(1, _ceil_div(int(min(self.cap, 10 ** 6)) - run.kappa.v, self.E) + 1)
                acc = acc + run.kappa * binom_elem(self.p, self.E, run.n, j, KK)
        return acc

    def dense(self, g: CosetIndex) -> dict[int, PadicElem]:
        """All nonzero coefficients at g (runs expanded; small r only)."""
        out: dict[int, PadicElem] = {}
        poly = self.terms.get(g)
        if poly is None:
            return out
        out.update(poly.explicit)
        cap = self.cap if self.cap != INF else 64 * self.E
        for run in poly.runs:
            first, last, count = run.members(self.p - 1)
            if count:
                _expand_run(out, run, first, last, self.p, self.E, cap)
        return out

    def __repr__(self) -> str:
        return f"InducedFunction(p={self.p}, E={self.E}, r={self.r}, cap={self.cap}, cosets={len(self.terms)}, nnz={self.nnz()})"


def _merge_runs(runs: list[BinomialRun], q: int) -> list[BinomialRun]:
    """Split overlapping runs at their boundaries and add the kappas."""
    if len(runs) == 1:
        return runs
    n, a = runs[0].n, runs[0].a
    events: dict[int, list] = defaultdict(list)
    for run in runs:
        first, last, count = run.members(q)
        if count == 0:
            continue
        events[first].append((+1, run.kappa))
        events[last + q].append((-1, run.kappa))
    points = sorted(events)
    out = []
    active: list[PadicElem] = []
    for idx, pt in enumerate(points):
        for sign, kappa in events[pt]:
            if sign > 0:
                active.append(kappa)
            else:
                for k, x in enumerate(active):
                    if x is kappa:
                        del active[k]
                        break
        if idx + 1 < len(points) and active:
            total = active[0]
            for x in active[1:]:
                total = total + x
            out.append(BinomialRun(total, n, a, pt, points[idx + 1] - q))
    return out


def _expand_run(explicit: dict, run: BinomialRun, first: int, last: int, p: int, E: int, cap: float) -> None:
    q = p - 1
    kv = run.kappa.v
    K = max(1, _ceil_div(int(min(cap, 10 ** 9)) - kv, E) + 1) if cap != INF else 64
    for j, v, u in iter_binom_padic(run.n, first, last, p, K):
        if (j - run.a) % q:
            continue
        if kv + E * v >= cap:
            continue
        c = run.kappa * PadicElem.from_valuation_unit(p, E, E * int(v), u, E * K)
        old = explicit.get(j)
        explicit[j] = c if old is None else old + c


# ---------------------------------------------------------------------------
# Hecke operator
# ---------------------------------------------------------------------------

def _teich_elem(p: int, E: int, lam0: int, K: int) -> PadicElem:
    if lam0 % p == 0:
        return PadicElem.zero(p, E)
    return PadicElem.from_int(p, E, teichmuller_int(lam0, p, K), E * K)


def _out_cap(f: InducedFunction, M) -> float:
    return min(f.cap, M) if M is not None else f.cap


def t_plus(f: InducedFunction, M: float | None = None) -> InducedFunction:
    """T+ with output terms of valuation >= M (pi-units) dropped."""
    p, E, r = f.p, f.E, f.r
    q = p - 1
    cap = _out_cap(f, M)
    if cap == INF:
        raise ValueError("T needs a finite threshold")
    out = InducedFunction(p, E, r, cap)
    for g, poly in f.terms.items():
        if g.branch != STD:
            raise ValueError("T is only implemented on g0 cosets; alpha in support")
        # G[j][rho] = sum_{i >= j, i - j = rho mod q} c_i C(i, j)  (lambda != 0)
        # D[j]      = coefficient at j itself                       (lambda = 0)
        G: dict[int, dict[int, PadicElem]] = defaultdict(dict)
        D: dict[int, PadicElem] = {}

        def bump(table: dict, key: int, val: PadicElem) -> None:
            old = table.get(key)
            table[key] = val if old is None else old + val

        for i, c in poly.explicit.items():
            cv = _val(c)
            if cv == INF:
                continue
            jmax = min(i, (int(cap) - int(cv) - 1) // E) if cap > cv else -1
            for j in range(jmax + 1):
                K = max(1, _ceil_div(int(cap) - int(cv) - E * j, E) + 1)
                term = c * binom_elem(p, E, i, j, K)
                bump(G[j], (i - j) % q, term)
                if j == i:
                    bump(D, j, c)
        for run in poly.runs:
            first, last, count = run.members(q)
            kv = _val(run.kappa)
            if count == 0 or kv == INF:
                continue
            jmax = min(last, (int(cap) - int(kv) - 1) // E) if cap > kv else -1
            for j in range(jmax + 1):
                v_nj, u_nj = binom_padic(run.n, j, p, 1)
                if v_nj == INF:
                    continue
                K = max(1, _ceil_div(int(cap) - int(kv) - E * j - E * int(v_nj), E) + 1)
                cnj = binom_elem(p, E, run.n, j, K)
                rho = (run.a - j) % q
                S = class_sum(run.n - j, rho, max(first, j) - j, last - j, p, K)
                bump(G[j], rho, run.kappa * cnj * int_elem(p, E, S, K))
                if first <= j <= last and (j - run.a) % q == 0:
                    bump(D, j, run.kappa * cnj)
        # assemble the p children
        K_lam = max(1, _ceil_div(int(cap) + E * 2 - min([0] + [int(_val(c)) for c in poly.explicit.values() if _val(c) != INF] + [int(_val(rn.kappa)) for rn in poly.runs if _val(rn.kappa) != INF]), E))
        for lam0 in range(p):
            child = out._poly(g.child(lam0))
            if lam0 == 0:
                for j, c in D.items():
                    val = c.scale_pi(E * j)
                    old = child.explicit.get(j)
                    child.explicit[j] = val if old is None else old + val
                continue
            neg_lam = -teichmuller_int(lam0, p, K_lam)
            powers = [1]
            mod = p ** K_lam
            for _ in range(q - 1):
                powers.append(powers[-1] * neg_lam % mod)
            for j, byrho in G.items():
                acc = None
                for rho, val in byrho.items():
                    term = val * int_elem(p, E, powers[rho], K_lam) if rho else val
                    acc = term if acc is None else acc + term
                if acc is None:
                    continue
                acc = acc.scale_pi(E * j)
                old = child.explicit.get(j)
                child.explicit[j] = acc if old is None else old + acc
    return out.canonical()


def t_minus(f: InducedFunction, M: float | None = None) -> InducedFunction:
    """T- with output terms of valuation >= M (pi-units) dropped."""
    p, E, r = f.p, f.E, f.r
    q = p - 1
    cap = _out_cap(f, M)
    if cap == INF:
        raise ValueError("T needs a finite threshold")
    out = InducedFunction(p, E, r, cap)
    for g, poly in f.terms.items():
        if g.branch != STD:
            raise ValueError("T is only implemented on g0 cosets; alpha in support")
        # sources: (i, p^{r-i} c_i) with valuation < cap
        sources: dict[int, PadicElem] = {}

        def add_source(i: int, c: PadicElem) -> None:
            val = c.scale_pi(E * (r - i))
            if _val(val) >= cap:
                return
            old = sources.get(i)
            sources[i] = val if old is None else old + val

        for i, c in poly.explicit.items():
            if _val(c) + E * (r - i) < cap:
                add_source(i, c)
        for run in poly.runs:
            first, last, count = run.members(q)
            kv = _val(run.kappa)
            if count == 0 or kv == INF or kv >= cap:
                continue
            D = int(cap) - int(kv)
            i_min = max(first, r - _ceil_div(D, E) + 1)
            i_min += (run.a - i_min) % q
            K = max(1, _ceil_div(D, E) + 1)
            for i in range(i_min, last + 1, q):
                add_source(i, run.kappa * binom_elem(p, E, run.n, i, K))
        if g.n == 0:
            target = out._poly(CosetIndex.alpha())
            for i, c in sources.items():
                old = target.explicit.get(i)
                target.explicit[i] = c if old is None else old + c
            continue
        target = out._poly(g.parent())
        u0 = g.digits[-1]
        if u0 == 0:
            for i, c in sources.items():
                old = target.explicit.get(i)
                target.explicit[i] = c if old is None else old + c
            continue
        for i, c in sources.items():
            K = max(1, _ceil_div(int(cap) - int(_val(c)), E) + 1)
            u = teichmuller_int(u0, p, K)
            mod = p ** K
            for a in range(q):
                if a > i:
                    break
                kappa = c * int_elem(p, E, pow(u, (i - a) % q, mod), K)
                target.runs.append(BinomialRun(kappa, i, a, 0, i))
    return out.canonical()


def t_apply(f: InducedFunction, M: float | None = None) -> InducedFunction:
    return t_plus(f, M) + t_minus(f, M)


def minus_ap(f: InducedFunction, ap: PadicElem, M: float | None = None) -> InducedFunction:
    """(T - a_p) f."""
    return t_apply(f, M) - f.scale(ap)


# ---------------------------------------------------------------------------
# Congruence check
# ---------------------------------------------------------------------------

def reduce_check(f: InducedFunction, target: InducedFunction, *,
                 threshold: int = 1, ref: str = REF_REDUCE, params: dict | None = None) -> Verdict:
    """PASS iff f - target lies in the maximal ideal (valuation >= threshold pi-units)."""
    f._check(target)
    params = dict(params or {})
    diff = (f - target).canonical()
    wit: dict = {"cap": diff.cap, "cosets": len(diff.terms)}
    if diff.cap < threshold:
        return Verdict(INCONCLUSIVE, ref, params, dict(wit, reason="precision cap below threshold"))
    q = f.p - 1
    unknown = None
    for g in sorted(diff.terms):
        poly = diff.terms[g]
        for j in sorted(poly.explicit):
            c = poly.explicit[j]
            if c.exact_zero or c.v >= threshold:
                continue
            if c.is_inexact_zero:
                unknown = unknown or {"coset": str(g), "j": j, "known_to": c.v}
                continue
            return Verdict(FAIL, ref, params, dict(wit, coset=str(g), j=j,
                                                     valuation=Fraction(c.v, f.E), value=repr(c)))
        for run in poly.runs:
            first, last, count = run.members(q)
            if count == 0 or run.kappa.exact_zero:
                continue
            mv, arg = min_binom_valuation_ap(run.n, first, last, run.a, q, f.p)
            if mv == INF:
                continue
            bound = run.kappa.v + f.E * mv
            if bound >= threshold:
                continue
            if run.kappa.is_inexact_zero:
                unknown = unknown or {"coset": str(g), "run": [run.n, run.a, first, last], "known_to": bound}
                continue
            return Verdict(FAIL, ref, params, dict(wit, coset=str(g), j=arg,
                                                     valuation=Fraction(int(bound), f.E),
                                                     run=[run.n, run.a, first, last]))
    if unknown is not None:
        return Verdict(INCONCLUSIVE, ref, params, dict(wit, reason="precision exhausted", where=unknown))
    return Verdict(PASS, ref, params, wit)


def congruent(f: InducedFunction, g: InducedFunction, k: int) -> bool | None:
    """f = g modulo pi^k (None when precision cannot decide)."""
    v = reduce_check(f, g, threshold=k)
    return {PASS: True, FAIL: False}.get(v.status)
