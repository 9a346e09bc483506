"""Symmetric powers V_r over F_p, the theta filtration and its layers.

Polynomials are homogeneous of degree r in x, y and stored sparsely as
{j: coefficient of x^{r-j} y^j}.  The group acts by substitution,
(g . f)(x, y) = f(a x + c y, b x + d y) for g = [[a, b], [c, d]].

A layer V^{(n)}/V^{(n+1)} is identified with Q_R = V_R / theta V_{R-p-1}
(R = r - n(p+1)) through f = theta^n g.  Q_R has the monomial basis
x^R, y^R and x^{R-rho} y^rho for 1 <= rho <= p-1, because x^A y^B is
congruent to x^{A-(p-1)} y^{B+(p-1)} modulo theta whenever A >= p, B >= 1.
Every reduction performed here is re-verified by exact theta division.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .binomial_lab import FAIL, INCONCLUSIVE, PASS, SKIPPED, Verdict, rank_mod_p, rref_mod_p, skipped
from .padic_core import ParamPoint, binom, lucas_binom_mod_p

NOT_DIVISIBLE = None
DENSE_CAP = 3000  # largest layer degree R handled by the dense checks


@dataclass(frozen=True)
class SparseHomogPoly:
    """Homogeneous polynomial of degree r over F_p as {j: coeff of x^{r-j} y^j}."""

    r: int
    p: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for j, c in self.coeffs.items():
            if not 0 <= j <= self.r:
                raise ValueError(f"exponent {j} outside [0, {self.r}]")
            c %= self.p
            if c:
                clean[j] = c
        object.__setattr__(self, "coeffs", clean)

    @staticmethod
    def monomial(r: int, j: int, p: int, c: int = 1) -> "SparseHomogPoly":
        return SparseHomogPoly(r, p, {j: c})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "SparseHomogPoly") -> "SparseHomogPoly":
        self._check(other)
        out = dict(self.coeffs)
        for j, c in other.coeffs.items():
            out[j] = out.get(j, 0) + c
        return SparseHomogPoly(self.r, self.p, out)

    def __neg__(self) -> "SparseHomogPoly":
        return SparseHomogPoly(self.r, self.p, {j: -c for j, c in self.coeffs.items()})

    def __sub__(self, other: "SparseHomogPoly") -> "SparseHomogPoly":
        return self + (-other)

    def scale(self, k: int) -> "SparseHomogPoly":
        return SparseHomogPoly(self.r, self.p, {j: c * k for j, c in self.coeffs.items()})

    def __mul__(self, other: "SparseHomogPoly") -> "SparseHomogPoly":
        if self.p != other.p:
            raise ValueError("different characteristics")
        out: dict[int, int] = {}
        for j, c in self.coeffs.items():
            for k, e in other.coeffs.items():
                out[j + k] = (out.get(j + k, 0) + c * e) % self.p
        return SparseHomogPoly(self.r + other.r, self.p, out)

    def __pow__(self, k: int) -> "SparseHomogPoly":
        out = SparseHomogPoly(0, self.p, {0: 1})
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def _check(self, other: "SparseHomogPoly") -> None:
        if self.r != other.r or self.p != other.p:
            raise ValueError("degree or characteristic mismatch")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseHomogPoly):
            return NotImplemented
        return self.r == other.r and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.r, self.p, tuple(sorted(self.coeffs.items()))))

    def dense(self) -> list[int]:
        v = [0] * (self.r + 1)
        for j, c in self.coeffs.items():
            v[j] = c
        return v


def theta_poly(p: int) -> SparseHomogPoly:
    """theta = x^p y - x y^p in V_{p+1}."""
    return SparseHomogPoly(p + 1, p, {1: 1, p: -1})


def F_poly(r: int, s: int, m: int, p: int) -> SparseHomogPoly:
    """F_m = x^m y^{r-m} - x^{r-s+m} y^{s-m}."""
    if not (0 <= m <= s < r) or (r - s) % (p - 1):
        raise ValueError("F_m needs 0 <= m <= s < r and r = s mod (p-1)")
    return SparseHomogPoly(r, p, {r - m: 1}) + SparseHomogPoly(r, p, {s - m: -1})


# ---------------------------------------------------------------------------
# Action
# ---------------------------------------------------------------------------

def _linear_power(u: int, v: int, k: int, p: int) -> np.ndarray:
    """Coefficients (indexed by y-exponent) of (u x + v y)^k mod p."""
    out = np.zeros(k + 1, dtype=np.int64)
    if u == 0 or v == 0:
        out[0 if v == 0 else k] = pow(u or v, k, p)
        return out
    ratio = v * pow(u, -1, p) % p
    lead = pow(u, k, p)
    for j in range(k + 1):
        c = lucas_binom_mod_p(k, j, p)
        if c:
            out[j] = c * lead % p * pow(ratio, j, p) % p
    return out


def gl2_act(g: Sequence[Sequence[int]], f: SparseHomogPoly) -> SparseHomogPoly:
    """(g . f)(x, y) = f(a x + c y, b x + d y) for g = [[a, b], [c, d]]."""
    (a, b), (c, d) = g
    p = f.p
    if (a * d - b * c) % p == 0:
        raise ValueError("singular matrix")
    a, b, c, d = a % p, b % p, c % p, d % p
    r = f.r
    out = np.zeros(r + 1, dtype=np.int64)
    for j, coef in f.coeffs.items():
        left = _linear_power(a, c, r - j, p)
        right = _linear_power(b, d, j, p)
        out = (out + coef * (np.convolve(left, right) % p)) % p
    return SparseHomogPoly(r, p, {j: int(x) for j, x in enumerate(out) if x})


def generators(p: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """A generating set of GL2(F_p): both unipotents, a torus generator, the Weyl element."""
    gamma = next(g for g in range(2, p) if all(pow(g, (p - 1) // q, p) != 1 for q in _prime_factors(p - 1))) if p > 2 else 1
    return [((1, 1), (0, 1)), ((1, 0), (1, 1)), ((gamma, 0), (0, 1)), ((0, 1), (1, 0))]


def _prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def det2(g) -> int:
    (a, b), (c, d) = g
    return a * d - b * c


# ---------------------------------------------------------------------------
# Theta division
# ---------------------------------------------------------------------------

def _theta_divide_once(f: SparseHomogPoly) -> SparseHomogPoly | None:
    """Exact division by theta, or None.

    With f = theta * g, coefficients satisfy f_j = g_{j-1} - g_{j-p}, so along
    each class of j mod (p-1) g is a running sum of f.  The running sums are
    stored only at positions where they change and then expanded.
    """
    p, r = f.p, f.r
    R = r - (p + 1)
    if f.is_zero:
        return SparseHomogPoly(max(R, 0), p, {}) if R >= 0 else None
    if R < 0:
        return None
    q = p - 1
    # g_i = f_{i+1} + g_{i-q}; g_i = 0 for i < 0
    by_class: dict[int, list[tuple[int, int]]] = {}
    for j, c in f.coeffs.items():
        i = j - 1
        if i < 0:
            return None
        by_class.setdefault(i % q, []).append((i, c))
    g: dict[int, int] = {}
    for cls, items in by_class.items():
        items.sort()
        running = 0
        for idx, (i, c) in enumerate(items):
            running = (running + c) % p
            nxt = items[idx + 1][0] if idx + 1 < len(items) else None
            if running:
                stop = nxt if nxt is not None else R + q + 1
                k = i
                while k < stop:
                    if k > R:
                        return None
                    g[k] = running
                    k += q
    quotient = SparseHomogPoly(R, p, g)
    if quotient * theta_poly(p) != f:
        return None
    return quotient


def theta_power_divide(f: SparseHomogPoly, m: int) -> SparseHomogPoly | None:
    """g with f = theta^m g, or NOT_DIVISIBLE (None)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    g = f
    for _ in range(m):
        g = _theta_divide_once(g)
        if g is None:
            return NOT_DIVISIBLE
    return g


def theta_valuation(f: SparseHomogPoly, cap: int | None = None) -> int | None:
    """Largest m with theta^m | f (None for f = 0)."""
    if f.is_zero:
        return None
    m = 0
    g = f
    while cap is None or m < cap:
        h = _theta_divide_once(g)
        if h is None:
            return m
        g = h
        m += 1
    return m


# ---------------------------------------------------------------------------
# Layer quotients Q_R = V_R / theta V_{R-p-1}
# ---------------------------------------------------------------------------

def layer_dim(R: int, p: int) -> int:
    return (R + 1) - max(0, R - (p + 1) + 1)


def _basis_positions(R: int, p: int) -> list[int]:
    """y-exponents of the canonical monomial basis of Q_R."""
    if R <= p:
        return list(range(R + 1))
    return [0] + list(range(1, p)) + [R]


def _canonical_exponent(j: int, R: int, p: int) -> int:
    if R <= p or j == 0 or j == R:
        return j
    return (j - 1) % (p - 1) + 1


def layer_coords(g: SparseHomogPoly, verify: bool = True) -> list[int]:
    """Coordinates of g in Q_R (R = deg g) with respect to the canonical basis."""
    R, p = g.r, g.p
    pos = _basis_positions(R, p)
    index = {j: k for k, j in enumerate(pos)}
    vec = [0] * len(pos)
    for j, c in g.coeffs.items():
        k = index[_canonical_exponent(j, R, p)]
        vec[k] = (vec[k] + c) % p
    if verify:
        lift = SparseHomogPoly(R, p, {j: vec[k] for k, j in enumerate(pos)})
        diff = g - lift
        if not diff.is_zero and _theta_divide_once(diff) is None:
            raise AssertionError("layer reduction failed theta divisibility check")
    return vec


def layer_element(f: SparseHomogPoly, n: int) -> list[int] | None:
    """Coordinates of f in V^{(n)}/V^{(n+1)}, or None when theta^n does not divide f."""
    g = theta_power_divide(f, n)
    if g is None:
        return None
    return layer_coords(g)


def layer_action_matrix(g2, R: int, p: int, twist: int) -> list[list[int]]:
    """Matrix (columns = images of basis vectors) of g on Q_R tensor det^twist."""
    pos = _basis_positions(R, p)
    det = det2(g2) % p
    scale = pow(det, twist % (p - 1), p) if p > 2 else 1
    cols = []
    for j in pos:
        img = gl2_act(g2, SparseHomogPoly.monomial(R, j, p))
        cols.append([x * scale % p for x in layer_coords(img)])
    return [[cols[c][r] for c in range(len(pos))] for r in range(len(pos))]


def _matvec(M: Sequence[Sequence[int]], v: Sequence[int], p: int) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) % p for row in M]


def span_closure(vectors: Iterable[Sequence[int]], mats: Sequence[Sequence[Sequence[int]]], p: int) -> list[list[int]]:
    """Row-reduced basis of the smallest subspace containing vectors stable under mats."""
    basis: list[list[int]] = []
    todo = [list(v) for v in vectors]

    def reduce(v: list[int]) -> list[int]:
        v = [x % p for x in v]
        for b in basis:
            lead = next(i for i, x in enumerate(b) if x)
            if v[lead]:
                f = v[lead]
                v = [(x - f * y) % p for x, y in zip(v, b)]
        return v

    while todo:
        v = reduce(todo.pop())
        if not any(v):
            continue
        lead = next(i for i, x in enumerate(v) if x)
        inv = pow(v[lead], -1, p)
        v = [x * inv % p for x in v]
        for k, b in enumerate(basis):
            if b[lead]:
                f = b[lead]
                basis[k] = [(x - f * y) % p for x, y in zip(b, v)]
        basis.append(v)
        for M in mats:
            todo.append(_matvec(M, v, p))
    return basis


# ---------------------------------------------------------------------------
# Jordan-Holder sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JHFactorSpec:
    weight: int
    twist: int
    position: str  # "sub" or "quot"

    def __post_init__(self) -> None:
        if self.weight < 0:
            raise ValueError("weight must be >= 0")


def jh_decompose(r: int, n: int, p: int) -> tuple[int, int]:
    """(r', d') with r - n(p+1) = r' + d'(p-1) and p <= r' <= 2p-2."""
    R = r - n * (p + 1)
    if R < p:
        raise ValueError(f"r - n(p+1) = {R} is below p; no decomposition with p <= r' <= 2p-2")
    d = (R - p) // (p - 1)
    rp = R - d * (p - 1)
    return rp, d


def alpha_coeff(rp: int, i: int, p: int) -> int:
    """alpha_i = (-1)^{r'-i} C(2(p-1)-r', p-1-r'+i)."""
    return (-1) ** (rp - i) * binom(2 * (p - 1) - rp, p - 1 - rp + i)


def jh_sequence(param_or_r, n: int, p: int | None = None):
    """(sub, quot, r', d', alpha) for the layer V^{(n)}/V^{(n+1)}."""
    if isinstance(param_or_r, ParamPoint):
        r, p = param_or_r.r, param_or_r.p
    else:
        r = param_or_r
        if p is None:
            raise ValueError("p is required with an integer r")
    if r - n * (p + 1) < 0:
        raise ValueError("r - n(p+1) < 0")
    rp, dp = jh_decompose(r, n, p)
    if rp == p:
        sub = JHFactorSpec(1, n, "sub")
        quot = JHFactorSpec(p - 2, n + 1, "quot")
    else:
        sub = JHFactorSpec(rp - (p - 1), n, "sub")
        quot = JHFactorSpec(2 * (p - 1) - rp, n + rp - (p - 1), "quot")
    return sub, quot, rp, dp, (lambda i: alpha_coeff(rp, i, p))


REF_JH = "JH sequences of the theta-filtration layers"
REF_GEN = "F_m generates V^(m)/V^(m+1)"
REF_DIV = "theta^m divides F_m, theta^{m+1} does not"


def _first_map(R: int, a: int, p: int) -> tuple[list[list[int]], list[int]]:
    """Images in Q_R of the basis (x + v y)^a, v = 0..a, and the list of v used."""
    vs = list(range(a + 1))
    imgs = []
    for v in vs:
        full = SparseHomogPoly(R, p, {j: binom(R, j) * pow(v, j, p) for j in range(R + 1)})
        imgs.append(layer_coords(full))
    return imgs, vs


def check_jh_maps(small_r: int, n: int, p: int) -> Verdict:
    """Both maps of the layer sequence in dense coordinates over F_p."""
    params = {"r": small_r, "n": n, "p": p}
    R = small_r - n * (p + 1)
    if R < p:
        return skipped(REF_JH, params, "needs r - n(p+1) >= p")
    if R > DENSE_CAP:
        return Verdict(INCONCLUSIVE, REF_JH, params, {"reason": f"layer degree {R} over dense cap {DENSE_CAP}"})
    sub, quot, rp, dp, alpha = jh_sequence(small_r, n, p)
    a = sub.weight
    wit: dict = {"r_prime": rp, "d_prime": dp, "sub": [sub.weight, sub.twist], "quot": [quot.weight, quot.twist]}
    # r' != p side claim: C(r', p-1) = 0 mod p
    if rp != p:
        wit["binom_rprime_p_minus_1_mod_p"] = binom(rp, p - 1) % p
        if binom(rp, p - 1) % p:
            return Verdict(FAIL, REF_JH, params, dict(wit, reason="C(r', p-1) is nonzero mod p"))
    alphas = {i: alpha(i) % p for i in range(rp - (p - 1), p)}
    wit["alpha"] = alphas
    if any(v == 0 for v in alphas.values()):
        return Verdict(FAIL, REF_JH, params, dict(wit, reason="some alpha_i vanishes mod p"))
    dim = layer_dim(R, p)
    if dim != p + 1 or sub.weight + 1 + quot.weight + 1 != dim:
        return Verdict(FAIL, REF_JH, params, dict(wit, reason="dimension bookkeeping"))
    # (a) first map: (x + v y)^a -> theta^n (x + v y)^R; images in V^{(n)} and independent mod V^{(n+1)}
    theta_n = theta_poly(p) ** n
    imgs, vs = _first_map(R, a, p)
    for v in (0, 1):
        full = SparseHomogPoly(R, p, {j: binom(R, j) * pow(v, j, p) for j in range(R + 1)}) * theta_n
        if layer_element(full, n) is None:
            return Verdict(FAIL, REF_JH, params, dict(wit, reason="first-map image outside V^(n)"))
    if rank_mod_p(imgs, p) != a + 1:
        return Verdict(FAIL, REF_JH, params, dict(wit, reason="first map not injective"))
    # equivariance of the first map: phi(g w) = det^{-n}... checked on generators
    gens = generators(p)
    sub_basis = [[binom(a, j) * pow(v, j, p) % p for j in range(a + 1)] for v in vs]
    for g in gens:
        M_layer = layer_action_matrix(g, R, p, n)
        for v, img in zip(vs, imgs):
            w = SparseHomogPoly(a, p, {j: binom(a, j) * pow(v, j, p) for j in range(a + 1)})
            gw = gl2_act(g, w)
            scale = pow(det2(g) % p, n % (p - 1), p)
            coeffs = _solve_in_basis(sub_basis, gw.dense(), p)
            expected = [0] * len(img)
            for cf, im in zip(coeffs, imgs):
                expected = [(e + cf * x) % p for e, x in zip(expected, im)]
            expected = [x * scale % p for x in expected]
            got = _matvec(M_layer, img, p)
            if got != expected:
                return Verdict(FAIL, REF_JH, params, dict(wit, reason="first map not equivariant", g=g))
    # (b) second map on the canonical basis
    pos = _basis_positions(R, p)
    qdim = quot.weight + 1
    psi = []  # columns: image of each basis vector of Q_R in V_{quot.weight}
    for j in pos:
        col = [0] * qdim
        if j not in (0, R) and rp - (p - 1) <= j <= p - 1:
            col[p - 1 - rp + j] = alphas[j]
        psi.append(col)
    Psi = [[psi[c][rr] for c in range(len(pos))] for rr in range(qdim)]
    for g in gens:
        M_layer = layer_action_matrix(g, R, p, n)
        qscale = pow(det2(g) % p, quot.twist % (p - 1), p)
        for c in range(len(pos)):
            e = [0] * len(pos)
            e[c] = 1
            left = _matvec(Psi, _matvec(M_layer, e, p), p)
            target = SparseHomogPoly(quot.weight, p, {k: x for k, x in enumerate(_matvec(Psi, e, p))})
            right = [x * qscale % p for x in gl2_act(g, target).dense()]
            if left != right:
                return Verdict(FAIL, REF_JH, params, dict(wit, reason="second map not equivariant", g=g, basis=pos[c]))
    # kernel of psi equals image of the first map
    if rank_mod_p(Psi, p) != qdim:
        return Verdict(FAIL, REF_JH, params, dict(wit, reason="second map not surjective"))
    for img in imgs:
        if any(_matvec(Psi, img, p)):
            return Verdict(FAIL, REF_JH, params, dict(wit, reason="first-map image not in kernel"))
    return Verdict(PASS, REF_JH, params, wit)


def _solve_in_basis(basis: Sequence[Sequence[int]], target: Sequence[int], p: int) -> list[int]:
    """Coefficients c with sum c_k basis[k] = target (basis rows are independent)."""
    from .binomial_lab import solve_mod_p

    A = [[basis[k][i] for k in range(len(basis))] for i in range(len(target))]
    sol = solve_mod_p(A, list(target), p)
    if sol is None:
        raise AssertionError("vector outside the span")
    return sol


def check_generation(f: SparseHomogPoly, param: ParamPoint | None, m: int) -> Verdict:
    """Do the GL2(F_p)-translates of f span V^{(m)}/V^{(m+1)}?"""
    p, r = f.p, f.r
    params = {"r": r, "p": p, "m": m}
    if param is not None:
        params["param"] = param.as_dict()
        if not param.s > 2 * m:
            return skipped(REF_GEN, params, "needs s > 2m")
    R = r - m * (p + 1)
    if R < 0:
        return skipped(REF_GEN, params, "r < m(p+1)")
    if f.is_zero:
        return Verdict(FAIL, REF_GEN, params, {"reason": "f = 0 spans nothing"})
    if R > DENSE_CAP:
        return Verdict(INCONCLUSIVE, REF_GEN, params, {"reason": f"layer degree {R} over dense cap {DENSE_CAP}"})
    g = theta_power_divide(f, m)
    if g is None:
        return skipped(REF_GEN, params, "f is not in V^(m)")
    v = layer_coords(g)
    mats = [layer_action_matrix(h, R, p, m) for h in generators(p)]
    span = span_closure([v], mats, p)
    dim = layer_dim(R, p)
    wit = {"span_dim": len(span), "layer_dim": dim}
    if len(span) != dim:
        return Verdict(FAIL, REF_GEN, params, wit)
    return Verdict(PASS, REF_GEN, params, wit)


def check_F_divisibility(r: int, s: int, m: int, p: int) -> Verdict:
    """theta^m divides F_m and theta^{m+1} does not (for s >= 2m)."""
    params = {"r": r, "s": s, "m": m, "p": p}
    if not (s >= 2 * m and 1 <= m <= p - 1):
        return skipped(REF_DIV, params, "needs s >= 2m, 1 <= m <= p-1")
    F = F_poly(r, s, m, p)
    q = theta_power_divide(F, m)
    if q is None:
        return Verdict(FAIL, REF_DIV, params, {"reason": "theta^m does not divide F_m"})
    if _theta_divide_once(q) is not None:
        return Verdict(FAIL, REF_DIV, params, {"reason": "theta^{m+1} divides F_m"})
    return Verdict(PASS, REF_DIV, params, {"quotient_terms": len(q.coeffs)})


def dense_layer_dim(r: int, m: int, p: int) -> int:
    """dim V^{(m)}/V^{(m+1)} by dense row reduction (small r only)."""
    def span_rank(k: int) -> int:
        deg = r - k * (p + 1)
        if deg < 0:
            return 0
        th = theta_poly(p) ** k
        rows = [(th * SparseHomogPoly.monomial(deg, j, p)).dense() for j in range(deg + 1)]
        return rank_mod_p(rows, p)
    return span_rank(m) - span_rank(m + 1)
