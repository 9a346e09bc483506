"""Independent small-r model of T on ind_{KZ}^G Sym^r.

T is evaluated from its definition as a sum over the p+1 representatives
of KZ diag(p,1) KZ / KZ,

    T[g, v] = sum_{lam in F_p} [g (p, [lam]; 0, 1), (1, -[lam]; 0, p) v]
              + [g (1, 0; 0, p), (p, 0; 0, 1) v],

with matrices acting on polynomials by f(x, y) -> f(a x + c y, b x + d y).
Each product g t is matched to a standard coset representative h by
brute force (h^{-1} g t in KZ), and [g t, w] = [h, k w] with k = h^{-1} g t.
The centre acts trivially, so a scalar p^z inside k is discarded.

Everything is exact rational arithmetic on integer approximations of
Teichmuller lifts modulo p^K; results are compared modulo a lower power.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from .padic_core import teichmuller_int


def _vp(x: Fraction, p: int) -> float:
    if x == 0:
        return float("inf")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _mul(A, B):
    return ((A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]))


def _inv(A):
    det = A[0][0] * A[1][1] - A[0][1] * A[1][0]
    return ((A[1][1] / det, -A[0][1] / det), (-A[1][0] / det, A[0][0] / det))


def _frac(A):
    return tuple(tuple(Fraction(x) for x in row) for row in A)


class Oracle:
    def __init__(self, p: int, r: int, K: int = 40, max_level: int = 3):
        self.p, self.r, self.K = p, r, K
        self.teich = [teichmuller_int(l, p, K) if l else 0 for l in range(p)]
        self.reps = {}
        for m in range(max_level + 1):
            for digs in itertools.product(range(p), repeat=m):
                lam = sum(self.teich[d] * p ** i for i, d in enumerate(digs))
                self.reps[("STD", digs)] = _frac(((p ** m, lam), (0, 1)))
                self.reps[("G1", m, digs)] = _frac(((1, 0), (p * lam, p ** (m + 1))))

    def matrix(self, label):
        return self.reps[label]

    def standardize(self, h):
        """(label, k0) with h = rep(label) * p^z * k0 and k0 in GL2(Z_p) integral."""
        p = self.p
        for label, g in self.reps.items():
            k = _mul(_inv(g), h)
            det = k[0][0] * k[1][1] - k[0][1] * k[1][0]
            vd = _vp(det, p)
            if vd % 2:
                continue
            z = int(vd // 2)
            k0 = tuple(tuple(x / Fraction(p) ** z for x in row) for row in k)
            if all(_vp(x, p) >= 0 for row in k0 for x in row):
                if all(x.denominator == 1 for row in k0 for x in row):
                    return label, tuple(tuple(int(x) for x in row) for row in k0)
        raise ValueError("no standard representative found (raise max_level)")

    def act(self, k, v: dict) -> dict:
        """(k . v) for an integer matrix k and v = {j: coeff of x^{r-j} y^j}."""
        (a, b), (c, d) = k
        r = self.r
        out: dict[int, int] = {}
        for j, cj in v.items():
            # (a x + c y)^{r-j} (b x + d y)^j
            for s in range(r - j + 1):
                left = comb(r - j, s) * a ** (r - j - s) * c ** s
                if left == 0:
                    continue
                for t in range(j + 1):
                    right = comb(j, t) * b ** (j - t) * d ** t
                    if right:
                        out[s + t] = out.get(s + t, 0) + cj * left * right
        return {j: x for j, x in out.items() if x}

    def T(self, f: dict) -> dict:
        """f maps coset labels to {j: integer} and so does the result."""
        p = self.p
        out: dict = {}

        def add(label, w):
            dst = out.setdefault(label, {})
            for j, x in w.items():
                dst[j] = dst.get(j, 0) + x

        for label, v in f.items():
            g = self.matrix(label)
            tops = []
            for lam0 in range(p):
                lam = self.teich[lam0]
                tops.append((((p, lam), (0, 1)), ((1, -lam), (0, p))))
            tops.append((((1, 0), (0, p)), ((p, 0), (0, 1))))
            for t, s in tops:
                h = _mul(g, _frac(t))
                std, k0 = self.standardize(h)
                add(std, self.act(k0, self.act(s, v)))
        mod = p ** (self.K // 2)
        return {lab: {j: x % mod for j, x in w.items() if x % mod} for lab, w in out.items()}
