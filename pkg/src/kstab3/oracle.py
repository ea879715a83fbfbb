"""Floating-point oracles for S' and S(W; Z), built independently of the exact engine.

Volumes come from the largest nef class below c: every subset S of effective
generators and every choice of |S| Mori curves gives a candidate positive part
P = c - sum m_g g with P.C = 0 on the chosen curves. Candidates with m >= 0 and
P nef are kept and the largest P^3 wins. Thresholds come from linear programs
and integrals from composite Simpson with step at most 1/64.
"""
from itertools import combinations
from math import ceil
from typing import List, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from .catalog import CatalogCase
from .geom import PreconditionError

TOL = 1e-10


class ConeData:
    def __init__(self, X):
        self.rho = X.rho
        self.T = np.array([[[float(X.T[i][j][k]) for k in range(X.rho)] for j in range(X.rho)]
                           for i in range(X.rho)])
        self.eff = np.array([[float(x) for x in g.coords] for _, g in X.eff_gens])
        self.eff_labels = [lab for lab, _ in X.eff_gens]
        self.mori = np.array([[float(x) for x in C.pairing] for _, C in X.mori_gens])

    def cube(self, v):
        return float(np.einsum("ijk,i,j,k->", self.T, v, v, v))

    def triple(self, u, v, w):
        return float(np.einsum("ijk,i,j,k->", self.T, u, v, w))

    def is_nef(self, v):
        return bool(np.all(self.mori @ v >= -TOL))

    def pseff_threshold(self, L, E) -> float:
        """max x with L - xE a nonnegative combination of eff generators (LP)."""
        g = self.eff.T  # rho x n
        n = g.shape[1]
        # variables (x, lambda_1..n); maximize x s.t. x E + g lambda = L
        A = np.hstack([E.reshape(-1, 1), g])
        res = linprog(np.r_[-1.0, np.zeros(n)], A_eq=A, b_eq=L, bounds=[(0, None)] * (n + 1),
                      method="highs")
        if res.status != 0:
            raise PreconditionError("oracle: threshold LP failed")
        return float(res.x[0])

    def positive_part(self, c) -> Tuple[np.ndarray, dict]:
        """Largest-volume nef class P with c - P a nonnegative combination of eff generators."""
        best, best_vol, best_neg = None, -1.0, {}
        ng, nc = len(self.eff), len(self.mori)
        for size in range(0, min(ng, self.rho) + 1):
            for S in combinations(range(ng), size):
                for W in combinations(range(nc), size):
                    if size:
                        A = np.array([[self.mori[w] @ self.eff[s] for s in S] for w in W])
                        b = np.array([self.mori[w] @ c for w in W])
                        try:
                            m = np.linalg.solve(A, b)
                        except np.linalg.LinAlgError:
                            continue
                        if np.any(m < -TOL):
                            continue
                        P = c - m @ self.eff[list(S)]
                    else:
                        m, P = np.zeros(0), c
                    if not self.is_nef(P):
                        continue
                    v = self.cube(P)
                    if v > best_vol + TOL:
                        best, best_vol = P, v
                        best_neg = {self.eff_labels[s]: float(x) for s, x in zip(S, m)}
        if best is None:
            raise PreconditionError("oracle: no nef class below c")
        return best, best_neg

    def vol(self, c) -> float:
        return max(self.cube(self.positive_part(c)[0]), 0.0)


def simpson(f, lo: float, hi: float, step: float = 1 / 64) -> float:
    if hi <= lo:
        return 0.0
    n = max(2, 2 * ceil((hi - lo) / step / 2))
    h = (hi - lo) / n
    s = f(lo) + f(hi)
    for i in range(1, n):
        s += (4 if i % 2 else 2) * f(lo + i * h)
    return s * h / 3


def _support(cd: ConeData, c) -> Tuple[str, ...]:
    _, neg = cd.positive_part(c)
    return tuple(sorted(k for k, v in neg.items() if v > 1e-9))


def kinks(sig, lo: float, hi: float, samples: int = 64) -> List[float]:
    """Points in (lo, hi) where sig(x) changes, located by bisection to about 1e-13."""
    xs = [lo + (hi - lo) * i / samples for i in range(samples + 1)]
    sg = [sig(x) for x in xs]
    out = []
    for i in range(samples):
        if sg[i] == sg[i + 1]:
            continue
        a, b, sa = xs[i], xs[i + 1], sg[i]
        while b - a > 1e-13 * max(1.0, abs(b)):
            m = (a + b) / 2
            if sig(m) == sa:
                a = m
            else:
                b = m
        out.append((a + b) / 2)
    return out


def split_simpson(f, lo: float, hi: float, cuts: Sequence[float], step: float = 1 / 64) -> float:
    pts = [lo] + sorted(c for c in cuts if lo < c < hi) + [hi]
    return sum(simpson(f, a, b, step) for a, b in zip(pts, pts[1:]))


def S_prime_oracle(case: CatalogCase, coeffs, label: str) -> float:
    """Integral over [0, tau] of vol(L - xE), floats throughout."""
    pair = case.pair(coeffs)
    cd = ConeData(case.threefold)
    L = np.array([float(x) for x in pair.L.coords])
    E = np.array([float(x) for x in pair.divisor(label).coords])
    tau = cd.pseff_threshold(L, E)
    cuts = kinks(lambda x: _support(cd, L - x * E), 0.0, tau)
    return split_simpson(lambda x: cd.vol(L - x * E), 0.0, tau, cuts)


def _surface_vol(kind: str, n: int, p) -> float:
    """Volume on P2, P1xP1 or F_n computed by subtracting the negative section when needed."""
    if any(x < -TOL for x in p):
        return 0.0
    if kind == "P2":
        return p[0] ** 2
    if kind == "P1":
        return p[0]
    if kind == "P1xP1":
        return 2 * p[0] * p[1]
    a, b = p  # a s + b f; s^2 = -n, s.f = 1, f^2 = 0
    if n and b - n * a < 0:
        t = a - b / n  # P.s = 0
        a = a - t
    return -n * a * a + 2 * a * b


def S_W_oracle(case: CatalogCase, coeffs, center_label: str) -> float:
    """3/L^3 times the double integral of vol_Y(P(u)|_Y - vZ), plus the negative-part term."""
    pair = case.pair(coeffs)
    cen = next(c for c in case.az_centers if c.label == center_label)
    cd = ConeData(case.threefold)
    L = np.array([float(x) for x in pair.L.coords])
    Y = np.array([float(x) for x in pair.divisor(cen.surface_divisor).coords])
    R = np.array([[float(x) for x in row] for row in cen.surface.restriction])
    Z = np.array([float(z) for z in cen.Z_class])
    kind, n = cen.surface.kind, cen.surface.n
    tau = cd.pseff_threshold(L, Y)

    def inner(u):
        P, neg = cd.positive_part(L - u * Y)
        p = P @ R
        vmax = min((p[i] / Z[i] for i in range(len(Z)) if Z[i] > 0), default=0.0)
        val = simpson(lambda v: _surface_vol(kind, n, p - v * Z), 0.0, max(vmax, 0.0))
        ordz = sum(x * float(cen.N_restriction.get(lab, 0)) for lab, x in neg.items())
        if ordz:
            val += cd.triple(P, P, Y) * ordz
        return val

    cuts = kinks(lambda u: _support(cd, L - u * Y), 0.0, tau)
    return 3 * split_simpson(inner, 0.0, tau, cuts) / cd.cube(L)


def rel_err(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-12)
