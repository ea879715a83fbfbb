"""Zariski-type decompositions of classes and of rays L - xE, with exact volume profiles."""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import List, Tuple

from .arith import PiecewisePoly, Poly, integrate, rank, solve_linear
from .geom import ConfigurationError, NumericalClass, PreconditionError, Threefold

MAX_STEPS = 32


class SmallContractionError(ConfigurationError):
    """A violated Mori generator lies in several eff primes; its contraction is small and the
    volume past that wall needs a flip, which is not modeled."""


@dataclass(frozen=True)
class Decomposition:
    positive: NumericalClass
    negative: Tuple[Tuple[str, Fraction], ...] = ()
    walls: Tuple[Tuple[str, str], ...] = ()  # (eff label, Mori label) pairs that were used


def _solve_support(X: Threefold, support, rhs_classes):
    """Multiplicities of the supported eff generators making P orthogonal to the wall curves.

    Returns one solution vector per class in rhs_classes.
    """
    A = [[X.mori_gens[ci][1].dot(X.eff_gens[gj][1]) for gj, _ in support] for _, ci in support]
    out = []
    for c in rhs_classes:
        b = [X.mori_gens[ci][1].dot(c) for _, ci in support]
        out.append(solve_linear(A, b))
    return out


def _support_of(X: Threefold, c: NumericalClass):
    """Run the subtraction loop and return (support, multiplicities, P)."""
    support: List[List[int]] = []
    mult: List[Fraction] = []
    P = c
    for _ in range(MAX_STEPS):
        bad = None
        for ci, (_, C) in enumerate(X.mori_gens):
            if C.dot(P) < 0:
                bad = ci
                break
        if bad is None:
            break
        C = X.mori_gens[bad][1]
        cands = [gi for gi, (_, g) in enumerate(X.eff_gens) if C.dot(g) < 0]
        if len(cands) > 1:
            raise SmallContractionError(
                f"{X.name}: {X.mori_gens[bad][0]} lies in several eff primes "
                f"({', '.join(X.eff_gens[g][0] for g in cands)}); small contraction")
        if not cands:
            raise ConfigurationError(
                f"{X.name}: no unique eff prime divisor negative on {X.mori_gens[bad][0]}")
        gi = cands[0]
        for entry in support:
            if entry[0] == gi:
                entry[1] = bad  # same divisor, stronger wall
                break
        else:
            support.append([gi, bad])
        mult = _solve_support(X, support, [c])[0]
        P = c
        for (g, _), m in zip(support, mult):
            P = P - X.eff_gens[g][1] * m
    else:
        raise ConfigurationError(f"{X.name}: decomposition did not terminate")
    if not X.is_nef(P) or any(m < 0 for m in mult):
        raise ConfigurationError(f"{X.name}: decomposition produced an invalid positive part")
    return support, mult, P


def decompose(X: Threefold, c: NumericalClass) -> Decomposition:
    """Split a pseudo-effective class into a nef part and a nonnegative combination of eff primes."""
    if not X.is_pseff(c):
        raise PreconditionError("class is not pseudo-effective")
    support, mult, P = _support_of(X, c)
    neg = tuple((X.eff_gens[g][0], m) for (g, _), m in zip(support, mult) if m != 0)
    walls = tuple((X.eff_gens[g][0], X.mori_gens[ci][0]) for g, ci in support)
    return Decomposition(P, neg, walls)


def volume(X: Threefold, c: NumericalClass) -> Fraction:
    if not X.is_pseff(c):
        return Fraction(0)
    return X.cube(decompose(X, c).positive)


def pseudo_effective_threshold(X: Threefold, L: NumericalClass, E: NumericalClass) -> Fraction:
    """Largest x with L - xE pseudo-effective (L in the interior of Eff, E pseff)."""
    if X.eff_simplicial:
        lc, ec = X.eff_coords(L), X.eff_coords(E)
        vals = [l / e for l, e in zip(lc, ec) if e > 0]
        if not vals:
            raise PreconditionError("E has no positive eff coordinate")
        return min(vals)
    # several eff generators: best threshold over simplicial sub-cones containing L
    gens = [g.coords for _, g in X.eff_gens]
    best = None
    for sub in combinations(range(len(gens)), X.rho):
        cols = [gens[i] for i in sub]
        if rank([list(c) for c in cols]) < X.rho:
            continue
        A = [[cols[j][i] for j in range(X.rho)] for i in range(X.rho)]
        lc = solve_linear(A, list(L.coords))
        ec = solve_linear(A, list(E.coords))
        lo = max([Fraction(0)] + [l / e for l, e in zip(lc, ec) if e < 0])
        his = [l / e for l, e in zip(lc, ec) if e > 0]
        if not his:
            continue
        hi = min(his)
        if all(l >= 0 or e < 0 for l, e in zip(lc, ec)) and lo <= hi:
            best = hi if best is None else max(best, hi)
    if best is None:
        raise PreconditionError("could not bound the pseudo-effective threshold")
    return best


def nef_threshold(X: Threefold, L: NumericalClass, E: NumericalClass) -> Fraction:
    vals = [C.dot(L) / C.dot(E) for _, C in X.mori_gens if C.dot(E) > 0]
    return min(vals) if vals else None


@dataclass
class Segment:
    x0: Fraction
    x1: Fraction
    P0: NumericalClass
    P1: NumericalClass
    N: Tuple[Tuple[str, Fraction, Fraction], ...]  # label, constant, slope
    vol: Poly

    def P(self, x) -> NumericalClass:
        return self.P0 + self.P1 * x

    def N_at(self, x) -> List[Tuple[str, Fraction]]:
        return [(lab, c0 + c1 * x) for lab, c0, c1 in self.N]


@dataclass
class RayDecomposition:
    segments: List[Segment]
    tau: Fraction
    eps: Fraction
    X: Threefold = field(repr=False, default=None)

    def vol_function(self) -> PiecewisePoly:
        bps = [self.segments[0].x0] + [s.x1 for s in self.segments]
        return PiecewisePoly(bps, [s.vol for s in self.segments])

    def integral(self) -> Fraction:
        return integrate(self.vol_function(), 0, self.tau)

    def segment_at(self, x) -> Segment:
        for s in self.segments:
            if s.x0 <= x <= s.x1:
                return s
        raise ValueError("x outside [0, tau]")

    def breakpoints(self) -> List[Fraction]:
        return [s.x1 for s in self.segments[:-1]]


def _affine_cube(X: Threefold, P0: NumericalClass, P1: NumericalClass) -> Poly:
    t = X.triple_product
    return Poly([t(P0, P0, P0), 3 * t(P0, P0, P1), 3 * t(P0, P1, P1), t(P1, P1, P1)])


def _interval(constraints, lo, hi):
    """Intersect [lo, hi] with {x : c0 + c1 x >= 0} for each (c0, c1)."""
    for c0, c1 in constraints:
        if c1 > 0:
            lo = max(lo, -c0 / c1)
        elif c1 < 0:
            hi = min(hi, -c0 / c1)
        elif c0 < 0:
            return None
    return (lo, hi) if lo <= hi else None


def decompose_ray(X: Threefold, L: NumericalClass, E: NumericalClass) -> RayDecomposition:
    """Piecewise-affine decomposition of L - xE on [0, tau] with cubic volume per piece."""
    if not X.is_ample(L):
        raise PreconditionError("L is not ample")
    if E.is_zero() or not X.is_pseff(E):
        raise PreconditionError("E must be a nonzero pseudo-effective class")
    tau = pseudo_effective_threshold(X, L, E)
    eps = nef_threshold(X, L, E)
    eps = tau if eps is None else min(eps, tau)
    if eps == tau:
        # L - xE stays nef up to tau: a single segment with no negative part
        return RayDecomposition([Segment(Fraction(0), tau, L, -E, (), _affine_cube(X, L, -E))], tau, eps, X)
    segs: List[Segment] = []
    x0 = Fraction(0)
    while x0 < tau:
        delta = tau - x0
        for _ in range(64):
            probe = x0 + delta / 2
            support, _, _ = _support_of(X, L - E * probe)
            if support:
                a, b = _solve_support(X, support, [L, E])
                b = [-v for v in b]
            else:
                a, b = [], []
            P0, P1 = L, -E
            for (g, _), m0, m1 in zip(support, a, b):
                P0 = P0 - X.eff_gens[g][1] * m0
                P1 = P1 - X.eff_gens[g][1] * m1
            cons = list(zip(a, b)) + [(C.dot(P0), C.dot(P1)) for _, C in X.mori_gens]
            iv = _interval(cons, x0, tau)
            if iv is not None and iv[0] <= x0 and iv[1] > x0:
                break
            delta = delta / 2
        else:
            raise ConfigurationError(f"{X.name}: could not resolve ray segments")
        x1 = iv[1]
        N = tuple((X.eff_gens[g][0], m0, m1) for (g, _), m0, m1 in zip(support, a, b)
                  if m0 != 0 or m1 != 0)
        if segs and segs[-1].P0 == P0 and segs[-1].P1 == P1:
            segs[-1].x1 = x1
        else:
            segs.append(Segment(x0, x1, P0, P1, N, _affine_cube(X, P0, P1)))
        x0 = x1
    return RayDecomposition(segs, tau, eps, X)
