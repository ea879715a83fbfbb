"""Refined invariants on a flag Y > Z: S(W^Y; Z) and the resulting local delta bound."""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import Poly, rat
from .geom import LogPair, NumericalClass, PreconditionError, is_log_fano
from .kstab import divisorial_verdict, log_discrepancy
from .zariski import decompose_ray


class SurfaceModel:
    """P2 (degree), P1xP1 (bidegree), Hirzebruch F_n in the (s, f) basis, or P1.

    `restriction` has one row per ambient basis element giving its restriction
    in surface coordinates.
    """

    def __init__(self, kind: str, restriction: Sequence[Sequence], n: int = 0):
        if kind not in ("P2", "P1xP1", "F", "P1"):
            raise ValueError(f"unknown surface kind {kind}")
        self.kind = kind
        self.n = n
        self.restriction = [tuple(rat(x) for x in row) for row in restriction]
        self.dim = {"P2": 1, "P1": 1}.get(kind, 2)
        for row in self.restriction:
            if len(row) != self.dim:
                raise ValueError("restriction rows must match the surface rank")

    @property
    def basis(self) -> Tuple[str, ...]:
        return {"P2": ("h",), "P1": ("pt",), "P1xP1": ("A", "B"), "F": ("s", "f")}[self.kind]

    def restrict(self, c) -> Tuple[Fraction, ...]:
        coords = c.coords if isinstance(c, NumericalClass) else tuple(c)
        out = [Fraction(0)] * self.dim
        for x, row in zip(coords, self.restriction):
            if x:
                for i, r in enumerate(row):
                    out[i] += x * r
        return tuple(out)

    def intersect(self, u, v) -> Fraction:
        if self.kind == "P2":
            return u[0] * v[0]
        if self.kind == "P1xP1":
            return u[0] * v[1] + u[1] * v[0]
        if self.kind == "F":
            return -self.n * u[0] * v[0] + u[0] * v[1] + u[1] * v[0]
        raise PreconditionError("no intersection form on a curve")

    def is_pseff(self, c) -> bool:
        return all(x >= 0 for x in c)

    def is_nef(self, c) -> bool:
        if self.kind == "F":
            return c[0] >= 0 and c[1] >= self.n * c[0]
        return all(x >= 0 for x in c)

    def negative_part(self, c) -> Fraction:
        """Multiplicity of the negative section s in the Zariski decomposition on F_n."""
        if self.kind == "F" and self.is_pseff(c) and not self.is_nef(c):
            return c[0] - c[1] / self.n
        return Fraction(0)

    def vol(self, c) -> Fraction:
        if not self.is_pseff(c):
            return Fraction(0)
        if self.kind == "P2":
            return c[0] * c[0]
        if self.kind == "P1":
            return c[0]
        if self.kind == "P1xP1":
            return 2 * c[0] * c[1]
        a, b = c
        if b >= self.n * a:
            return 2 * a * b - self.n * a * a
        return b * b / self.n

    def walls(self) -> List[Tuple[Fraction, ...]]:
        """Linear forms whose sign changes delimit the polynomial pieces of vol."""
        if self.dim == 1:
            return [(Fraction(1),)]
        w = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
        if self.kind == "F" and self.n:
            w.append((Fraction(-self.n), Fraction(1)))
        return w


@dataclass
class CenterSpec:
    label: str
    surface_divisor: str  # label of Y among the pair's divisors
    surface: SurfaceModel
    Z_class: Tuple[Fraction, ...]
    A_Z: Tuple[Fraction, Tuple[Fraction, ...]]  # constant, coefficient per boundary component
    N_restriction: Dict[str, Fraction] = field(default_factory=dict)

    def A_Z_at(self, coeffs) -> Fraction:
        c0, lin = self.A_Z
        return rat(c0) + sum((rat(l) * rat(c) for l, c in zip(lin, coeffs)), Fraction(0))


def _lin(form, c):
    return sum((f * x for f, x in zip(form, c)), Fraction(0))


def _simpson(f, lo, hi) -> Fraction:
    """Exact for polynomials of degree <= 3."""
    mid = (lo + hi) / 2
    return (hi - lo) * (f(lo) + 4 * f(mid) + f(hi)) / 6


def inner_integral(surface: SurfaceModel, p, Z) -> Fraction:
    """Exact integral over v >= 0 of vol(p - vZ)."""
    brk = {Fraction(0)}
    for w in surface.walls():
        wz = _lin(w, Z)
        if wz:
            v = _lin(w, p) / wz
            if v > 0:
                brk.add(v)
    pts = sorted(brk)
    tail = pts[-1] + 1
    if surface.vol(tuple(x - tail * z for x, z in zip(p, Z))) != 0:
        raise PreconditionError("Z does not eventually exit the pseudo-effective cone")
    f = lambda v: surface.vol(tuple(x - v * z for x, z in zip(p, Z)))
    return sum((_simpson(f, lo, hi) for lo, hi in zip(pts, pts[1:])), Fraction(0))


def _u_breaks(surface: SurfaceModel, p0, p1, Z, lo, hi) -> List[Fraction]:
    """u-values where the ordering of the v-walls of p0 + u p1 - vZ can change."""
    forms = []  # v-wall as affine function of u: (c0, c1) with v = c0 + c1 u
    brk = set()
    for w in surface.walls():
        wz = _lin(w, Z)
        a0, a1 = _lin(w, p0), _lin(w, p1)
        if wz:
            forms.append((a0 / wz, a1 / wz))
        elif a1:
            brk.add(-a0 / a1)
    forms.append((Fraction(0), Fraction(0)))
    for i in range(len(forms)):
        for j in range(i + 1, len(forms)):
            d1 = forms[i][1] - forms[j][1]
            if d1:
                brk.add((forms[j][0] - forms[i][0]) / d1)
    return sorted(x for x in brk if lo < x < hi)


def _require(pair: LogPair):
    if not pair.mov_eq_nef:
        raise PreconditionError("Mov = Nef hypothesis not certified for this case")
    if not is_log_fano(pair):
        raise PreconditionError("outside body of ample angles")


def S_W(pair: LogPair, center: CenterSpec) -> Fraction:
    """S(W^Y; Z) = 3/L^3 [ int (P^2.Y) ord_Z(N|_Y) du + int int vol_Y(P(u)|_Y - vZ) dv du ]."""
    _require(pair)
    X = pair.variety
    L = pair.L
    Y = pair.divisor(center.surface_divisor)
    rd = decompose_ray(X, L, Y)
    Z = tuple(rat(z) for z in center.Z_class)
    t = X.triple_product
    total = Fraction(0)
    for seg in rd.segments:
        P0, P1 = seg.P0, seg.P1
        # first term: only nonzero when the negative part meets Z
        ordz0 = sum((c0 * rat(center.N_restriction.get(lab, 0)) for lab, c0, _ in seg.N), Fraction(0))
        ordz1 = sum((c1 * rat(center.N_restriction.get(lab, 0)) for lab, _, c1 in seg.N), Fraction(0))
        if ordz0 or ordz1:
            py = Poly([t(P0, P0, Y), 2 * t(P0, P1, Y), t(P1, P1, Y)])
            total += (py * Poly([ordz0, ordz1])).integrate(seg.x0, seg.x1)
        p0, p1 = center.surface.restrict(P0), center.surface.restrict(P1)
        f = lambda u: inner_integral(center.surface, tuple(a + u * b for a, b in zip(p0, p1)), Z)
        pts = [seg.x0] + _u_breaks(center.surface, p0, p1, Z, seg.x0, seg.x1) + [seg.x1]
        total += sum((_simpson(f, lo, hi) for lo, hi in zip(pts, pts[1:])), Fraction(0))
    return 3 * total / X.cube(L)


def S_divisor(pair: LogPair, label: str) -> Fraction:
    X = pair.variety
    rd = decompose_ray(X, pair.L, pair.divisor(label))
    return rd.integral() / X.cube(pair.L)


def delta_Z_bound(pair: LogPair, center: CenterSpec) -> Fraction:
    """min(A(Y)/S(Y), A(Z)/S(W^Y; Z)), a lower bound for delta_Z."""
    _require(pair)
    AY = log_discrepancy(pair, center.surface_divisor)
    SY = S_divisor(pair, center.surface_divisor)
    AZ = center.A_Z_at(pair.coefficients)
    return min(AY / SY, AZ / S_W(pair, center))


def polystable_verdict(pair: LogPair, centers: Optional[Sequence[CenterSpec]]) -> str:
    """Combine divisorial data with local bounds over the listed invariant centers."""
    dv = divisorial_verdict(pair, stop_at_negative=True)
    if dv.unstable:
        return "unstable"  # needs no center data
    if not centers:
        raise PreconditionError("missing center data for this case")
    bounds = [delta_Z_bound(pair, c) for c in centers]
    if dv.overall == "divisorially_stable" and all(b > 1 for b in bounds):
        return "K_polystable_certified"
    if all(b >= 1 for b in bounds):
        return "K_semistable_certified"
    return "undecided"
