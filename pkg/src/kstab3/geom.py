"""Numerical classes on threefolds of Picard rank at most 3, cones and log Fano tests."""
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import rank, rat, solve_linear


class ConfigurationError(ValueError):
    """Case data is inconsistent (cones, intersection table, generators)."""


class PreconditionError(ValueError):
    """An operation was called outside its domain of validity."""


def _scaled(coords):
    """Integer numerators over a common denominator: (ints, den)."""
    d = lcm(*(c.denominator for c in coords))
    return [c.numerator * (d // c.denominator) for c in coords], d


class NumericalClass:
    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(rat(c) for c in coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def _check(self, o):
        if len(o.coords) != len(self.coords):
            raise PreconditionError("dimension mismatch")

    def __add__(self, o):
        self._check(o)
        return NumericalClass(a + b for a, b in zip(self.coords, o.coords))

    def __sub__(self, o):
        self._check(o)
        return NumericalClass(a - b for a, b in zip(self.coords, o.coords))

    def __neg__(self):
        return NumericalClass(-a for a in self.coords)

    def __mul__(self, t):
        t = rat(t)
        return NumericalClass(t * a for a in self.coords)

    __rmul__ = __mul__

    def __eq__(self, o):
        return isinstance(o, NumericalClass) and self.coords == o.coords

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        return "NumericalClass(" + ", ".join(str(c) for c in self.coords) + ")"


class CurveFunctional:
    """A curve class, recorded by its intersection numbers with the basis divisors."""

    __slots__ = ("pairing", "_int")

    def __init__(self, pairing):
        self.pairing = tuple(rat(c) for c in pairing)
        self._int = None

    def dot(self, c) -> Fraction:
        coords = c.coords if isinstance(c, NumericalClass) else c
        if len(coords) != len(self.pairing):
            raise PreconditionError("dimension mismatch")
        if all(type(x) is Fraction for x in coords):
            xs, d = _scaled(coords)
            if self._int is None:
                self._int = _scaled(self.pairing)
            ps, pd = self._int
            return Fraction(sum(p * x for p, x in zip(ps, xs)), d * pd)
        return sum((p * x for p, x in zip(self.pairing, coords)), Fraction(0))

    def __eq__(self, o):
        return isinstance(o, CurveFunctional) and self.pairing == o.pairing

    def __hash__(self):
        return hash(self.pairing)

    def __repr__(self):
        return "CurveFunctional(" + ", ".join(str(c) for c in self.pairing) + ")"


# cone helpers (exact, for rank <= 3)

def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def primitive(v) -> Tuple[Fraction, ...]:
    """Scale a nonzero rational vector to a primitive integer vector."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(Fraction(x // g) for x in ints) if g else tuple(Fraction(0) for _ in v)


def cone_coordinates(gens: Sequence, v) -> Optional[List[Fraction]]:
    """Nonnegative coordinates of v in the cone spanned by gens, or None.

    Exact Caratheodory search over linearly independent subsets, so it also
    handles non-simplicial cones.
    """
    gens = [tuple(g) for g in gens]
    v = tuple(v)
    dim = len(v)
    if not any(v):
        return [Fraction(0)] * len(gens)
    for r in range(1, min(dim, len(gens)) + 1):
        for sub in combinations(range(len(gens)), r):
            cols = [gens[i] for i in sub]
            if rank([list(c) for c in cols]) < r:
                continue
            # least squares free: pick r independent coordinate rows
            for rows in combinations(range(dim), r):
                A = [[cols[j][i] for j in range(r)] for i in rows]
                if rank(A) < r:
                    continue
                lam = solve_linear(A, [v[i] for i in rows])
                if all(_dot_col(cols, lam, i) == v[i] for i in range(dim)) and all(x >= 0 for x in lam):
                    out = [Fraction(0)] * len(gens)
                    for j, i in enumerate(sub):
                        out[i] = lam[j]
                    return out
                break
    return None


def _dot_col(cols, lam, i):
    return sum((c[i] * l for c, l in zip(cols, lam)), Fraction(0))


def extremal_rays(gens: Sequence) -> List[Tuple[Fraction, ...]]:
    """Primitive extremal rays of the cone spanned by gens (duplicates removed)."""
    uniq = []
    for g in gens:
        if not any(g):
            continue
        p = primitive(g)
        if p not in uniq:
            uniq.append(p)
    out = []
    for i, g in enumerate(uniq):
        others = uniq[:i] + uniq[i + 1:]
        if not others or cone_coordinates(others, g) is None:
            out.append(g)
    return out


def dual_rays(gens: Sequence, dim: int) -> List[Tuple[Fraction, ...]]:
    """Extremal rays of the dual of a full-dimensional cone in dimension <= 3."""
    gens = [tuple(map(Fraction, g)) for g in gens]
    cands = []
    if dim == 1:
        cands = [(Fraction(1),), (Fraction(-1),)]
    elif dim == 2:
        for g in gens:
            cands += [(-g[1], g[0]), (g[1], -g[0])]
    elif dim == 3:
        for g, h in combinations(gens, 2):
            c = (g[1] * h[2] - g[2] * h[1], g[2] * h[0] - g[0] * h[2], g[0] * h[1] - g[1] * h[0])
            cands += [c, tuple(-x for x in c)]
    else:
        raise ConfigurationError("cone dualization only for rank <= 3")
    good = [c for c in cands if any(c) and all(_dot(c, g) >= 0 for g in gens)]
    return extremal_rays(good)


class Threefold:
    """Picard basis, symmetric trilinear form, canonical class and cone data."""

    def __init__(self, basis_labels: Sequence[str], triple: Dict, canonical,
                 nef_gens: Sequence, eff_gens: Sequence[Tuple[str, object]],
                 mori_gens: Sequence[Tuple[str, object]], eff_eq_nef: bool = False,
                 name: str = ""):
        self.name = name
        self.basis_labels = list(basis_labels)
        r = len(self.basis_labels)
        self.rho = r
        T = [[[Fraction(0)] * r for _ in range(r)] for _ in range(r)]
        for key, val in triple.items():
            idx = tuple(self._index(k) for k in key)
            T[idx[0]][idx[1]][idx[2]] = rat(val)
        self.T = T
        self.canonical = canonical if isinstance(canonical, NumericalClass) else NumericalClass(canonical)
        self.nef_gens = [g if isinstance(g, NumericalClass) else NumericalClass(g) for g in nef_gens]
        self.eff_gens = [(lab, g if isinstance(g, NumericalClass) else NumericalClass(g)) for lab, g in eff_gens]
        self.mori_gens = [(lab, c if isinstance(c, CurveFunctional) else CurveFunctional(c)) for lab, c in mori_gens]
        self.eff_eq_nef = eff_eq_nef
        self._terms = [(i, j, k, T[i][j][k]) for i in range(r) for j in range(r) for k in range(r) if T[i][j][k]]
        self._tden = lcm(*(t.denominator for *_, t in self._terms)) if self._terms else 1
        self._iterms = [(i, j, k, t.numerator * (self._tden // t.denominator)) for i, j, k, t in self._terms]
        self._eff_inverse = None
        self._eff_simplicial = None

    def _index(self, k):
        if isinstance(k, int):
            return k
        return self.basis_labels.index(k)

    def cls(self, **coeffs) -> NumericalClass:
        v = [Fraction(0)] * self.rho
        for lab, c in coeffs.items():
            v[self._index(lab)] = rat(c)
        return NumericalClass(v)

    def basis_class(self, label: str) -> NumericalClass:
        return self.cls(**{label: 1})

    # intersection theory

    def triple_product(self, c1, c2, c3) -> Fraction:
        for c in (c1, c2, c3):
            if len(c) != self.rho:
                raise PreconditionError("dimension mismatch")
        a, da = _scaled(c1.coords)
        b, db = _scaled(c2.coords)
        c, dc = _scaled(c3.coords)
        num = sum(t * a[i] * b[j] * c[k] for i, j, k, t in self._iterms)
        return Fraction(num, self._tden * da * db * dc)

    def cube(self, c) -> Fraction:
        return self.triple_product(c, c, c)

    def is_symmetric(self) -> bool:
        r, T = self.rho, self.T
        for i in range(r):
            for j in range(r):
                for k in range(r):
                    v = T[i][j][k]
                    if not (v == T[i][k][j] == T[j][i][k] == T[j][k][i] == T[k][i][j] == T[k][j][i]):
                        return False
        return True

    # cones

    def mori_pairings(self, c) -> List[Fraction]:
        return [C.dot(c) for _, C in self.mori_gens]

    def is_nef(self, c) -> bool:
        return all(C.dot(c) >= 0 for _, C in self.mori_gens)

    def is_ample(self, c) -> bool:
        return all(C.dot(c) > 0 for _, C in self.mori_gens)

    @property
    def eff_simplicial(self) -> bool:
        if self._eff_simplicial is None:
            gens = [list(g.coords) for _, g in self.eff_gens]
            self._eff_simplicial = len(gens) == self.rho and rank(gens) == self.rho
        return self._eff_simplicial

    def eff_coords(self, c) -> List[Fraction]:
        """Coordinates of c in the eff generators; requires a simplicial cone."""
        if not self.eff_simplicial:
            raise ConfigurationError(f"{self.name}: eff generators do not form a basis")
        if self._eff_inverse is None:
            r = self.rho
            cols = [g.coords for _, g in self.eff_gens]
            A = [[cols[j][i] for j in range(r)] for i in range(r)]
            inv_cols = [solve_linear(A, [Fraction(int(i == k)) for i in range(r)]) for k in range(r)]
            self._eff_inverse = [[inv_cols[k][j] for k in range(r)] for j in range(r)]
        inv = self._eff_inverse
        v = c.coords
        return [sum((row[i] * v[i] for i in range(self.rho)), Fraction(0)) for row in inv]

    def is_pseff(self, c) -> bool:
        if self.eff_simplicial:
            return all(x >= 0 for x in self.eff_coords(c))
        return cone_coordinates([g.coords for _, g in self.eff_gens], c.coords) is not None

    def validate(self) -> List[str]:
        """Return a list of violated invariants (empty when the data is consistent)."""
        errs = []
        if not self.is_symmetric():
            errs.append("triple table is not symmetric")
        for g in self.nef_gens:
            for lab, C in self.mori_gens:
                if C.dot(g) < 0:
                    errs.append(f"nef generator {g} pairs negatively with {lab}")
        # nef classes have nonnegative triple products; a failure means the Mori cone is too small
        for i, g1 in enumerate(self.nef_gens):
            for j, g2 in enumerate(self.nef_gens[i:], i):
                for g3 in self.nef_gens[j:]:
                    if self.triple_product(g1, g2, g3) < 0:
                        errs.append(f"nef generators {g1}, {g2}, {g3} have a negative triple product")
        nef_rays = [primitive(g.coords) for g in self.nef_gens]
        for lab, g in self.eff_gens:
            if not self.is_pseff(g):
                errs.append(f"eff generator {lab} fails the pseff test")
            neg = any(C.dot(g) < 0 for _, C in self.mori_gens)
            boundary_nef = self.is_nef(g) and any(C.dot(g) == 0 for _, C in self.mori_gens)
            if not (neg or boundary_nef or self.eff_eq_nef or primitive(g.coords) in nef_rays):
                errs.append(f"eff generator {lab} is neither negative on a Mori generator nor nef")
        return errs


class LogPair:
    """(X, D = sum c_i D_i) together with extra named prime divisors used as test divisors."""

    def __init__(self, variety: Threefold, boundary: Sequence[Tuple[str, NumericalClass]],
                 coefficients: Sequence, extra_divisors: Sequence[Tuple[str, NumericalClass]] = (),
                 mov_eq_nef: bool = False):
        coefficients = [rat(c) for c in coefficients]
        if len(coefficients) != len(boundary):
            raise ValueError("one coefficient per boundary component")
        for c in coefficients:
            if not (0 <= c < 1):
                raise PreconditionError(f"coefficient {c} not in [0,1)")
        self.variety = variety
        self.boundary = list(boundary)
        self.coefficients = coefficients
        self.extra_divisors = list(extra_divisors)
        self.mov_eq_nef = mov_eq_nef
        self._L = None

    @property
    def D(self) -> NumericalClass:
        out = NumericalClass([0] * self.variety.rho)
        for (lab, cl), c in zip(self.boundary, self.coefficients):
            out = out + cl * c
        return out

    @property
    def Delta(self) -> NumericalClass:
        out = NumericalClass([0] * self.variety.rho)
        for _, cl in self.boundary:
            out = out + cl
        return out

    @property
    def L(self) -> NumericalClass:
        if self._L is None:
            self._L = -self.variety.canonical - self.D
        return self._L

    def divisors(self) -> List[Tuple[str, NumericalClass]]:
        seen, out = set(), []
        for lab, cl in self.boundary + self.extra_divisors:
            if lab not in seen:
                seen.add(lab)
                out.append((lab, cl))
        return out

    def divisor(self, label: str) -> NumericalClass:
        for lab, cl in self.divisors():
            if lab == label:
                return cl
        raise PreconditionError(f"unknown divisor label {label!r}")


def triple_product(X: Threefold, c1, c2, c3) -> Fraction:
    return X.triple_product(c1, c2, c3)


def is_nef(X: Threefold, c) -> bool:
    return X.is_nef(c)


def is_pseff(X: Threefold, c) -> bool:
    return X.is_pseff(c)


def is_ample(X: Threefold, c) -> bool:
    return X.is_ample(c)


def is_log_fano(pair: LogPair) -> bool:
    return pair.variety.is_ample(pair.L)


def nef_value(X: Threefold, delta) -> Tuple[Fraction, List[str]]:
    """Smallest e with K + e(-K - delta) nef, and the Mori generators attaining it."""
    K = X.canonical
    if X.is_nef(K):
        raise PreconditionError("not uniruled-type input: K_X is nef")
    G = -K - delta
    if not X.is_ample(G):
        raise PreconditionError("-K_X - Delta is not ample")
    best, where = None, []
    for lab, C in X.mori_gens:
        k = C.dot(K)
        if k < 0:
            val = -k / C.dot(G)
            if best is None or val > best:
                best, where = val, [lab]
            elif val == best:
                where.append(lab)
    return best, where
