"""The 24 families of log smooth log Fano threefolds with reducible integral boundary."""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .arith import fmt, rat
from .az import CenterSpec, SurfaceModel
from .geom import (ConfigurationError, LogPair, NumericalClass, PreconditionError,
                   Threefold, dual_rays, extremal_rays, nef_value, primitive)
from .kstab import Factor

COEFF_NAMES = ("a", "b", "c")


def class_label(labels: Sequence[str], coords) -> str:
    """Human-readable class such as 2H-F."""
    out = ""
    for lab, c in zip(labels, coords):
        c = Fraction(c)
        if c == 0:
            continue
        mag = abs(c)
        s = ("" if mag == 1 else fmt(mag)) + lab
        if not out:
            out = ("-" if c < 0 else "") + s
        else:
            out += ("-" if c < 0 else "+") + s
    return out or "0"


@dataclass
class KnownRegion:
    description: str
    contains: Callable[[Sequence[Fraction]], bool]


@dataclass
class CatalogCase:
    id: str
    params: Dict[str, int]
    threefold: Threefold
    boundary: List[Tuple[str, NumericalClass]]
    test_divisors: List[Tuple[str, NumericalClass]]
    expected_nef_value: Fraction
    mov_eq_nef: bool = False
    az_centers: List[CenterSpec] = field(default_factory=list)
    product_factors: Optional[Callable[[Sequence[Fraction]], List[Factor]]] = None
    known_region: Optional[KnownRegion] = None
    semistable_column: str = "No"
    variety_text: str = ""
    delegates_to: str = ""

    @property
    def ncoeff(self) -> int:
        return len(self.boundary)

    @property
    def coeff_names(self) -> Tuple[str, ...]:
        return COEFF_NAMES[: self.ncoeff]

    def pair(self, coeffs: Sequence) -> LogPair:
        return LogPair(self.threefold, self.boundary, coeffs, self.test_divisors, self.mov_eq_nef)

    def ample_constraints(self) -> List[Tuple[Fraction, Tuple[Fraction, ...]]]:
        """Affine forms c0 + sum c_i x_i that must be > 0 for -K - D to be ample."""
        cached = self.__dict__.get("_ample")
        if cached is not None:
            return cached
        X = self.threefold
        out = []
        for _, C in X.mori_gens:
            c0 = -C.dot(X.canonical)
            lin = tuple(-C.dot(cl) for _, cl in self.boundary)
            if (c0, lin) not in out:
                out.append((c0, lin))
        self.__dict__["_ample"] = out
        return out

    def is_log_fano(self, coeffs: Sequence) -> bool:
        coeffs = [rat(c) for c in coeffs]
        return all(c0 + sum((l * x for l, x in zip(lin, coeffs)), Fraction(0)) > 0
                   for c0, lin in self.ample_constraints())

    def computed_nef_value(self) -> Fraction:
        return nef_value(self.threefold, sum((cl for _, cl in self.boundary[1:]), self.boundary[0][1]))[0]

    def is_product(self) -> bool:
        return self.product_factors is not None

    def class_text(self, c: NumericalClass) -> str:
        return class_label(self.threefold.basis_labels, c.coords)


# generic constructions

def _prune(cands):
    """Keep labelled extremal rays, first label wins."""
    rays = extremal_rays([c for _, c in cands])
    out = []
    for r in rays:
        for lab, c in cands:
            if primitive(c) == r:
                out.append((lab, r))
                break
    return out


def _finish(name, labels, triple, K, eff_cands, curve_cands, extra_mori=None):
    mori = _prune(curve_cands)
    eff = _prune(eff_cands)
    nef = dual_rays([c for _, c in mori], len(labels))
    eff_eq_nef = sorted(primitive(c) for _, c in eff) == sorted(nef)
    X = Threefold(labels, triple, K, nef, eff, mori, eff_eq_nef=eff_eq_nef, name=name)
    errs = X.validate()
    if errs:
        raise ConfigurationError(f"{name}: " + "; ".join(errs))
    return X


def _sym(entries):
    """Expand {sorted index triple: value} into all permutations."""
    from itertools import permutations
    out = {}
    for key, v in entries.items():
        for p in set(permutations(key)):
            out[p] = v
    return out


BASES = {
    # labels, intersection form, K_S, curve generators (pairings), eff prime generators
    "P2": lambda n: (["F"], [[1]], [-3], [("line", [1])], [("F", [1])]),
    "F": lambda n: (["Fs", "Ff"], [[-n, 1], [1, 0]], [-2, -(2 + n)],
                    [("s", [-n, 1]), ("f", [1, 0])], [("Fs", [1, 0]), ("Ff", [0, 1])]),
    "P1xP1": lambda n: (["F1", "F2"], [[0, 1], [1, 0]], [-2, -2],
                        [("r1", [0, 1]), ("r2", [1, 0])], [("F1", [1, 0]), ("F2", [0, 1])]),
}


def p1_bundle(name: str, base: str, M: Sequence[int], n: int = 0) -> Threefold:
    """P_S(O + O(M)) over a toric surface S, basis H1 (section with normal bundle -M) and pullbacks."""
    blabels, form, KS, curves, effs = BASES[base](n)
    r = len(blabels)
    labels = ["H1"] + blabels
    dotS = lambda u, v: sum(u[i] * form[i][j] * v[j] for i in range(r) for j in range(r))
    e = lambda i: [int(i == j) for j in range(r)]
    entries = {(0, 0, 0): dotS(M, M)}
    for i in range(r):
        entries[(0, 0, i + 1)] = -dotS(M, e(i))
        for j in range(i, r):
            entries[(0, i + 1, j + 1)] = form[i][j]
    triple = {k: v for k, v in _sym(entries).items()}
    K = [-2] + [KS[i] - M[i] for i in range(r)]
    # curve pairings: (H1.C, then pullback pairings = base curve pairings)
    cc = [("fiber", [1] + [0] * r)]
    for lab, g in curves:
        Mg = sum(M[i] * g[i] for i in range(r))
        cc.append((f"{lab} in H1", [-Mg] + list(g)))
        cc.append((f"{lab} in H1+M", [0] + list(g)))
    ec = [("H1", [1] + [0] * r), (class_label(labels, [1] + list(M)), [1] + list(M))]
    ec += [(lab, [0] + list(v)) for lab, v in effs]
    return _finish(name, labels, triple, K, ec, cc)


def p2_bundle(name: str, k: int, n: int) -> Threefold:
    """P_{P1}(O + O(k) + O(n)) with basis H (tautological), F (fiber)."""
    labels = ["H", "F"]
    triple = _sym({(0, 0, 0): k + n, (0, 0, 1): 1})
    K = [-3, k + n - 2]
    cc = [("l", [1, 0])] + [(f"s{d}", [d, 1]) for d in sorted({0, k, n})]
    ec = [("F", [0, 1])] + [(class_label(labels, [1, -d]), [1, -d]) for d in sorted({0, k, n})]
    return _finish(name, labels, triple, K, ec, cc)


def _explicit(name, labels, triple_entries, K, eff, mori):
    return _finish(name, labels, _sym(triple_entries), K, eff, mori)


# helpers for rows

def C(X: Threefold, **kw) -> NumericalClass:
    return X.cls(**kw)


def _nef_tests(X: Threefold) -> List[Tuple[str, NumericalClass]]:
    out = [(class_label(X.basis_labels, g.coords), g) for g in X.nef_gens]
    out += [(lab, g) for lab, g in X.eff_gens]
    return out


def _dedupe_tests(boundary, tests):
    seen = {lab for lab, _ in boundary}
    out = []
    for lab, c in tests:
        if lab not in seen:
            seen.add(lab)
            out.append((lab, c))
    return out


def _affine(const, *lin):
    return (Fraction(const), tuple(Fraction(x) for x in lin))


# exact known regions

def _f3_region(c):
    a, b = c
    return 3 * b <= 2 * a and 6 * a - b <= 4


def _f4_region(c):
    a, b = c
    return 3 * a - b <= 1 and 3 * b - a <= 1


def d5_cubic(a):
    return 9 * a ** 3 - 58 * a ** 2 + 106 * a - 40


def _d5_region(c):
    a, b = c
    if b < 0 or 2 * b > a:
        return False
    if d5_cubic(a) <= 0:  # a <= alpha: the cubic is increasing on [0, 1]
        return True
    if a > Fraction(20, 37):
        return False
    # lower branch: b >= (-4+13a-4a^2)/(3a) - sqrt(R/a^2)/(3 sqrt 2)
    T = 3 * a * b + 4 - 13 * a + 4 * a * a
    R = 32 - 88 * a + 84 * a ** 2 - 34 * a ** 3 + 5 * a ** 4
    return T >= 0 or 2 * T * T <= R


def _q1_region(c):
    a, b = c
    if a < 0 or b < 0:
        return False
    return (3 * a + 2) ** 2 <= 10 and b <= 1 and 6 * (1 - b) ** 2 >= 4 + 4 * a + 3 * a * a


def _c9_region(c):
    a, b = c
    if a < 0 or b < 0:
        return False
    u = 16 - 3 * a - 8 * b
    upper = u >= 0 and u * u >= 3 * (64 - 32 * a + 3 * a * a)
    if not upper:
        return False
    if a * a - 4 * a + 1 >= 0 and a <= 2:  # a <= 2 - sqrt 3
        return True
    return 7 * a <= 2 and 3 * a * b >= -4 + 16 * a - 4 * a * a


# row builders; each returns a CatalogCase

def _case(id_, params, X, boundary, eps, extra=(), **kw):
    tests = _dedupe_tests(boundary, list(extra) + _nef_tests(X))
    return CatalogCase(id_, params, X, boundary, tests, Fraction(eps), **kw)


def build_E1(p):
    X = _explicit("E1", ["D1", "D2"],
                  {(0, 0, 0): 1, (0, 0, 1): -2, (0, 1, 1): 4, (1, 1, 1): -6}, [-4, -3],
                  [("D1", [1, 0]), ("D2", [0, 1])], [("l1", [-1, 2]), ("l2", [1, -1])])
    return _case("E1", p, X, [("D1", C(X, D1=1)), ("D2", C(X, D2=1))], 2,
                 variety_text="Bl_p Q")


def build_E2(p):
    n = p["n"]
    X = _explicit("E2", ["E", "D1", "D2"],
                  {(0, 0, 0): 1, (1, 1, 1): -1, (0, 1, 1): 1, (0, 0, 1): -1, (2, 2, 2): -2 * n,
                   (1, 2, 2): 1},
                  [-2 * n, -(2 + 2 * n), -3],
                  [("E", [1, 0, 0]), ("D1", [0, 1, 0]), ("D2", [0, 0, 1])],
                  [("f1", [-1, 1, 0]), ("f2", [1, -1, 1]), ("f3", [0, 1, -n])])
    return _case("E2", p, X, [("D1", C(X, D1=1)), ("D2", C(X, D2=1))], 2,
                 variety_text="Bl_p P(O+O+O(n))")


def _c2_family(id_, p, k, kind):
    X = p1_bundle(id_, "P2", [k])
    H1, F = C(X, H1=1), C(X, F=1)
    if kind == "C1":
        bnd = [("D1", H1), ("D2", F * 2)]
    elif kind == "C2":
        bnd = [("D1", H1), ("D2", F), ("D3", F)]
    else:
        bnd = [("D1", H1), ("D2", F)]
    extra = [("E", H1 + F * k)] if k < 0 else []
    return _case(id_, p, X, bnd, 2, extra, variety_text="P_P2(O+O(k))",
                 delegates_to={"C1": "C2 with b = c", "C3": "C2 with c = 0 (k >= -1)"}.get(kind, ""))


def build_C1(p):
    return _c2_family("C1", p, p["k"], "C1")


def build_C2(p):
    return _c2_family("C2", p, p["k"], "C2")


def build_C3(p):
    return _c2_family("C3", p, p["k"], "C3")


def _fn_bundle(id_, k, n, m):
    return p1_bundle(id_, "F", [k, k * n + m], n)


def build_C4(p):
    k, n, m = p["k"], p["n"], p["m"]
    X = _fn_bundle("C4", k, n, m)
    bnd = [("D1", C(X, H1=1)), ("D2", C(X, Fs=1))]
    return _case("C4", p, X, bnd, 2, variety_text="P_Fn(O+O(ks+(kn+m)f))")


def build_C5(p):
    k, n, m = p["k"], p["n"], p["m"]
    X = _fn_bundle("C5", k, n, m)
    bnd = [("D1", C(X, H1=1)), ("D2", C(X, Fs=1)), ("D3", C(X, Ff=1))]
    return _case("C5", p, X, bnd, 2, variety_text="P_Fn(O+O(ks+(kn+m)f))")


def build_C6(p):
    k, n = p["k"], p["n"]
    m = -2
    X = _explicit("C6", ["H1", "Fs", "Ff"],
                  {(0, 0, 0): n * k * k + 2 * k * m, (0, 0, 1): -m, (0, 0, 2): -k, (0, 1, 1): -n,
                   (0, 1, 2): 1},
                  [-2, -(2 + k), -(2 + n + k * n + m)],
                  [("H1", [1, 0, 0]), ("Fs", [0, 1, 0]), ("Ff", [0, 0, 1])],
                  [("l", [1, 0, 0]), ("f", [-k, 1, 0]), ("s", [-m, -n, 1]), ("r", [-m - 1, -n, 1])])
    bnd = [("D1", C(X, H1=1)), ("D2", C(X, Fs=1))]
    return _case("C6", p, X, bnd, 2, variety_text="P_Fn(E), E a non-split extension")


def build_C7(p):
    k, n = p["k"], p["n"]
    X = p1_bundle("C7", "P1xP1", [k, n])
    bnd = [("D1", C(X, H1=1)), ("D2", C(X, F1=1, F2=1))]
    pf = None
    if k == 0 and n == 0:
        pf = lambda c: [Factor("P1", (c[0],)), Factor("P1xP1", (c[1],))]
    return _case("C7", p, X, bnd, 2, product_factors=pf, variety_text="P_{P1xP1}(O+O(k,n))",
                 delegates_to="C5 with n = 0, b = c")


def build_C8(p):
    k, m = p["k"], p["m"]
    X = _fn_bundle("C8", k, 1, m)
    bnd = [("D1", C(X, H1=1)), ("D2", C(X, Fs=1, Ff=1))]
    return _case("C8", p, X, bnd, 2, variety_text="P_F1(O+O(ks+(k+m)f))",
                 delegates_to="C5 with n = 1, b = c")


def build_C9(p):
    X = _explicit("C9", ["H1", "H2"], {(0, 0, 1): 1, (0, 1, 1): 1}, [-2, -2],
                  [("H1", [1, 0]), ("H2", [0, 1])], [("r1", [1, 0]), ("r2", [0, 1])])
    bnd = [("D1", C(X, H1=1)), ("D2", C(X, H2=1))]
    Y = SurfaceModel("F", [(0, 1), (1, 1)], n=1)
    centers = [CenterSpec("Z", "D1", Y, (Fraction(1), Fraction(1)), _affine(1, 0, -1))]
    region = KnownRegion(
        "a <= 2-sqrt3 and 0 <= b <= (16-3a)/8 - sqrt3*sqrt(64-32a+3a^2)/8, or "
        "2-sqrt3 <= a <= 2/7 and (-4+16a-4a^2)/(3a) <= b <= same upper bound",
        _c9_region)
    return _case("C9", p, X, bnd, 2, mov_eq_nef=True, az_centers=centers, known_region=region,
                 semistable_column="For some a, b", variety_text="P_P2(T_P2)")


def build_C10(p):
    X = _explicit("C10", ["E", "F", "H"],
                  {(0, 0, 2): -1, (0, 1, 2): 1, (1, 2, 2): 1}, [-1, -2, -2],
                  [("H-E", [-1, 0, 1]), ("E", [1, 0, 0]), ("F", [0, 1, 0])],
                  [("l1", [1, 0, 0]), ("l2", [-1, 1, 0]), ("l3", [0, 0, 1])])
    bnd = [("D1", C(X, H=1, E=-1)), ("D2", C(X, E=1))]
    return _case("C10", p, X, bnd, 2, variety_text="X in F1 x P2, X ~ F+E+H")


def _d_case(id_, p, k, n, bnd_spec, eps, extra_spec=(), **kw):
    X = p2_bundle(id_, k, n)
    mk = lambda h, f: C(X, H=h, F=f)
    bnd = [(lab, mk(*hf)) for lab, hf in bnd_spec]
    extra = [(lab, mk(*hf)) for lab, hf in extra_spec]
    return _case(id_, p, X, bnd, eps, extra, variety_text="P_P1(O+O(k)+O(n))", **kw)


def _lines_product(c):
    return [Factor("P2", (c[0], c[1])), Factor("P1", (c[2] if len(c) > 2 else Fraction(0),))]


def build_D1(p):
    k, n = p["k"], p["n"]
    pf = _lines_product if k == 0 and n == 0 else None
    return _d_case("D1", p, k, n, [("D1", (1, -k)), ("D2", (1, -n))], 3, product_factors=pf,
                   delegates_to="D8 with c = 0")


def build_D2(p):
    n = p["n"]
    return _d_case("D2", p, 1, n, [("D1", (1, 0)), ("D2", (1, -n))], 3, [("E", (1, -1))])


def build_D3(p):
    return _d_case("D3", p, 1, 0, [("D1", (1, 0)), ("D2", (1, 0))], 3, [("E", (1, -1))],
                   delegates_to="D2 with n = 0")


def build_D4(p):
    n = p["n"]
    return _d_case("D4", p, 0, n, [("D1", (1, 1)), ("D2", (1, -n))], 3)


def build_D5(p):
    X = p2_bundle("D5", 0, 0)
    bnd = [("D1", C(X, H=1, F=1)), ("D2", C(X, H=1))]
    extra = [("H", C(X, H=1)), ("F", C(X, F=1)), ("H+F", C(X, H=1, F=1)), ("2H+F", C(X, H=2, F=1))]
    centers = [
        CenterSpec("Z", "D2", SurfaceModel("P1xP1", [(1, 0), (0, 1)]), (Fraction(1), Fraction(1)),
                   _affine(1, -1, 0)),
        CenterSpec("Z'", "D1", SurfaceModel("F", [(1, 1), (0, 1)], n=1), (Fraction(1), Fraction(0)),
                   _affine(1, 0, 0)),
    ]
    region = KnownRegion(
        "0 <= a <= alpha and b <= a/2 (alpha the root of 9x^3-58x^2+106x-40 near 0.507), or "
        "alpha <= a <= 20/37 and (-4+13a-4a^2)/(3a) - sqrt((32-88a+84a^2-34a^3+5a^4)/a^2)/(3 sqrt2) <= b <= a/2",
        _d5_region)
    return CatalogCase("D5", p, X, bnd, _dedupe_tests(bnd, extra + _nef_tests(X)), Fraction(3),
                       mov_eq_nef=True, az_centers=centers, known_region=region,
                       semistable_column="For some a, b", variety_text="P1 x P2")


def build_D6(p):
    n = p["n"]
    return _d_case("D6", p, 0, n, [("D1", (1, -n)), ("D2", (0, 1))], Fraction(3, 2),
                   delegates_to="D8 with k = 0, a = 0")


def build_D7(p):
    pf = lambda c: [Factor("P2", (c[0],)), Factor("P1", (c[1],))]
    return _d_case("D7", p, 0, 0, [("D1", (2, 0)), ("D2", (0, 1))], 3, product_factors=pf)


def build_D8(p):
    k, n = p["k"], p["n"]
    pf = _lines_product if k == 0 and n == 0 else None
    return _d_case("D8", p, k, n, [("D1", (1, -k)), ("D2", (1, -n)), ("D3", (0, 1))], 3,
                   product_factors=pf)


def build_Q1(p):
    m = p["m"]
    X = _explicit("Q1", ["E", "F"], {(0, 0, 0): -4 * m, (0, 0, 1): 2}, [-2, -(m + 2)],
                  [("E", [1, 0]), ("F", [0, 1])], [("c1", [1, 0]), ("c2", [-m, 1])])
    bnd = [("D1", C(X, E=1)), ("D2", C(X, F=1))]
    extra = [("H", C(X, E=1, F=m))]
    kw = {}
    if m == 1:
        Y = SurfaceModel("P1xP1", [(-1, 2), (1, 0)])
        kw["az_centers"] = [CenterSpec("Z", "D1", Y, (Fraction(1), Fraction(0)), _affine(1, 0, -1))]
        kw["known_region"] = KnownRegion(
            "0 <= a <= (sqrt10-2)/3 and 0 <= b <= 1 - sqrt(4+4a+3a^2)/sqrt6", _q1_region)
    return _case("Q1", p, X, bnd, 2, extra, mov_eq_nef=True, semistable_column="For m=1 and some a, b",
                 variety_text="X in P_P1(O+O+O+O(m)), X ~ 2H", **kw)


def _p3():
    return _explicit("P3", ["H"], {(0, 0, 0): 1}, [-4], [("H", [1])], [("line", [1])])


def build_F1(p):
    X = _p3()
    h = C(X, H=1)
    return _case("F1", p, X, [("D1", h), ("D2", h), ("D3", h)], 4, variety_text="P3")


def build_F2(p):
    X = _p3()
    h = C(X, H=1)
    return _case("F2", p, X, [("D1", h), ("D2", h)], 2, variety_text="P3")


def build_F3(p):
    X = _p3()
    Y = SurfaceModel("P1xP1", [(1, 1)])
    centers = [CenterSpec("Z", "D1", Y, (Fraction(1), Fraction(1)), _affine(1, 0, -1))]
    return _case("F3", p, X, [("D1", C(X, H=2)), ("D2", C(X, H=1))], Fraction(4, 3), mov_eq_nef=True,
                 az_centers=centers, semistable_column="For some a, b", variety_text="P3",
                 known_region=KnownRegion("3b <= 2a and 6a - b <= 4", _f3_region))


def build_F4(p):
    X = _explicit("Q", ["H"], {(0, 0, 0): 2}, [-3], [("H", [1])], [("line", [1])])
    Y = SurfaceModel("P1xP1", [(1, 1)])
    centers = [CenterSpec("Z", "D2", Y, (Fraction(1), Fraction(1)), _affine(1, -1, 0))]
    return _case("F4", p, X, [("D1", C(X, H=1)), ("D2", C(X, H=1))], 3, mov_eq_nef=True,
                 az_centers=centers, semistable_column="For some a, b", variety_text="Q in P4",
                 known_region=KnownRegion("3a - b <= 1 and 3b - a <= 1", _f4_region))


# row table: builder, parameter defaults, lower bounds, boundary text, parameter text
ROWS = {
    "E1": (build_E1, {}, "E, H~", ""),
    "E2": (build_E2, {"n": 1}, "F~, (H-nF)~", "n >= 1"),
    "C1": (build_C1, {"k": 1}, "H-kF, 2F", "k >= 0"),
    "C2": (build_C2, {"k": 1}, "H-kF, F, F", "k >= 0"),
    "C3": (build_C3, {"k": -1}, "H-kF, F", "k >= -1"),
    "C4": (build_C4, {"k": 1, "n": 1, "m": 0}, "H-kFs-(kn+m)Ff, Fs", "k, n >= 0, m >= -1"),
    "C5": (build_C5, {"k": 1, "n": 1, "m": 0}, "H-kFs-(kn+m)Ff, Fs, Ff", "k, m, n >= 0"),
    "C6": (build_C6, {"k": 1, "n": 2}, "H, Fs", "k, n >= 1, (k, n) != (1, 1)"),
    "C7": (build_C7, {"k": 0, "n": 0}, "H-kF1-nF2, F1+F2", "k, n >= 0"),
    "C8": (build_C8, {"k": 0, "m": 0}, "H-kFs-(k+m)Ff, Fh", "k, m >= 0"),
    "C9": (build_C9, {}, "H1, H2", ""),
    "C10": (build_C10, {}, "H-E, E", ""),
    "D1": (build_D1, {"k": 0, "n": 1}, "H-kF, H-nF", "k, n >= 0"),
    "D2": (build_D2, {"n": 1}, "H, H-nF", "n >= 1"),
    "D3": (build_D3, {}, "H, H", ""),
    "D4": (build_D4, {"n": 1}, "H+F, H-nF", "n >= 1"),
    "D5": (build_D5, {}, "H+F, H", ""),
    "D6": (build_D6, {"n": 1}, "H-nF, F", "n >= 1"),
    "D7": (build_D7, {}, "2H, F", ""),
    "D8": (build_D8, {"k": 0, "n": 1}, "H-kF, H-nF, F", "k, n >= 0"),
    "Q1": (build_Q1, {"m": 1}, "H-mF, F", "m >= 1"),
    "F1": (build_F1, {}, "H, H, H", ""),
    "F2": (build_F2, {}, "H, H", ""),
    "F3": (build_F3, {}, "2H, H", ""),
    "F4": (build_F4, {}, "H, H", ""),
}

LOWER = {
    "E2": {"n": 1}, "C1": {"k": 0}, "C2": {"k": 0}, "C3": {"k": -1},
    "C4": {"k": 0, "n": 0, "m": -1}, "C5": {"k": 0, "n": 0, "m": 0}, "C6": {"k": 1, "n": 1},
    "C7": {"k": 0, "n": 0}, "C8": {"k": 0, "m": 0}, "D1": {"k": 0, "n": 0}, "D2": {"n": 1},
    "D4": {"n": 1}, "D6": {"n": 1}, "D8": {"k": 0, "n": 0}, "Q1": {"m": 1},
}



def case_ids() -> List[str]:
    return list(ROWS)


def validate_params(case_id: str, params: Dict[str, int]) -> Dict[str, int]:
    if case_id not in ROWS:
        raise PreconditionError(f"unknown case {case_id!r}")
    _, defaults, _, _ = ROWS[case_id]
    out = dict(defaults)
    for key, val in (params or {}).items():
        if val is None:
            continue
        if key not in defaults:
            raise PreconditionError(f"case {case_id} takes no parameter {key!r}")
        out[key] = int(val)
    for key, lo in LOWER.get(case_id, {}).items():
        if out[key] < lo:
            raise PreconditionError(f"case {case_id} requires {key} >= {lo}")
    if case_id == "C6" and (out["k"], out["n"]) == (1, 1):
        raise PreconditionError("case C6 requires (k, n) != (1, 1)")
    return out


def instantiate(case_id: str, params: Optional[Dict[str, int]] = None, **kw) -> CatalogCase:
    p = validate_params(case_id, {**(params or {}), **kw})
    return ROWS[case_id][0](p)


def load_all() -> List[CatalogCase]:
    return [instantiate(cid) for cid in ROWS]


# JSON documents

SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "log Fano pair case document",
    "type": "object",
    "required": ["id", "basis", "triple", "canonical", "eff", "mori", "boundary"],
    "additionalProperties": False,
    "definitions": {
        "q": {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"},
        "vec": {"type": "array", "items": {"$ref": "#/definitions/q"}, "minItems": 1, "maxItems": 3},
        "named": {"type": "array", "items": {
            "type": "object", "required": ["label", "class"], "additionalProperties": False,
            "properties": {"label": {"type": "string"}, "class": {"$ref": "#/definitions/vec"}}}},
    },
    "properties": {
        "id": {"type": "string"},
        "params": {"type": "object", "additionalProperties": {"type": "integer"}},
        "basis": {"type": "array", "items": {"type": "string"}, "minItems": 1, "maxItems": 3},
        "triple": {"type": "array", "items": {"type": "array", "items": {
            "type": "array", "items": {"$ref": "#/definitions/q"}}}},
        "canonical": {"$ref": "#/definitions/vec"},
        "nef": {"type": "array", "items": {"$ref": "#/definitions/vec"}},
        "eff": {"$ref": "#/definitions/named"},
        "mori": {"$ref": "#/definitions/named"},
        "eff_eq_nef": {"type": "boolean"},
        "boundary": {"$ref": "#/definitions/named"},
        "test_divisors": {"$ref": "#/definitions/named"},
        "expected_nef_value": {"$ref": "#/definitions/q"},
        "mov_eq_nef": {"type": "boolean"},
        "centers": {"type": "array", "items": {
            "type": "object", "additionalProperties": False,
            "required": ["label", "surface_divisor", "kind", "restriction", "Z", "A_Z"],
            "properties": {
                "label": {"type": "string"}, "surface_divisor": {"type": "string"},
                "kind": {"enum": ["P2", "P1xP1", "F", "P1"]}, "n": {"type": "integer"},
                "restriction": {"type": "array", "items": {"$ref": "#/definitions/vec"}},
                "Z": {"$ref": "#/definitions/vec"},
                "A_Z": {"type": "array", "items": {"$ref": "#/definitions/q"}},
                "N_restriction": {"type": "object", "additionalProperties": {"$ref": "#/definitions/q"}},
            }}},
    },
}


def _q(x) -> str:
    return fmt(Fraction(x))


def export_case(case: CatalogCase) -> dict:
    X = case.threefold
    r = X.rho
    named = lambda items, key: [{"label": lab, "class": [_q(x) for x in getattr(c, key)]} for lab, c in items]
    doc = {
        "id": case.id,
        "params": dict(case.params),
        "basis": list(X.basis_labels),
        "triple": [[[_q(X.T[i][j][k]) for k in range(r)] for j in range(r)] for i in range(r)],
        "canonical": [_q(x) for x in X.canonical.coords],
        "nef": [[_q(x) for x in g.coords] for g in X.nef_gens],
        "eff": named(X.eff_gens, "coords"),
        "mori": named(X.mori_gens, "pairing"),
        "eff_eq_nef": X.eff_eq_nef,
        "boundary": named(case.boundary, "coords"),
        "test_divisors": named(case.test_divisors, "coords"),
        "expected_nef_value": _q(case.expected_nef_value),
        "mov_eq_nef": case.mov_eq_nef,
        "centers": [{
            "label": c.label, "surface_divisor": c.surface_divisor, "kind": c.surface.kind,
            "n": c.surface.n, "restriction": [[_q(x) for x in row] for row in c.surface.restriction],
            "Z": [_q(x) for x in c.Z_class], "A_Z": [_q(c.A_Z[0])] + [_q(x) for x in c.A_Z[1]],
            "N_restriction": {k: _q(v) for k, v in c.N_restriction.items()},
        } for c in case.az_centers],
    }
    return doc


def dumps_case(case: CatalogCase) -> str:
    return json.dumps(export_case(case), indent=2, sort_keys=True)


def load_custom(document) -> CatalogCase:
    """Build a case from a JSON document (dict or string); raises ConfigurationError on bad data."""
    import jsonschema

    if isinstance(document, (str, bytes)):
        document = json.loads(document)
    try:
        jsonschema.validate(document, SCHEMA)
    except jsonschema.ValidationError as e:
        raise ConfigurationError(f"schema violation at {list(e.absolute_path)}: {e.message}") from None
    basis = document["basis"]
    r = len(basis)
    T = document["triple"]
    if len(T) != r or any(len(row) != r or any(len(col) != r for col in row) for row in T):
        raise ConfigurationError("triple table must be rho x rho x rho")
    triple = {(i, j, k): rat(T[i][j][k]) for i in range(r) for j in range(r) for k in range(r)}
    vec = lambda v: [rat(x) for x in v]
    for key in ("canonical",):
        if len(document[key]) != r:
            raise ConfigurationError(f"{key} has wrong length")
    eff = [(e["label"], vec(e["class"])) for e in document["eff"]]
    mori = [(e["label"], vec(e["class"])) for e in document["mori"]]
    nef = [vec(v) for v in document.get("nef") or dual_rays([c for _, c in mori], r)]
    X = Threefold(basis, triple, vec(document["canonical"]), nef, eff, mori,
                  eff_eq_nef=document.get("eff_eq_nef", False), name=document["id"])
    errs = X.validate()
    if errs:
        raise ConfigurationError(f"{document['id']}: " + "; ".join(errs))
    nc = lambda v: NumericalClass(vec(v))
    bnd = [(e["label"], nc(e["class"])) for e in document["boundary"]]
    tests = [(e["label"], nc(e["class"])) for e in document.get("test_divisors", [])]
    centers = []
    for c in document.get("centers", []):
        az = [rat(x) for x in c["A_Z"]]
        centers.append(CenterSpec(c["label"], c["surface_divisor"],
                                  SurfaceModel(c["kind"], [vec(r_) for r_ in c["restriction"]], c.get("n", 0)),
                                  tuple(vec(c["Z"])), (az[0], tuple(az[1:])),
                                  {k: rat(v) for k, v in c.get("N_restriction", {}).items()}))
    eps = rat(document["expected_nef_value"]) if "expected_nef_value" in document else None
    case = CatalogCase(document["id"], dict(document.get("params", {})), X, bnd, tests, eps,
                       mov_eq_nef=document.get("mov_eq_nef", False), az_centers=centers)
    return case
