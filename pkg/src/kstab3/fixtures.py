"""Hand-transcribed closed forms used as fixtures for the identity suite.

Each fixture compares an engine quantity with a closed-form expression on a
grid of rational coefficient points inside the ample body. A polynomial of
degree d in each variable that vanishes on a grid with more than d points per
axis vanishes identically, so agreement on the grid is an identity test
within the chamber the grid lies in.
"""
from dataclasses import dataclass
from fractions import Fraction as Q
from itertools import product
from typing import Callable, Dict, List, Optional, Tuple

from .arith import integrate
from .az import S_W
from .catalog import CatalogCase, instantiate
from .kstab import beta_prime, divisorial_verdict, product_rule
from .zariski import decompose_ray


@dataclass
class Fixture:
    name: str
    case_id: str
    params: Dict[str, int]
    engine: Callable  # (case, coeffs) -> value
    formula: Callable  # (coeffs, params) -> value
    kind: str = "equal"  # equal | le (engine <= formula) | true (engine(...) must be truthy)
    points: Optional[Callable] = None  # (case) -> list of coefficient tuples
    group: str = "identity"
    erratum: str = ""  # non-empty when the transcribed display is known to be wrong; says why


def grid(case: CatalogCase, per_axis: int = 7, den: int = 13, lo=Q(0), pred=None) -> List[Tuple[Q, ...]]:
    """Ample-body grid with denominators `den`, at most `per_axis` values per axis."""
    vals = [lo + Q(i, den) for i in range(den) if lo + Q(i, den) < 1]
    if len(vals) > per_axis:
        step = len(vals) / per_axis
        vals = [vals[int(i * step)] for i in range(per_axis)]
    pts = []
    for c in product(vals, repeat=case.ncoeff):
        if case.is_log_fano(c) and (pred is None or pred(c)):
            pts.append(c)
    return pts


# engine accessors

def beta(label):
    return lambda case, c: beta_prime(case.pair(c), label=label).beta_prime


def S_prime(label):
    return lambda case, c: beta_prime(case.pair(c), label=label).S_prime


def L3(case, c):
    pair = case.pair(c)
    return case.threefold.cube(pair.L)


def piece(label, lo, hi):
    """Integral of vol(L - xE) over [lo(c), hi(c)]."""
    def f(case, c):
        pair = case.pair(c)
        rd = decompose_ray(case.threefold, pair.L, pair.divisor(label))
        return integrate(rd.vol_function(), lo(c), hi(c))
    return f


def eps_of(label):
    def f(case, c):
        pair = case.pair(c)
        return decompose_ray(case.threefold, pair.L, pair.divisor(label)).eps
    return f


def tau_of(label):
    def f(case, c):
        pair = case.pair(c)
        return decompose_ray(case.threefold, pair.L, pair.divisor(label)).tau
    return f


def sw(center_label):
    def f(case, c):
        cen = next(x for x in case.az_centers if x.label == center_label)
        return S_W(case.pair(c), cen)
    return f


def sum_of(*fs):
    return lambda case, c: sum((f(case, c) for f in fs), Q(0))


def E1_bound(case, c):
    """A L^3 minus the integral of vol over [0, eps]: an upper bound for beta'."""
    pair = case.pair(c)
    rd = decompose_ray(case.threefold, pair.L, pair.divisor("D2"))
    return (1 - c[1]) * case.threefold.cube(pair.L) - integrate(rd.vol_function(), 0, rd.eps)


# closed forms

def _e1_int(c, p):
    a, b = c
    return ((4 - a) ** 3 * (a / 2 - b + 1) + 3 * (4 - a) ** 2 * (a / 2 - 2) ** 2 - 3 * (4 - a) ** 2 * (b - 3) ** 2
            + 4 * (4 - a) * (a / 2 - 2) ** 3 - 4 * (4 - a) * (b - 3) ** 3
            + Q(3, 2) * (a / 2 - 2) ** 4 - Q(3, 2) * (b - 3) ** 4)


def _e1_bound_expanded(c, p):
    a, b = c
    return ((1 - b) * (4 - a) ** 3 - 6 * (1 - b) * (4 - a) ** 2 * (3 - b) + 12 * (1 - b) * (4 - a) * (3 - b) ** 2
            - 6 * (1 - b) * (3 - b) ** 3
            - (4 - a) ** 3 * (a / 2 - b + 1) - 3 * (4 - a) ** 2 * (2 - a / 2) ** 2 - 3 * (4 - a) ** 2 * (3 - b) ** 2
            + 4 * (4 - a) * (2 - a / 2) ** 3 - 4 * (4 - a) * (3 - b) ** 3 - Q(3, 2) * (2 - a / 2) ** 4
            + Q(3, 2) * (3 - b) ** 4)


def _e1_bound_simplified(c, p):
    a, b = c
    return ((4 - a) * (3 - b) * (1 - b) * (-12 * b + 9 * a) - 6 * (4 - a) ** 2 * (3 - b)
            + (3 - b) ** 3 * (Q(-35, 2) + Q(9, 2) * b + 4 * a) - (22 + Q(5, 2) * a) * (2 - a / 2) ** 3 / 2)


def _d2(c, p):
    a, b = c
    n = p["n"]
    t = 3 - a - b
    return a, b, n, t


def _d2_S1(c, p):
    a, b, n, t = _d2(c, p)
    return (n + 1) * t ** 4 / 4 + t ** 3 * (1 - n + b * n)


def _d2_B1(c, p):
    a, b, n, t = _d2(c, p)
    return t ** 3 * (n + 1) * (1 - 3 * a + b) / 4 + t ** 2 * (1 - n + b * n) * (b - 2 * a)


def _d2_S2(c, p):
    a, b, n, t = _d2(c, p)
    return (1 - 2 * n) * t ** 4 / 4 + t ** 3 * (1 + 2 * n - a * n)


def _d2_B2(c, p):
    a, b, n, t = _d2(c, p)
    return (1 - 2 * n) * t ** 3 * (1 - 3 * b + a) / 4 + t ** 2 * (1 + 2 * n - a * n) * (a - 2 * b)


def _d2_SE(c, p):
    a, b, n, t = _d2(c, p)
    return (n - 2) * t ** 4 / 4 + t ** 3 * (4 - a - n + b * (n - 1))


def _d2_BE(c, p):
    a, b, n, t = _d2(c, p)
    return t ** 3 * (n - 2) * (1 + a + b) / 4 + t ** 2 * (4 - a - n + b * (n - 1)) * (a + b)


def _d4_S2(c, p):
    a, b = c
    n = p["n"]
    t = 3 - a - b
    return -n * t ** 4 / 2 + t ** 3 * (2 + 2 * n - a - a * n)


def _d4_B2_long(c, p):
    a, b = c
    n = p["n"]
    t = 3 - a - b
    return ((1 - b) * t ** 3 * (-2 * n) + 3 * (1 - b) * t ** 2 * (2 + 2 * n - a - a * n)
            + n * t ** 4 / 2 - t ** 3 * (2 + 2 * n - a - a * n))


def _d4_B2(c, p):
    a, b = c
    n = p["n"]
    return Q(1, 2) * (3 - a - b) ** 2 * (-a * a * n - 2 * a * a + 2 * a * b * n + 4 * a * b + 2 * a * n + 4 * a
                                          - 3 * b * b * n + 2 * b * n - 8 * b - 3 * n)


def _d5_B1(c, p):
    a, b = c
    return (a - 2) * (9 * a ** 3 + 8 * (-5 + 2 * b) + 2 * a * a * (-29 + 8 * b) + 2 * a * (53 - 26 * b + 3 * b * b)) / 4


def _d5_B2(c, p):
    a, b = c
    return (3 - a - b) ** 2 * (2 - a) * (a - 2 * b)


def _d5_BF(c, p):
    a, b = c
    return 3 * a * (3 - a - b) ** 2 * (2 - a) / 2


def _d5_SWZ(c, p):
    a, b = c
    return (2 - a) ** 2 * (34 + 3 * a * a - 28 * b + 6 * b * b + 4 * a * (-5 + 2 * b)) / (12 * (3 - a - b) ** 2 * (2 - a))


def _d5_SWZp(c, p):
    a, b = c
    num = (Q(1, 48) * (b - 1) ** 4 + Q(1, 12) * (a - 2) * (
        5 * a ** 3 + 2 * a * a * (-23 + 8 * b) + 2 * a * (71 + b * (-50 + 9 * b)) + 4 * (-37 + b * (40 + b * (-15 + 2 * b)))))
    return num / ((3 - a - b) ** 2 * (2 - a))


def _q1(c, p):
    a, b = c
    return a, b, p["m"]


def _q1_L3(c, p):
    a, b, m = _q1(c, p)
    return -4 * m * (2 - a) ** 3 + 6 * (2 - a) ** 2 * (2 * m + 1 - b)


def _q1_S1(c, p):
    a, b, m = _q1(c, p)
    return (2 - a) ** 3 * (2 - 2 * b + (2 + a) * m)


def _q1_B1(c, p):
    a, b, m = _q1(c, p)
    return (2 - a) ** 2 * (2 - 4 * a - 2 * b + 4 * a * b - 3 * a * a * m)


def _q1_SH(c, p):
    a, b, m = _q1(c, p)
    return (2 - a) ** 3 * (4 - 4 * b + (2 + 3 * a) * m) / 2


def _q1_BH(c, p):
    a, b, m = _q1(c, p)
    return (2 - a) ** 2 * (4 - 4 * b + 4 * m + 3 * a * a * m + a * (4 - 4 * b + 4 * m)) / 2


def _q1_P1(c, p):
    a, b, m = _q1(c, p)
    return (2 - a) ** 2 * (3 + 3 * b * b + 4 * (1 + a) * m + a * (4 + a) * m * m - 2 * b * (3 + 2 * (1 + a) * m))


def _q1_P2(c, p):
    a, b, m = _q1(c, p)
    return (2 - a) ** 4 * m * m / 2


def _q1_B2(c, p):
    a, b, m = _q1(c, p)
    return -(2 - a) ** 2 * (-6 + 12 * b - 6 * b * b + (4 + 4 * a + 3 * a * a) * m * m) / 2


def _q1_SW(c, p):
    a, b = c
    return (3 - b) ** 4 / 288


def _c2_S1(c, p):
    a, b, cc = c
    k = p["k"]
    r = 3 - b - cc
    return Q(1, k) * (k + r) ** 3 * (2 - a) - Q(1, k * k) * (k + r) ** 4 / 4 + Q(1, k * k) * (a * k - k + r) ** 4 / 4


def _c2_kB1(c, p):
    a, b, cc = c
    k = p["k"]
    r = 3 - b - cc
    return ((1 - a) * (k + r) ** 3 - (1 - a) * (a * k - k + r) ** 3 - (k + r) ** 3 * (2 - a)
            + Q(1, k) * (k + r) ** 4 / 4 - Q(1, k) * (a * k - k + r) ** 4 / 4)


def _c2_bound(c, p):
    a, b, cc = c
    k = p["k"]
    r = 3 - b - cc
    return (k + r) ** 3 * (Q(-3, 4) + r / (4 * k))


def _c3_BE(c, p):
    a, b = c
    return (2 - a) * (19 * a ** 3 + 8 * (-43 + 13 * b) + 2 * a * a * (-87 + 16 * b) + 2 * a * (234 - 70 * b + 3 * b * b)) / 4


def _c3_BE_expanded(c, p):
    a, b = c
    return (2 - a) * (19 * a ** 3 + 32 * a * a * b - 174 * a * a + 6 * a * b * b - 140 * a * b + 468 * a + 104 * b - 344)


def _c5(c, p):
    a, b, cc = c
    return a, b, cc, p["k"], p["n"], p["m"]


def _c5_L3(c, p):
    a, b, cc, k, n, m = _c5(c, p)
    u, w = 2 + k - b, 2 + n + k * n + m - cc
    return ((2 - a) ** 3 * (n * k * k + 2 * k * m) + 6 * (2 - a) * u * w - 3 * u * u * (2 - a) * n
            - 3 * (2 - a) ** 2 * w * k - 3 * (2 - a) ** 2 * u * m)


def _c5_S1(c, p):
    a, b, cc, k, n, m = _c5(c, p)
    u, w = 2 + k - b, 2 + n + k * n + m - cc
    return ((a - 2) ** 4 * (n * k * k + 2 * k * m) / 4 + 3 * (a - 2) ** 2 * u * w - 3 * n * (a - 2) ** 2 * u * u / 2
            + k * (a - 2) ** 3 * w + m * (a - 2) ** 3 * u)


def _c5_B1(c, p):
    a, b, cc, k, n, m = _c5(c, p)
    u, w = 2 + k - b, 2 + n + k * n + m - cc
    return ((1 - a) * (2 - a) ** 3 * (n * k * k + 2 * k * m) + 6 * (1 - a) * (2 - a) * u * w
            - 3 * n * (1 - a) * u * u * (2 - a) - 3 * k * (1 - a) * (2 - a) ** 2 * w
            - 3 * m * (1 - a) * (2 - a) ** 2 * u - (2 - a) ** 4 * (n * k * k + 2 * k * m) / 4
            - 3 * (2 - a) ** 2 * u * w + 3 * n * (2 - a) ** 2 * u * u / 2
            + k * (2 - a) ** 3 * w + m * (2 - a) ** 3 * u)


def _c9_L3(c, p):
    a, b = c
    return 3 * (2 - a) ** 2 * (2 - b) + 3 * (2 - a) * (2 - b) ** 2


def _c9_B1(c, p):
    a, b = c
    return 3 * (1 - a) * (2 - a) * (2 - b) * (4 - a - b) - (2 - a) ** 3 * (2 - b) - 3 * (2 - a) ** 2 * (2 - b) ** 2 / 2


def _c9_SW(c, p):
    a, b = c
    num = Q(1, 6) * (a - 2) * (3 * a + 2 * (b - 5)) * (b - 2) ** 2 + Q(1, 12) * (b - 2) ** 4
    return num / ((2 - a) ** 2 * (2 - b) + (2 - a) * (2 - b) ** 2)


def _c10_S1(c, p):
    a, b = c
    return (2 - a) * (17 - a ** 3 - 3 * a * a * (1 - b) - 21 * b + 3 * b * b + b ** 3 + 3 * a * (5 - b * b))


def _c10_S2(c, p):
    a, b = c
    return 2 * (2 - a) ** 3


def _c10_B2_long(c, p):
    a, b = c
    return ((1 - b) * (12 * (1 - b + a) * (2 - a) + 6 * (2 - a) ** 2 - 3 * (1 - b + a) ** 2 * (2 - a))
            - (a - 2) * (-17 + a ** 3 - 3 * a * a * (b - 1) + 21 * b - 3 * b * b - b ** 3 + 3 * a * (b * b - 5))
            - 2 * (2 - a) ** 3)


def _c10_B2(c, p):
    a, b = c
    return (2 - a) * (-a * a * (2 - a) - 2 * (2 - b) * (1 + b) ** 2 - a * (7 - 6 * b + 3 * b * b))


def _e2(c, p):
    a, b = c
    return a, b, p["n"]


def _e2_L3(c, p):
    a, b, n = _e2(c, p)
    return (3 - b) ** 3 * n + 3 * (3 - b) ** 2 * (2 - n * (1 - b) - a) - (2 - a) ** 3


def _e2_S1(c, p):
    a, b, n = _e2(c, p)
    return (1 + a - b) * (60 + b * b * (4 - 7 * n) + a * a * (6 + b * (n - 2) - 5 * n) + 11 * n + a ** 3 * n
                          + b ** 3 * n + a * (-42 + b * (20 - 6 * n) + b * b * (n - 2) + 5 * n) + b * (-32 + 11 * n)) / 2


def _e2_S2(c, p):
    # the source writes this piece with a stray symbol in place of n
    a, b, n = _e2(c, p)
    return (2 - a) ** 3 * (a * (n - 1) + 2 * (1 + n)) / 2


def _e2_B2(c, p):
    a, b, n = _e2(c, p)
    return (16 + 4 * a ** 3 - a ** 4 - 4 * a * (4 - b) * (1 - b) ** 2 - 36 * b * (2 - n) - 27 * n - 3 * b ** 4 * n
            + 4 * b ** 3 * (5 * n - 2) - 6 * b * b * (7 * n - 8)) / 2


def _f3_B2(c, p):
    a, b = c
    return (4 - 2 * a - b) ** 3 * (a / 2 - Q(3, 4) * b)


def _f3_B1(c, p):
    a, b = c
    return (4 - 2 * a - b) ** 3 * (Q(1, 2) - Q(3, 4) * a + b / 8)


def _f3_SW(c, p):
    a, b = c
    return (2 - a - b / 2) / 2


def _planes_B(i):
    # P3 with hyperplane boundary: L = (4 - s) H, S' = (4 - s)^4 / 4
    def f(c, p):
        s = sum(c, Q(0))
        return (1 - c[i]) * (4 - s) ** 3 - (4 - s) ** 4 / 4
    return f


def _f4_B1(c, p):
    a, b = c
    return (3 - a - b) ** 3 * (1 + b - 3 * a) / 2


def _f4_B2(c, p):
    a, b = c
    return (3 - a - b) ** 3 * (1 + a - 3 * b) / 2


def _f4_SW(c, p):
    a, b = c
    return (3 - a - b) / 4


def _zero(c, p):
    return Q(0)


def _product_agrees(case, c):
    """Product rule and threefold divisorial test both report instability for D != 0."""
    if not any(c):
        return True
    pr = product_rule(case.product_factors(c))
    dv = divisorial_verdict(case.pair(c))
    return pr == "unstable" and dv.unstable


def _d2_endpoint(case, c):
    """The three beta' values never vanish together (the would-be common zero needs b = 0, n <= 1)."""
    vals = [beta(l)(case, c) for l in ("D1", "D2", "E")]
    return any(v != 0 for v in vals)


def _e1_B1_derived(c, p):
    a, b = c
    return (3 * a ** 4 - 16 * a ** 3 * b + 12 * a ** 3 + 24 * a ** 2 * b ** 2 - 24 * a ** 2 * b - 48 * a * b ** 2
            + 96 * a * b - 48 * a - 8 * b ** 4 + 24 * b ** 3 + 24 * b ** 2 - 56 * b - 48) / 4


def _e1_B2_derived(c, p):
    a, b = c
    return (a ** 4 - 24 * a ** 2 * b ** 2 + 48 * a ** 2 * b - 24 * a ** 2 + 64 * a * b ** 3 - 192 * a * b ** 2
            + 192 * a * b - 64 * a - 36 * b ** 4 + 80 * b ** 3 + 72 * b ** 2 - 240 * b + 60) / 8


def _c3_BE_derived(c, p):
    a, b = c
    return -(a - 2) * (3 * a ** 3 + 8 * a ** 2 * b - 30 * a ** 2 + 6 * a * b ** 2 - 44 * a * b + 84 * a + 8 * b - 24) / 4


def _c_pts(pred=None, den=13, per_axis=7):
    return lambda case: grid(case, per_axis=per_axis, den=den, pred=pred)


E1_SIGN = "sign slip: the (3-b)^2 term of the negated integral must enter with +3, not -3"
C3_INTEGRAND = "integrand uses 3(2-a) where 3(2-a-x) belongs; the second form also drops a factor 1/4"
Q1_K = "displays assume -K = 2E + 3F for every m; adjunction gives -K = 2E + (m+2)F"


def _adder(F, erratum=""):
    def add(*a, **k):
        if erratum:
            k.setdefault("erratum", erratum)
        F.append(Fixture(*a, **k))
    return add


def fixtures() -> List[Fixture]:
    F = []
    add = _adder(F)
    # E1
    add("E1 tau(D2) = 3-b", "E1", {}, tau_of("D2"), lambda c, p: 3 - c[1])
    add("E1 eps(D2) = 1+a/2-b", "E1", {}, eps_of("D2"), lambda c, p: 1 + c[0] / 2 - c[1])
    add("E1 integral of vol(L-xD2) on [0, eps]", "E1", {},
        piece("D2", lambda c: Q(0), lambda c: 1 + c[0] / 2 - c[1]), _e1_int)
    add("E1 beta'(D2) bound, expanded form", "E1", {}, E1_bound, _e1_bound_expanded, erratum=E1_SIGN)
    add("E1 beta'(D2) bound, simplified form", "E1", {}, E1_bound, _e1_bound_simplified, erratum=E1_SIGN)
    add("E1 beta'(D2) <= bound", "E1", {}, beta("D2"), _e1_bound_simplified, kind="le", erratum=E1_SIGN)
    add("E1 bound < 0", "E1", {}, lambda case, c: _e1_bound_simplified(c, None) < 0, None, kind="true")
    add("E1 beta'(D1) < 0", "E1", {}, lambda case, c: beta("D1")(case, c) < 0, None, kind="true")
    add("E1 beta'(D1) derived form", "E1", {}, beta("D1"), _e1_B1_derived)
    add("E1 beta'(D2) derived form", "E1", {}, beta("D2"), _e1_B2_derived)
    # D2
    for n in (1, 2, 3):
        P = {"n": n}
        add(f"D2 S'(D1) n={n}", "D2", P, S_prime("D1"), _d2_S1)
        add(f"D2 beta'(D1) n={n}", "D2", P, beta("D1"), _d2_B1)
        add(f"D2 S'(D2) n={n}", "D2", P, S_prime("D2"), _d2_S2)
        add(f"D2 beta'(D2) n={n}", "D2", P, beta("D2"), _d2_B2)
        add(f"D2 S'(E) n={n}", "D2", P, S_prime("E"), _d2_SE)
        add(f"D2 beta'(E) n={n}", "D2", P, beta("E"), _d2_BE)
        add(f"D2 beta'(D1)+beta'(D2)+beta'(E) = 0 n={n}", "D2", P,
            sum_of(beta("D1"), beta("D2"), beta("E")), _zero)
        add(f"D2 no common zero of the three beta' n={n}", "D2", P, _d2_endpoint, None, kind="true")
    # D4
    for n in (1, 2, 4):
        P = {"n": n}
        add(f"D4 S'(D2) n={n}", "D4", P, S_prime("D2"), _d4_S2)
        add(f"D4 beta'(D2) long form n={n}", "D4", P, beta("D2"), _d4_B2_long)
        add(f"D4 beta'(D2) factored n={n}", "D4", P, beta("D2"), _d4_B2)
    # D5
    add("D5 beta'(D1)", "D5", {}, beta("D1"), _d5_B1)
    add("D5 beta'(D2)", "D5", {}, beta("D2"), _d5_B2)
    add("D5 beta'(F)", "D5", {}, beta("F"), _d5_BF)
    # D8 product reduction
    add("D8 k=n=0 product rule agrees with threefold test", "D8", {"k": 0, "n": 0}, _product_agrees, None,
        kind="true", points=_c_pts(den=5, per_axis=5))
    add("D1 k=n=0 product rule agrees with threefold test", "D1", {"k": 0, "n": 0}, _product_agrees, None,
        kind="true")
    # Q1
    for m in (1, 2, 3):
        P = {"m": m}
        add = _adder(F, Q1_K if m > 1 else "")
        add(f"Q1 L^3 m={m}", "Q1", P, L3, _q1_L3)
        add(f"Q1 S'(D1) m={m}", "Q1", P, S_prime("D1"), _q1_S1)
        add(f"Q1 beta'(D1) m={m}", "Q1", P, beta("D1"), _q1_B1)
        add(f"Q1 S'(H) m={m}", "Q1", P, S_prime("H"), _q1_SH)
        add(f"Q1 beta'(H) m={m}", "Q1", P, beta("H"), _q1_BH)
        add(f"Q1 vol(L-xD2) integral on [0, 1+am-b] m={m}", "Q1", P,
            piece("D2", lambda c: Q(0), lambda c, m=m: 1 + c[0] * m - c[1]), _q1_P1)
        add(f"Q1 vol(L-xD2) integral on [1+am-b, 2m+1-b] m={m}", "Q1", P,
            piece("D2", lambda c, m=m: 1 + c[0] * m - c[1], lambda c, m=m: 2 * m + 1 - c[1]), _q1_P2)
        add(f"Q1 beta'(D2) m={m}", "Q1", P, beta("D2"), _q1_B2)
    add = _adder(F)
    # C2
    for k in (1, 2, 3):
        P = {"k": k}
        pts = _c_pts(den=7, per_axis=5)
        add(f"C2 S'(D1) k={k}", "C2", P, S_prime("D1"), _c2_S1, points=pts)
        add(f"C2 k*beta'(D1) k={k}", "C2", P, lambda case, c, k=k: k * beta("D1")(case, c), _c2_kB1, points=pts)
        add(f"C2 k*beta'(D1) < bound <= 0 k={k}", "C2", P,
            lambda case, c, k=k: k * beta("D1")(case, c) < _c2_bound(c, {"k": k}) <= 0, None, kind="true",
            points=pts)
    # C3
    add("C3 beta'(E) k=-1", "C3", {"k": -1}, beta("E"), _c3_BE, erratum=C3_INTEGRAND)
    add("C3 beta'(E) k=-1, expanded form", "C3", {"k": -1}, beta("E"), _c3_BE_expanded, erratum=C3_INTEGRAND)
    add("C3 beta'(E) < 0 k=-1", "C3", {"k": -1}, lambda case, c: beta("E")(case, c) < 0, None, kind="true",
        erratum="follows from the wrong integrand; beta'(E) > 0 for a above roughly 0.3")
    add("C3 beta'(E) k=-1 derived form", "C3", {"k": -1}, beta("E"), _c3_BE_derived)
    # C5
    for P in ({"k": 1, "n": 1, "m": 0}, {"k": 2, "n": 0, "m": 1}, {"k": 0, "n": 2, "m": 0}, {"k": 1, "n": 2, "m": 1}):
        tag = ",".join(f"{x}={v}" for x, v in P.items())
        pts = _c_pts(den=7, per_axis=5)
        add(f"C5 L^3 {tag}", "C5", P, L3, _c5_L3, points=pts)
        add(f"C5 S'(D1) {tag}", "C5", P, S_prime("D1"), _c5_S1, points=pts)
        add(f"C5 beta'(D1) {tag}", "C5", P, beta("D1"), _c5_B1, points=pts)
    # C9
    add("C9 L^3", "C9", {}, L3, _c9_L3)
    add("C9 beta'(D1)", "C9", {}, beta("D1"), _c9_B1)
    # C10
    add("C10 S1 for D2 on [0, 1-b+a]", "C10", {}, piece("D2", lambda c: Q(0), lambda c: 1 - c[1] + c[0]), _c10_S1)
    add("C10 S2 for D2 on [1-b+a, 3-b]", "C10", {}, piece("D2", lambda c: 1 - c[1] + c[0], lambda c: 3 - c[1]),
        _c10_S2)
    add("C10 beta'(D2) long form", "C10", {}, beta("D2"), _c10_B2_long)
    add("C10 beta'(D2) simplified", "C10", {}, beta("D2"), _c10_B2)
    # E2
    for n in (1, 2, 3):
        P = {"n": n}
        add(f"E2 L^3 n={n}", "E2", P, L3, _e2_L3)
        add(f"E2 S1 for D2 on [0, 1+a-b] n={n}", "E2", P,
            piece("D2", lambda c: Q(0), lambda c: 1 + c[0] - c[1]), _e2_S1)
        add(f"E2 S2 for D2 on [1+a-b, 3-b] n={n}", "E2", P,
            piece("D2", lambda c: 1 + c[0] - c[1], lambda c: 3 - c[1]), _e2_S2)
        add(f"E2 beta'(D2) n={n}", "E2", P, beta("D2"), _e2_B2)
    # F family
    add("F3 beta'(D2)", "F3", {}, beta("D2"), _f3_B2)
    add("F3 beta'(D1)", "F3", {}, beta("D1"), _f3_B1)
    for i in range(3):
        add(f"F1 beta'(D{i + 1})", "F1", {}, beta(f"D{i + 1}"), _planes_B(i), points=_c_pts(den=5, per_axis=5))
    for i in range(2):
        add(f"F2 beta'(D{i + 1})", "F2", {}, beta(f"D{i + 1}"), _planes_B(i))
    add("F4 beta'(D1)", "F4", {}, beta("D1"), _f4_B1)
    add("F4 beta'(D2)", "F4", {}, beta("D2"), _f4_B2)
    # refined invariants on flags
    AZ = "az"
    add("F3 S(W;Z)", "F3", {}, sw("Z"), _f3_SW, group=AZ, points=_c_pts(den=11, per_axis=4))
    add("F4 S(W;Z)", "F4", {}, sw("Z"), _f4_SW, group=AZ, points=_c_pts(den=11, per_axis=4))
    add("Q1 S(W;Z) m=1", "Q1", {"m": 1}, sw("Z"), _q1_SW, group=AZ, points=_c_pts(den=11, per_axis=4),
        erratum="display disagrees with the exact integral and with the numeric oracle")
    add("D5 S(W;Z)", "D5", {}, sw("Z"), _d5_SWZ, group=AZ, points=_c_pts(den=11, per_axis=4))
    add("D5 S(W;Z')", "D5", {}, sw("Z'"), _d5_SWZp, group=AZ, points=_c_pts(den=11, per_axis=4),
        erratum="display disagrees with the exact integral and with the numeric oracle")
    add("C9 S(W;Z)", "C9", {}, sw("Z"), _c9_SW, group=AZ, points=_c_pts(den=11, per_axis=4),
        erratum="display disagrees with the exact integral and with the numeric oracle")
    return F


@dataclass
class FixtureResult:
    name: str
    group: str
    ok: bool
    checked: int
    first_failure: Optional[Tuple] = None
    message: str = ""


def run_fixture(fx: Fixture, case: Optional[CatalogCase] = None) -> FixtureResult:
    case = case or instantiate(fx.case_id, fx.params)
    pts = fx.points(case) if fx.points else grid(case)
    if not pts:
        return FixtureResult(fx.name, fx.group, False, 0, None, "no sample points in the ample body")
    for c in pts:
        try:
            got = fx.engine(case, c)
        except Exception as e:  # a crash is a failure of the fixture, reported with its point
            return FixtureResult(fx.name, fx.group, False, 0, (c,), f"{type(e).__name__}: {e}")
        if fx.kind == "true":
            ok, want = bool(got), True
        else:
            want = fx.formula(c, fx.params)
            ok = got == want if fx.kind == "equal" else got <= want
        if not ok:
            return FixtureResult(fx.name, fx.group, False, len(pts), (c, got, want))
    return FixtureResult(fx.name, fx.group, True, len(pts))
