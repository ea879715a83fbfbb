"""Log discrepancies, S' and beta' along test divisors, divisorial verdicts, product pairs."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .arith import Poly, rat
from .geom import LogPair, NumericalClass, PreconditionError, is_log_fano
from .zariski import RayDecomposition, SmallContractionError, decompose_ray


@dataclass(frozen=True)
class BetaReport:
    divisor_label: str
    A: Fraction
    tau: Fraction
    eps: Fraction
    S_prime: Fraction
    L_cubed: Fraction
    beta_prime: Fraction
    verdict: str

    def as_dict(self):
        return {k: getattr(self, k) for k in
                ("divisor_label", "A", "tau", "eps", "S_prime", "L_cubed", "beta_prime", "verdict")}


def _sign_word(x: Fraction) -> str:
    return "positive" if x > 0 else "negative" if x < 0 else "zero"


@dataclass(frozen=True)
class DivisorialVerdict:
    reports: Tuple[BetaReport, ...]
    overall: str
    skipped: Tuple[str, ...] = ()  # test divisors whose ray crosses a small contraction

    @property
    def unstable(self) -> bool:
        return self.overall == "divisorially_unstable"


def log_discrepancy(pair: LogPair, divisor_label: str) -> Fraction:
    for (lab, _), c in zip(pair.boundary, pair.coefficients):
        if lab == divisor_label:
            return 1 - c
    pair.divisor(divisor_label)  # raises on unknown labels
    return Fraction(1)


def beta_prime(pair: LogPair, divisor: Optional[NumericalClass] = None, label: str = "",
               ray: Optional[RayDecomposition] = None, _checked: bool = False) -> BetaReport:
    """beta' = A * L^3 - integral of vol(L - xE) over [0, tau]."""
    if not _checked and not is_log_fano(pair):
        raise PreconditionError("outside body of ample angles")
    if divisor is None:
        divisor = pair.divisor(label)
    X = pair.variety
    L = pair.L
    rd = ray or decompose_ray(X, L, divisor)
    A = log_discrepancy(pair, label) if label else Fraction(1)
    S = rd.integral()
    L3 = X.cube(L)
    bp = A * L3 - S
    return BetaReport(label, A, rd.tau, rd.eps, S, L3, bp, _sign_word(bp))


def divisorial_verdict(pair: LogPair, stop_at_negative: bool = False,
                       order: Optional[Sequence[str]] = None) -> DivisorialVerdict:
    """Evaluate beta' over the boundary components and the pair's extra test divisors.

    `order` lists labels to try first; it only matters together with stop_at_negative.
    """
    if not is_log_fano(pair):
        raise PreconditionError("outside body of ample angles")
    divs = pair.divisors()
    if order:
        rank_of = {lab: i for i, lab in enumerate(order)}
        divs = sorted(divs, key=lambda d: rank_of.get(d[0], len(rank_of)))
    reps, skipped = [], []
    for lab, cl in divs:
        try:
            r = beta_prime(pair, cl, lab, _checked=True)
        except SmallContractionError:
            skipped.append(lab)
            continue
        reps.append(r)
        if stop_at_negative and r.beta_prime < 0:
            break
    if any(r.beta_prime < 0 for r in reps):
        overall = "divisorially_unstable"
    elif skipped:
        overall = "divisorially_incomplete"
    elif all(r.beta_prime > 0 for r in reps):
        overall = "divisorially_stable"
    else:
        overall = "divisorially_semistable"
    return DivisorialVerdict(tuple(reps), overall, tuple(skipped))


# low-dimensional pairs for the product rule

SURFACE_BOUNDARIES = {
    # kind: list of boundary curve classes; P2 classes are degrees, P1xP1 bidegrees, P1 degrees
    ("P2", 1): [(2,)],
    ("P2", 2): [(1,), (1,)],
    ("P1xP1", 1): [(1, 1)],
    ("P1", 1): [(1,)],
}
ANTICANONICAL = {"P2": (3,), "P1xP1": (2, 2), "P1": (2,)}


def _low_dim_volume(kind: str, cls) -> Poly:
    """Volume polynomial in x of a class whose coordinates are affine Polys in x."""
    if kind == "P2":
        (d,) = cls
        return d * d
    if kind == "P1xP1":
        p, q = cls
        return p * q * 2
    if kind == "P1":
        (d,) = cls
        return d
    raise PreconditionError(f"unsupported surface {kind}")


def beta_prime_surface(kind: str, coeffs, divisor) -> Fraction:
    """beta' of a boundary component (index or label) or of an explicit class on a low-dim pair.

    Boundaries: P2 with one coefficient is a conic, with two coefficients two lines;
    P1xP1 carries a (1,1) curve; P1 carries a point.
    """
    if not isinstance(coeffs, (list, tuple)):
        coeffs = [coeffs]
    coeffs = [rat(c) for c in coeffs]
    key = (kind, len(coeffs))
    if key not in SURFACE_BOUNDARIES:
        raise PreconditionError(f"unsupported low-dimensional pair {key}")
    bnd = SURFACE_BOUNDARIES[key]
    L = list(ANTICANONICAL[kind])
    for cl, c in zip(bnd, coeffs):
        L = [l - c * x for l, x in zip(L, cl)]
    if isinstance(divisor, str):
        idx = {"C": 0, "P": 0, "L1": 0, "L2": 1, "D1": 0, "D2": 1}.get(divisor)
        if idx is None or idx >= len(bnd):
            raise PreconditionError(f"unknown boundary divisor {divisor!r}")
        divisor = idx
    if isinstance(divisor, int):
        E, A = bnd[divisor], 1 - coeffs[divisor]
    else:
        E, A = tuple(divisor), Fraction(1)
    if any(l <= 0 for l in L):
        raise PreconditionError("outside body of ample angles")
    # nef = pseff on these surfaces, so vol(L - xE) = (L - xE)^dim up to tau
    tau = min(Fraction(l) / e for l, e in zip(L, E) if e > 0)
    vol = _low_dim_volume(kind, [Poly([l, -e]) for l, e in zip(L, E)])
    return A * vol(0) - vol.integrate(0, tau)


@dataclass(frozen=True)
class Factor:
    kind: str
    coeffs: Tuple[Fraction, ...]


def factor_verdict(f: Factor) -> str:
    """K-stability of a low-dimensional toric or conic pair from beta' of its boundary curves."""
    active = [i for i, c in enumerate(f.coeffs) if c != 0]
    if not active:
        return "polystable"  # Kahler-Einstein base without boundary
    vals = [beta_prime_surface(f.kind, list(f.coeffs), i) for i in range(len(f.coeffs))]
    if any(v < 0 for v in vals):
        return "unstable"
    if all(v > 0 for v in vals):
        return "polystable"
    return "semistable"


def product_rule(factors: Optional[Sequence[Factor]]) -> str:
    """A product pair is K-semistable (polystable) iff every factor is."""
    if not factors:
        raise PreconditionError("not a product-type case")
    vs = [factor_verdict(f) for f in factors]
    if "unstable" in vs:
        return "unstable"
    if all(v == "polystable" for v in vs):
        return "polystable"
    return "semistable"
