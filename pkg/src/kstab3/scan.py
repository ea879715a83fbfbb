"""Grid scans over boundary coefficients, region comparison, parameter sweeps, CSV/SVG output."""
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import fmt, rat
from .az import polystable_verdict
from .catalog import LOWER, ROWS, CatalogCase, KnownRegion, instantiate
from .geom import PreconditionError
from .kstab import divisorial_verdict, product_rule

STATUSES = ("not_log_fano", "unstable", "semistable_certified", "polystable_certified", "undecided")
SEMISTABLE = ("semistable_certified", "polystable_certified")
COLORS = {
    "not_log_fano": "#ffffff",
    "unstable": "#d9534f",
    "semistable_certified": "#5bc0de",
    "polystable_certified": "#1f5fa8",
    "undecided": "#f0ad4e",
}


@dataclass
class RegionScan:
    case_id: str
    grid_step: Fraction
    points: List[Tuple[Tuple[Fraction, ...], str]] = field(default_factory=list)
    params: Dict[str, int] = field(default_factory=dict)

    def with_status(self, *statuses) -> List[Tuple[Fraction, ...]]:
        return [c for c, s in self.points if s in statuses]

    def semistable_points(self) -> List[Tuple[Fraction, ...]]:
        return self.with_status(*SEMISTABLE)

    def status_map(self) -> Dict[Tuple[Fraction, ...], str]:
        return dict(self.points)


def classify(case: CatalogCase, coeffs: Sequence) -> str:
    """is_log_fano, then divisorial test, then product rule or local bounds."""
    coeffs = tuple(rat(c) for c in coeffs)
    if not case.is_log_fano(coeffs):
        return "not_log_fano"
    pair = case.pair(coeffs)
    if divisorial_verdict(pair, stop_at_negative=True).unstable:
        return "unstable"
    if case.is_product():
        v = product_rule(case.product_factors(coeffs))
        return {"unstable": "unstable", "polystable": "polystable_certified",
                "semistable": "semistable_certified"}[v]
    if case.az_centers:
        v = polystable_verdict(pair, case.az_centers)
        return {"unstable": "unstable", "K_polystable_certified": "polystable_certified",
                "K_semistable_certified": "semistable_certified", "undecided": "undecided"}[v]
    return "undecided"


def grid_values(step: Fraction) -> List[Fraction]:
    step = rat(step)
    vals, x = [], Fraction(0)
    while x < 1:
        vals.append(x)
        x += step
    return vals


def default_step(case: CatalogCase) -> Fraction:
    return Fraction(1, 20) if case.ncoeff >= 3 else Fraction(1, 100)


def _check_step(step):
    step = rat(step)
    if not (0 < step <= Fraction(1, 4)):
        raise PreconditionError("step must lie in (0, 1/4]")
    return step


def _classify_chunk(args):
    case_id, params, pts = args
    case = instantiate(case_id, params)
    return [(c, classify(case, c)) for c in pts]


def scan(case: CatalogCase, step=None, workers: int = 1) -> RegionScan:
    step = _check_step(step if step is not None else default_step(case))
    pts = list(product(grid_values(step), repeat=case.ncoeff))
    if workers > 1 and len(pts) > 200:
        chunks = [pts[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(workers) as ex:
            res = [r for part in ex.map(_classify_chunk, [(case.id, case.params, ch) for ch in chunks])
                   for r in part]
    else:
        res = [(c, classify(case, c)) for c in pts]
    res.sort()
    return RegionScan(case.id, step, res, dict(case.params))


@dataclass
class Discrepancy:
    coeffs: Tuple[Fraction, ...]
    scanned: str
    expected_semistable: bool


def compare_region(scanres: RegionScan, known: Optional[KnownRegion]) -> List[Discrepancy]:
    """Grid points where scan semistability and the closed-form region disagree (ample points only)."""
    if known is None:
        raise PreconditionError(f"case {scanres.case_id} has no known region")
    out = []
    for c, s in scanres.points:
        if s == "not_log_fano":
            continue
        want = known.contains(c)
        if want != (s in SEMISTABLE):
            out.append(Discrepancy(c, s, want))
    return out


def reducible(coeffs) -> bool:
    return sum(1 for c in coeffs if c != 0) >= 2


def param_grid(case_id: str, cap: int) -> List[Dict[str, int]]:
    _, defaults, _, _ = ROWS[case_id]
    keys = sorted(defaults)
    lows = LOWER.get(case_id, {})
    ranges = [range(lows.get(k, 0), cap + 1) for k in keys]
    out = []
    for vals in product(*ranges):
        p = dict(zip(keys, vals))
        if case_id == "C6" and (p["k"], p["n"]) == (1, 1):
            continue
        out.append(p)
    return out


@dataclass
class SweepResult:
    case_id: str
    checked: int = 0
    failures: List[Tuple[Dict[str, int], Tuple[Fraction, ...], str]] = field(default_factory=list)


class SingleSegmentBeta:
    """beta' along one test divisor when L - xE stays nef up to tau; None otherwise.

    On such rays vol(L - xE) = (L - xE)^3, so
    beta' = A L^3 - (L^3 t - 3/2 L^2E t^2 + LE^2 t^3 - E^3 t^4 / 4) with t = tau.
    Only for cases with a simplicial effective cone.
    """

    def __init__(self, case: CatalogCase, label: str, cl):
        X = case.threefold
        self.X, self.E, self.label = X, cl, label
        labels = [lab for lab, _ in case.boundary]
        self.idx = labels.index(label) if label in labels else None
        self.minusK = [-k for k in X.canonical.coords]
        self.D = [b.coords for _, b in case.boundary]
        ec = X.eff_coords(cl)
        self.inv = X._eff_inverse
        self.pos = [(self.inv[j], ec[j]) for j in range(X.rho) if ec[j] > 0]
        self.curves = [(C, C.dot(cl)) for _, C in X.mori_gens if C.dot(cl) > 0]
        self.e3 = X.cube(cl)

    def __call__(self, coeffs) -> Optional[Fraction]:
        r = self.X.rho
        L = list(self.minusK)
        for c, d in zip(coeffs, self.D):
            if c:
                for i in range(r):
                    L[i] -= c * d[i]
        t = min(sum(row[i] * L[i] for i in range(r)) / e for row, e in self.pos)
        for C, ce in self.curves:
            if C.dot(L) / ce < t:
                return None
        from .geom import NumericalClass
        Lc = NumericalClass(L)
        tp = self.X.triple_product
        l3, l2e, le2 = tp(Lc, Lc, Lc), tp(Lc, Lc, self.E), tp(Lc, self.E, self.E)
        S = l3 * t - Fraction(3, 2) * l2e * t * t + le2 * t ** 3 - self.e3 * t ** 4 / 4
        A = 1 - coeffs[self.idx] if self.idx is not None else 1
        return A * l3 - S


def ample_reducible_grid(case: CatalogCase, step) -> List[Tuple[Fraction, ...]]:
    """Grid points in the ample body with at least two nonzero coefficients (integer arithmetic)."""
    vals = grid_values(step)
    N = lcm(*(v.denominator for v in vals))
    iv = [v.numerator * (N // v.denominator) for v in vals]
    icons = []
    for c0, lin in case.ample_constraints():
        d = lcm(c0.denominator, *(l.denominator for l in lin))
        icons.append((c0.numerator * (d // c0.denominator) * N, [l.numerator * (d // l.denominator) for l in lin]))
    out = []
    for idx in product(range(len(vals)), repeat=case.ncoeff):
        xs = [iv[i] for i in idx]
        if sum(1 for x in xs if x) < 2:
            continue
        if all(c0 + sum(l * x for l, x in zip(lin, xs)) > 0 for c0, lin in icons):
            out.append(tuple(vals[i] for i in idx))
    return out


def _sweep_one(args):
    case_id, params, step = args
    case = instantiate(case_id, params)
    fast = []
    if case.threefold.eff_simplicial:
        fast = [SingleSegmentBeta(case, lab, cl) for lab, cl in case.pair([0] * case.ncoeff).divisors()]
    checked, fails, order = 0, [], []
    for c in ample_reducible_grid(case, step):
        checked += 1
        hit = None
        for f in fast:
            v = f(c)
            if v is not None and v < 0:
                hit = f
                break
        if hit is not None:
            fast.remove(hit)
            fast.insert(0, hit)  # try the last destabilizer first
            continue
        dv = divisorial_verdict(case.pair(c), stop_at_negative=True, order=order)
        if dv.unstable:
            order = [dv.reports[-1].divisor_label]
        else:
            fails.append((params, c, "not divisorially unstable"))
    return checked, fails


def sweep(case_id: str, cap: int = 10, step=Fraction(1, 20), workers: int = 1) -> SweepResult:
    """Divisorial instability at every ample grid point with reducible boundary, all params <= cap."""
    step = _check_step(step)
    jobs = [(case_id, p, step) for p in param_grid(case_id, cap)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_sweep_one, jobs))
    else:
        results = [_sweep_one(j) for j in jobs]
    res = SweepResult(case_id)
    for n, f in results:
        res.checked += n
        res.failures.extend(f)
    return res


# emitters

def to_csv(scanres: RegionScan, names: Sequence[str]) -> str:
    buf = io.StringIO()
    buf.write(",".join(list(names) + ["status"]) + "\n")
    for c, s in scanres.points:
        buf.write(",".join([fmt(x) for x in c] + [s]) + "\n")
    return buf.getvalue()


def to_svg(scanres: RegionScan, names: Sequence[str], size: int = 400, known: Optional[KnownRegion] = None) -> str:
    """Square region map of the first two coefficients; third coefficient (if any) fixed at 0."""
    step = float(scanres.grid_step)
    pad = 40
    cell = size * step
    W = size + 2 * pad
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{W}" '
             f'viewBox="0 0 {W} {W}">',
             f'<rect x="{pad}" y="{pad}" width="{size}" height="{size}" fill="none" stroke="#000"/>']
    for c, s in scanres.points:
        if any(x != 0 for x in c[2:]):
            continue
        x = pad + float(c[0]) * size
        y = pad + size - (float(c[1]) + step) * size
        parts.append(f'<rect x="{x:.3f}" y="{y:.3f}" width="{cell:.3f}" height="{cell:.3f}" '
                     f'fill="{COLORS[s]}"><title>{",".join(fmt(v) for v in c)} {s}</title></rect>')
    if known is not None:
        # outline of the known region sampled on a fine grid
        n = 200
        for i in range(n):
            for j in range(n):
                a, b = Fraction(2 * i + 1, 2 * n), Fraction(2 * j + 1, 2 * n)
                inside = known.contains((a, b) + (Fraction(0),) * (len(names) - 2))
                right = i + 1 < n and known.contains((a + Fraction(1, n), b) + (Fraction(0),) * (len(names) - 2))
                up = j + 1 < n and known.contains((a, b + Fraction(1, n)) + (Fraction(0),) * (len(names) - 2))
                if inside and (not right or not up):
                    px, py = pad + float(a) * size, pad + size - float(b) * size
                    parts.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="0.6" fill="#000"/>')
    # axes labels and ticks
    for t in range(5):
        v = t / 4
        parts.append(f'<text x="{pad + v * size:.1f}" y="{pad + size + 16}" font-size="10" '
                     f'text-anchor="middle">{v:g}</text>')
        parts.append(f'<text x="{pad - 6}" y="{pad + size - v * size + 3:.1f}" font-size="10" '
                     f'text-anchor="end">{v:g}</text>')
    parts.append(f'<text x="{pad + size / 2}" y="{W - 6}" font-size="12" text-anchor="middle">{names[0]}</text>')
    parts.append(f'<text x="12" y="{pad + size / 2}" font-size="12" text-anchor="middle">{names[1] if len(names) > 1 else ""}</text>')
    parts.append(f'<text x="{pad}" y="{pad - 12}" font-size="12">{scanres.case_id}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
