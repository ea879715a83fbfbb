"""Command-line front end: kstab list | beta | region | az | scan | verify."""
import argparse
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Dict, List, Optional, Sequence

from .arith import fmt
from .az import S_W, delta_Z_bound, polystable_verdict
from .catalog import ROWS, CatalogCase, instantiate, load_all
from .geom import ConfigurationError, PreconditionError, Threefold
from .kstab import beta_prime, beta_prime_surface, divisorial_verdict
from .scan import compare_region, scan, sweep, to_csv, to_svg

EXIT_OK, EXIT_PRECONDITION, EXIT_IO, EXIT_VERIFY = 0, 1, 2, 3

SWEEP_FAMILIES = ("E1", "C2", "C3", "C4", "C5", "C6", "C10", "D1", "D2", "D3", "D4", "D6", "D7", "D8", "E2")


def parse_coeff(text: str) -> Fraction:
    """Exact rational in [0, 1) written as p/q or an integer."""
    t = text.strip()
    parts = t.split("/")
    if len(parts) > 2 or not all(p.lstrip("-").isdigit() for p in parts):
        raise PreconditionError(f"coefficient {text!r} is not of the form p/q")
    x = Fraction(t)
    if not (0 <= x < 1):
        raise PreconditionError(f"coefficient {text} must lie in [0, 1)")
    return x


def parse_step(text: str) -> Fraction:
    t = text.strip()
    parts = t.split("/")
    if len(parts) > 2 or not all(p.isdigit() for p in parts) or Fraction(t) == 0:
        raise PreconditionError(f"step {text!r} is not a positive rational p/q")
    return Fraction(t)


@dataclass
class RunConfig:
    subcommand: str
    case_id: Optional[str] = None
    params: Dict[str, int] = field(default_factory=dict)
    coeffs: Optional[List[Fraction]] = None
    divisor: Optional[str] = None
    center: Optional[str] = None
    step: Optional[Fraction] = None
    out: Optional[str] = None
    svg: Optional[str] = None
    cap: int = 10
    workers: int = 1
    tamper: Optional[str] = None
    cap_given: bool = False

    @classmethod
    def from_args(cls, ns) -> "RunConfig":
        params = {k: getattr(ns, k) for k in ("k", "n", "m") if getattr(ns, k, None) is not None}
        given = [getattr(ns, k, None) for k in ("a", "b", "c")]
        coeffs = None
        if any(g is not None for g in given):
            while given and given[-1] is None:
                given.pop()
            if any(g is None for g in given):
                raise PreconditionError("coefficients must be given in order --a, --b, --c")
            coeffs = [parse_coeff(g) for g in given]
        step = parse_step(ns.step) if getattr(ns, "step", None) else None
        cap = getattr(ns, "cap", None)
        if cap is not None and cap < 0:
            raise PreconditionError("--cap must be >= 0")
        if getattr(ns, "workers", 1) < 1:
            raise PreconditionError("--workers must be >= 1")
        return cls(ns.cmd, getattr(ns, "case", None), params, coeffs, getattr(ns, "divisor", None),
                   getattr(ns, "center", None), step, getattr(ns, "out", None), getattr(ns, "svg", None),
                   10 if cap is None else cap, getattr(ns, "workers", 1), getattr(ns, "tamper", None),
                   cap_given=cap is not None)


def _case(cfg: RunConfig) -> CatalogCase:
    if not cfg.case_id:
        raise PreconditionError("--case is required")
    return instantiate(cfg.case_id, cfg.params)


def _coeffs(cfg: RunConfig, case: CatalogCase) -> List[Fraction]:
    c = cfg.coeffs or []
    if len(c) != case.ncoeff:
        names = ", ".join("--" + n for n in case.coeff_names)
        raise PreconditionError(f"case {case.id} needs {case.ncoeff} coefficients ({names})")
    return c


def _write(path: Optional[str], text: str, out) -> None:
    if path is None or path == "-":
        out.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as e:
        raise IOError(f"cannot write {path}: {e.strerror}") from None


# list

def list_rows() -> List[List[str]]:
    rows = []
    for case in load_all():
        _, _, bnd, ptext = ROWS[case.id]
        params = ptext or "-"
        rows.append([case.id, case.variety_text, params, bnd, fmt(case.expected_nef_value), case.semistable_column])
    return rows


def cmd_list(cfg: RunConfig, out=sys.stdout) -> int:
    head = ["case", "variety", "params", "boundary", "eps", "K-semistable"]
    rows = list_rows()
    widths = [max(len(r[i]) for r in rows + [head]) for i in range(len(head))]
    for r in [head] + rows:
        out.write("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip() + "\n")
    return EXIT_OK


# beta

def cmd_beta(cfg: RunConfig, out=sys.stdout) -> int:
    case = _case(cfg)
    pair = case.pair(_coeffs(cfg, case))
    if cfg.divisor:
        reps, skipped, overall = [beta_prime(pair, label=cfg.divisor)], (), None
    else:
        dv = divisorial_verdict(pair)
        reps, skipped, overall = dv.reports, dv.skipped, dv.overall
    for r in reps:
        out.write(f"{case.id} {r.divisor_label}: A = {fmt(r.A)}  tau = {fmt(r.tau)}  eps = {fmt(r.eps)}  "
                  f"S' = {fmt(r.S_prime)}  L^3 = {fmt(r.L_cubed)}  beta' = {fmt(r.beta_prime)}  ({r.verdict})\n")
    for lab in skipped:
        out.write(f"{case.id} {lab}: skipped, the ray crosses a small contraction\n")
    if overall:
        out.write(f"verdict: {overall}\n")
    return EXIT_OK


# region and scan

def cmd_region(cfg: RunConfig, out=sys.stdout) -> int:
    case = _case(cfg)
    res = scan(case, cfg.step, workers=cfg.workers)
    _write(cfg.out, to_csv(res, case.coeff_names), out)
    if cfg.svg:
        _write(cfg.svg, to_svg(res, case.coeff_names, known=case.known_region), out)
    return EXIT_OK


def cmd_scan(cfg: RunConfig, out=sys.stdout) -> int:
    """Status counts and disagreements with the known region; with --cap, the instability sweep."""
    if cfg.cap_given:
        ids = [cfg.case_id] if cfg.case_id else list(SWEEP_FAMILIES)
        bad = 0
        for cid in ids:
            t = time.time()
            res = sweep(cid, cfg.cap, cfg.step or Fraction(1, 20), workers=cfg.workers)
            bad += len(res.failures)
            out.write(f"sweep {cid}: {res.checked} points, {len(res.failures)} not unstable ({time.time() - t:.1f}s)\n")
            for p, c, why in res.failures[:5]:
                out.write(f"  {p} ({', '.join(fmt(x) for x in c)}): {why}\n")
        return EXIT_OK if bad == 0 else EXIT_VERIFY
    case = _case(cfg)
    res = scan(case, cfg.step, workers=cfg.workers)
    counts = {}
    for _, s in res.points:
        counts[s] = counts.get(s, 0) + 1
    out.write(f"{case.id} step {fmt(res.grid_step)}: " +
              ", ".join(f"{s} {n}" for s, n in sorted(counts.items())) + "\n")
    if case.known_region is not None:
        d = compare_region(res, case.known_region)
        out.write(f"known region: {case.known_region.description}; {len(d)} discrepant points\n")
        for x in d[:10]:
            out.write(f"  ({', '.join(fmt(v) for v in x.coeffs)}) scanned {x.scanned}, "
                      f"expected {'semistable' if x.expected_semistable else 'not semistable'}\n")
        return EXIT_OK if not d else EXIT_VERIFY
    return EXIT_OK


# az

def cmd_az(cfg: RunConfig, out=sys.stdout) -> int:
    case = _case(cfg)
    if not case.az_centers:
        raise PreconditionError(f"case {case.id} has no flag data for local bounds")
    pair = case.pair(_coeffs(cfg, case))
    centers = [c for c in case.az_centers if cfg.center in (None, c.label)]
    if not centers:
        raise PreconditionError(f"case {case.id} has no center {cfg.center!r}")
    for cen in centers:
        out.write(f"{case.id} {cen.label}: S(W;Z) = {fmt(S_W(pair, cen))}  "
                  f"delta_Z >= {fmt(delta_Z_bound(pair, cen))}\n")
    out.write(f"verdict: {polystable_verdict(pair, case.az_centers)}\n")
    return EXIT_OK


# verify

def tampered_case(spec: str) -> CatalogCase:
    """CASE:LAB,LAB,LAB=VALUE replaces one triple intersection number, e.g. E1:D2,D2,D2=-5."""
    try:
        head, value = spec.split("=")
        cid, idx = head.split(":")
        labs = idx.split(",")
        value = Fraction(value)
    except ValueError:
        raise PreconditionError(f"--tamper {spec!r} is not CASE:LAB,LAB,LAB=VALUE") from None
    case = instantiate(cid)
    X = case.threefold
    if len(labs) != 3 or any(l not in X.basis_labels for l in labs):
        raise PreconditionError(f"--tamper needs three labels from {X.basis_labels}")
    idx = [X.basis_labels.index(l) for l in labs]
    triple = {}
    r = X.rho
    for i in range(r):
        for j in range(r):
            for k in range(r):
                if X.T[i][j][k]:
                    triple[(i, j, k)] = X.T[i][j][k]
    for p in set(permutations(idx)):
        triple[p] = value
    Y = Threefold(X.basis_labels, triple, X.canonical, X.nef_gens, X.eff_gens, X.mori_gens,
                  eff_eq_nef=X.eff_eq_nef, name=X.name + " (tampered)")
    case.threefold = Y
    return case


def _low_dim_checks() -> List[tuple]:
    out = []
    for kind, a in (("P2", Fraction(3, 4)), ("P1xP1", Fraction(1, 2))):
        v = beta_prime_surface(kind, [a], 0)
        out.append((f"surface beta' vanishes at a = {fmt(a)} on {kind}", v == 0, fmt(v)))
    for b in (Fraction(0), Fraction(1, 3), Fraction(5, 7)):
        v = beta_prime_surface("P1", [b], 0)
        out.append((f"P1 beta' = -b(2-b)/2 at b = {fmt(b)}", v == -b * (2 - b) / 2, fmt(v)))
    return out


def cmd_verify(cfg: RunConfig, out=sys.stdout) -> int:
    from .fixtures import fixtures, run_fixture
    from .oracle import S_W_oracle, S_prime_oracle, rel_err

    failed: List[str] = []
    tampered = tampered_case(cfg.tamper) if cfg.tamper else None

    def report(ok: bool, name: str, detail: str = "", erratum: str = "") -> None:
        if erratum:
            tag = "ERRATUM" if not ok else "FIXED?"
        else:
            tag = "PASS" if ok else "FAIL"
        if erratum and ok:
            failed.append(name + " (expected to disagree with its display)")
        elif not ok and not erratum:
            failed.append(name)
        out.write(f"{tag:8} {name}{(': ' + detail) if detail else ''}\n")

    fxs = fixtures()
    if tampered is not None:
        fxs = [f for f in fxs if f.case_id == tampered.id and f.params in ({}, dict(tampered.params))]
    for fx in fxs:
        r = run_fixture(fx, tampered)
        detail = ""
        if r.first_failure:
            pt = r.first_failure[0]
            detail = f"at ({', '.join(fmt(x) for x in pt)})"
            if len(r.first_failure) == 3:
                detail += f" engine {r.first_failure[1]} vs closed form {r.first_failure[2]}"
        if r.message:
            detail += (" " if detail else "") + r.message
        report(r.ok, f"fixture {fx.name}", detail if not r.ok else "", fx.erratum)
    if tampered is None:
        for name, ok, v in _low_dim_checks():
            report(ok, name, "" if ok else f"got {v}")
        worst = 0.0
        for case in load_all():
            pts = [p for p in ((Fraction(1, 7),) * case.ncoeff, (Fraction(1, 3), Fraction(1, 5), Fraction(1, 9))[:case.ncoeff])
                   if case.is_log_fano(p)]
            for p in pts:
                pair = case.pair(p)
                for lab, _ in pair.divisors():
                    e = rel_err(float(beta_prime(pair, label=lab).S_prime), S_prime_oracle(case, p, lab))
                    worst = max(worst, e)
                    if e > 1e-5:
                        report(False, f"oracle S' {case.id} {lab}", f"relative error {e:.2e}")
                for cen in case.az_centers:
                    e = rel_err(float(S_W(pair, cen)), S_W_oracle(case, p, cen.label))
                    worst = max(worst, e)
                    if e > 1e-5:
                        report(False, f"oracle S(W) {case.id} {cen.label}", f"relative error {e:.2e}")
        report(worst <= 1e-5, "oracle agreement on every test divisor and center", f"worst relative error {worst:.1e}")
        for cid in SWEEP_FAMILIES:
            t = time.time()
            res = sweep(cid, cfg.cap, Fraction(1, 20), workers=cfg.workers)
            detail = f"cap {cfg.cap}, {res.checked} points, {time.time() - t:.1f}s"
            if res.failures:
                p, c, why = res.failures[0]
                detail += f"; first at {p} ({', '.join(fmt(x) for x in c)}): {why}"
            report(not res.failures, f"sweep {cid}", detail)
    out.write(f"{len(failed)} unexpected failure(s)\n")
    for name in failed:
        out.write(f"  {name}\n")
    return EXIT_OK if not failed else EXIT_VERIFY


# entry point

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kstab", description="Exact K-stability tests for log Fano threefold pairs.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, coeffs=True):
        p.add_argument("--case", help="catalog case id, e.g. F3")
        for k in ("k", "n", "m"):
            p.add_argument(f"--{k}", type=int, help=f"family parameter {k}")
        if coeffs:
            for c in ("a", "b", "c"):
                p.add_argument(f"--{c}", help=f"boundary coefficient {c} as p/q in [0, 1)")

    sub.add_parser("list", help="table of catalog cases")
    p = sub.add_parser("beta", help="beta' along test divisors")
    common(p)
    p.add_argument("--divisor", help="test divisor label; all when omitted")
    p = sub.add_parser("region", help="status grid as CSV and optional SVG")
    common(p, coeffs=False)
    p.add_argument("--step", help="grid step p/q in (0, 1/4]")
    p.add_argument("--out", help="CSV path (stdout when omitted)")
    p.add_argument("--svg", help="SVG path")
    p.add_argument("--workers", type=int, default=1)
    p = sub.add_parser("az", help="local delta bounds on flags")
    common(p)
    p.add_argument("--center", help="center label; all when omitted")
    p = sub.add_parser("scan", help="status counts against the known region, or instability sweeps with --cap")
    common(p, coeffs=False)
    p.add_argument("--step", help="grid step p/q in (0, 1/4]")
    p.add_argument("--cap", type=int, help="sweep all family parameters up to this value")
    p.add_argument("--workers", type=int, default=1)
    p = sub.add_parser("verify", help="fixtures, oracles, low-dimensional checks and sweeps")
    p.add_argument("--cap", type=int, default=10, help="parameter cap for the sweeps")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--tamper", help="negative control: CASE:LAB,LAB,LAB=VALUE, e.g. E1:D2,D2,D2=-5")
    return ap


COMMANDS = {"list": cmd_list, "beta": cmd_beta, "region": cmd_region, "az": cmd_az,
            "scan": cmd_scan, "verify": cmd_verify}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ns = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_args(ns)
        return COMMANDS[cfg.subcommand](cfg, out)
    except (PreconditionError, ConfigurationError) as e:
        err.write(f"kstab: error: {e}\n")
        return EXIT_PRECONDITION
    except IOError as e:
        err.write(f"kstab: error: {e}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
