from fractions import Fraction as Q
from itertools import product

import pytest

from kstab3.catalog import instantiate, load_all
from kstab3.geom import PreconditionError
from kstab3.scan import (SEMISTABLE, ample_reducible_grid, classify, compare_region, default_step, grid_values,
                         reducible, scan, sweep, to_csv, to_svg)

CASES = {c.id: c for c in load_all()}


def test_grid_and_steps():
    assert grid_values(Q(1, 4)) == [0, Q(1, 4), Q(1, 2), Q(3, 4)]
    assert default_step(CASES["F3"]) == Q(1, 100)
    assert default_step(CASES["C5"]) == Q(1, 20)
    for bad in (0, Q(1, 3), -1):
        with pytest.raises(PreconditionError):
            scan(CASES["F3"], bad)


def test_f3_coarse_csv():
    case = CASES["F3"]
    res = scan(case, Q(1, 4))
    text = to_csv(res, case.coeff_names)
    lines = text.splitlines()
    assert lines[0] == "a,b,status"
    assert "3/4,1/2,semistable_certified" in lines
    assert len(lines) == 17
    assert to_csv(scan(case, Q(1, 4)), case.coeff_names) == text  # byte-stable


def test_determinism():
    for cid in ("F4", "D7"):
        assert scan(CASES[cid], Q(1, 10)).points == scan(CASES[cid], Q(1, 10)).points


@pytest.mark.parametrize("cid", ["F3", "F4", "Q1", "C9", "D7", "F2"])
def test_refinement_consistency(cid):
    case = CASES[cid]
    coarse = scan(case, Q(1, 10)).status_map()
    fine = scan(case, Q(1, 20)).status_map()
    for c, s in coarse.items():
        assert fine[c] == s, c


def test_f1_all_nonzero_unstable():
    case = CASES["F1"]
    res = scan(case, Q(1, 4))
    for c, s in res.points:
        if any(c) and s != "not_log_fano":
            assert s == "unstable", c


def test_f3_matches_region():
    case = CASES["F3"]
    assert compare_region(scan(case, Q(1, 20)), case.known_region) == []
    with pytest.raises(PreconditionError):
        compare_region(scan(CASES["E1"], Q(1, 4)), CASES["E1"].known_region)


@pytest.mark.parametrize("cid", sorted(CASES))
def test_near_boundary_instability(cid):
    case = CASES[cid]
    step = Q(1, 10)
    vals = grid_values(step)
    for c in product(vals, repeat=case.ncoeff):
        if max(c) >= 1 - step and case.is_log_fano(c):
            assert classify(case, c) == "unstable", c


def test_svg():
    case = CASES["F3"]
    svg = to_svg(scan(case, Q(1, 4)), case.coeff_names, known=case.known_region)
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg.count("<rect") == 17  # frame plus one per cell
    empty = to_svg(scan(CASES["F1"], Q(1, 4)), CASES["F1"].coeff_names)
    assert "<text" in empty and "<rect" in empty


def test_reducible_grid():
    case = CASES["C5"]
    pts = ample_reducible_grid(case, Q(1, 5))
    want = [c for c in product(grid_values(Q(1, 5)), repeat=3) if reducible(c) and case.is_log_fano(c)]
    assert pts == want


def test_small_sweep():
    res = sweep("D2", cap=2, step=Q(1, 10))
    assert res.checked > 0 and res.failures == []
