from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from kstab3.catalog import instantiate, load_all
from kstab3.geom import PreconditionError
from kstab3.kstab import (Factor, beta_prime, beta_prime_surface, divisorial_verdict, log_discrepancy,
                          product_rule)
from kstab3.scan import SingleSegmentBeta
from kstab3.zariski import SmallContractionError

CASES = {c.id: c for c in load_all()}
small = st.fractions(min_value=0, max_value=Q(19, 20), max_denominator=20)


def test_log_discrepancy():
    assert log_discrepancy(CASES["E1"].pair((0, Q(1, 3))), "D2") == Q(2, 3)
    assert log_discrepancy(CASES["F3"].pair((Q(1, 4), Q(1, 4))), "H") == 1
    assert log_discrepancy(CASES["D5"].pair((Q(1, 2), 0)), "D1") == Q(1, 2)
    with pytest.raises(PreconditionError):
        log_discrepancy(CASES["D5"].pair((0, 0)), "nope")


def test_beta_outside_ample_body():
    with pytest.raises(PreconditionError):
        beta_prime(instantiate("D4", n=2).pair((Q(1, 2), 0)), label="D1")


def test_f4_origin_all_positive():
    v = divisorial_verdict(CASES["F4"].pair((0, 0)))
    assert v.overall == "divisorially_stable"
    assert {r.divisor_label: r.beta_prime for r in v.reports}["D1"] == Q(27, 2)


@given(small, small)
def test_f2_unstable_off_origin(a, b):
    case = CASES["F2"]
    if (a, b) == (0, 0) or not case.is_log_fano((a, b)):
        return
    assert divisorial_verdict(case.pair((a, b))).unstable


@given(small, small)
def test_e1_always_unstable(a, b):
    assert divisorial_verdict(CASES["E1"].pair((a, b))).unstable


def test_surface_thresholds():
    assert beta_prime_surface("P2", [Q(3, 4)], 0) == 0
    assert beta_prime_surface("P1xP1", [Q(1, 2)], 0) == 0
    assert beta_prime_surface("P2", [Q(1, 2)], 0) > 0
    assert beta_prime_surface("P2", [Q(4, 5)], 0) < 0
    with pytest.raises(PreconditionError):
        beta_prime_surface("F1", [Q(1, 2)], 0)


@given(small)
def test_point_on_line(b):
    assert beta_prime_surface("P1", [b], 0) == -b * (2 - b) / 2


def test_product_rule_examples():
    d7 = CASES["D7"]
    assert product_rule(d7.product_factors((Q(3, 4), 0))) == "semistable"
    assert product_rule(d7.product_factors((Q(1, 2), 0))) == "polystable"
    assert product_rule(d7.product_factors((Q(1, 2), Q(1, 10)))) == "unstable"
    c7 = instantiate("C7", k=0, n=0)
    # D1 = H is a point on the P1 factor, D2 = F1 + F2 a (1,1) curve on P1xP1
    assert product_rule(c7.product_factors((0, Q(1, 2)))) == "semistable"
    assert product_rule(c7.product_factors((0, Q(1, 3)))) == "polystable"
    assert product_rule(c7.product_factors((Q(1, 2), 0))) == "unstable"
    with pytest.raises(PreconditionError):
        product_rule(None)


def test_verdict_over_boundary_and_tests():
    pair = CASES["D5"].pair((Q(1, 4), Q(1, 4)))
    v = divisorial_verdict(pair)
    assert [r.divisor_label for r in v.reports] == [lab for lab, _ in pair.divisors()]


@given(st.data())
def test_report_recomputes(data):
    cid = data.draw(st.sampled_from(sorted(CASES)))
    case = CASES[cid]
    c = tuple(data.draw(small) for _ in range(case.ncoeff))
    if not case.is_log_fano(c):
        return
    pair = case.pair(c)
    for lab, _ in pair.divisors():
        r = beta_prime(pair, label=lab)
        assert r.beta_prime == r.A * r.L_cubed - r.S_prime
        assert r.S_prime > 0 and r.tau >= r.eps > 0


@given(st.data())
def test_single_segment_shortcut_agrees(data):
    cid = data.draw(st.sampled_from(["E1", "C2", "C5", "D2", "D8", "E2", "C10", "Q1", "C6"]))
    params = {}
    case = instantiate(cid)
    for key in case.params:
        params[key] = case.params[key] + data.draw(st.integers(0, 3))
    case = instantiate(cid, params)
    c = tuple(data.draw(small) for _ in range(case.ncoeff))
    if not case.is_log_fano(c):
        return
    pair = case.pair(c)
    for lab, cl in pair.divisors():
        fast = SingleSegmentBeta(case, lab, cl)(c)
        try:
            r = beta_prime(pair, label=lab)
        except SmallContractionError:
            assert fast is None
            continue
        if fast is not None:
            assert fast == r.beta_prime
            assert r.eps == r.tau
        else:
            assert r.eps < r.tau


def test_small_contraction_is_reported_not_guessed():
    # with m, n >= 1 the negative section of H1 also lies in Fs, so L - xFf meets a flipping wall
    case = instantiate("C5", k=1, n=1, m=1)
    pair = case.pair((0, Q(1, 20), 0))
    with pytest.raises(SmallContractionError):
        beta_prime(pair, label="D3")
    dv = divisorial_verdict(pair)
    assert "D3" in dv.skipped and dv.unstable
    # the same ray is fine when the curve lies only in H1
    assert beta_prime(instantiate("C5", k=1, n=0, m=1).pair((0, 0, 0)), label="D3").tau > 0
