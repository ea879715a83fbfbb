from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from kstab3.catalog import instantiate, load_all
from kstab3.geom import NumericalClass, PreconditionError
from kstab3.oracle import S_prime_oracle, rel_err
from kstab3.zariski import decompose, decompose_ray, volume

CASES = {c.id: c for c in load_all()}
small = st.fractions(min_value=0, max_value=Q(19, 20), max_denominator=20)


def test_nef_class_is_its_own_positive_part():
    X = CASES["E1"].threefold
    c = X.cls(D1=3, D2=2)
    d = decompose(X, c)
    assert d.positive == c and d.negative == ()
    assert volume(X, c) == X.cube(c)


def test_non_pseff_volume_zero():
    X = CASES["E1"].threefold
    assert volume(X, X.cls(D1=1, D2=-1)) == 0
    with pytest.raises(PreconditionError):
        decompose(X, X.cls(D1=-1))


def test_e1_negative_part():
    # on E1, D1 alone is effective and not nef: it is its own negative part
    X = CASES["E1"].threefold
    d = decompose(X, X.cls(D1=1))
    assert d.negative and volume(X, X.cls(D1=1)) == 0


def test_decompose_ray_preconditions():
    case = CASES["E1"]
    X = case.threefold
    with pytest.raises(PreconditionError):
        decompose_ray(X, X.cls(D1=1), X.cls(D2=1))
    L = case.pair((0, 0)).L
    with pytest.raises(PreconditionError):
        decompose_ray(X, L, X.cls())
    with pytest.raises(PreconditionError):
        decompose_ray(X, L, X.cls(D1=1, D2=-1))


def test_e1_ray_breakpoints():
    case = CASES["E1"]
    a, b = Q(1, 3), Q(1, 5)
    pair = case.pair((a, b))
    rd = decompose_ray(case.threefold, pair.L, pair.divisor("D2"))
    assert rd.tau == 3 - b and rd.eps == 1 + a / 2 - b
    assert rd.breakpoints()[0] == rd.eps


def _random_ray(data):
    cid = data.draw(st.sampled_from(sorted(CASES)))
    case = CASES[cid]
    c = tuple(data.draw(small) for _ in range(case.ncoeff))
    if not case.is_log_fano(c):
        return None
    pair = case.pair(c)
    lab, E = data.draw(st.sampled_from(pair.divisors()))
    return case, c, pair, lab, E


@given(st.data())
def test_ray_invariants(data):
    r = _random_ray(data)
    if r is None:
        return
    case, c, pair, lab, E = r
    X = case.threefold
    rd = decompose_ray(X, pair.L, E)
    f = rd.vol_function()
    assert f.is_continuous()
    assert rd.tau >= rd.eps > 0
    assert rd.integral() > 0
    # positive part at each breakpoint is nef and idempotent
    for x in rd.breakpoints() + [rd.tau / 3]:
        s = rd.segment_at(x)
        P = s.P(x)
        assert X.is_nef(P)
        d = decompose(X, P)
        assert d.positive == P and d.negative == ()
        assert f(x) == X.cube(P)
        assert volume(X, pair.L - E * x) == f(x)
    assert f(rd.tau) == 0 or X.cube(rd.segment_at(rd.tau).P(rd.tau)) == f(rd.tau)


@pytest.mark.parametrize("cid", sorted(CASES))
def test_ray_integral_matches_oracle(cid):
    case = CASES[cid]
    for c in ((Q(1, 7),) * case.ncoeff, (Q(1, 3), Q(1, 5), Q(1, 9))[: case.ncoeff]):
        if not case.is_log_fano(c):
            continue
        pair = case.pair(c)
        for lab, E in pair.divisors():
            exact = decompose_ray(case.threefold, pair.L, E).integral()
            assert rel_err(float(exact), S_prime_oracle(case, c, lab)) < 1e-5, (c, lab)


def test_c6_ray_matches_oracle_across_params():
    # (3, 3) only admits coefficients with 3a > 1 + b and 3(1 - b) < 2 - a
    for k, n, c in ((1, 2, (Q(1, 4), Q(1, 6))), (2, 1, (Q(1, 4), Q(1, 6))), (3, 3, (Q(9, 10), Q(4, 5)))):
        case = instantiate("C6", k=k, n=n)
        assert case.is_log_fano(c)
        pair = case.pair(c)
        for lab, E in pair.divisors():
            exact = decompose_ray(case.threefold, pair.L, E).integral()
            assert rel_err(float(exact), S_prime_oracle(case, c, lab)) < 1e-5, (k, n, lab)
