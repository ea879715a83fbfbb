from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from kstab3.arith import (DomainError, PiecewisePoly, Poly, fmt, integrate, interpolate, poly_identity_check,
                          rank, rat, solve_linear)

rats = st.fractions(min_value=-5, max_value=5, max_denominator=12)


def test_rat_parsing():
    assert rat("3/4") == Q(3, 4)
    assert rat(2) == Q(2)
    assert rat(" -1/2 ") == Q(-1, 2)
    with pytest.raises(ValueError):
        rat("")
    with pytest.raises(TypeError):
        rat(0.5)


def test_fmt():
    assert fmt(Q(3, 4)) == "3/4"
    assert fmt(Q(-6, 3)) == "-2"


def test_integrate_cubic():
    p = Poly([4, -1]) ** 3
    assert integrate(p, 0, 4) == 64


def test_integrate_quadric_profile():
    p = Poly([3, -1]) ** 3 * 2
    assert integrate(p, 0, 3) == Q(81, 2)


def test_piecewise_tent():
    f = PiecewisePoly([0, 1, 2], [Poly.x(), Poly([2, -1])])
    assert integrate(f, 0, 2) == 1
    assert f.is_continuous()
    assert f(Q(3, 2)) == Q(1, 2)


def test_integrate_outside_domain():
    f = PiecewisePoly([0, 1], [Poly.x()])
    with pytest.raises(DomainError):
        integrate(f, 0, 2)
    with pytest.raises(DomainError):
        f(3)
    with pytest.raises(DomainError):
        integrate(Poly.x(), 1, 0)


def test_zero_length_pieces_dropped():
    f = PiecewisePoly([0, 1, 1, 2], [Poly.x(), Poly([5]), Poly([1])])
    assert f.breakpoints == (0, 1, 2)
    assert integrate(f, 0, 2) == Q(3, 2)


def test_identity_check():
    a = Poly([4, -2]) ** 3
    assert poly_identity_check(a, Poly([4, -2]) ** 3, 5)
    assert not poly_identity_check(Poly([0, 0, 1]), Poly([0, 0, 0, 1]), 4)
    with pytest.raises(ValueError):
        poly_identity_check(a, a, 3)


def test_planes_beta_slice():
    # beta'(D2) on P3 with boundary 2H, H as a polynomial in a at fixed b
    from kstab3.catalog import instantiate
    from kstab3.kstab import beta_prime
    case = instantiate("F3")
    b = Q(1, 5)
    xs = [Q(i, 11) for i in range(6)]
    ys = [beta_prime(case.pair((x, b)), label="D2").beta_prime for x in xs]
    p = interpolate(xs, ys)
    a = Poly.x()
    want = (Poly([4 - b, -2])) ** 3 * (a * Q(1, 2) - Poly([Q(3, 4) * b]))
    assert poly_identity_check(p, want, 6)


@given(st.lists(rats, min_size=1, max_size=5), st.lists(rats, min_size=1, max_size=5), rats)
def test_poly_ring_laws(c1, c2, x):
    p, q = Poly(c1), Poly(c2)
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)
    assert (p - q)(x) == p(x) - q(x)


@given(st.lists(rats, min_size=1, max_size=5), rats, rats, rats)
def test_integral_additive(c, a, b, m):
    p = Poly(c)
    assert p.integrate(a, b) == p.integrate(a, m) + p.integrate(m, b)


@given(st.lists(rats, min_size=1, max_size=4), rats, rats, rats)
def test_compose_affine(c, c0, c1, x):
    p = Poly(c)
    assert p.compose_affine(c0, c1)(x) == p(c0 + c1 * x)


def test_solve_and_rank():
    A = [[2, 1], [1, 3]]
    assert solve_linear(A, [3, 4]) == [1, 1]
    assert rank([[1, 2], [2, 4]]) == 1
    with pytest.raises(ValueError):
        solve_linear([[1, 2], [2, 4]], [1, 2])
