"""Exact rationals, univariate polynomials and piecewise polynomials."""
from fractions import Fraction
from typing import Iterable, List, Sequence

Rat = Fraction


class DomainError(ValueError):
    pass


def rat(x) -> Fraction:
    """Parse an int, Fraction or "p/q" string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational")
        return Fraction(s)
    raise TypeError(f"cannot convert {x!r} to a rational")


def fmt(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Poly:
    """Polynomial in one variable with rational coefficients, lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [rat(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def const(cls, v) -> "Poly":
        return cls([v])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def affine(cls, c0, c1) -> "Poly":
        return cls([c0, c1])

    @property
    def deg(self) -> int:
        return len(self.c) - 1

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for co in reversed(self.c):
            acc = acc * x + co
        return acc

    def _coerce(self, o) -> "Poly":
        return o if isinstance(o, Poly) else Poly([o])

    def __add__(self, o):
        o = self._coerce(o)
        n = max(len(self.c), len(o.c))
        a = self.c + (0,) * (n - len(self.c))
        b = o.c + (0,) * (n - len(o.c))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-x for x in self.c)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        o = self._coerce(o)
        if not self.c or not o.c:
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(o.c):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = Poly([o])
        return isinstance(o, Poly) and self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        if not self.c:
            return "Poly(0)"
        terms = []
        for i, co in enumerate(self.c):
            if co:
                terms.append(fmt(co) + ("" if i == 0 else "*x" if i == 1 else f"*x^{i}"))
        return "Poly(" + " + ".join(terms) + ")"

    def antiderivative(self) -> "Poly":
        return Poly([0] + [co / (i + 1) for i, co in enumerate(self.c)])

    def integrate(self, lo, hi) -> Fraction:
        F = self.antiderivative()
        return F(rat(hi)) - F(rat(lo))

    def compose_affine(self, c0, c1) -> "Poly":
        """Return p(c0 + c1*x)."""
        inner = Poly([c0, c1])
        out = Poly()
        for co in reversed(self.c):
            out = out * inner + co
        return out


class PiecewisePoly:
    """Piecewise polynomial on [breakpoints[0], breakpoints[-1]], pieces left-closed."""

    def __init__(self, breakpoints: Sequence, pieces: Sequence[Poly]):
        bps = [rat(b) for b in breakpoints]
        if len(bps) != len(pieces) + 1:
            raise ValueError("need exactly one more breakpoint than pieces")
        keep_b, keep_p = [bps[0]], []
        for i, p in enumerate(pieces):
            if bps[i + 1] < bps[i]:
                raise ValueError("breakpoints must be nondecreasing")
            if bps[i + 1] == bps[i]:
                continue  # zero-length interval
            keep_b.append(bps[i + 1])
            keep_p.append(p)
        self.breakpoints = tuple(keep_b)
        self.pieces = tuple(keep_p)

    @property
    def lo(self) -> Fraction:
        return self.breakpoints[0]

    @property
    def hi(self) -> Fraction:
        return self.breakpoints[-1]

    def _index(self, x: Fraction) -> int:
        if x < self.lo or x > self.hi:
            raise DomainError(f"{fmt(x)} outside [{fmt(self.lo)}, {fmt(self.hi)}]")
        for i in range(len(self.pieces)):
            if x < self.breakpoints[i + 1]:
                return i
        return len(self.pieces) - 1

    def __call__(self, x) -> Fraction:
        x = rat(x)
        if not self.pieces:
            if x != self.lo:
                raise DomainError(f"{fmt(x)} outside the degenerate domain")
            return Fraction(0)
        return self.pieces[self._index(x)](x)

    def is_continuous(self) -> bool:
        return all(self.pieces[i](self.breakpoints[i + 1]) == self.pieces[i + 1](self.breakpoints[i + 1])
                   for i in range(len(self.pieces) - 1))


def integrate(f, lo, hi) -> Fraction:
    """Exact definite integral of a Poly or PiecewisePoly over [lo, hi]."""
    lo, hi = rat(lo), rat(hi)
    if lo > hi:
        raise DomainError("lo must not exceed hi")
    if isinstance(f, Poly):
        return f.integrate(lo, hi)
    if lo < f.lo or hi > f.hi:
        raise DomainError(f"[{fmt(lo)}, {fmt(hi)}] not inside [{fmt(f.lo)}, {fmt(f.hi)}]")
    total = Fraction(0)
    for i, p in enumerate(f.pieces):
        a = max(lo, f.breakpoints[i])
        b = min(hi, f.breakpoints[i + 1])
        if a < b:
            total += p.integrate(a, b)
    return total


def poly_identity_check(p: Poly, q: Poly, samples: int) -> bool:
    """Decide p == q by evaluation at `samples` distinct rationals (needs samples > max degree)."""
    if samples <= max(p.deg, q.deg, 0):
        raise ValueError("samples must exceed the larger degree")
    return all(p(Fraction(k, 3)) == q(Fraction(k, 3)) for k in range(samples))


def identity_on_samples(f, g, samples: Sequence) -> bool:
    """Compare two exact callables on explicit sample points."""
    return all(f(s) == g(s) for s in samples)


def interpolate(xs: Sequence, ys: Sequence) -> Poly:
    """Lagrange interpolation through the points (xs[i], ys[i])."""
    out = Poly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Poly([yi])
        for j, xj in enumerate(xs):
            if j != i:
                term = term * Poly([-Fraction(xj), 1]) * (1 / Fraction(xi - xj))
        out = out + term
    return out


def solve_linear(A: List[List[Fraction]], b: List[Fraction]) -> List[Fraction]:
    """Solve the square system A x = b exactly; raises ValueError if singular."""
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] / pv
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] / M[i][i] for i in range(n)]


def rank(rows: List[List[Fraction]]) -> int:
    M = [list(map(Fraction, r)) for r in rows]
    if not M:
        return 0
    rk, ncol = 0, len(M[0])
    for col in range(ncol):
        piv = next((r for r in range(rk, len(M)) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        for r in range(len(M)):
            if r != rk and M[r][col] != 0:
                f = M[r][col] / M[rk][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[rk])]
        rk += 1
    return rk
