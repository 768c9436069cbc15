"""Exact planar geometry over the rationals.

Coordinates are :class:`fractions.Fraction` values, which are always kept in
lowest terms with a positive denominator, so equality of values and equality
of representations coincide.  Lines are stored as reduced integer triples
``(a, b, c)`` for ``a*x + b*y + c = 0`` with the first nonzero of ``(a, b)``
positive; two ``Line`` values are equal exactly when they are the same
geometric line.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from math import gcd
from operator import itemgetter
from typing import Iterable, NamedTuple, Sequence, Union

Rational = Fraction

__all__ = [
    "Rational",
    "Point",
    "Line",
    "LineRelation",
    "Position",
    "Mat2",
    "Affine",
    "DegenerateError",
    "as_rational",
    "line_through",
    "intersect",
    "collinear",
    "orientation",
    "are_parallel",
    "midpoint",
    "squared_distance",
    "convex_hull",
    "point_in_triangle",
    "bit_length",
]


class DegenerateError(ValueError):
    """Raised when an operation receives geometrically degenerate input."""


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: a float has already lost the exact value.
    """
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float coordinate {value!r}")
    return Fraction(value)


class Point(tuple):
    """An exact point ``(x, y)``; ordered lexicographically."""

    __slots__ = ()

    def __new__(cls, x, y):
        return tuple.__new__(cls, (as_rational(x), as_rational(y)))

    @classmethod
    def _make(cls, x: Fraction, y: Fraction) -> "Point":
        # trusted fast path: both coordinates already Fractions
        return tuple.__new__(cls, (x, y))

    x = property(itemgetter(0))
    y = property(itemgetter(1))

    def __repr__(self) -> str:
        return f"Point({self[0]}, {self[1]})"

    def __getnewargs__(self):
        return tuple(self)


class Line(NamedTuple):
    """The line ``a*x + b*y + c = 0`` in canonical integer form."""

    a: int
    b: int
    c: int

    @classmethod
    def from_coefficients(cls, a, b, c) -> "Line":
        """Canonical line from rational coefficients."""
        a, b, c = Fraction(a), Fraction(b), Fraction(c)
        if a == 0 and b == 0:
            raise DegenerateError("(a, b) = (0, 0) does not define a line")
        den = _lcm(_lcm(a.denominator, b.denominator), c.denominator)
        return _canonical_line(
            a.numerator * (den // a.denominator),
            b.numerator * (den // b.denominator),
            c.numerator * (den // c.denominator),
        )

    def contains(self, p: Point) -> bool:
        return self.a * p[0] + self.b * p[1] + self.c == 0

    def side(self, p: Point) -> int:
        """Sign of ``a*x + b*y + c`` at ``p``."""
        v = self.a * p[0] + self.b * p[1] + self.c
        return (v > 0) - (v < 0)

    @property
    def direction(self) -> tuple[int, int]:
        """Reduced normal ``(a, b)``; parallel lines share it."""
        g = gcd(self.a, self.b)
        return (self.a // g, self.b // g)


class LineRelation(enum.Enum):
    PARALLEL = "parallel"
    IDENTICAL = "identical"


class Position(enum.Enum):
    STRICT_INTERIOR = "strict-interior"
    ON_BOUNDARY = "on-boundary"
    OUTSIDE = "outside"


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _canonical_line(a: int, b: int, c: int) -> Line:
    g = gcd(gcd(a, b), c)
    a, b, c = a // g, b // g, c // g
    if a < 0 or (a == 0 and b < 0):
        a, b, c = -a, -b, -c
    return Line(a, b, c)


def line_through(p: Point, q: Point) -> Line:
    """The canonical line through two distinct points."""
    x1, y1 = p
    x2, y2 = q
    if x1 == x2 and y1 == y2:
        raise DegenerateError(f"identical points {p!r} span no line")
    # (y1 - y2) x + (x2 - x1) y + (x1 y2 - x2 y1) = 0, times d**2
    d = _lcm(_lcm(x1.denominator, y1.denominator), _lcm(x2.denominator, y2.denominator))
    X1, Y1 = x1.numerator * (d // x1.denominator), y1.numerator * (d // y1.denominator)
    X2, Y2 = x2.numerator * (d // x2.denominator), y2.numerator * (d // y2.denominator)
    return _canonical_line((Y1 - Y2) * d, (X2 - X1) * d, X1 * Y2 - X2 * Y1)


def intersect(l1: Line, l2: Line) -> Union[Point, LineRelation]:
    """Meet of two lines: a Point, or PARALLEL / IDENTICAL."""
    det = l1.a * l2.b - l2.a * l1.b
    if det == 0:
        return LineRelation.IDENTICAL if l1 == l2 else LineRelation.PARALLEL
    x = Fraction(l1.b * l2.c - l2.b * l1.c, det)
    y = Fraction(l1.c * l2.a - l2.c * l1.a, det)
    return Point._make(x, y)


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q - p) x (r - p): +1 left turn, -1 right."""
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def collinear(p: Point, q: Point, r: Point) -> bool:
    return orientation(p, q, r) == 0


def are_parallel(l1: Line, l2: Line) -> bool:
    """True for parallel or identical lines."""
    return l1.a * l2.b - l2.a * l1.b == 0


def midpoint(p: Point, q: Point) -> Point:
    return Point._make((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)


def squared_distance(p: Point, q: Point) -> Fraction:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Counterclockwise hull vertices (monotone chain), no collinear extras.

    Collinear input yields its two extreme points, a singleton yields itself.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def chain(seq: Sequence[Point]) -> list[Point]:
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and orientation(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


def point_in_triangle(p: Point, a: Point, b: Point, c: Point) -> Position:
    o = orientation(a, b, c)
    if o == 0:
        raise DegenerateError("triangle vertices are collinear")
    s1 = orientation(a, b, p) * o
    s2 = orientation(b, c, p) * o
    s3 = orientation(c, a, p) * o
    if s1 > 0 and s2 > 0 and s3 > 0:
        return Position.STRICT_INTERIOR
    if s1 < 0 or s2 < 0 or s3 < 0:
        return Position.OUTSIDE
    return Position.ON_BOUNDARY


def bit_length(p: Point) -> int:
    """Largest bit length among the numerators and denominators of ``p``."""
    return max(
        abs(p[0].numerator).bit_length(),
        p[0].denominator.bit_length(),
        abs(p[1].numerator).bit_length(),
        p[1].denominator.bit_length(),
    )


class Mat2(NamedTuple):
    """2x2 rational matrix ``[[m11, m12], [m21, m22]]``."""

    m11: Fraction
    m12: Fraction
    m21: Fraction
    m22: Fraction

    @classmethod
    def of(cls, m11, m12, m21, m22) -> "Mat2":
        return cls(*(as_rational(v) for v in (m11, m12, m21, m22)))

    @classmethod
    def identity(cls) -> "Mat2":
        return cls.of(1, 0, 0, 1)

    def det(self) -> Fraction:
        return self.m11 * self.m22 - self.m12 * self.m21

    def apply(self, p: Point) -> Point:
        return Point._make(
            self.m11 * p[0] + self.m12 * p[1],
            self.m21 * p[0] + self.m22 * p[1],
        )

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def inverse(self) -> "Mat2":
        d = self.det()
        if d == 0:
            raise DegenerateError("singular matrix")
        return Mat2(self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d)


class Affine(NamedTuple):
    """The invertible affine map ``p -> matrix @ p + offset``."""

    matrix: Mat2
    offset: Point

    @classmethod
    def identity(cls) -> "Affine":
        return cls(Mat2.identity(), Point(0, 0))

    @classmethod
    def translation(cls, v: Point) -> "Affine":
        return cls(Mat2.identity(), v)

    @classmethod
    def linear(cls, m: Mat2) -> "Affine":
        if m.det() == 0:
            raise DegenerateError("normalizing map must be invertible")
        return cls(m, Point(0, 0))

    def __call__(self, p: Point) -> Point:
        q = self.matrix.apply(p)
        return Point._make(q[0] + self.offset[0], q[1] + self.offset[1])

    def then(self, other: "Affine") -> "Affine":
        """The map ``other(self(p))``."""
        return Affine(other.matrix @ self.matrix, other(self.offset))

    def inverse(self) -> "Affine":
        inv = self.matrix.inverse()
        o = inv.apply(self.offset)
        return Affine(inv, Point._make(-o[0], -o[1]))
