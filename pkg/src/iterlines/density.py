"""Constructive density: interior-point witnesses, cevian shrinking, and
approximation of arbitrary targets by certified constructions.

Approximation works in a projective chart of the witness triangle ABC with
interior point P.  With barycentric weights (u, v, w) of P, a point with
weights (l_a, l_b, l_c) gets chart coordinates

    xi = (l_a / u) / (l_c / w),   eta = (l_b / v) / (l_c / w).

C is the origin and P is (1, 1); the triangle interior is the open positive
quadrant.  Lines through A are horizontal and lines through B vertical.
Lines through F, where CP meets AB, have slope one.  So every chart operation
below is an intersection of two lines through already-constructed points.
Intersections in the closed positive quadrant are finite in the real plane,
which keeps every step nondegenerate.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import floor
from typing import Optional

from .classify import Kind, classify
from .closure import Budget, BudgetExceeded, PointSet, levels
from .kernel import (
    DegenerateError,
    Point,
    Position,
    convex_hull,
    intersect,
    line_through,
    orientation,
    point_in_triangle,
    squared_distance,
)
from .trace import Builder, ConstructionTrace, TraceError, certify, verify_trace


class FiniteOrderError(ValueError):
    """The seed has finite order, so its iterates are not dense."""


@dataclass(frozen=True)
class TriangleWitness:
    a: Point
    b: Point
    c: Point
    p: Point
    n: int
    seed: PointSet


def _strictly_inside_hull(p: Point, others: list[Point]) -> bool:
    hull = convex_hull(others)
    if len(hull) < 3:
        return False
    return all(orientation(hull[i], hull[(i + 1) % len(hull)], p) > 0 for i in range(len(hull)))


def find_interior_quadruple(pts) -> Optional[tuple[Point, Point, Point, Point]]:
    """First ``(a, b, c, p)`` in canonical order with p strictly inside abc."""
    pts = sorted(pts)
    for p in pts:
        others = [q for q in pts if q != p]
        if not _strictly_inside_hull(p, others):
            continue
        for a, b, c in combinations(others, 3):
            if orientation(a, b, c) != 0 and point_in_triangle(p, a, b, c) is Position.STRICT_INTERIOR:
                return (a, b, c, p)
    return None


def _witness(s: PointSet, budget: Budget):
    if classify(s).kind is not Kind.INFINITE_ORDER:
        raise FiniteOrderError("seed has finite order")
    tower = [s]
    while True:
        quad = find_interior_quadruple(tower[-1].points)
        if quad is not None:
            return TriangleWitness(*quad, n=len(tower) - 1, seed=s), tower
        if len(tower) > budget.max_iterations:
            raise BudgetExceeded("max-iterations")
        tower.append(levels(tower[-1], 1, budget)[-1])


def triangle_with_interior_point(s, budget: Optional[Budget] = None) -> TriangleWitness:
    """Three points of some iterate with a fourth strictly inside their
    triangle.  Depth two always suffices for infinite-order seeds."""
    s = s if isinstance(s, PointSet) else PointSet(s)
    return _witness(s, budget or Budget())[0]


def _check_interior(a: Point, b: Point, c: Point, p: Point) -> None:
    if orientation(a, b, c) == 0:
        raise DegenerateError("triangle vertices are collinear")
    if point_in_triangle(p, a, b, c) is not Position.STRICT_INTERIOR:
        raise DegenerateError("point is not strictly inside the triangle")


def _meet(p1: Point, p2: Point, p3: Point, p4: Point) -> Point:
    return intersect(line_through(p1, p2), line_through(p3, p4))


def cevian_triangle(a: Point, b: Point, c: Point, p: Point) -> tuple[Point, Point, Point]:
    """Feet of the cevians through p: on BC, CA and AB respectively."""
    _check_interior(a, b, c, p)
    return _meet(a, p, b, c), _meet(b, p, c, a), _meet(c, p, a, b)


def cevian_shrink_step(a: Point, b: Point, c: Point, p: Point) -> tuple[Point, Point, Point]:
    """Two cevian steps; the returned vertices lie on AP, BP, CP in order."""
    d, e, f = cevian_triangle(a, b, c, p)
    return _meet(d, p, e, f), _meet(e, p, f, d), _meet(f, p, d, e)


def squared_diameter(tri) -> Fraction:
    a, b, c = tri
    return max(squared_distance(a, b), squared_distance(b, c), squared_distance(c, a))


@dataclass(frozen=True)
class ShrinkSequence:
    p: Point
    triangles: tuple[tuple[Point, Point, Point], ...]
    trace: ConstructionTrace  # seed (a, b, c, p); certifies every vertex

    @property
    def squared_diameter(self) -> Optional[Fraction]:
        return squared_diameter(self.triangles[-1]) if self.triangles else None


def _double_step(builder: Builder, ia: int, ib: int, ic: int, ip: int) -> tuple[int, int, int]:
    m = builder.meet
    d, e, f = m(ia, ip, ib, ic), m(ib, ip, ic, ia), m(ic, ip, ia, ib)
    return m(d, ip, e, f), m(e, ip, f, d), m(f, ip, d, e)


def shrink_to_radius(a, b, c, p, eps_sq, budget: Optional[Budget] = None) -> ShrinkSequence:
    """Nested double-cevian triangles around p until the squared diameter
    drops below ``eps_sq``.  ``budget.max_iterations`` caps the steps."""
    eps_sq = Fraction(eps_sq)
    if eps_sq <= 0:
        raise ValueError("eps_sq must be positive")
    _check_interior(a, b, c, p)
    budget = budget or Budget()
    builder = Builder([a, b, c, p])
    tri = (0, 1, 2)
    out = []
    while squared_diameter(tuple(builder.points[i] for i in tri)) >= eps_sq:
        if len(out) >= budget.max_iterations:
            best = squared_diameter(tuple(builder.points[i] for i in tri))
            raise BudgetExceeded(f"max-iterations (squared diameter {best})")
        tri = _double_step(builder, *tri, 3)
        out.append(tuple(builder.points[i] for i in tri))
    return ShrinkSequence(p, tuple(out), builder.trace())


class _Chart:
    """Chart coordinates around a witness (see module docstring)."""

    def __init__(self, builder: Builder, a: int, b: int, c: int, p: int):
        self.bld = builder
        self.A, self.B, self.C, self.P = a, b, c, p
        pts = builder.points
        m = builder.meet
        self.D = m(a, p, b, c)
        self.E = m(b, p, c, a)
        self.F = m(c, p, a, b)
        self.u, self.v, self.w = self.barycentric(pts[p])
        self._axis = {1: self.E}

    def barycentric(self, x: Point) -> tuple[Fraction, Fraction, Fraction]:
        pts = self.bld.points
        A, B, C = pts[self.A], pts[self.B], pts[self.C]

        def area(p, q, r):
            return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])

        tot = area(A, B, C)
        return area(x, B, C) / tot, area(A, x, C) / tot, area(A, B, x) / tot

    def to_chart(self, x: Point) -> tuple[Fraction, Fraction]:
        la, lb, lc = self.barycentric(x)
        return (la / self.u) / (lc / self.w), (lb / self.v) / (lc / self.w)

    def from_chart(self, xi: Fraction, eta: Fraction) -> Point:
        pts = self.bld.points
        A, B, C = pts[self.A], pts[self.B], pts[self.C]
        wa, wb, wc = self.u * xi, self.v * eta, self.w
        tot = wa + wb + wc
        return Point._make(
            (wa * A[0] + wb * B[0] + wc * C[0]) / tot,
            (wa * A[1] + wb * B[1] + wc * C[1]) / tot,
        )

    # each helper returns a builder index
    def axis(self, n: int) -> int:
        """(n, 0) for integers n >= 1, by doubling and adding one."""
        if n in self._axis:
            return self._axis[n]
        h = self.axis(n // 2)
        idx = self._add(h, h)
        if n % 2:
            idx = self._add(idx, self.E)
        self._axis[n] = idx
        return idx

    def _add(self, ia: int, ib: int) -> int:
        m = self.bld.meet
        bb = m(self.B, ib, self.C, self.P)  # (b, b) on the diagonal
        s = m(self.F, ia, self.A, bb)  # (a + b, b)
        return m(self.B, s, self.C, self.E)  # (a + b, 0)

    def diagonal(self, n: int) -> int:
        return self.bld.meet(self.B, self.axis(n), self.C, self.P)

    def lattice(self, x: int, y: int) -> int:
        return self.bld.meet(self.B, self.axis(x), self.A, self.diagonal(y))

    def height_point(self, q: Fraction) -> int:
        """(1, q) for a positive rational q."""
        return self.bld.meet(self.C, self.lattice(q.denominator, q.numerator), self.B, self.P)

    def point(self, xi: Fraction, eta: Fraction) -> int:
        """The chart point (xi, eta), both positive rationals."""
        m = self.bld.meet
        on_diag = m(self.A, self.height_point(xi), self.C, self.P)  # (xi, xi)
        return m(self.B, on_diag, self.A, self.height_point(eta))


def _chord(ln, a: Point, b: Point, c: Point) -> list[Point]:
    ends = set()
    for e1, e2 in ((a, b), (b, c), (c, a)):
        x = intersect(ln, line_through(e1, e2))
        if isinstance(x, Point) and point_in_triangle(x, a, b, c) is not Position.OUTSIDE:
            ends.add(x)
    return sorted(ends)


def _round(v: Fraction, bits: Optional[int]) -> Fraction:
    if bits is None:
        return v
    scale = 2 ** bits
    return Fraction(max(1, floor(v * scale + Fraction(1, 2))), scale)


@dataclass(frozen=True)
class Approximation:
    point: Point
    depth: int
    distance_sq: Fraction
    trace: ConstructionTrace


def approximate_point(s, target: Point, eps_sq, budget: Optional[Budget] = None) -> Approximation:
    """A certified point of some iterate of ``s`` within squared distance
    ``eps_sq`` of ``target``.

    Two anchors Q1, R1 are taken from the double-cevian triangle of the
    witness.  The lines from the target through them cross the witness
    triangle; a second point on each chord is approximated by a chart point
    of growing dyadic resolution until the two approximating lines meet
    close enough to the target.
    """
    s = s if isinstance(s, PointSet) else PointSet(s)
    eps_sq = Fraction(eps_sq)
    if eps_sq <= 0:
        raise ValueError("eps_sq must be positive")
    budget = budget or Budget()
    if target in s:
        if classify(s).kind is not Kind.INFINITE_ORDER:
            raise FiniteOrderError("seed has finite order")
        trace = ConstructionTrace(s.points, (), target)
        return Approximation(target, 0, Fraction(0), trace)
    wit, tower = _witness(s, budget)
    builder = Builder(s.points, max_steps=budget.max_steps)
    ia, ib, ic, ip = (certify(builder, q, tower) for q in (wit.a, wit.b, wit.c, wit.p))
    chart = _Chart(builder, ia, ib, ic, ip)
    anchors = sorted(builder.points[i] for i in _double_step(builder, ia, ib, ic, ip))
    pts = builder.points
    if target in builder.index:
        return _done(builder, target)

    for q1, r1 in combinations(anchors, 2):
        if orientation(target, q1, r1) != 0:
            break
    a, b, c = pts[ia], pts[ib], pts[ic]

    def far_point(anchor: Point) -> Point:
        ends = _chord(line_through(target, anchor), a, b, c)
        far = max(ends, key=lambda e: (squared_distance(e, anchor), e))
        return Point._make((anchor[0] + far[0]) / 2, (anchor[1] + far[1]) / 2)

    q2c = chart.to_chart(far_point(q1))
    r2c = chart.to_chart(far_point(r1))
    for bits in list(range(1, 65)) + [None]:
        q2 = chart.from_chart(_round(q2c[0], bits), _round(q2c[1], bits))
        r2 = chart.from_chart(_round(r2c[0], bits), _round(r2c[1], bits))
        if q2 == q1 or r2 == r1:
            continue
        l1, l2 = line_through(q1, q2), line_through(r1, r2)
        x = intersect(l1, l2)
        if not isinstance(x, Point) or squared_distance(x, target) >= eps_sq:
            continue
        try:
            iq2 = chart.point(_round(q2c[0], bits), _round(q2c[1], bits))
            ir2 = chart.point(_round(r2c[0], bits), _round(r2c[1], bits))
            builder.meet(builder.index[q1], iq2, builder.index[r1], ir2)
        except TraceError as exc:
            raise AssertionError(f"chart construction degenerated: {exc}") from exc
        return _done(builder, x, target)
    raise BudgetExceeded("no approximation found")


def _done(builder: Builder, point: Point, target: Optional[Point] = None) -> Approximation:
    trace = builder.trace(point)
    result = verify_trace(trace)
    if not result.valid:
        raise AssertionError(f"produced an invalid trace: {result}")
    dist = squared_distance(point, point if target is None else target)
    return Approximation(point, trace.depth(), dist, trace)
