"""Reaching arbitrary rational points from a seed containing a trapezoid.

Pipeline: find four points R, P, Q, T with RQ parallel to PT (and not a
parallelogram), move them by a rational affine map to (0,0), (0,1), (1,0),
(1, r/s), bisect the two vertical sides dyadically with the midpoint
construction until a six-point seed appears, then build an integer grid patch
and the target from it.  Every point is produced by a certified intersection
step, so the result is a :class:`ConstructionTrace` from the original seed.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Optional

from .closure import Budget, BudgetExceeded, PointSet, levels
from .kernel import (
    Affine,
    DegenerateError,
    Mat2,
    Point,
    are_parallel,
    intersect,
    line_through,
    midpoint,
)
from .trace import Builder, ConstructionTrace, TraceError, View, certify, verify_trace


class ReachError(RuntimeError):
    """The pipeline could not finish; ``stage`` names where it stopped."""

    def __init__(self, stage: str, reason: str, exhausted: bool = False):
        super().__init__(f"{stage}: {reason}")
        self.stage = stage
        self.reason = reason
        self.exhausted = exhausted  # a budget cap, not a mathematical obstruction


@dataclass(frozen=True)
class TrapezoidQuadruple:
    r: Point
    p: Point
    q: Point
    t: Point
    found_at_depth: int = 0

    def __post_init__(self):
        check_trapezoid(self.r, self.p, self.q, self.t)

    @property
    def points(self) -> tuple[Point, Point, Point, Point]:
        return (self.r, self.p, self.q, self.t)


def check_trapezoid(r: Point, p: Point, q: Point, t: Point) -> None:
    """Raise DegenerateError unless RQ || PT are distinct lines and RPQT is
    not a parallelogram (so both RP, QT and RT, QP cross)."""
    if len({r, p, q, t}) != 4:
        raise DegenerateError("trapezoid points must be distinct")
    rq, pt = line_through(r, q), line_through(p, t)
    if rq == pt or not are_parallel(rq, pt):
        raise DegenerateError("RQ and PT must be distinct parallel lines")
    if are_parallel(line_through(r, p), line_through(q, t)):
        raise DegenerateError("RP is parallel to QT")
    if are_parallel(line_through(r, t), line_through(q, p)):
        raise DegenerateError("RT is parallel to QP (parallelogram)")


def midpoint_quad(r: Point, p: Point, q: Point, t: Point) -> tuple[Point, Point, Point, Point]:
    """``(X, Y, U, V)`` with Y = RT & PQ, X = RP & QT and U, V where XY meets
    RQ and PT; U and V are the midpoints of RQ and PT."""
    check_trapezoid(r, p, q, t)
    y = intersect(line_through(r, t), line_through(p, q))
    x = intersect(line_through(r, p), line_through(q, t))
    xy = line_through(x, y)
    u = intersect(xy, line_through(r, q))
    v = intersect(xy, line_through(p, t))
    assert u == midpoint(r, q) and v == midpoint(p, t), "midpoint construction failed"
    return x, y, u, v


def _midpoint_steps(view: View, r: Point, p: Point, q: Point, t: Point) -> tuple[Point, Point]:
    y = view.meet(r, t, p, q)
    x = view.meet(r, p, q, t)
    u = view.meet(x, y, r, q)
    v = view.meet(x, y, p, t)
    assert u == midpoint(r, q) and v == midpoint(p, t), "midpoint construction failed"
    return u, v


@dataclass(frozen=True)
class NormalMap:
    """Translation by ``translation`` followed by ``matrix``."""

    matrix: Mat2
    translation: Point
    ratio: Fraction

    @property
    def affine(self) -> Affine:
        return Affine.translation(self.translation).then(Affine.linear(self.matrix))


def normalize_map(quad: TrapezoidQuadruple) -> NormalMap:
    """Map sending Q, R, T, P to (0,0), (0,1), (1,0), (1, ratio).

    With Q moved to the origin, R = (a, b), P = (c, d), T = (u, v); the matrix
    is ``[[b, -a], [-v, u]] / (bu - av)`` and ``ratio = (du - cv)/(bu - av)``.
    """
    shift = Point._make(-quad.q[0], -quad.q[1])
    a, b = quad.r[0] + shift[0], quad.r[1] + shift[1]
    c, d = quad.p[0] + shift[0], quad.p[1] + shift[1]
    u, v = quad.t[0] + shift[0], quad.t[1] + shift[1]
    den = b * u - a * v
    if den == 0:
        raise DegenerateError("RQ and PT span the same line")
    m = Mat2(b / den, -a / den, -v / den, u / den)
    ratio = (d * u - c * v) / den
    if ratio in (0, 1, -1):
        raise DegenerateError(f"degenerate normalized ratio {ratio}")
    return NormalMap(m, shift, ratio)


def normalized_quad(ratio: Fraction) -> tuple[Point, Point, Point, Point]:
    """``(r, p, q, t)`` of the normalized trapezoid."""
    return (Point(0, 1), Point(1, ratio), Point(0, 0), Point(1, 0))


def subdivision_depth(r: int, s: int) -> int:
    """Least k >= 1 with 2**(k-1) >= max(|r|, s)."""
    k = 1
    while 2 ** (k - 1) < max(abs(r), s):
        k += 1
    return k


class _Dyadic:
    """Midpoint bisection of x=0 and x=1 in normalized coordinates."""

    def __init__(self, view: View, ratio: Fraction):
        self.view = view
        self.ratio = ratio

    def left(self, j: int, l: int) -> Point:
        return Point._make(Fraction(0), Fraction(l, 2 ** j))

    def right(self, j: int, l: int) -> Point:
        return Point._make(Fraction(1), self.ratio * Fraction(l, 2 ** j))

    def ensure(self, j: int, l: int) -> None:
        if self.left(j, l) in self.view and self.right(j, l) in self.view:
            return
        if j == 0:
            raise TraceError("normalized quad missing from the construction")
        if l % 2 == 0:
            self.ensure(j - 1, l // 2)
            return
        m = l // 2
        self.ensure(j - 1, m)
        self.ensure(j - 1, m + 1)
        u, v = _midpoint_steps(
            self.view,
            self.left(j - 1, m + 1),
            self.right(j - 1, m + 1),
            self.left(j - 1, m),
            self.right(j - 1, m),
        )
        assert u == self.left(j, l) and v == self.right(j, l)


@dataclass(frozen=True)
class DyadicSubdivision:
    points: PointSet
    trace: ConstructionTrace  # seed is the normalized quad


def _check_ratio(r: int, s: int) -> Fraction:
    if s <= 0 or gcd(abs(r), s) != 1:
        raise DegenerateError("ratio must be reduced with positive denominator")
    ratio = Fraction(r, s)
    if ratio in (0, 1, -1):
        raise DegenerateError(f"ratio {ratio} gives a degenerate quad")
    return ratio


def dyadic_points(ratio_r: int, ratio_s: int, k: int) -> DyadicSubdivision:
    """The points (0, l/2^k) and (1, r*l/(s*2^k)) for 0 <= l <= 2^k, with the
    midpoint steps that derive them from the normalized quad."""
    ratio = _check_ratio(ratio_r, ratio_s)
    if k < 0:
        raise ValueError("k must be nonnegative")
    builder = Builder(sorted(normalized_quad(ratio)))
    dy = _Dyadic(View(builder), ratio)
    for l in range(2 ** k + 1):
        dy.ensure(k, l)
    pts = [dy.left(k, l) for l in range(2 ** k + 1)] + [dy.right(k, l) for l in range(2 ** k + 1)]
    return DyadicSubdivision(PointSet(pts), builder.trace())


class Slope(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


SIX_POINT_SEEDS = {
    Slope.POSITIVE: PointSet([(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]),
    Slope.NEGATIVE: PointSet([(0, 0), (0, 1), (0, 2), (1, 0), (1, -1), (1, -2)]),
}

# (x, y) -> (x, y + 2x) carries the negative seed onto the positive one
_SHEAR = Affine.linear(Mat2.of(1, 0, 2, 1))


def _P(x, y) -> Point:
    return Point._make(Fraction(x), Fraction(y))


class _Grid:
    """Integer points built from the positive six-point seed.

    A column c is complete when (c,0), (c,1), (c,2) exist; a row when (0,r),
    (1,r), (2,r) exist.  Reflecting column a through column b gives column
    2b - a, and similarly for rows; binary expansion reaches any integer in
    logarithmically many reflections.
    """

    def __init__(self, view: View):
        self.v = view
        self.cols = {0, 1}
        self.rows: set[int] = set()
        self._reflect_col(0, 1)
        self.rows = {0, 1, 2}

    def _reflect_col(self, a: int, b: int) -> None:
        c = 2 * b - a
        m = self.v.meet
        got0 = m(_P(a, 2), _P(b, 1), _P(0, 0), _P(1, 0))
        got2 = m(_P(a, 0), _P(b, 1), _P(0, 2), _P(1, 2))
        got1 = m(_P(c, 0), _P(c, 2), _P(0, 1), _P(1, 1))
        assert (got0, got1, got2) == (_P(c, 0), _P(c, 1), _P(c, 2))
        self.cols.add(c)

    def _reflect_row(self, a: int, b: int) -> None:
        c = 2 * b - a
        m = self.v.meet
        got0 = m(_P(2, a), _P(1, b), _P(0, 0), _P(0, 1))
        got2 = m(_P(0, a), _P(1, b), _P(2, 0), _P(2, 1))
        got1 = m(_P(0, c), _P(2, c), _P(1, 0), _P(1, 1))
        assert (got0, got1, got2) == (_P(0, c), _P(1, c), _P(2, c))
        self.rows.add(c)

    def _ensure(self, n: int, have: set[int], reflect) -> None:
        if n in have:
            return
        if n < 0:
            self._ensure(-n, have, reflect)
            reflect(-n, 0)
            return
        h = n // 2
        self._ensure(h, have, reflect)
        if n % 2 == 0:
            reflect(0, h)
        else:
            self._ensure(-1, have, reflect)
            reflect(-1, h)

    def column(self, n: int) -> None:
        self._ensure(n, self.cols, self._reflect_col)

    def row(self, n: int) -> None:
        self._ensure(n, self.rows, self._reflect_row)

    def lattice(self, x: int, y: int) -> Point:
        target = _P(x, y)
        if target in self.v:
            return target
        self.column(x)
        self.row(y)
        got = self.v.meet(_P(x, 0), _P(x, 1), _P(0, y), _P(1, y))
        assert got == target
        return got

    def rational(self, target: Point) -> Point:
        if target in self.v:
            return target
        d = target[0].denominator * target[1].denominator // gcd(target[0].denominator, target[1].denominator)
        if d == 1:
            return self.lattice(int(target[0]), int(target[1]))
        # target lies on the line from base B to the lattice point B + d(target - B)
        bases = [_P(0, 0), _P(1, 0), _P(0, 1), _P(1, 1)]
        for b1, b2 in combinations(bases, 2):
            if line_through(b1, target) != line_through(b2, target):
                break
        far = []
        for b in (b1, b2):
            fx = b[0] + d * (target[0] - b[0])
            fy = b[1] + d * (target[1] - b[1])
            far.append(self.lattice(int(fx), int(fy)))
        got = self.v.meet(b1, far[0], b2, far[1])
        assert got == target
        return got


def _grid_reach(view: View, target: Point) -> Point:
    return _Grid(view).rational(target)


def six_point_reach(variant: Slope, target: Point, budget: Optional[Budget] = None) -> ConstructionTrace:
    """A verified trace from a six-point seed to a rational ``target``."""
    budget = budget or Budget()
    seed = SIX_POINT_SEEDS[variant]
    builder = Builder(seed.points, max_steps=budget.max_steps)
    if target not in seed:
        to_storage = _SHEAR.inverse() if variant is Slope.NEGATIVE else None
        view = View(builder, to_storage)
        _grid_reach(view, view.from_storage(target))
    trace = builder.trace(target)
    result = verify_trace(trace)
    if not result.valid:
        raise AssertionError(f"produced an invalid trace: {result}")
    return trace


def _trapezoid_in(pts: tuple[Point, ...]) -> Optional[tuple[Point, Point, Point, Point]]:
    on_line: dict = {}
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            on_line.setdefault(line_through(p, q), set()).update((p, q))
    by_dir: dict = {}
    for ln in sorted(on_line):
        by_dir.setdefault(ln.direction, []).append(ln)
    for direction in sorted(by_dir):
        group = by_dir[direction]
        for l1, l2 in combinations(group, 2):
            for q, r in combinations(sorted(on_line[l1]), 2):
                for t, p in combinations(sorted(on_line[l2]), 2):
                    d1 = (r[0] - q[0], r[1] - q[1])
                    d2 = (p[0] - t[0], p[1] - t[1])
                    if d1 != d2 and d1 != (-d2[0], -d2[1]):
                        return (r, p, q, t)
    return None


def _find_trapezoid(s: PointSet, budget: Budget):
    tower = [s]
    depth = 0
    while True:
        hit = _trapezoid_in(tower[-1].points)
        if hit is not None:
            return TrapezoidQuadruple(*hit, found_at_depth=depth), tower
        if depth >= budget.max_iterations:
            raise BudgetExceeded("max-iterations")
        nxt = levels(tower[-1], 1, budget)
        if len(nxt) == 1:  # fixpoint: nothing new will ever appear
            return None
        tower.append(nxt[1])
        depth += 1


def find_trapezoid(s, budget: Optional[Budget] = None) -> Optional[TrapezoidQuadruple]:
    """First trapezoid quadruple in ``T^i(s)`` for i = 0, 1, ...; None if the
    budget runs out (or a fixpoint is reached) without one."""
    s = s if isinstance(s, PointSet) else PointSet(s)
    budget = budget or Budget()
    try:
        found = _find_trapezoid(s, budget)
    except BudgetExceeded:
        return None
    return None if found is None else found[0]


def reach(
    s, target: Point, budget: Optional[Budget] = None, quad: Optional[TrapezoidQuadruple] = None
) -> ConstructionTrace:
    """A verified trace from ``s`` to the rational point ``target``.

    ``quad`` overrides the search with a quadruple of points of ``s``.
    """
    s = s if isinstance(s, PointSet) else PointSet(s)
    budget = budget or Budget()
    if target in s:
        return ConstructionTrace(s.points, (), target)
    if quad is not None:
        if not all(pt in s for pt in quad.points):
            raise ValueError("the given quadruple must consist of seed points")
        tower = [s]
    else:
        try:
            found = _find_trapezoid(s, budget)
        except BudgetExceeded as exc:
            raise ReachError("find-trapezoid", exc.reason, exhausted=True) from exc
        if found is None:
            raise ReachError("find-trapezoid", "iterates reach a fixpoint without a trapezoid quadruple")
        quad, tower = found
    builder = Builder(s.points, max_steps=budget.max_steps)
    stage = "certify-trapezoid"
    try:
        for pt in quad.points:
            certify(builder, pt, tower)
        stage = "normalize"
        nm = normalize_map(quad)
        to_norm = nm.affine
        r, sden = nm.ratio.numerator, nm.ratio.denominator
        k = subdivision_depth(r, sden)
        stage = "dyadic"
        dy = _Dyadic(View(builder, to_norm.inverse()), nm.ratio)
        for l in (abs(r), 2 * abs(r), sden, 2 * sden):
            dy.ensure(k, l)
        scale = Affine.linear(Mat2.of(1, 0, 0, Fraction(2 ** k, abs(r))))
        to_six = to_norm.then(scale)
        if r < 0:
            to_six = to_six.then(_SHEAR)
        stage = "six-point"
        view = View(builder, to_six.inverse())
        for p6 in SIX_POINT_SEEDS[Slope.POSITIVE]:
            assert p6 in view, "six-point seed not reached"
        _grid_reach(view, to_six(target))
    except BudgetExceeded as exc:
        raise ReachError(stage, exc.reason, exhausted=True) from exc
    trace = builder.trace(target)
    result = verify_trace(trace)
    if not result.valid:
        raise AssertionError(f"produced an invalid trace: {result}")
    return trace
