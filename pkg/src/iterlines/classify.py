"""Closed-form classification of finite point sets by their order.

A finite set has finite order exactly when it is empty, collinear, collinear
with one extra point, the vertices of a parallelogram, or a parallelogram
together with its center.  The shape tests here are exact and never run the
closure operator, so they terminate on infinite-order input.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .closure import PointSet
from .kernel import Line, Point, line_through, midpoint, orientation


class Kind(enum.Enum):
    EMPTY = "empty"
    COLLINEAR = "collinear"
    COLLINEAR_PLUS_ONE = "collinear-plus-one"
    PARALLELOGRAM = "parallelogram"
    PARALLELOGRAM_WITH_CENTER = "parallelogram-with-center"
    INFINITE_ORDER = "infinite-order"


FIXED_KINDS = frozenset({Kind.EMPTY, Kind.COLLINEAR_PLUS_ONE, Kind.PARALLELOGRAM_WITH_CENTER})


@dataclass(frozen=True)
class Configuration:
    kind: Kind
    line: Optional[Line] = None  # collinear kinds; None for a lone point
    apex: Optional[Point] = None  # the point off the line
    vertices: Optional[tuple[Point, Point, Point, Point]] = None  # in cyclic order
    center: Optional[Point] = None

    @property
    def finite_order(self) -> bool:
        return self.kind is not Kind.INFINITE_ORDER

    @property
    def fixed(self) -> bool:
        return self.kind in FIXED_KINDS


def _as_set(s) -> PointSet:
    return s if isinstance(s, PointSet) else PointSet(s)


def parallelogram_vertices(pts: Iterable[Point]) -> Optional[tuple[Point, Point, Point, Point]]:
    """Cyclically ordered vertices if the four points form a parallelogram."""
    a, b, c, d = pts
    if any(orientation(*t) == 0 for t in combinations((a, b, c, d), 3)):
        return None
    # the diagonals bisect each other; try each way of pairing into diagonals
    for (p, q), (r, t) in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
        if midpoint(p, q) == midpoint(r, t):
            return (p, r, q, t)
    return None


def _full_line(pts: tuple[Point, ...], ln: Line) -> int:
    return sum(1 for p in pts if ln.contains(p))


def classify(s) -> Configuration:
    s = _as_set(s)
    pts = s.points
    n = len(pts)
    if n == 0:
        return Configuration(Kind.EMPTY)
    if s.is_collinear():
        return Configuration(Kind.COLLINEAR, line=line_through(pts[0], pts[1]) if n > 1 else None)
    # a line holding all but one point must hold two of any three points
    for p, q in ((pts[0], pts[1]), (pts[0], pts[2]), (pts[1], pts[2])):
        ln = line_through(p, q)
        if _full_line(pts, ln) == n - 1:
            apex = next(r for r in pts if not ln.contains(r))
            return Configuration(Kind.COLLINEAR_PLUS_ONE, line=ln, apex=apex)
    if n == 4:
        verts = parallelogram_vertices(pts)
        if verts is not None:
            return Configuration(Kind.PARALLELOGRAM, vertices=verts)
    if n == 5:
        for c in pts:
            rest = [p for p in pts if p != c]
            verts = parallelogram_vertices(rest)
            if verts is not None and midpoint(verts[0], verts[2]) == c:
                return Configuration(Kind.PARALLELOGRAM_WITH_CENTER, vertices=verts, center=c)
    return Configuration(Kind.INFINITE_ORDER)


def is_fixed(s) -> bool:
    """Whether the closure operator maps ``s`` to itself."""
    return classify(s).fixed


class OrdinaryStatus(enum.Enum):
    FOUND = "found"
    ALL_COLLINEAR = "all-collinear"
    TOO_SMALL = "too-small"


@dataclass(frozen=True)
class OrdinaryLine:
    status: OrdinaryStatus
    line: Optional[Line] = None
    points: Optional[tuple[Point, Point]] = None


def ordinary_line(s) -> OrdinaryLine:
    """A line through exactly two points of ``s``, by exhaustive search.

    One always exists for noncollinear sets (Sylvester-Gallai); sets with
    fewer than three points report TOO_SMALL.
    """
    s = _as_set(s)
    pts = s.points
    if len(pts) < 3:
        return OrdinaryLine(OrdinaryStatus.TOO_SMALL)
    if s.is_collinear():
        return OrdinaryLine(OrdinaryStatus.ALL_COLLINEAR)
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            ln = line_through(p, q)
            if _full_line(pts, ln) == 2:
                return OrdinaryLine(OrdinaryStatus.FOUND, ln, (p, q))
    raise AssertionError("noncollinear set without an ordinary line")
