"""The line-intersection operator on finite point sets and its iteration."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Optional

from .kernel import Line, Point, bit_length, line_through, orientation


class PointSet:
    """Immutable, deduplicated point set iterated in lexicographic order."""

    __slots__ = ("_points", "_members")

    def __init__(self, points: Iterable = ()):
        members = frozenset(p if isinstance(p, Point) else Point(*p) for p in points)
        self._members = members
        self._points = tuple(sorted(members))

    @classmethod
    def _from_members(cls, members: frozenset) -> "PointSet":
        obj = cls.__new__(cls)
        obj._members = members
        obj._points = tuple(sorted(members))
        return obj

    @property
    def points(self) -> tuple[Point, ...]:
        return self._points

    def __iter__(self) -> Iterator[Point]:
        return iter(self._points)

    def __len__(self) -> int:
        return len(self._points)

    def __getitem__(self, i):
        return self._points[i]

    def __contains__(self, p) -> bool:
        return p in self._members

    def __eq__(self, other) -> bool:
        if isinstance(other, PointSet):
            return self._points == other._points
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._points)

    def __le__(self, other: "PointSet") -> bool:
        return self._members <= other._members

    def __or__(self, other: "PointSet") -> "PointSet":
        return PointSet._from_members(self._members | other._members)

    def __repr__(self) -> str:
        inner = ", ".join(f"({p[0]}, {p[1]})" for p in self._points)
        return f"PointSet([{inner}])"

    def is_collinear(self) -> bool:
        pts = self._points
        if len(pts) <= 2:
            return True
        p, q = pts[0], pts[1]
        return all(orientation(p, q, r) == 0 for r in pts[2:])

    def max_bits(self) -> int:
        return max((bit_length(p) for p in self._points), default=0)


@dataclass(frozen=True)
class Budget:
    """Resource caps for computations whose size the mathematics does not bound."""

    max_points: int = 20_000
    max_bits: int = 4096
    max_seconds: float = 60.0
    max_iterations: int = 32
    max_steps: int = 200_000

    def __post_init__(self):
        for name in ("max_points", "max_bits", "max_seconds", "max_iterations", "max_steps"):
            if getattr(self, name) <= 0:
                raise ValueError(f"budget {name} must be positive")

    def deadline(self) -> float:
        return time.monotonic() + self.max_seconds


class BudgetExceeded(RuntimeError):
    """A resource cap was hit before the computation finished."""

    def __init__(self, reason: str, stats: Optional["GrowthStats"] = None):
        super().__init__(reason)
        self.reason = reason
        self.stats = stats


@dataclass(frozen=True)
class IterationRecord:
    index: int
    points: int
    lines: int
    max_bits: int
    seconds: float


@dataclass
class GrowthStats:
    records: list[IterationRecord] = field(default_factory=list)
    stopped: str = ""  # "fixpoint", "max-iterations" or the budget reason

    @property
    def counts(self) -> list[int]:
        return [r.points for r in self.records]


@dataclass(frozen=True)
class OrderResult:
    """``order`` is the finite order, or None when the budget ran out first."""

    order: Optional[int]
    stats: GrowthStats

    @property
    def finite(self) -> bool:
        return self.order is not None


def spanned_lines(s: Iterable[Point]) -> list[Line]:
    """Distinct lines through pairs of points, in canonical order."""
    pts = list(s) if not isinstance(s, PointSet) else s.points
    lines = set()
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            lines.add(line_through(p, q))
    return sorted(lines)


def _to_point(X: int, Y: int, W: int) -> Point:
    return Point._make(Fraction(X, W), Fraction(Y, W))


def t_step(s: PointSet, budget: Optional[Budget] = None, deadline: Optional[float] = None) -> PointSet:
    """All intersections of pairs of distinct lines spanned by ``s``.

    Empty and collinear sets map to the empty set.
    """
    if not isinstance(s, PointSet):
        s = PointSet(s)
    if s.is_collinear():
        return PointSet()
    if budget is not None and deadline is None:
        deadline = budget.deadline()
    lines = spanned_lines(s)
    # parallel lines never meet, so only cross-direction pairs are enumerated
    by_dir: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
    for ln in lines:
        by_dir.setdefault(ln.direction, []).append(ln)
    groups = sorted(by_dir.values())
    found: set[tuple[int, int, int]] = set()
    add = found.add
    cap = budget.max_points if budget is not None else None
    checked = deadline is not None or cap is not None
    work = 0
    for gi, g1 in enumerate(groups):
        for g2 in groups[gi + 1:]:
            if checked:
                work += len(g1) * len(g2)
                if work > 50_000:
                    work = 0
                    if deadline is not None and time.monotonic() > deadline:
                        raise BudgetExceeded("max-seconds")
                    if cap is not None and len(found) > cap:
                        raise BudgetExceeded("max-points")
            for a1, b1, c1 in g1:
                for a2, b2, c2 in g2:
                    det = a1 * b2 - a2 * b1
                    X = b1 * c2 - b2 * c1
                    Y = c1 * a2 - c2 * a1
                    g = gcd(gcd(X, Y), det)
                    if det < 0:
                        g = -g
                    add((X // g, Y // g, det // g))
    members = frozenset(_to_point(X, Y, W) for X, Y, W in found)
    return PointSet._from_members(members)


def _check(t: PointSet, budget: Budget) -> None:
    if len(t) > budget.max_points:
        raise BudgetExceeded("max-points")
    if t.max_bits() > budget.max_bits:
        raise BudgetExceeded("max-bits")


def iterate(s: PointSet, n: int, budget: Optional[Budget] = None) -> PointSet:
    """``T^n(s)`` with ``T^0(s) = s``; raises BudgetExceeded past the caps."""
    if n < 0:
        raise ValueError("iteration count must be nonnegative")
    if not isinstance(s, PointSet):
        s = PointSet(s)
    budget = budget or Budget()
    deadline = budget.deadline()
    cur = s
    for _ in range(n):
        nxt = t_step(cur, budget, deadline)
        _check(nxt, budget)
        if nxt == cur:
            break
        cur = nxt
    return cur


def levels(s: PointSet, n: int, budget: Optional[Budget] = None) -> list[PointSet]:
    """``[T^0(s), ..., T^n(s)]``, stopping early at a fixpoint."""
    budget = budget or Budget()
    deadline = budget.deadline()
    out = [s if isinstance(s, PointSet) else PointSet(s)]
    for _ in range(n):
        nxt = t_step(out[-1], budget, deadline)
        _check(nxt, budget)
        if nxt == out[-1]:
            break
        out.append(nxt)
    return out


def growth_stats(s: PointSet, max_iters: int, budget: Optional[Budget] = None) -> GrowthStats:
    """Per-iteration size, line count and coordinate size, up to a fixpoint."""
    if not isinstance(s, PointSet):
        s = PointSet(s)
    budget = budget or Budget()
    deadline = budget.deadline()
    stats = GrowthStats()
    cur = s
    stats.records.append(IterationRecord(0, len(cur), len(spanned_lines(cur)), cur.max_bits(), 0.0))
    for i in range(1, max_iters + 1):
        t0 = time.perf_counter()
        try:
            nxt = t_step(cur, budget, deadline)
            _check(nxt, budget)
        except BudgetExceeded as exc:
            stats.stopped = exc.reason
            return stats
        elapsed = time.perf_counter() - t0
        # counting lines of a huge final set would cost a full extra step
        n_lines = len(spanned_lines(nxt)) if len(nxt) <= 2000 else -1
        stats.records.append(IterationRecord(i, len(nxt), n_lines, nxt.max_bits(), elapsed))
        if nxt == cur:
            stats.stopped = "fixpoint"
            return stats
        cur = nxt
    stats.stopped = "max-iterations"
    return stats


def order(s: PointSet, budget: Optional[Budget] = None) -> OrderResult:
    """Smallest n >= 1 with ``T^n(s) = T^(n-1)(s)``, within the budget.

    A nonempty collinear set has order 2 and the empty set order 1.
    """
    budget = budget or Budget()
    stats = growth_stats(s, budget.max_iterations, budget)
    if stats.stopped == "fixpoint":
        return OrderResult(stats.records[-1].index, stats)
    return OrderResult(None, stats)
