"""Construction traces: replayable certificates that a point is reachable.

A trace starts from a seed list of points.  Each step names four indices
``i j k l`` into the points accumulated so far and a new point, claiming
``new = line(pt[i], pt[j]) & line(pt[k], pt[l])``.  Steps are stored in a
canonical form so that every certificate has exactly one spelling:

* each line is named by the two smallest indices of accumulated points on it,
  with ``i < j`` and ``k < l``, and the lines are ordered ``(i, j) < (k, l)``;
* the new point is not already among the accumulated points.

The canonical form makes the auditor sensitive to any single-index edit.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .kernel import Affine, Line, Point, as_rational, intersect, line_through


class TraceError(ValueError):
    """A construction could not be carried out, or a trace file is malformed."""


@dataclass(frozen=True)
class TraceStep:
    new_point: Point
    parents: tuple[int, int, int, int]


@dataclass(frozen=True)
class ConstructionTrace:
    seed: tuple[Point, ...]
    steps: tuple[TraceStep, ...]
    target: Optional[Point] = None

    def points(self) -> list[Point]:
        """Seed followed by every constructed point, in index order."""
        return list(self.seed) + [st.new_point for st in self.steps]

    def depth(self, point: Optional[Point] = None) -> int:
        """Least d such that the trace certifies ``point`` in the d-th iterate."""
        point = self.target if point is None else point
        lv = trace_levels(self)
        pts = self.points()
        for i, p in enumerate(pts):
            if p == point:
                return lv[i]
        raise KeyError(point)

    def map(self, f: Callable[[Point], Point]) -> "ConstructionTrace":
        """Push every point through an affine map; indices are unchanged."""
        return ConstructionTrace(
            tuple(f(p) for p in self.seed),
            tuple(TraceStep(f(st.new_point), st.parents) for st in self.steps),
            None if self.target is None else f(self.target),
        )

    def retarget(self, target: Point) -> "ConstructionTrace":
        return ConstructionTrace(self.seed, self.steps, target)


def trace_levels(trace: ConstructionTrace) -> list[int]:
    """Iterate level of every accumulated point: 0 for seed points, else one
    more than the deepest parent."""
    lv = [0] * len(trace.seed)
    for st in trace.steps:
        lv.append(1 + max(lv[i] for i in st.parents))
    return lv


@dataclass(frozen=True)
class VerifyResult:
    valid: bool
    step: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.valid


def _hom(p: Point) -> tuple[int, int, int]:
    # integer homogeneous form for fast incidence tests
    x, y = p
    w = x.denominator * y.denominator
    return (x.numerator * y.denominator, y.numerator * x.denominator, w)


def _first_two_on(line: Line, homs: Sequence[tuple[int, int, int]]) -> tuple[int, int]:
    a, b, c = line
    found = []
    for idx, (X, Y, W) in enumerate(homs):
        if a * X + b * Y + c * W == 0:
            found.append(idx)
            if len(found) == 2:
                break
    return found[0], found[1]


def verify_trace(trace: ConstructionTrace) -> VerifyResult:
    """Replay a trace using only the geometry kernel."""
    pts = list(trace.seed)
    if len(set(pts)) != len(pts):
        return VerifyResult(False, None, "duplicate seed points")
    present = set(pts)
    homs = [_hom(p) for p in pts]
    for n, st in enumerate(trace.steps):
        if len(st.parents) != 4:
            return VerifyResult(False, n, "a step needs four parent indices")
        i, j, k, l = st.parents
        if not all(isinstance(v, int) and 0 <= v < len(pts) for v in st.parents):
            return VerifyResult(False, n, "parent index out of range")
        if not (i < j and k < l and (i, j) < (k, l)):
            return VerifyResult(False, n, "parent indices not in canonical order")
        l1 = line_through(pts[i], pts[j])
        l2 = line_through(pts[k], pts[l])
        if l1 == l2:
            return VerifyResult(False, n, "both parent pairs span the same line")
        if _first_two_on(l1, homs) != (i, j) or _first_two_on(l2, homs) != (k, l):
            return VerifyResult(False, n, "line not named by its two lowest-index points")
        meet = intersect(l1, l2)
        if not isinstance(meet, Point):
            return VerifyResult(False, n, "parent lines are parallel")
        if meet != st.new_point:
            return VerifyResult(False, n, f"claimed {st.new_point!r}, lines meet at {meet!r}")
        if meet in present:
            return VerifyResult(False, n, "step repeats an existing point")
        pts.append(meet)
        present.add(meet)
        homs.append(_hom(meet))
    if trace.target is not None and trace.target not in present:
        return VerifyResult(False, len(trace.steps), "target never constructed")
    return VerifyResult(True)


class Builder:
    """Accumulates points and canonical steps for a trace under construction."""

    def __init__(self, seed: Iterable[Point], max_steps: Optional[int] = None):
        self.points: list[Point] = []
        self.index: dict[Point, int] = {}
        self._homs: list[tuple[int, int, int]] = []
        self.steps: list[TraceStep] = []
        self.seed_size = 0
        self.max_steps = max_steps
        for p in seed:
            self._add(p)
        self.seed_size = len(self.points)
        if self.seed_size != len(set(self.points)):
            raise TraceError("duplicate seed points")

    def _add(self, p: Point) -> int:
        idx = len(self.points)
        self.points.append(p)
        self.index[p] = idx
        self._homs.append(_hom(p))
        return idx

    def meet(self, i: int, j: int, k: int, l: int) -> int:
        """Index of ``line(i, j) & line(k, l)``, adding a step if it is new."""
        pts = self.points
        l1 = line_through(pts[i], pts[j])
        l2 = line_through(pts[k], pts[l])
        p = intersect(l1, l2)
        if not isinstance(p, Point):
            raise TraceError(f"lines {l1} and {l2} are {p.value}")
        have = self.index.get(p)
        if have is not None:
            return have
        if self.max_steps is not None and len(self.steps) >= self.max_steps:
            from .closure import BudgetExceeded

            raise BudgetExceeded("max-steps")
        e1 = _first_two_on(l1, self._homs)
        e2 = _first_two_on(l2, self._homs)
        if e2 < e1:
            e1, e2 = e2, e1
        self.steps.append(TraceStep(p, e1 + e2))
        return self._add(p)

    def meet_points(self, a: Point, b: Point, c: Point, d: Point) -> int:
        ix = self.index
        return self.meet(ix[a], ix[b], ix[c], ix[d])

    def trace(self, target: Optional[Point] = None) -> ConstructionTrace:
        return ConstructionTrace(tuple(self.points[: self.seed_size]), tuple(self.steps), target)


class View:
    """A builder seen through an affine change of coordinates.

    ``to_storage`` maps view coordinates to the builder's coordinates; since
    affine maps send lines to lines, every construction planned in the view
    is carried out exactly in storage.
    """

    def __init__(self, builder: Builder, to_storage: Optional[Affine] = None):
        self.builder = builder
        self.to_storage = to_storage or Affine.identity()
        self.from_storage = self.to_storage.inverse()

    def find(self, p: Point) -> Optional[int]:
        return self.builder.index.get(self.to_storage(p))

    def __contains__(self, p: Point) -> bool:
        return self.find(p) is not None

    def idx(self, p: Point) -> int:
        i = self.find(p)
        if i is None:
            raise TraceError(f"{p!r} has not been constructed")
        return i

    def point(self, i: int) -> Point:
        return self.from_storage(self.builder.points[i])

    def meet(self, a: Point, b: Point, c: Point, d: Point) -> Point:
        """Construct ``line(a, b) & line(c, d)`` (view coordinates)."""
        i = self.builder.meet(self.idx(a), self.idx(b), self.idx(c), self.idx(d))
        return self.point(i)


def certify(builder: Builder, target: Point, tower: Sequence) -> int:
    """Add steps deriving ``target`` from the seed through an iterate tower.

    ``tower[n]`` is the n-th iterate of the builder's seed (a PointSet);
    ``target`` must lie in the last one.
    """
    level = next((n for n, t in enumerate(tower) if target in t), None)
    if level is None:
        raise TraceError(f"{target!r} is not in the supplied iterates")
    if target in builder.index:
        return builder.index[target]
    if level == 0:
        raise TraceError(f"seed point {target!r} missing from builder")
    below = tower[level - 1].points
    # group the previous level by line through target
    pencil: dict[Line, list[Point]] = {}
    for q in below:
        if q != target:
            pencil.setdefault(line_through(target, q), []).append(q)
    pairs = [qs[:2] for _, qs in sorted(pencil.items()) if len(qs) >= 2]
    if len(pairs) < 2:
        raise TraceError(f"{target!r} is not an intersection of the previous level")
    (a, b), (c, d) = pairs[0], pairs[1]
    ia, ib, ic, id_ = (certify(builder, q, tower[:level]) for q in (a, b, c, d))
    return builder.meet(ia, ib, ic, id_)


# --- text format ----------------------------------------------------------

def format_rational(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def parse_rational(tok: str) -> Fraction:
    """Parse ``int`` or ``int/int``; decimals and exponents are rejected."""
    num, sep, den = tok.partition("/")
    for part in (num, den) if sep else (num,):
        body = part[1:] if part[:1] in "+-" else part
        if not body.isdigit() or not body.isascii():
            raise ValueError(f"not an exact rational: {tok!r}")
    if sep and den.startswith(("+", "-")):
        raise ValueError(f"sign belongs on the numerator: {tok!r}")
    if sep and int(den) == 0:
        raise ValueError(f"zero denominator: {tok!r}")
    value = Fraction(int(num), int(den)) if sep else Fraction(int(num))
    return as_rational(value)


def _fmt_point(p: Point) -> str:
    return f"{format_rational(p[0])} {format_rational(p[1])}"


def dumps(trace: ConstructionTrace) -> str:
    if trace.target is None:
        raise TraceError("a serialized trace needs a target")
    out = [f"seed {len(trace.seed)}"]
    out += [_fmt_point(p) for p in trace.seed]
    for st in trace.steps:
        i, j, k, l = st.parents
        out.append(f"step {i} {j} {k} {l} -> {_fmt_point(st.new_point)}")
    out.append(f"target {_fmt_point(trace.target)}")
    return "\n".join(out) + "\n"


def loads(text: str) -> ConstructionTrace:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    pos = 0

    def fail(msg: str):
        raise TraceError(f"line {pos + 1}: {msg}")

    def point(tokens: list[str]) -> Point:
        if len(tokens) != 2:
            fail("expected two coordinates")
        try:
            return Point._make(parse_rational(tokens[0]), parse_rational(tokens[1]))
        except ValueError as exc:
            fail(str(exc))

    if not lines or not lines[0].startswith("seed "):
        fail("expected 'seed n'")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError):
        fail("bad seed count")
    if n < 0 or len(lines) < n + 2:
        fail("truncated seed block")
    seed = []
    for pos in range(1, n + 1):
        seed.append(point(lines[pos].split()))
    steps = []
    target = None
    for pos in range(n + 1, len(lines)):
        toks = lines[pos].split()
        if toks[0] == "step":
            if len(toks) != 8 or toks[5] != "->":
                fail("expected 'step i j k l -> x y'")
            try:
                parents = tuple(int(t) for t in toks[1:5])
            except ValueError:
                fail("parent indices must be integers")
            steps.append(TraceStep(point(toks[6:8]), parents))
        elif toks[0] == "target":
            if pos != len(lines) - 1:
                fail("'target' must be the last line")
            target = point(toks[1:])
        else:
            fail(f"unknown record {toks[0]!r}")
    if target is None:
        fail("missing 'target' line")
    return ConstructionTrace(tuple(seed), tuple(steps), target)
