from fractions import Fraction as F

import pytest

from iterlines.kernel import Affine, Mat2, Point
from iterlines.rational import reach
from iterlines.trace import (
    Builder,
    ConstructionTrace,
    TraceError,
    TraceStep,
    dumps,
    loads,
    parse_rational,
    verify_trace,
)

SQUARE = [Point(0, 0), Point(0, 1), Point(1, 0), Point(1, 1)]
CENTER = Point(F(1, 2), F(1, 2))


def square_trace():
    b = Builder(SQUARE)
    b.meet(0, 3, 1, 2)
    return b.trace(CENTER)


def test_builder_emits_canonical_steps():
    tr = square_trace()
    assert tr.steps == (TraceStep(CENTER, (0, 3, 1, 2)),)
    assert verify_trace(tr) and tr.depth() == 1
    b = Builder(SQUARE)
    assert b.meet(2, 1, 3, 0) == 4 and b.steps[0].parents == (0, 3, 1, 2)
    assert b.meet(0, 3, 1, 2) == 4 and len(b.steps) == 1  # already present


def test_builder_names_lines_by_lowest_indices():
    seed = [Point(0, 0), Point(1, 0), Point(2, 0), Point(0, 1), Point(2, 1)]
    b = Builder(seed)
    b.meet(2, 4, 1, 3)  # x = 2 meets the line through (1, 0) and (0, 1)
    b.meet(1, 4, 2, 3)
    assert [st.parents for st in b.steps] == [(1, 3, 2, 4), (1, 4, 2, 3)]
    assert verify_trace(b.trace())


def test_builder_rejects_parallel_lines():
    with pytest.raises(TraceError):
        Builder(SQUARE).meet(0, 1, 2, 3)


def test_verifier_reasons():
    base = square_trace()

    def with_step(step, target=CENTER):
        return ConstructionTrace(base.seed, (step,), target)

    cases = {
        (0, 3, 1, 7): "out of range",
        (1, 2, 0, 3): "canonical order",
        (0, 1, 2, 3): "parallel",
        (0, 1, 0, 1): "canonical order",
    }
    for parents, why in cases.items():
        res = verify_trace(with_step(TraceStep(CENTER, parents)))
        assert not res and res.step == 0 and why in res.reason, (parents, res)
    res = verify_trace(with_step(TraceStep(Point(F(1, 2), F(3, 2)), (0, 3, 1, 2))))
    assert not res and "claimed" in res.reason
    res = verify_trace(ConstructionTrace(base.seed, base.steps, Point(5, 5)))
    assert not res and res.reason == "target never constructed"
    dup = ConstructionTrace(tuple(SQUARE + [SQUARE[0]]), (), SQUARE[0])
    assert not verify_trace(dup)


def test_repeated_point_is_rejected():
    seed = SQUARE + [CENTER]
    tr = ConstructionTrace(tuple(seed), (TraceStep(CENTER, (0, 3, 1, 2)),), CENTER)
    assert verify_trace(tr).reason == "step repeats an existing point"


def test_affine_images_stay_valid():
    tr = reach([(0, 0), (3, 0), (1, 1), (2, 1)], Point(F(7, 3), F(-5, 2)))
    f = Affine(Mat2.of(3, F(1, 2), -1, 2), Point(F(-4, 9), 11))
    assert verify_trace(tr.map(f))


def test_text_format_roundtrip():
    tr = reach([(0, 0), (3, 0), (1, 1), (2, 1)], Point(F(7, 3), F(-5, 2)))
    text = dumps(tr)
    assert text.startswith("seed 4\n0/1 0/1\n") and text.endswith("target 7/3 -5/2\n")
    assert loads(text) == tr and dumps(loads(text)) == text


@pytest.mark.parametrize(
    "text",
    [
        "",
        "seed 1\n0 0\n",
        "seed 2\n0 0\n",
        "seed 1\n0.5 0\ntarget 0 0\n",
        "seed 1\n0 0\nstep 0 0 0 -> 1 1\ntarget 0 0\n",
        "seed 1\n0 0\ntarget 0 0\nstep 0 1 2 3 -> 1 1\n",
        "seed 1\n0 0\nbogus\ntarget 0 0\n",
    ],
)
def test_loads_rejects_malformed(text):
    with pytest.raises(TraceError):
        loads(text)


def test_parse_rational():
    assert parse_rational("-6/4") == F(-3, 2) and parse_rational("+7") == 7
    for bad in ("1.5", "1e3", "1/0", "1/-2", "", "a", "1/2/3"):
        with pytest.raises(ValueError):
            parse_rational(bad)
