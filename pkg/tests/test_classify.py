from fractions import Fraction as F
import random

from helpers import random_parallelogram
from iterlines.classify import Kind, OrdinaryStatus, classify, is_fixed, ordinary_line
from iterlines.closure import PointSet, t_step


def test_kinds():
    assert classify([]).kind is Kind.EMPTY
    assert classify([(1, 1)]).kind is Kind.COLLINEAR
    assert classify([(0, 0), (1, 2), (2, 4)]).kind is Kind.COLLINEAR
    c = classify([(0, 0), (1, 0), (5, 0), (2, 7)])
    assert c.kind is Kind.COLLINEAR_PLUS_ONE and c.apex == (2, 7)
    assert classify([(0, 0), (1, 0), (0, 1)]).kind is Kind.COLLINEAR_PLUS_ONE
    sq = classify([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert sq.kind is Kind.PARALLELOGRAM and not sq.fixed and sq.finite_order
    pwc = classify([(0, 0), (1, 0), (0, 1), (1, 1), (F(1, 2), F(1, 2))])
    assert pwc.kind is Kind.PARALLELOGRAM_WITH_CENTER and pwc.center == (F(1, 2), F(1, 2))
    assert classify([(0, 0), (3, 0), (1, 1), (2, 1)]).kind is Kind.INFINITE_ORDER
    assert classify([(0, 0), (1, 0), (0, 1), (1, 1), (1, 2)]).kind is Kind.INFINITE_ORDER
    # four points with only the center-type fifth point off
    assert classify([(0, 0), (2, 0), (0, 2), (2, 2), (1, 2)]).kind is Kind.INFINITE_ORDER


def test_fixed_sets_are_fixed_by_the_operator():
    rng = random.Random(3)
    for _ in range(10):
        verts, center = random_parallelogram(rng)
        s = PointSet(verts + [center])
        assert is_fixed(s) and t_step(s) == s
        assert not is_fixed(PointSet(verts))


def test_ordinary_line():
    assert ordinary_line([(0, 0), (1, 1)]).status is OrdinaryStatus.TOO_SMALL
    assert ordinary_line([(0, 0), (1, 1), (2, 2)]).status is OrdinaryStatus.ALL_COLLINEAR
    res = ordinary_line([(0, 0), (1, 0), (2, 0), (0, 1)])
    assert res.status is OrdinaryStatus.FOUND
    assert sum(res.line.contains(p) for p in [(0, 0), (1, 0), (2, 0), (0, 1)]) == 2
