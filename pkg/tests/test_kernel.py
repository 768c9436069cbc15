from fractions import Fraction as F

import pytest

from iterlines.kernel import (
    Affine,
    DegenerateError,
    Line,
    LineRelation,
    Mat2,
    Point,
    Position,
    as_rational,
    bit_length,
    collinear,
    convex_hull,
    intersect,
    line_through,
    midpoint,
    orientation,
    point_in_triangle,
    squared_distance,
)


def test_floats_refused():
    with pytest.raises(TypeError):
        Point(0.5, 1)
    with pytest.raises(TypeError):
        as_rational(1.0)


def test_point_values_are_reduced():
    p = Point(F(2, 4), "-6/3")
    assert p == (F(1, 2), F(-2)) and p.x == F(1, 2) and p.y == -2
    assert hash(Point(F(2, 4), 0)) == hash(Point(F(1, 2), 0))


def test_line_canonical_form():
    assert line_through(Point(F(1, 2), 0), Point(0, F(1, 3))) == Line(2, 3, -1)
    assert line_through(Point(0, 0), Point(0, 5)) == Line(1, 0, 0)
    assert line_through(Point(1, 1), Point(3, 1)) == line_through(Point(7, 1), Point(-2, 1)) == Line(0, 1, -1)
    assert Line.from_coefficients(-F(1, 2), 1, F(1, 3)) == Line(3, -6, -2)
    with pytest.raises(DegenerateError):
        line_through(Point(1, 2), Point(1, 2))
    with pytest.raises(DegenerateError):
        Line.from_coefficients(0, 0, 1)


def test_intersections():
    x_axis = line_through(Point(0, 0), Point(1, 0))
    diag = line_through(Point(0, 0), Point(1, 1))
    assert intersect(diag, line_through(Point(0, 2), Point(2, 0))) == Point(1, 1)
    assert intersect(x_axis, line_through(Point(0, 1), Point(1, 1))) is LineRelation.PARALLEL
    assert intersect(x_axis, x_axis) is LineRelation.IDENTICAL
    # parallel lines whose normals are different multiples
    assert intersect(Line(1, 2, 0), Line.from_coefficients(2, 4, 1)) is LineRelation.PARALLEL


def test_predicates():
    a, b, c = Point(0, 0), Point(4, 0), Point(0, 4)
    assert orientation(a, b, c) == 1 and orientation(a, c, b) == -1
    assert collinear(a, b, Point(-3, 0))
    assert midpoint(b, c) == Point(2, 2)
    assert squared_distance(a, Point(3, 4)) == 25
    assert point_in_triangle(Point(1, 1), a, b, c) is Position.STRICT_INTERIOR
    assert point_in_triangle(Point(2, 2), a, b, c) is Position.ON_BOUNDARY
    assert point_in_triangle(Point(5, 5), a, b, c) is Position.OUTSIDE
    with pytest.raises(DegenerateError):
        point_in_triangle(Point(1, 1), a, b, Point(8, 0))


def test_convex_hull():
    pts = [Point(x, y) for x in range(3) for y in range(3)]
    assert convex_hull(pts) == [Point(0, 0), Point(2, 0), Point(2, 2), Point(0, 2)]
    assert convex_hull([Point(0, 0), Point(1, 1), Point(2, 2)]) == [Point(0, 0), Point(2, 2)]
    assert convex_hull([Point(1, 1)]) == [Point(1, 1)]
    assert convex_hull([]) == []


def test_bit_length():
    assert bit_length(Point(F(-7, 8), 1)) == 4


def test_affine_roundtrip_and_composition():
    m = Mat2.of(2, 1, F(1, 3), -1)
    f = Affine.linear(m).then(Affine.translation(Point(5, F(-1, 2))))
    p = Point(F(3, 7), -4)
    assert f(p) == Point(2 * p.x + p.y + 5, p.x / 3 - p.y - F(1, 2))
    assert f.inverse()(f(p)) == p
    assert f.then(f.inverse())(p) == p
    with pytest.raises(DegenerateError):
        Affine.linear(Mat2.of(1, 2, 2, 4))
