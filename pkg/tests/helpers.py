"""Random instance generators and an independent brute-force oracle."""
from fractions import Fraction
from itertools import combinations

from iterlines.kernel import Point


def rat(rng, num=12, den=6):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rpoint(rng, num=12, den=6):
    return Point(rat(rng, num, den), rat(rng, num, den))


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def random_trapezoid(rng):
    """(r, p, q, t) with rq || pt, p off line rq, and t = p + lam (q - r)
    for lam outside {0, 1, -1}."""
    while True:
        r, q, p = rpoint(rng), rpoint(rng), rpoint(rng)
        if r == q or _cross(r, q, p) == 0:
            continue
        lam = rat(rng, 8, 5)
        if lam in (0, 1, -1):
            continue
        t = Point(p[0] + lam * (q[0] - r[0]), p[1] + lam * (q[1] - r[1]))
        return r, p, q, t


def random_triangle(rng, num=12, den=6):
    while True:
        a, b, c = rpoint(rng, num, den), rpoint(rng, num, den), rpoint(rng, num, den)
        if _cross(a, b, c) != 0:
            return a, b, c


def random_interior(rng, a, b, c):
    w = [Fraction(rng.randint(1, 9)) for _ in range(3)]
    tot = sum(w)
    return Point(
        (w[0] * a[0] + w[1] * b[0] + w[2] * c[0]) / tot,
        (w[0] * a[1] + w[1] * b[1] + w[2] * c[1]) / tot,
    )


def random_parallelogram(rng):
    while True:
        a, u, v = rpoint(rng), rpoint(rng, 6, 4), rpoint(rng, 6, 4)
        if u[0] * v[1] - u[1] * v[0] == 0:
            continue
        pts = [a, Point(a[0] + u[0], a[1] + u[1]), Point(a[0] + v[0], a[1] + v[1]),
               Point(a[0] + u[0] + v[0], a[1] + u[1] + v[1])]
        center = Point(a[0] + (u[0] + v[0]) / 2, a[1] + (u[1] + v[1]) / 2)
        return pts, center


def brute_force_t(points):
    """Every intersection of two distinct spanned lines, by Cramer's rule over
    all pairs of point pairs.  Deliberately unoptimized."""
    pts = [tuple(Fraction(c) for c in p) for p in points]
    pairs = list(combinations(pts, 2))
    out = set()
    for (p1, p2), (p3, p4) in combinations(pairs, 2):
        if _cross(p1, p2, p3) == 0 and _cross(p1, p2, p4) == 0:
            continue  # same line
        a1, b1 = p2[1] - p1[1], p1[0] - p2[0]
        c1 = a1 * p1[0] + b1 * p1[1]
        a2, b2 = p4[1] - p3[1], p3[0] - p4[0]
        c2 = a2 * p3[0] + b2 * p3[1]
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        out.add(((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det))
    return out
