import itertools
import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.spatial import Delaunay

from blossomspin.bernstein import (
    BezierCurve,
    bernstein_all,
    bernstein_basis,
    blossom,
    control_point_label,
    control_polygon_distance,
    degree_elevate,
    derivative,
    evaluate,
    evaluate_direct,
    subdivide,
)


def exact_point(points, t):
    """Bezier point in rational arithmetic."""
    d = len(points) - 1
    t = Fraction(t)
    return [
        sum(math.comb(d, i) * (1 - t) ** (d - i) * t**i * Fraction(points[i][c]) for i in range(d + 1))
        for c in range(len(points[0]))
    ]


# basis ---------------------------------------------------------------------


@pytest.mark.parametrize("t", [0.0, 0.2, 0.5, 1.0, -3.0, 7.5])
def test_linear_basis_is_t(t):
    assert bernstein_basis(1, 1, t) == pytest.approx(t, abs=1e-15)


def test_basis_value_middle():
    assert bernstein_basis(4, 2, 0.5) == 0.375


def test_partition_example():
    assert abs(sum(bernstein_basis(4, i, 0.3) for i in range(5)) - 1.0) < 1e-15


@pytest.mark.parametrize("i", [-1, 5])
def test_basis_index_out_of_range(i):
    with pytest.raises(ValueError):
        bernstein_basis(4, i, 0.3)


@given(st.integers(0, 20), st.floats(0.0, 1.0))
def test_partition_of_unity_unit_interval(d, t):
    assert abs(bernstein_all(d, t).sum() - 1.0) <= 1e-12


@given(st.integers(1, 20), st.floats(-3.0, 4.0))
def test_partition_of_unity_real_line(d, t):
    # off [0, 1] terms alternate in sign; the sum of their sizes is (|1-t| + |t|)^d
    cond = (abs(1 - t) + abs(t)) ** d
    assert abs(bernstein_all(d, t).sum() - 1.0) <= 1e-14 * cond * (d + 1)


def test_partition_of_unity_random_sweep(rng):
    for d in range(21):
        for t in rng.uniform(0, 1, size=100):
            assert abs(sum(bernstein_basis(d, i, t) for i in range(d + 1)) - 1.0) < 1e-12


def test_positivity_dense_grid():
    grid = np.linspace(0.0, 1.0, 401)
    for d in range(21):
        for t in grid:
            assert np.all(bernstein_all(d, t) >= 0.0)


@pytest.mark.parametrize("d,i,t", [(5, 2, 0.3), (12, 7, 0.81), (20, 0, 0.999), (60, 30, 1.5), (60, 12, -2.0)])
def test_basis_matches_exact_formula(d, i, t):
    ref = math.comb(d, i) * Fraction(1 - Fraction(t)) ** (d - i) * Fraction(t) ** i
    assert bernstein_basis(d, i, t) == pytest.approx(float(ref), rel=1e-12, abs=1e-300)


def test_large_t_does_not_overflow():
    v = bernstein_basis(60, 60, 3.0)
    assert math.isfinite(v)
    assert v == pytest.approx(3.0**60, rel=1e-12)


# evaluation ----------------------------------------------------------------


def test_segment_midpoint():
    c = BezierCurve([[0.0, 0.0], [2.0, 4.0]])
    assert np.allclose(evaluate(c, 0.5), [1.0, 2.0])


def test_endpoint_interpolation(rng):
    c = BezierCurve(rng.normal(size=(6, 3)))
    assert np.array_equal(evaluate(c, 0.0), c.control_points[0])
    assert np.array_equal(evaluate(c, 1.0), c.control_points[-1])


def test_evaluate_frozen_value():
    # exact rational value 709697/500000, 67303/100000
    c = BezierCurve([[0, 0], [1, 2], [3, -1], [4, 1]])
    got = evaluate(c, 0.37)
    assert abs(got[0] - 1.419394) < 1e-14
    assert abs(got[1] - 0.67303) < 1e-14


def test_evaluate_against_rational_arithmetic(rng):
    pts = rng.integers(-9, 10, size=(6, 2)).tolist()
    c = BezierCurve(pts)
    for t in (0.37, 0.5, 0.91, 0.03):
        ref = [float(x) for x in exact_point(pts, t)]
        assert np.allclose(evaluate(c, t), ref, atol=1e-12, rtol=0)


def test_degree5_matches_direct_sum(rng):
    c = BezierCurve(rng.normal(size=(6, 2)))
    assert np.max(np.abs(evaluate(c, 0.37) - evaluate_direct(c, 0.37))) < 1e-12


def test_casteljau_matches_direct_sum_up_to_degree_20(rng):
    for d in range(21):
        c = BezierCurve(rng.normal(size=(d + 1, 3)))
        for t in rng.uniform(0, 1, size=20):
            assert np.max(np.abs(evaluate(c, t) - evaluate_direct(c, t))) < 1e-12


def test_convex_hull_membership(rng):
    for _ in range(20):
        c = BezierCurve(rng.normal(size=(6, 2)))
        hull = Delaunay(c.control_points)
        pts = np.array([evaluate(c, t) for t in np.linspace(0, 1, 50)])
        inside = hull.find_simplex(pts, tol=1e-12) >= 0
        assert inside.all()


# blossom -------------------------------------------------------------------


def test_blossom_gives_control_points(rng):
    d = 5
    c = BezierCurve(rng.normal(size=(d + 1, 2)))
    for i in range(d + 1):
        args = [0.0] * (d - i) + [1.0] * i
        assert np.allclose(blossom(c, args), c.control_points[i], atol=1e-15)


def test_blossom_diagonal(rng):
    c = BezierCurve(rng.normal(size=(7, 3)))
    for t in rng.uniform(-0.5, 1.5, size=10):
        assert np.max(np.abs(blossom(c, [t] * 6) - evaluate(c, t))) < 1e-12


def test_blossom_symmetric_over_all_orders(rng):
    for d in range(1, 6):
        c = BezierCurve(rng.normal(size=(d + 1, 2)))
        args = rng.uniform(0, 1, size=d)
        ref = blossom(c, args)
        for perm in itertools.permutations(args):
            assert np.max(np.abs(blossom(c, perm) - ref)) < 1e-12


def test_blossom_multiaffine(rng):
    d = 4
    c = BezierCurve(rng.normal(size=(d + 1, 2)))
    for _ in range(100):
        args = rng.uniform(0, 1, size=d)
        slot = rng.integers(d)
        a, b, lam = rng.uniform(-1, 2, size=3)
        xa, xb, xm = args.copy(), args.copy(), args.copy()
        xa[slot], xb[slot], xm[slot] = a, b, lam * a + (1 - lam) * b
        mix = lam * blossom(c, xa) + (1 - lam) * blossom(c, xb)
        assert np.max(np.abs(blossom(c, xm) - mix)) < 1e-12


def test_blossom_wrong_argument_count():
    c = BezierCurve([[0.0], [1.0], [3.0]])
    with pytest.raises(ValueError):
        blossom(c, [0.5])


def test_degree_zero_curve():
    c = BezierCurve([[2.0, -1.0]])
    assert c.degree == 0
    assert np.array_equal(blossom(c, []), [2.0, -1.0])
    assert np.array_equal(evaluate(c, 0.3), [2.0, -1.0])
    assert degree_elevate(c).degree == 1


# elevation, subdivision, derivative ----------------------------------------


def test_elevate_segment():
    up = degree_elevate(BezierCurve([[0.0, 0.0], [2.0, 2.0]]))
    assert up.degree == 2
    assert np.allclose(up.control_points[1], [1.0, 1.0])


def test_elevation_keeps_the_curve(rng):
    c = BezierCurve(rng.normal(size=(5, 2)))
    up = degree_elevate(c)
    for t in rng.uniform(0, 1, size=100):
        assert np.max(np.abs(evaluate(up, t) - evaluate(c, t))) < 1e-12


def test_repeated_elevation_polygon_approaches_curve():
    c = BezierCurve([[0.0, 0.0], [1.0, 3.0], [3.0, -2.0], [4.0, 1.0]])
    dist = []
    for _ in range(50):
        c = degree_elevate(c)
        dist.append(control_polygon_distance(c, samples=4001))
    tail = dist[5:]
    assert all(b <= a + 1e-9 for a, b in zip(tail, tail[1:]))
    assert dist[-1] < 0.2 * dist[0]


def test_subdivide_segment():
    left, right = subdivide(BezierCurve([[0.0], [2.0]]), 0.5)
    assert np.allclose(left.control_points.ravel(), [0.0, 1.0])
    assert np.allclose(right.control_points.ravel(), [1.0, 2.0])


def test_subdivide_reparameterization(rng):
    c = BezierCurve(rng.normal(size=(6, 3)))
    t = 0.37
    left, right = subdivide(c, t)
    for s in rng.uniform(0, 1, size=100):
        assert np.max(np.abs(evaluate(left, s) - evaluate(c, s * t))) < 1e-12
        assert np.max(np.abs(evaluate(right, s) - evaluate(c, t + s * (1 - t)))) < 1e-12


def test_subdivide_quadratic_matches_pyramid():
    P = np.array([[0.0, 0.0], [1.0, 2.0], [3.0, 0.5]])
    t = 0.3
    a = (1 - t) * P[0] + t * P[1]
    b = (1 - t) * P[1] + t * P[2]
    m = (1 - t) * a + t * b
    left, right = subdivide(BezierCurve(P), t)
    assert np.allclose(left.control_points, [P[0], a, m], atol=1e-15)
    assert np.allclose(right.control_points, [m, b, P[2]], atol=1e-15)


def test_subdivide_pieces_are_blossom_values(rng):
    d = 4
    c = BezierCurve(rng.normal(size=(d + 1, 2)))
    t = 0.6
    left, right = subdivide(c, t)
    for k in range(d + 1):
        assert np.allclose(left.control_points[k], blossom(c, [0.0] * (d - k) + [t] * k), atol=1e-13)
        assert np.allclose(right.control_points[k], blossom(c, [t] * (d - k) + [1.0] * k), atol=1e-13)


@pytest.mark.parametrize("t", [0.0, 1.0, -0.1, 1.5])
def test_subdivide_rejects_closed_endpoints(t):
    with pytest.raises(ValueError):
        subdivide(BezierCurve([[0.0], [1.0]]), t)


def test_derivative_of_segment():
    h = derivative(BezierCurve([[1.0, 1.0], [3.0, 0.0]]))
    assert h.degree == 0
    assert np.allclose(h.control_points[0], [2.0, -1.0])


def test_derivative_finite_difference(rng):
    c = BezierCurve(rng.normal(size=(6, 2)))
    dc = derivative(c)
    h = 1e-5
    for t in (0.1, 0.37, 0.8):
        fd = (evaluate(c, t + h) - evaluate(c, t - h)) / (2 * h)
        exact = evaluate(dc, t)
        assert np.max(np.abs(fd - exact)) <= 1e-6 * max(1.0, np.max(np.abs(exact)))


def test_derivative_of_constant_curve():
    dc = derivative(BezierCurve([[2.0, 5.0]] * 4))
    assert np.all(dc.control_points == 0.0)


def test_derivative_degree_zero_raises():
    with pytest.raises(ValueError):
        derivative(BezierCurve([[1.0]]))


# type and file format ------------------------------------------------------


def test_curve_is_immutable():
    c = BezierCurve([[0.0, 1.0], [2.0, 3.0]])
    with pytest.raises(ValueError):
        c.control_points[0, 0] = 5.0


def test_json_roundtrip():
    c = BezierCurve([[0.0, 1.0], [2.0, 3.0], [4.0, -1.0]])
    text = json.dumps(c.to_dict())
    assert json.loads(text) == {"degree": 2, "points": [[0.0, 1.0], [2.0, 3.0], [4.0, -1.0]]}
    assert BezierCurve.from_json(text) == c


@pytest.mark.parametrize(
    "data",
    [
        {"degree": 2, "points": [[0.0], [1.0]]},
        {"degree": 1, "points": [[0.0, 1.0], [1.0]]},
        {"points": [[0.0], [1.0]]},
        {"degree": 1, "points": "nope"},
        [1, 2, 3],
    ],
)
def test_malformed_curve_objects(data):
    with pytest.raises(ValueError):
        BezierCurve.from_dict(data)


def test_control_point_labels():
    assert control_point_label(3, 0) == "0^3"
    assert control_point_label(3, 2) == "0^1 1^2"
    assert control_point_label(3, 3) == "1^3"
