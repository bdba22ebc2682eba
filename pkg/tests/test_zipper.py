import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gapscope.errors import DomainError
from gapscope.zipper import (
    ZipperedRectangles,
    arc_parameter,
    check_gap_zipper_correspondence,
    cutoff_d,
    cutoff_f,
    zipper_arc_param,
    zipper_torus,
)

GOLD = 3 / math.sqrt(2) - 2  # the short gap scale at level 9


def test_zipper_golden_case():
    zr = zipper_torus("sqrt(1/2)", 9)
    assert zr.case == "generic" and zr.pi == (3, 2, 1)
    assert np.allclose(zr.widths, [2 / 3, 1 / 9, 2 / 9], atol=1e-14)
    A, C = GOLD, 5 - 7 / math.sqrt(2)
    assert np.allclose(zr.heights, [9 * A, 9 * (A + C), 9 * C], atol=1e-12)


def test_zipper_rational_case():
    zr = zipper_torus(Fraction(1, 2), 4)
    assert zr.case == "rational" and zr.pi == (2, 1)
    assert np.allclose(zr.widths, [0.25, 0.25])
    assert np.allclose(zr.heights, [2.0, 2.0])
    # mod-inverse width split: alpha = 2/5, n1 = 3 -> widths (2/10, 3/10)
    zr2 = zipper_torus(Fraction(2, 5), 10)
    assert np.allclose(zr2.widths, [0.2, 0.3])
    assert np.allclose(zr2.heights, [2.0, 2.0])


def test_arc_parameter_and_consistency():
    q1, q2, t = arc_parameter("sqrt(1/2)", 9)
    assert (q1, q2) == (3, 7)
    assert abs(t - 21 * (2**-0.5 - 2 / 3)) < 1e-12
    za = zipper_arc_param(q1, q2, 9, t)
    zt = zipper_torus("sqrt(1/2)", 9)
    assert np.allclose(za.widths, zt.widths, atol=1e-14)
    assert np.allclose(za.heights, zt.heights, atol=1e-12)


def test_arc_param_degenerate_level_one():
    zr = zipper_arc_param(1, 1, 1, 0.5)
    assert np.allclose(zr.widths, [0.0, 1.0, 0.0])
    assert np.allclose(zr.heights, [0.5, 1.0, 0.5])


def test_arc_param_domain_errors():
    with pytest.raises(DomainError):
        zipper_arc_param(2, 2, 2, 0.5)  # gcd > 1: not a neighbor pair
    with pytest.raises(DomainError):
        zipper_arc_param(2, 3, 9, 0.5)  # q1 + q2 <= N
    with pytest.raises(DomainError):
        zipper_arc_param(3, 7, 9, 0.0)
    with pytest.raises(DomainError):
        zipper_arc_param(3, 7, 9, 1.0)
    with pytest.raises(DomainError):
        arc_parameter(Fraction(1, 2), 4)  # exact element, no arc


def test_arc_endpoint_height_limits():
    # as t -> 0 the first height collapses and the last tends to N/q1
    zr = zipper_arc_param(3, 7, 9, 1e-12)
    assert zr.heights[0] < 1e-11
    assert abs(zr.heights[2] - 3.0) < 1e-10


def test_cutoff_functions():
    assert cutoff_d(0.4, 2.0, 0.0) == 0.4
    assert cutoff_d(0.4, 1.0, 1.5) == 0.0
    zr = zipper_torus("sqrt(1/2)", 9)
    assert abs(cutoff_f(zr, 1.2) - 1 / 9) < 1e-14  # only the middle height clears 1.2
    assert abs(cutoff_f(zr, 0.0) - 1.0) < 1e-12
    with pytest.raises(DomainError):
        cutoff_d(1.0, 1.0, -0.5)
    with pytest.raises(DomainError):
        cutoff_f(zr, -1.0)


def test_heights_affine_in_t_three_point_collinearity(rng):
    for _ in range(50):
        N = int(rng.integers(2, 500))
        alpha = float(rng.uniform(1e-6, 1 - 1e-6))
        from gapscope.numerics import farey_neighbors

        fb = farey_neighbors(alpha, N)
        if fb.is_exact:
            continue
        q1, q2 = fb.lower.q, fb.upper.q
        z1 = zipper_arc_param(q1, q2, N, 0.2)
        z2 = zipper_arc_param(q1, q2, N, 0.5)
        z3 = zipper_arc_param(q1, q2, N, 0.8)
        for h1, h2, h3 in zip(z1.heights, z2.heights, z3.heights):
            assert abs(h2 - 0.5 * (h1 + h3)) < 1e-9


@given(
    st.floats(min_value=1e-5, max_value=1 - 1e-5),
    st.integers(min_value=1, max_value=1000),
)
def test_invariants_area_widths_heights(alpha, N):
    from gapscope.errors import AmbiguousValueError

    try:
        zr = zipper_torus(alpha, N)
    except AmbiguousValueError:
        return  # float landed in the guard band of a Farey element
    assert abs(zr.area() - 1.0) < 1e-10
    if zr.case == "generic":
        assert abs(sum(zr.widths) - 1.0) < 1e-10
        assert abs(zr.heights[1] - zr.heights[0] - zr.heights[2]) < 1e-10


def test_correspondence_examples():
    assert check_gap_zipper_correspondence("sqrt(1/2)", 9).passed
    assert check_gap_zipper_correspondence(Fraction(1, 3), 7).passed
    golden_ratio_minus_one = "(1 + 1*sqrt(5))/2 - 1"
    assert check_gap_zipper_correspondence(golden_ratio_minus_one, 13).passed


def test_correspondence_random_sweep(rng):
    for _ in range(150):
        alpha = float(rng.uniform(1e-3, 1 - 1e-3))
        N = int(rng.integers(1, 400))
        out = check_gap_zipper_correspondence(alpha, N)
        assert out.passed, (alpha, N, out.to_json())


def test_zipper_json_roundtrip():
    zr = zipper_torus("sqrt(1/2)", 9)
    assert ZipperedRectangles.from_json(zr.to_json()) == zr
