"""Curve algebra: exact construction, pointwise oracles, inversion, simplify."""

import math

import numpy as np
import pytest

from frckit.curve import (
    add,
    curve_to_csv,
    invert_monotone,
    make_curve,
    scale,
    simplify,
    subtract,
    zero_curve,
)
from frckit.errors import (
    EmptyCurve,
    NonFiniteValue,
    NonMonotoneBreakpoints,
    NotMonotone,
    TargetUnreachable,
)

from conftest import DENSE_GRID, assert_pointwise_equal, random_curve, random_monotone_curve


class TestMakeCurve:
    def test_constant_zero(self):
        c = make_curve([(0.0, 0.0)])
        assert c.eval(-0.5) == 0.0
        assert c.eval(3.0) == 0.0

    def test_three_point_interpolation(self):
        c = make_curve([(-0.1, 5.0), (0.0, 0.0), (0.1, -5.0)])
        assert c.eval(-0.05) == pytest.approx(2.5, abs=1e-12)

    def test_duplicate_abscissa_rejected(self):
        with pytest.raises(NonMonotoneBreakpoints):
            make_curve([(0.0, 0.0), (0.0, 1.0)])
        with pytest.raises(NonMonotoneBreakpoints):
            make_curve([(0.0, 0.0), (1e-13, 1.0)])

    def test_empty_rejected(self):
        with pytest.raises(EmptyCurve):
            make_curve([])

    def test_non_finite_rejected(self):
        with pytest.raises(NonFiniteValue):
            make_curve([(0.0, math.nan)])
        with pytest.raises(NonFiniteValue):
            make_curve([(0.0, 0.0)], left_slope=math.inf)

    def test_points_sorted_before_validation(self):
        c = make_curve([(0.1, -5.0), (-0.1, 5.0)])
        assert c.breakpoints[0].df == -0.1


class TestEval:
    def test_flat_left_extension(self):
        c = make_curve([(-0.1, 5.0), (0.0, 0.0)])
        assert c.eval(-0.2) == 5.0

    def test_midpoint(self):
        c = make_curve([(-0.1, 5.0), (0.0, 0.0)])
        assert c.eval(-0.05) == pytest.approx(2.5, abs=1e-12)

    def test_sloped_extensions(self):
        c = make_curve([(0.0, 0.0)], left_slope=-10.0, right_slope=-2.0)
        assert c.eval(-0.5) == pytest.approx(5.0)
        assert c.eval(2.0) == pytest.approx(-4.0)

    def test_exact_at_breakpoints(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            c = random_curve(rng)
            assert np.array_equal(c.eval(c.dfs), c.mws)

    def test_non_finite_df_rejected(self):
        with pytest.raises(NonFiniteValue):
            zero_curve().eval(math.nan)


class TestAdd:
    def test_additive_identity(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            a = random_curve(rng)
            assert_pointwise_equal(add(a, zero_curve()), a)

    def test_pure_slopes_add(self):
        a = make_curve([(0.0, 0.0)], -833.33, -833.33)
        b = make_curve([(0.0, 0.0)], -833.33, -833.33)
        s = add(a, b)
        expect = make_curve([(0.0, 0.0)], -1666.66, -1666.66)
        assert_pointwise_equal(s, expect)

    def test_random_pair_pointwise(self):
        rng = np.random.default_rng(3)
        a = random_curve(rng, 5)
        b = random_curve(rng, 7)
        s = add(a, b)
        err = np.abs(s.eval(DENSE_GRID) - (a.eval(DENSE_GRID) + b.eval(DENSE_GRID)))
        assert np.max(err) <= 1e-9

    def test_breakpoint_union(self):
        a = make_curve([(-0.5, 1.0), (0.0, 0.0)])
        b = make_curve([(-0.2, 3.0), (0.3, 0.0)])
        s = add(a, b)
        assert set(np.round(s.dfs, 12)) == {-0.5, -0.2, 0.0, 0.3}

    def test_commutative_associative(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            a, b, c = (random_curve(rng) for _ in range(3))
            assert_pointwise_equal(add(a, b), add(b, a))
            assert_pointwise_equal(add(add(a, b), c), add(a, add(b, c)))


class TestScale:
    def test_annihilation(self):
        rng = np.random.default_rng(5)
        a = random_curve(rng)
        z = scale(a, 0.0)
        assert np.all(z.eval(DENSE_GRID) == 0.0)

    def test_identity(self):
        rng = np.random.default_rng(6)
        a = random_curve(rng)
        assert scale(a, 1.0) == a

    def test_doubling(self):
        a = make_curve([(-0.1, 5.0), (0.0, 0.0)])
        b = scale(a, 2.0)
        assert np.max(np.abs(b.eval(DENSE_GRID) - 2.0 * a.eval(DENSE_GRID))) <= 1e-9
        assert [(bp.df, bp.mw) for bp in b.breakpoints] == [(-0.1, 10.0), (0.0, 0.0)]

    def test_non_finite_rejected(self):
        with pytest.raises(NonFiniteValue):
            scale(zero_curve(), math.inf)


class TestSubtract:
    def test_self_cancellation(self):
        rng = np.random.default_rng(7)
        a = random_curve(rng)
        z = subtract(a, a)
        assert np.max(np.abs(z.eval(DENSE_GRID))) <= 1e-9

    def test_add_then_subtract_round_trip(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            a, b = random_curve(rng), random_curve(rng)
            assert_pointwise_equal(subtract(add(a, b), b), a)

    def test_subtract_zero_identity(self):
        rng = np.random.default_rng(9)
        a = random_curve(rng)
        assert_pointwise_equal(subtract(a, zero_curve()), a)


class TestInvertMonotone:
    def test_pure_slope_analytic(self):
        c = make_curve([(0.0, 0.0)], -833.33, -833.33)
        assert invert_monotone(c, 500.0) == pytest.approx(-500.0 / 833.33, rel=1e-12)

    def test_target_zero_at_origin(self):
        c = make_curve([(0.0, 0.0)], -833.33, -833.33)
        assert invert_monotone(c, 0.0) == 0.0

    def test_unreachable_when_saturated_without_damping(self):
        c = make_curve([(-0.3, 10.0), (0.0, 0.0)])  # flat extensions
        with pytest.raises(TargetUnreachable):
            invert_monotone(c, 20.0)

    def test_not_monotone_rejected(self):
        c = make_curve([(-1.0, 0.0), (0.0, 5.0)])
        with pytest.raises(NotMonotone):
            invert_monotone(c, 1.0)

    def test_flat_segment_returns_endpoint_nearest_zero(self):
        c = make_curve([(-0.5, 20.0), (-0.4, 10.0), (-0.3, 10.0), (0.0, 0.0)],
                       left_slope=-5.0, right_slope=-5.0)
        assert invert_monotone(c, 10.0) == pytest.approx(-0.3, abs=1e-15)

    def test_deadband_flat_at_zero_returns_zero(self):
        c = make_curve([(-0.336, 10.0), (-0.036, 0.0), (0.036, 0.0), (0.336, -10.0)])
        assert invert_monotone(c, 0.0) == 0.0

    def test_over_branch_for_negative_target(self):
        c = make_curve([(0.0, 0.0)], -100.0, -100.0)
        assert invert_monotone(c, -50.0, direction="over") == pytest.approx(0.5)

    def test_round_trip_property(self):
        rng = np.random.default_rng(10)
        for _ in range(200):
            c = random_monotone_curve(rng)
            lo = float(c.eval(1.5))
            hi = float(c.eval(-1.5))
            t = float(rng.uniform(lo, hi))
            df = invert_monotone(c, t)
            assert abs(c.eval(df) - t) <= 1e-9


class TestSimplify:
    def test_collinear_removed(self):
        c = make_curve([(0.0, 0.0), (0.5, 1.0), (1.0, 2.0)])
        s = simplify(c, 0.0)
        assert len(s.breakpoints) == 2
        assert_pointwise_equal(s, c, tol=1e-12)

    def test_minimal_curve_unchanged(self):
        c = make_curve([(-0.1, 5.0), (0.0, 0.0)], 0.0, -3.0)
        assert simplify(c, 0.0) == c

    def test_idempotent_and_within_tol(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            c = random_curve(rng, 8)
            tol = float(rng.uniform(0.0, 5.0))
            s = simplify(c, tol)
            err = np.abs(s.eval(DENSE_GRID) - c.eval(DENSE_GRID))
            assert np.max(err) <= tol + 1e-12
            assert simplify(s, tol) == s

    def test_add_subtract_cycles_then_simplify_matches_fresh(self):
        rng = np.random.default_rng(12)
        a = random_curve(rng, 5)
        b = random_curve(rng, 7)
        acc = add(a, b)
        for _ in range(100):
            acc = add(acc, b)
            acc = subtract(acc, b)
        fresh = add(a, b)
        acc = simplify(acc, 1e-9)
        assert len(acc.breakpoints) == len(simplify(fresh, 0.0).breakpoints)
        assert_pointwise_equal(acc, fresh, tol=1e-7)

    def test_end_breakpoints_kept(self):
        # only interior points are candidates; the span never shrinks
        c = make_curve([(-1.0, 10.0), (-0.5, 5.0), (0.0, 0.0)],
                       left_slope=-10.0, right_slope=0.0)
        s = simplify(c, 10.0)
        assert s.breakpoints[0] == c.breakpoints[0]
        assert s.breakpoints[-1] == c.breakpoints[-1]
        assert len(s.breakpoints) == 2


class TestMonotoneSum:
    def test_sum_of_nonincreasing_is_nonincreasing(self):
        rng = np.random.default_rng(13)
        for _ in range(50):
            a = random_monotone_curve(rng)
            b = random_monotone_curve(rng)
            assert add(a, b).is_nonincreasing()


class TestCsv:
    def test_header_and_rows(self):
        c = make_curve([(-0.1, 5.0), (0.0, 0.0)])
        text = curve_to_csv(c, 60.0)
        lines = text.strip().split("\n")
        assert lines[0] == "delta_f_hz,freq_hz,response_mw"
        assert len(lines) == 3
        assert lines[1].split(",") == ["-0.1", "59.9", "5.0"]

    def test_dense_resampling(self):
        c = make_curve([(-0.1, 5.0), (0.0, 0.0)])
        text = curve_to_csv(c, 60.0, dense_step=0.05)
        assert len(text.strip().split("\n")) == 4  # header + {-0.1, -0.05, 0.0}

    def test_deterministic(self):
        rng = np.random.default_rng(14)
        c = random_curve(rng)
        assert curve_to_csv(c, 60.0, 0.01) == curve_to_csv(c, 60.0, 0.01)
