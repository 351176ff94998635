"""
Tests for control points, the monotone cubic relevance function and bumps
"""

import math

import numpy as np
import pytest

from rarelens.errors import ControlPointError, DegenerateDistributionError
from rarelens.relevance import (ControlPointSet, RelevanceFunction, bump_partition,
                                check_slopes, control_points_boxplot, fit_relevance,
                                load_control_points, pchip_fit, relevance_eval,
                                split_rare_normal)

from conftest import make_dataset


class TestBoxplotControlPoints:

    def test_one_to_nine(self):
        points = control_points_boxplot(range(1, 10))
        assert [(p.y, p.rel, p.deriv) for p in points] == [
            (-3.0, 1.0, 0.0), (5.0, 0.0, 0.0), (13.0, 1.0, 0.0)
        ]

    def test_too_few_distinct_values(self):
        with pytest.raises(DegenerateDistributionError, match="distinct"):
            control_points_boxplot([1, 1, 2, 2, 3, 4])

    def test_zero_iqr(self):
        with pytest.raises(DegenerateDistributionError, match="Interquartile"):
            control_points_boxplot([1, 2, 3, 3, 3, 3, 3, 3, 3, 3, 4, 5])

    def test_non_finite_targets(self):
        with pytest.raises(DegenerateDistributionError):
            control_points_boxplot([1, 2, 3, 4, float('nan')])

    def test_control_point_set_invariants(self):
        with pytest.raises(ControlPointError):
            ControlPointSet.from_triples([(1, 0, 0)])
        with pytest.raises(ControlPointError):
            ControlPointSet.from_triples([(2, 0, 0), (1, 1, 0)])
        with pytest.raises(ControlPointError):
            ControlPointSet.from_triples([(1, 0, 0), (2, 1.5, 0)])

    def test_load_from_csv_defaults_derivatives(self, tmp_path):
        path = tmp_path / "points.csv"
        path.write_text("y,rel\n1.1,0\n3.7,0\n5.0,1\n")
        points = load_control_points(path)

        assert points.ys.tolist() == [1.1, 3.7, 5.0]
        assert points.derivs.tolist() == [0.0, 0.0, 0.0]

    def test_load_rejects_missing_columns(self, tmp_path):
        path = tmp_path / "points.csv"
        path.write_text("y,relevance\n1,0\n2,1\n")
        with pytest.raises(ControlPointError, match="lacks columns"):
            load_control_points(path)


class TestCheckSlopes:

    def test_flat_interval_zeroes_both_ends(self):
        assert check_slopes([0.7, -0.4], [0.0]) == [0.0, 0.0]

    def test_large_derivatives_rescaled_to_radius_three(self):
        derivs = check_slopes([4.0, 4.0], [1.0])
        alpha, beta = derivs
        assert alpha == pytest.approx(beta)
        assert alpha ** 2 + beta ** 2 == pytest.approx(9.0)

    def test_opposite_sign_derivative_flipped(self):
        derivs = check_slopes([-0.5, 0.5], [1.0])
        assert derivs == [0.5, 0.5]

    def test_zero_derivatives_untouched(self):
        assert check_slopes([0.0, 0.0, 0.0], [1.0, -2.0]) == [0.0, 0.0, 0.0]

    def test_steep_start_shrunk_into_circle(self):
        alpha, beta = (d / 0.5 for d in check_slopes([2.5, 0.05], [0.5]))
        assert alpha ** 2 + beta ** 2 <= 9 + 1e-12
        assert alpha / beta == pytest.approx(2.5 / 0.05)

    def test_steep_start_does_not_overshoot(self):
        phi = pchip_fit(ControlPointSet.from_triples([(0, 0, 2.5), (1, 0.5, 0.05)]))
        values = phi.poly(np.linspace(0, 1, 10_001))
        assert values.max() <= 0.5 + 1e-12
        assert np.all(np.diff(values) >= -1e-12)

    def test_interior_extremum_gets_zero_derivative(self):
        assert check_slopes([0.0, 5.0, 0.0], [1.0, -1.0])[1] == 0.0

    def test_length_mismatch(self):
        with pytest.raises(ControlPointError):
            check_slopes([0.0, 0.0], [1.0, 1.0])


class TestRelevanceFunction:

    def test_no2_control_points(self, no2_points):
        phi = pchip_fit(no2_points)

        assert phi(1.1) == 0.0
        assert phi(3.7) == 0.0
        assert phi(5.0) == 1.0

        grid = np.linspace(0, 6, 10_000)
        values = phi(grid)
        assert np.all((values >= 0) & (values <= 1))

        rising = phi(np.linspace(3.7, 5.0, 2_000))
        assert np.all(np.diff(rising) >= -1e-12)

    def test_constant_outside_knots(self, no2_points):
        phi = pchip_fit(no2_points)
        assert phi(-100.0) == 0.0
        assert phi(100.0) == 1.0

    def test_two_points_monotone(self):
        phi = pchip_fit(ControlPointSet.from_triples([(0, 0, 0), (1, 1, 0)]))
        values = phi(np.linspace(0, 1, 5_000))
        assert np.all(np.diff(values) >= -1e-12)
        assert phi(0.5) == pytest.approx(0.5)

    def test_random_control_points_give_monotone_pieces(self):
        gen = np.random.default_rng(2024)
        for _ in range(200):
            s = int(gen.integers(2, 8))
            ys = np.sort(gen.choice(np.arange(-50, 50), size=s, replace=False)).astype(float)
            rels = np.where(gen.random(s) < 0.3, gen.integers(0, 2, s), gen.uniform(0, 1, s))
            derivs = gen.normal(0, 5, s)
            phi = pchip_fit(ControlPointSet.from_triples(zip(ys, rels, derivs)))

            for k in range(s - 1):
                values = phi.poly(np.linspace(ys[k], ys[k + 1], 400))
                direction = np.sign(rels[k + 1] - rels[k])
                if direction == 0:
                    np.testing.assert_allclose(values, rels[k], atol=1e-12)
                else:
                    assert np.all(direction * np.diff(values) >= -1e-9)
                assert values.min() >= min(rels[k], rels[k + 1]) - 1e-9
                assert values.max() <= max(rels[k], rels[k + 1]) + 1e-9

    def test_interpolates_control_points(self):
        points = control_points_boxplot(range(1, 10))
        phi = pchip_fit(points)
        np.testing.assert_allclose(phi(points.ys), points.rels, atol=1e-12)

    def test_scalar_and_array_evaluation(self, no2_points):
        phi = pchip_fit(no2_points)
        assert isinstance(phi(4.0), float)
        assert relevance_eval(phi, 4.0) == phi(4.0)
        assert phi(np.array([4.0, 4.5])).shape == (2,)

    def test_dict_rebuild_evaluates_identically(self, no2_points):
        phi = pchip_fit(no2_points)
        rebuilt = RelevanceFunction.from_dict(phi.to_dict())
        ys = np.linspace(0, 6, 101)
        np.testing.assert_array_equal(rebuilt(ys), phi(ys))
        assert rebuilt.control_points == no2_points

    def test_sample_spans_knots(self, no2_points):
        ys, values = pchip_fit(no2_points).sample(50)
        assert (ys[0], ys[-1]) == (1.1, 5.0)
        assert len(values) == 50

    def test_fit_relevance_defaults_to_boxplot(self):
        phi = fit_relevance(range(1, 10))
        assert phi.knots.tolist() == [-3.0, 5.0, 13.0]


class TestBumps:

    @pytest.mark.parametrize("method", ["analytic", "grid"])
    def test_two_tailed_boxplot_gives_two_bumps(self, method):
        phi = fit_relevance(range(1, 10))
        bumps = bump_partition(phi, method=method)

        assert len(bumps) == 2
        low, high = bumps
        assert low.lower == -math.inf and high.upper == math.inf
        assert (low.peak, low.upper) == pytest.approx((-3.0, 5.0))
        assert (high.lower, high.peak) == pytest.approx((5.0, 13.0))
        # Twice the distance from the median to the adjacent limit
        assert low.max_loss == pytest.approx(16.0)
        assert high.max_loss == pytest.approx(16.0)

    def test_monotone_function_gives_one_bump(self, no2_points):
        bumps = bump_partition(pchip_fit(no2_points))

        assert len(bumps) == 1
        assert bumps[0].peak == 5.0
        # The zero plateau below 3.7 is a minimum and bounds the bump
        assert bumps[0].lower == pytest.approx(3.7)
        assert bumps[0].upper == math.inf
        assert bumps[0].max_loss == pytest.approx(2.6)

    @pytest.mark.parametrize("method", ["analytic", "grid"])
    def test_hump_bounded_by_both_outer_minima(self, method):
        phi = pchip_fit(ControlPointSet.from_triples([(0, 0, 0), (1, 1, 0), (2, 0, 0)]))
        bumps = bump_partition(phi, method=method)

        assert len(bumps) == 1
        assert (bumps[0].lower, bumps[0].peak, bumps[0].upper) == pytest.approx((0.0, 1.0, 2.0))
        assert bumps[0].max_loss == pytest.approx(2.0)
        assert bumps.lowers.tolist() == pytest.approx([0.0, 2.0])
        assert bumps.locate(-5.0) == bumps.locate(5.0) == 0

    def test_constant_function(self):
        phi = pchip_fit(ControlPointSet.from_triples([(0, 1, 0), (2, 1, 0)]))
        bumps = bump_partition(phi)
        assert len(bumps) == 1
        assert bumps[0].max_loss == math.inf

    def test_locate(self):
        bumps = bump_partition(fit_relevance(range(1, 10)))
        assert bumps.locate(-50.0) == 0
        assert bumps.locate(4.99) == 0
        assert bumps.locate(5.0) == 1
        assert bumps.locate(np.array([0.0, 20.0])).tolist() == [0, 1]
        assert bumps.lowers.tolist() == [-math.inf, 5.0, math.inf]

    def test_to_list_writes_infinities_as_strings(self):
        rows = bump_partition(fit_relevance(range(1, 10))).to_list()
        assert rows[0]["lower"] == "-inf"
        assert rows[1]["upper"] == "inf"

    def test_unknown_method(self, no2_points):
        with pytest.raises(ValueError):
            bump_partition(pchip_fit(no2_points), method="spline")


class TestRareNormalSplit:

    def test_split_keeps_order_and_sides(self):
        dataset = make_dataset(np.arange(1, 10, dtype=float))
        # Targets 1..9 never reach the adjacent limits, so nothing is rare at 0.8
        rare, normal = split_rare_normal(dataset, fit_relevance(dataset.targets), 0.8)
        assert rare is None
        assert normal.n_rows == 9

    def test_split_with_tail(self, skewed_targets):
        dataset = make_dataset(skewed_targets)
        phi = fit_relevance(dataset.targets)
        split = split_rare_normal(dataset, phi, 0.8)

        assert split.n_rare + split.n_normal == dataset.n_rows
        assert {25.0, 28.0, 30.0, 33.0} <= set(split.rare.targets.tolist())
        assert np.all(np.diff(split.rare.row_ids) > 0)
