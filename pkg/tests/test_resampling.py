"""
Tests for relevance bins, rate resolution and the six resampling strategies
"""

import logging

import numpy as np
import pytest

from rarelens.data import encode_nominals
from rarelens.errors import ConfigError, NothingToResampleError, SynthesisError
from rarelens.models import SYNTHETIC_ROW_ID, RateMode, ResampleSpec, Strategy
from rarelens.resampling import (BinRate, DistanceSchema, Resampler, SmoteRResampler,
                                 gen_synth_cases, interpolate, make_bins, perturb,
                                 resample, resolve_rates)
from rarelens.resampling.bins import floor_count
from rarelens.resampling.synth import per_seed_counts
from rarelens.rng import RngStream

from conftest import make_dataset, step_relevance


RARE_FROM_100 = step_relevance(100)


def spec(strategy: Strategy, **kwargs) -> ResampleSpec:
    kwargs.setdefault('rng', RngStream(seed=9))
    return ResampleSpec(strategy, **kwargs)


class TestBins:

    def test_runs_of_equal_status(self, balanced_bins_dataset):
        bins = make_bins(balanced_bins_dataset, RARE_FROM_100, 0.8)

        assert [len(b) for b in bins] == [100, 20]
        assert [b.rare for b in bins] == [False, True]
        assert bins.n_rare == 20

    def test_two_tailed_runs(self):
        dataset = make_dataset(np.arange(30, dtype=float))
        both_tails = lambda y: ((y < 5) | (y >= 25)).astype(float)
        bins = make_bins(dataset, both_tails, 0.8)

        assert [(len(b), b.rare) for b in bins] == [(5, True), (20, False), (5, True)]

    def test_no_rare_rows(self, balanced_bins_dataset):
        with pytest.raises(NothingToResampleError):
            make_bins(balanced_bins_dataset, step_relevance(1000), 0.8)

    def test_balance_rates(self, balanced_bins_dataset):
        bins = make_bins(balanced_bins_dataset, RARE_FROM_100, 0.8)
        normal, rare = resolve_rates(RateMode.BALANCE, bins)

        assert normal.u == pytest.approx(0.6) and normal.o == 0
        assert rare.u == 1 and rare.o == pytest.approx(2.0)
        assert normal.kept(100) == 60
        assert rare.added(20) == 40

    def test_balance_leaves_bins_past_the_mean(self):
        dataset = make_dataset(np.arange(75, dtype=float))
        tails = lambda y: ((y < 5) | (y >= 25)).astype(float)
        bins = make_bins(dataset, tails, 0.8)
        small_rare, small_normal, large_rare = resolve_rates(RateMode.BALANCE, bins)

        # Mean bin size is 25
        assert [len(b) for b in bins] == [5, 20, 50]
        assert small_rare.o == pytest.approx(4.0)
        assert (small_normal.u, small_normal.o) == (1.0, 0.0)
        assert (large_rare.u, large_rare.o) == (1.0, 0.0)

    def test_extreme_rates_keep_total(self, balanced_bins_dataset):
        bins = make_bins(balanced_bins_dataset, RARE_FROM_100, 0.8)
        normal, rare = resolve_rates(RateMode.EXTREME, bins)

        assert normal.kept(100) == 20
        assert 20 + rare.added(20) == 100

    def test_explicit_rates(self, balanced_bins_dataset):
        bins = make_bins(balanced_bins_dataset, RARE_FROM_100, 0.8)
        normal, rare = resolve_rates(RateMode.EXPLICIT, bins, u=0.3, o=1.5)
        assert (normal.u, normal.o) == (0.3, 0.0)
        assert (rare.u, rare.o) == (1.0, 1.5)

    def test_floor_count_tolerates_rounding(self):
        assert floor_count(0.6 * 100) == 60
        assert floor_count(0.29 * 100) == 29
        assert BinRate(u=1.7).kept(10) == 10


class TestSynthesis:

    def test_per_seed_counts(self):
        assert per_seed_counts(7, 3).tolist() == [3, 2, 2]
        assert per_seed_counts(2, 4).tolist() == [1, 1, 0, 0]

    def test_interpolated_rows_stay_within_bin(self):
        gen = np.random.default_rng(0)
        bin_x = gen.uniform(0, 1, (12, 3))
        bin_y = gen.uniform(50, 60, 12)
        schema = DistanceSchema.from_features(bin_x, np.zeros(3, dtype=bool))

        x, y = gen_synth_cases(bin_x, bin_y, 30, 5, schema, gen)

        assert x.shape == (30, 3)
        assert np.all((y >= bin_y.min()) & (y <= bin_y.max()))
        assert np.all((x >= bin_x.min(axis=0)) & (x <= bin_x.max(axis=0)))

    def test_interpolation_on_segment_with_distance_weighted_target(self):
        gen = np.random.default_rng(11)
        n = 10_000
        seed_x = gen.uniform(-5, 5, (n, 3))
        nb_x = gen.uniform(-5, 5, (n, 3))
        seed_y = gen.uniform(0, 100, n)
        nb_y = gen.uniform(0, 100, n)
        schema = DistanceSchema.from_features(np.vstack([seed_x, nb_x]), np.zeros(3, dtype=bool))

        x, y = interpolate(seed_x, seed_y, nb_x, nb_y, schema, gen)

        lo, hi = np.minimum(seed_x, nb_x), np.maximum(seed_x, nb_x)
        assert np.all((x >= lo - 1e-12) & (x <= hi + 1e-12))
        # One fraction per row, shared by every attribute
        fraction = (x - seed_x) / (nb_x - seed_x)
        np.testing.assert_allclose(fraction, fraction[:, :1].repeat(3, axis=1), atol=1e-9)
        # Distances to the parents split as fraction : 1 - fraction
        r = fraction[:, 0]
        np.testing.assert_allclose(y, seed_y + r * (nb_y - seed_y), atol=1e-9)

    def test_noise_moments(self):
        gen = np.random.default_rng(12)
        bin_x = gen.normal(0, 3, (20, 2))
        bin_y = gen.normal(50, 8, 20)
        n, amplitude = 10_000, 0.1
        seed_x = np.tile(bin_x[0], (n, 1))
        seed_y = np.full(n, bin_y[0])

        x, y = perturb(seed_x, seed_y, bin_x, bin_y, np.zeros(2, dtype=bool), amplitude, gen)

        for noisy, centre, sd in ((x[:, 0], bin_x[0, 0], bin_x[:, 0].std(ddof=1)),
                                  (x[:, 1], bin_x[0, 1], bin_x[:, 1].std(ddof=1)),
                                  (y, bin_y[0], bin_y.std(ddof=1))):
            assert abs(noisy.mean() - centre) <= 4 * amplitude * sd / np.sqrt(n)
            assert noisy.std(ddof=1) == pytest.approx(amplitude * sd, rel=0.05)

    def test_single_row_bin(self):
        schema = DistanceSchema.from_features(np.zeros((1, 2)), np.zeros(2, dtype=bool))
        with pytest.raises(SynthesisError):
            gen_synth_cases(np.zeros((1, 2)), np.ones(1), 3, 5, schema,
                            np.random.default_rng(0))

    def test_k_clamped_with_warning(self, caplog):
        gen = np.random.default_rng(1)
        bin_x = gen.uniform(0, 1, (3, 2))
        schema = DistanceSchema.from_features(bin_x, np.zeros(2, dtype=bool))

        with caplog.at_level(logging.WARNING):
            x, _ = gen_synth_cases(bin_x, np.arange(3.0), 6, 10, schema, gen)
        assert len(x) == 6
        assert "exceeds" in caplog.text

    def test_zero_amplitude_noise_copies(self):
        gen = np.random.default_rng(2)
        bin_x = np.column_stack([gen.uniform(0, 1, 5), [0, 1, 2, 0, 1]])
        bin_y = gen.uniform(0, 1, 5)
        nominal = np.array([False, True])

        x, y = perturb(bin_x, bin_y, bin_x, bin_y, nominal, 0.0, gen)

        np.testing.assert_array_equal(x, bin_x)
        np.testing.assert_array_equal(y, bin_y)

    def test_noise_redraws_nominals_from_bin(self):
        gen = np.random.default_rng(3)
        bin_x = np.column_stack([gen.uniform(0, 1, 6), [4, 4, 7, 7, 7, 4]])
        bin_y = gen.uniform(0, 1, 6)

        x, _ = perturb(bin_x, bin_y, bin_x, bin_y, np.array([False, True]), 0.5, gen)
        assert set(x[:, 1].tolist()) <= {4.0, 7.0}

    def test_heterogeneous_distance(self):
        schema = DistanceSchema.from_features(np.array([[0.0, 0], [4.0, 1]]),
                                              np.array([False, True]))
        d = schema.pairwise(np.array([[0.0, 0]]), np.array([[4.0, 1], [2.0, 0]]))
        np.testing.assert_allclose(d, [[np.sqrt(2.0), 0.5]])
        assert schema.rowwise(np.array([[4.0, 1]]), np.array([[0.0, 1]]))[0] == pytest.approx(1.0)


class TestStrategies:
    """Size and containment properties on one normal run of 100 and one rare run of 20"""

    @pytest.mark.parametrize("strategy, expected", [
        (Strategy.RU, 80),
        (Strategy.RO, 160),
        (Strategy.SMT, 120),
        (Strategy.GN, 120),
        (Strategy.SG, 120),
    ])
    def test_balance_sizes(self, balanced_bins_dataset, strategy, expected):
        result = resample(balanced_bins_dataset, RARE_FROM_100, spec(strategy))
        assert result.n_rows == expected

    @pytest.mark.parametrize("strategy, expected", [
        (Strategy.RU, 40),
        (Strategy.RO, 200),
        (Strategy.SMT, 120),
    ])
    def test_extreme_sizes(self, balanced_bins_dataset, strategy, expected):
        result = resample(balanced_bins_dataset, RARE_FROM_100,
                          spec(strategy, rate_mode=RateMode.EXTREME))
        assert result.n_rows == expected

    @pytest.mark.parametrize("strategy", [Strategy.RU, Strategy.RO, Strategy.SMT, Strategy.GN,
                                          Strategy.SG, Strategy.WERCS])
    def test_output_sizes_match_bin_counts(self, strategy):
        gen = np.random.default_rng(21)
        for trial in range(15):
            n = int(gen.integers(30, 80))
            lo_cut, hi_cut = int(gen.integers(2, n // 3)), int(gen.integers(2 * n // 3, n - 2))
            dataset = make_dataset(gen.permutation(n).astype(float), seed=trial)
            tails = lambda y, lo=lo_cut, hi=hi_cut: ((y < lo) | (y >= hi)).astype(float)

            rare = [lo_cut, n - hi_cut]
            normal = n - sum(rare)
            if strategy == Strategy.WERCS:
                u, o = gen.uniform(0, 1, 2)
                expected = n - min(floor_count(u * n), normal) + floor_count(o * n)
            else:
                u, o = gen.uniform(0, 1), gen.uniform(0, 3)
                kept_normal = normal if strategy == Strategy.RO else floor_count(u * normal)
                added = 0 if strategy == Strategy.RU else sum(floor_count(o * r) for r in rare)
                expected = kept_normal + sum(rare) + added

            result = resample(dataset, tails, spec(strategy, rate_mode=RateMode.EXPLICIT,
                                                   u=float(u), o=float(o)))
            assert result.n_rows == expected

    def test_undersampling_keeps_rare_rows_and_order(self, balanced_bins_dataset):
        result = resample(balanced_bins_dataset, RARE_FROM_100, spec(Strategy.RU))

        ids = result.row_ids
        assert np.all(np.diff(ids) > 0)
        assert set(range(100, 120)) <= set(ids.tolist())
        assert np.count_nonzero(ids < 100) == 60

    def test_oversampling_appends_replicas(self, balanced_bins_dataset):
        result = resample(balanced_bins_dataset, RARE_FROM_100, spec(Strategy.RO))

        assert result.row_ids[:120].tolist() == list(range(120))
        replicas = result.frame.iloc[120:]
        assert set(replicas.index.tolist()) <= set(range(100, 120))
        original = balanced_bins_dataset.frame
        for row_id, row in replicas.iterrows():
            assert row['y'] == original.loc[row_id, 'y']
            assert row['colour'] == original.loc[row_id, 'colour']

    def test_smoter_rows_synthetic_and_contained(self, balanced_bins_dataset):
        result = resample(balanced_bins_dataset, RARE_FROM_100, spec(Strategy.SMT))

        new = result.frame[result.frame.index == SYNTHETIC_ROW_ID]
        assert len(new) == 40
        assert new['y'].between(100, 119).all()
        assert set(new['colour']) <= {'red', 'green', 'blue'}

    def test_gaussian_noise_zero_delta_copies_rare_rows(self, balanced_bins_dataset):
        result = resample(balanced_bins_dataset, RARE_FROM_100, spec(Strategy.GN, delta=0.0))

        new = result.frame[result.frame.index == SYNTHETIC_ROW_ID]
        rare = balanced_bins_dataset.frame.iloc[100:]
        assert set(new['y']) <= set(rare['y'])

    def test_smogn_without_noise_stays_in_bin(self, balanced_bins_dataset):
        result = resample(balanced_bins_dataset, RARE_FROM_100, spec(Strategy.SG, delta=0.0))
        new = result.frame[result.frame.index == SYNTHETIC_ROW_ID]
        assert new['y'].between(100, 119).all()

    def test_single_row_rare_bin_duplicated(self, caplog):
        dataset = make_dataset(np.append(np.arange(100, dtype=float), 500.0))
        with caplog.at_level(logging.WARNING):
            result = resample(dataset, step_relevance(500), spec(Strategy.SMT))

        new = result.frame[result.frame.index == SYNTHETIC_ROW_ID]
        assert result.n_rows == 50 + 1 + 49
        assert (new['y'] == 500.0).all()
        assert "single row" in caplog.text

    def test_explicit_rates(self, balanced_bins_dataset):
        result = resample(balanced_bins_dataset, RARE_FROM_100,
                          spec(Strategy.RU, rate_mode=RateMode.EXPLICIT, u=0.5))
        assert result.n_rows == 70

    def test_wercs_sizes_and_weights(self, balanced_bins_dataset):
        result = resample(balanced_bins_dataset, RARE_FROM_100,
                          spec(Strategy.WERCS, u=0.5, o=0.5))

        ids = result.row_ids
        assert result.n_rows == 120 - 60 + 60
        # Zero-relevance rows are never replicated, relevance-one rows never removed
        assert set(range(100, 120)) <= set(ids[:60].tolist())
        assert np.all(ids[60:] >= 100)

    def test_wercs_caps_removal(self, balanced_bins_dataset, caplog):
        with caplog.at_level(logging.WARNING):
            result = resample(balanced_bins_dataset, RARE_FROM_100,
                              spec(Strategy.WERCS, u=0.9, o=0.1))
        assert result.n_rows == 20 + 12
        assert "can be removed" in caplog.text

    def test_nothing_rare(self, balanced_bins_dataset):
        with pytest.raises(NothingToResampleError):
            resample(balanced_bins_dataset, step_relevance(1000), spec(Strategy.SMT))

    @pytest.mark.parametrize("strategy", [Strategy.SMT, Strategy.GN, Strategy.SG,
                                          Strategy.RO, Strategy.RU, Strategy.WERCS])
    def test_same_stream_same_result(self, balanced_bins_dataset, strategy):
        params = {'u': 0.5, 'o': 0.5} if strategy == Strategy.WERCS else {}
        a = resample(balanced_bins_dataset, RARE_FROM_100, spec(strategy, **params))
        b = resample(balanced_bins_dataset, RARE_FROM_100, spec(strategy, **params))
        assert a.frame.equals(b.frame)

    def test_different_seed_different_synthesis(self, balanced_bins_dataset):
        a = resample(balanced_bins_dataset, RARE_FROM_100, spec(Strategy.SMT))
        b = resample(balanced_bins_dataset, RARE_FROM_100,
                     spec(Strategy.SMT, rng=RngStream(seed=10)))
        assert not a.frame.equals(b.frame)

    def test_keeps_encoding_on_request(self, balanced_bins_dataset):
        encoded = Resampler(spec(Strategy.RO), keep_encoded=True).resample(
            balanced_bins_dataset, RARE_FROM_100)
        assert encoded.schema.is_encoded

        already = encode_nominals(balanced_bins_dataset)
        assert Resampler(spec(Strategy.RO)).resample(already, RARE_FROM_100).schema.is_encoded


class TestResampler:

    def test_report(self, balanced_bins_dataset):
        resampler = Resampler(spec(Strategy.RU))
        resampler.resample(balanced_bins_dataset, RARE_FROM_100)

        report = resampler.report.to_dict()
        assert (report['input_size'], report['output_size']) == (120, 80)
        assert report['pct_change'] == pytest.approx(-33.3333, abs=1e-4)
        assert report['params']['rates'] == 'balance'

    def test_none_passes_through(self, balanced_bins_dataset):
        result = Resampler(spec(Strategy.NONE)).resample(balanced_bins_dataset, RARE_FROM_100)
        assert result is balanced_bins_dataset

    def test_strategy_mismatch(self):
        with pytest.raises(ConfigError):
            SmoteRResampler(spec(Strategy.RO))

    def test_spec_validation(self):
        with pytest.raises(ConfigError):
            ResampleSpec(Strategy.WERCS, u=0.5)
        with pytest.raises(ConfigError):
            ResampleSpec(Strategy.GN, delta=-0.1)
        with pytest.raises(ConfigError):
            ResampleSpec(Strategy.RU, rate_mode=RateMode.EXPLICIT)
        with pytest.raises(ConfigError):
            ResampleSpec(Strategy.SMT, threshold=0.0)
