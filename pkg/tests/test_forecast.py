import numpy as np
import pytest

from weldqc.bayes import BetaParams
from weldqc.errors import ConfigError, DomainError
from weldqc.forecast import ProjectDesign, quantile_table, simulate_project


def single_type_design(n_welds, params=BetaParams(10.5, 90.5)):
    return ProjectDesign(tuple(("t1", params) for _ in range(n_welds)))


class TestDesign:
    def test_counts(self):
        design = ProjectDesign((("a", BetaParams(1, 1)), ("b", BetaParams(2, 2)), ("a", BetaParams(1, 1))))
        assert design.n_welds == 3 and design.n_types == 2

    def test_empty_rejected(self):
        with pytest.raises(ConfigError):
            ProjectDesign(())

    def test_from_type_counts(self):
        posteriors = {"a": BetaParams(10.5, 90.5)}
        design = ProjectDesign.from_type_counts([("a", 4)], posteriors)
        assert design.n_welds == 4

    def test_unresolved_type_named_in_error(self):
        with pytest.raises(ConfigError, match="ghost"):
            ProjectDesign.from_type_counts([("ghost", 2)], {})


class TestSimulate:
    def test_single_weld_mean_matches_posterior(self):
        result = simulate_project(single_type_design(1), iterations=10_000, seed=0)
        assert result.samples.mean() == pytest.approx(10.5 / 101.0, abs=3e-3)

    def test_near_degenerate_posteriors_concentrate(self):
        p = 0.23
        params = BetaParams(1e6 * p, 1e6 * (1 - p))
        result = simulate_project(single_type_design(5, params), iterations=200, seed=1)
        np.testing.assert_allclose(result.samples, p, atol=1e-2)

    def test_mean_matches_linearity_of_expectation(self):
        rng = np.random.default_rng(2)
        for case in range(20):
            welds = tuple(
                (f"t{i}", BetaParams(float(rng.uniform(0.5, 40)), float(rng.uniform(20, 400))))
                for i in range(int(rng.integers(1, 12)))
            )
            design = ProjectDesign(welds)
            iterations = 4000
            result = simulate_project(design, iterations=iterations, seed=case)
            expected = np.mean([p.mean for _, p in welds])
            per_weld_var = np.mean([p.variance for _, p in welds])
            mc_se = np.sqrt(per_weld_var / design.n_welds / iterations)
            assert abs(result.samples.mean() - expected) < 3 * max(mc_se, 1e-6)

    def test_deterministic(self):
        a = simulate_project(single_type_design(3), iterations=50, seed=9)
        b = simulate_project(single_type_design(3), iterations=50, seed=9)
        assert np.array_equal(a.samples, b.samples)

    def test_samples_in_unit_interval(self):
        result = simulate_project(single_type_design(4), iterations=500, seed=3)
        assert np.all((result.samples > 0) & (result.samples < 1))

    def test_more_welds_shrink_variance(self):
        small = simulate_project(single_type_design(2), iterations=2000, seed=4)
        large = simulate_project(single_type_design(40), iterations=2000, seed=4)
        assert large.samples.var() < small.samples.var()

    def test_reordering_preserves_statistics(self):
        rng = np.random.default_rng(5)
        types = [(f"t{i}", BetaParams(float(rng.uniform(1, 30)), float(rng.uniform(30, 300)))) for i in range(6)]
        design = ProjectDesign(tuple(types))
        reordered = ProjectDesign(tuple(reversed(types)))
        a = simulate_project(design, iterations=4000, seed=6)
        b = simulate_project(reordered, iterations=4000, seed=6)
        # different per-weld substreams, same distribution
        assert not np.array_equal(a.samples, b.samples)
        assert a.samples.mean() == pytest.approx(b.samples.mean(), abs=3e-3)

    def test_mixture_mode(self):
        design = ProjectDesign((("lo", BetaParams(1e6, 9e6)), ("hi", BetaParams(9e6, 1e6))))
        result = simulate_project(design, iterations=2000, seed=7, mode="mixture")
        # mixture draws single-weld values, so samples split around the two modes
        assert 0.3 < np.mean(result.samples > 0.5) < 0.7

    def test_invalid_inputs(self):
        with pytest.raises(DomainError):
            simulate_project(single_type_design(1), iterations=0)
        with pytest.raises(ConfigError):
            simulate_project(single_type_design(1), mode="teleport")


class TestQuantileTable:
    def test_constant_samples(self):
        result = simulate_project(single_type_design(1, BetaParams(1e9, 1e9)), iterations=25, seed=8)
        table = quantile_table(result)
        values = [v for _, v in table]
        assert max(values) - min(values) < 1e-3

    def test_grid_and_monotonicity(self):
        result = simulate_project(single_type_design(5), iterations=100, seed=9)
        table = result.quantiles()
        levels = [q for q, _ in table]
        np.testing.assert_allclose(levels, np.arange(0.0, 1.01, 0.10), atol=1e-12)
        values = [v for _, v in table]
        assert all(values[i] <= values[i + 1] for i in range(len(values) - 1))

    def test_single_iteration_degenerates(self):
        result = simulate_project(single_type_design(2), iterations=1, seed=10)
        values = {v for _, v in result.quantiles()}
        assert len(values) == 1

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            quantile_table([])
