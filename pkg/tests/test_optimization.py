import numpy as np
import pytest

from scripts.crystal_optics import collinear_angle
from scripts.errors import DomainError, ObjectiveDomainError
from scripts.metrics import make_target, r_squared
from scripts.optimization import (RefineSchedule, SwarmConfig, best_of_restarts, coordinate_descent,
                                  generation_accuracy, point_seeds, polish_minimum, pso_minimize, refine_coefficients,
                                  sweep)
from scripts.optimization.accuracy import (DEGENERATE_PENALTY, accuracy_objective, coefficients_from_vector,
                                           mode_template, vector_from_coefficients)
from scripts.schmidt import SpectrumKernel, grid_for_tier, schmidt_spectrum

TINY_SWARM = SwarmConfig(particle_count=6, iteration_count=4, seed=11)


def sphere(x):
    return float(np.sum(x ** 2))


def rastrigin(x):
    return float(10 * x.size + np.sum(x ** 2 - 10 * np.cos(2 * np.pi * x)))


@pytest.fixture
def small_target():
    return make_target("gaussian", 5, 20)


class TestSwarm:
    def test_sphere(self):
        result = pso_minimize(sphere, 4, SwarmConfig(particle_count=30, iteration_count=100, seed=1))
        assert result.best_value < 1e-6
        assert result.best_value == pytest.approx(sphere(result.best_point))

    def test_rastrigin_success_rate(self):
        config = SwarmConfig(particle_count=60, iteration_count=200, lower_bound=-5.12, upper_bound=5.12)
        hits = sum(pso_minimize(rastrigin, 2, config.with_seed(seed)).best_value < 1.0 for seed in range(20))
        assert hits >= 15

    def test_history(self):
        config = SwarmConfig(particle_count=10, iteration_count=25, seed=3)
        best_point, best_value, history = pso_minimize(sphere, 3, config)
        assert history.shape == (26,)
        assert np.all(np.diff(history) <= 0)
        assert history[-1] == best_value
        assert np.all(np.abs(best_point) <= 1.0)

    def test_reproducible(self):
        config = SwarmConfig(particle_count=10, iteration_count=20, seed=42)
        first = pso_minimize(rastrigin, 3, config)
        second = pso_minimize(rastrigin, 3, config)
        np.testing.assert_array_equal(first.history, second.history)
        np.testing.assert_array_equal(first.best_point, second.best_point)
        other = pso_minimize(rastrigin, 3, config.with_seed(43))
        assert not np.array_equal(first.history, other.history)

    def test_threaded_evaluation_is_identical(self):
        config = SwarmConfig(particle_count=8, iteration_count=10, seed=5)
        np.testing.assert_array_equal(pso_minimize(sphere, 2, config).history,
                                      pso_minimize(sphere, 2, config, n_jobs=2).history)

    def test_evaluation_count(self):
        result = pso_minimize(sphere, 2, SwarmConfig(particle_count=7, iteration_count=5))
        assert result.evaluation_count == 42

    def test_warm_start_particle(self):
        config = SwarmConfig(particle_count=5, iteration_count=0, seed=9)
        result = pso_minimize(sphere, 3, config, initial=np.zeros(3))
        np.testing.assert_array_equal(result.best_point, np.zeros(3))
        assert result.best_value == 0.0

    def test_non_finite_objective(self):
        with pytest.raises(ObjectiveDomainError) as info:
            pso_minimize(lambda x: np.nan if x[0] > 0 else 1.0, 2, SwarmConfig(particle_count=10, seed=2))
        assert len(info.value.point) == 2

    @pytest.mark.parametrize("kwargs", [
        {"particle_count": 1},
        {"iteration_count": -1},
        {"polish_iterations": -1},
        {"lower_bound": 1.0, "upper_bound": -1.0},
        {"upper_bound": np.inf},
    ])
    def test_config_validation(self, kwargs):
        with pytest.raises(DomainError):
            SwarmConfig(**kwargs)

    def test_dimension_validation(self):
        with pytest.raises(DomainError):
            pso_minimize(sphere, 0, TINY_SWARM)

    def test_polish_descends_within_bounds(self):
        start = np.array([0.9, -0.6, 0.4])
        result = polish_minimum(lambda x: sphere(x - 0.25), start, SwarmConfig())
        assert result.best_value < 1e-6
        np.testing.assert_allclose(result.best_point, 0.25, atol=1e-3)
        assert result.history[0] == pytest.approx(sphere(start - 0.25))
        assert result.evaluation_count > 1

    def test_polish_stops_at_the_box(self):
        result = polish_minimum(lambda x: sphere(x - 3.0), np.zeros(2), SwarmConfig())
        np.testing.assert_allclose(result.best_point, 1.0)

    def test_polish_disabled(self):
        start = np.array([0.5, 0.5])
        result = polish_minimum(sphere, start, SwarmConfig(polish_iterations=0))
        np.testing.assert_array_equal(result.best_point, start)
        assert result.best_value == 0.5
        assert result.evaluation_count == 1


class TestRefinement:
    def test_quadratic(self):
        centre = np.array([0.33, -0.71, 0.05])

        def score(x):
            return -float(np.sum((x - centre) ** 2))

        x, best = coordinate_descent(score, np.zeros(3))
        assert np.all(np.abs(x - centre) <= 0.0125)
        assert best == pytest.approx(score(x))

    def test_never_worse_than_start(self):
        def score(x):
            return -float(np.sum(np.abs(x)))

        start = np.zeros(2)
        x, best = coordinate_descent(score, start, RefineSchedule(initial_step=0.1, min_step=0.05))
        np.testing.assert_array_equal(x, start)
        assert best == 0.0

    @pytest.mark.parametrize("kwargs", [{"min_step": 0.0}, {"min_step": 0.2}, {"shrink": 1.0}])
    def test_schedule_validation(self, kwargs):
        with pytest.raises(DomainError):
            RefineSchedule(**kwargs)

    def test_refine_improves_fit(self, gaussian_pump, crystal, small_grids, small_target):
        template = mode_template(gaussian_pump, 3)
        kernel = SpectrumKernel(template, crystal, small_target.half_window, small_grids)
        start = np.array([1.0, 0.3, -0.2])
        refined = refine_coefficients(start, small_target, gaussian_pump, crystal, kernel=kernel)
        before = r_squared(small_target, kernel.spectrum(start))
        after = r_squared(small_target, kernel.spectrum(refined))
        assert after >= before - 1e-9
        assert np.linalg.norm(refined) == pytest.approx(1.0)


class TestGenerationAccuracy:
    def test_vector_layout(self):
        alpha = np.array([0.5 + 0.1j, -0.2 + 0.3j])
        np.testing.assert_array_equal(vector_from_coefficients(alpha), [0.5, -0.2, 0.1, 0.3])
        np.testing.assert_array_equal(coefficients_from_vector([0.5, -0.2, 0.1, 0.3]), alpha)

    def test_degenerate_point_is_penalized(self, gaussian_pump, crystal, small_grids, small_target):
        kernel = SpectrumKernel(mode_template(gaussian_pump, 2), crystal, 20, small_grids)
        objective = accuracy_objective(kernel, small_target)
        assert objective(np.zeros(4)) == DEGENERATE_PENALTY
        expected = -r_squared(small_target, kernel.spectrum([1.0]))
        assert objective(np.array([1.0, 0.0, 0.0, 0.0])) == pytest.approx(expected, abs=1e-12)

    def test_single_mode_equals_gaussian_spectrum(self, gaussian_pump, crystal, small_grids, small_target):
        result = generation_accuracy(small_target, 1, gaussian_pump, crystal, TINY_SWARM, small_grids, small_grids)
        expected = r_squared(small_target, schmidt_spectrum(gaussian_pump, crystal, 20, small_grids))
        assert result.accuracy == pytest.approx(expected, abs=1e-8)
        assert result.search_accuracy == pytest.approx(expected, abs=1e-6)
        assert result.coefficients.shape == (1,)

    def test_history_and_report(self, gaussian_pump, crystal, small_grids, small_target):
        result = generation_accuracy(small_target, 3, gaussian_pump, crystal, TINY_SWARM, small_grids, small_grids)
        assert result.history.shape == (TINY_SWARM.iteration_count + 1,)
        assert np.all(np.diff(result.history) >= 0)
        assert result.search_accuracy >= result.history[-1] - 1e-12
        assert result.evaluation_count == 30
        assert result.polish_evaluation_count >= 1
        report = result.to_dict()
        assert report["seed"] == 11
        assert report["grid_tier"] == "custom"
        assert len(report["coefficients"]) == 3

    def test_reproducible(self, gaussian_pump, crystal, small_grids, small_target):
        first = generation_accuracy(small_target, 2, gaussian_pump, crystal, TINY_SWARM, small_grids, small_grids)
        second = generation_accuracy(small_target, 2, gaussian_pump, crystal, TINY_SWARM, small_grids, small_grids)
        assert first.accuracy == second.accuracy
        np.testing.assert_array_equal(first.coefficients, second.coefficients)

    def test_warm_start_is_never_lost(self, gaussian_pump, crystal, small_grids, small_target):
        start = [1.0, 0.3, -0.2]
        kernel = SpectrumKernel(mode_template(gaussian_pump, 3), crystal, 20, small_grids)
        result = generation_accuracy(small_target, 3, gaussian_pump, crystal, TINY_SWARM, small_grids, small_grids,
                                     kernel=kernel, initial=start)
        assert result.search_accuracy >= r_squared(small_target, kernel.spectrum(start)) - 1e-9

    def test_without_polish_the_swarm_value_is_reported(self, gaussian_pump, crystal, small_grids, small_target):
        swarm = SwarmConfig(particle_count=6, iteration_count=4, seed=11, polish_iterations=0)
        result = generation_accuracy(small_target, 3, gaussian_pump, crystal, swarm, small_grids, small_grids)
        assert result.search_accuracy == result.history[-1]
        assert result.polish_evaluation_count == 1

    def test_thread_count_does_not_change_the_result(self, gaussian_pump, crystal, small_grids, small_target):
        kernel = SpectrumKernel(mode_template(gaussian_pump, 3), crystal, 20, small_grids)
        serial = generation_accuracy(small_target, 3, gaussian_pump, crystal, TINY_SWARM, small_grids,
                                     small_grids, kernel=kernel, n_jobs=1)
        threaded = generation_accuracy(small_target, 3, gaussian_pump, crystal, TINY_SWARM, small_grids,
                                       small_grids, kernel=kernel, n_jobs=2)
        np.testing.assert_array_equal(serial.history, threaded.history)
        np.testing.assert_array_equal(serial.coefficients, threaded.coefficients)
        assert serial.search_accuracy == threaded.search_accuracy
        assert serial.accuracy == threaded.accuracy

    def test_thread_count_defaults_to_the_environment(self, gaussian_pump, crystal, small_grids, small_target,
                                                      monkeypatch):
        seen = []

        def recording(*args, **kwargs):
            seen.append(kwargs["n_jobs"])
            return pso_minimize(*args, **kwargs)

        monkeypatch.setenv("OAM_SPDC_THREADS", "2")
        monkeypatch.setattr("scripts.optimization.accuracy.pso_minimize", recording)
        generation_accuracy(small_target, 2, gaussian_pump, crystal, TINY_SWARM, small_grids, small_grids)
        assert seen == [2]


class TestSweep:
    def test_seeds(self):
        seeds = point_seeds(20240501, 6)
        assert len(set(seeds)) == 6
        assert point_seeds(20240501, 3) == seeds[:3]

    def test_mode_count_curve(self, gaussian_pump, crystal, small_grids, small_target):
        curve = sweep("N", [1, 2], small_target, gaussian_pump, crystal, 5, TINY_SWARM,
                      search_grids=small_grids, report_grids=small_grids)
        assert list(curve.columns) == ["N", "G_percent", "search_R2_percent", "theta_p_deg", "seed"]
        assert len(curve) == 2
        assert np.allclose(curve["theta_p_deg"], 28.71)

    def test_mode_count_curve_starts_from_the_smaller_solution(self, gaussian_pump, crystal, small_grids,
                                                               small_target):
        curve = sweep("N", [1, 2], small_target, gaussian_pump, crystal, 5, TINY_SWARM,
                      search_grids=small_grids, report_grids=small_grids)
        fits = curve["search_R2_percent"].to_numpy()
        assert fits[1] >= fits[0] - 1e-9

    def test_single_point_matches_plain_optimization(self, gaussian_pump, crystal, small_grids, small_target):
        curve = sweep("theta_p", [28.71], small_target, gaussian_pump, crystal, 2, TINY_SWARM,
                      search_grids=small_grids, report_grids=small_grids)
        direct = best_of_restarts(small_target, 2, gaussian_pump, crystal, TINY_SWARM,
                                  point_seeds(TINY_SWARM.seed, 1), small_grids, small_grids)
        assert curve["G_percent"].iloc[0] == direct.accuracy
        assert curve["seed"].iloc[0] == direct.seed

    def test_theta_candidates(self, gaussian_pump, crystal, small_grids, small_target):
        curve = sweep("L", [10.0], small_target, gaussian_pump, crystal, 1, TINY_SWARM,
                      theta_candidates_deg=[28.69, 28.71], search_grids=small_grids, report_grids=small_grids)
        assert curve["theta_p_deg"].iloc[0] in (28.69, 28.71)

    def test_restarts_keep_the_best(self, gaussian_pump, crystal, small_grids, small_target):
        seeds = point_seeds(3, 3)
        best = best_of_restarts(small_target, 2, gaussian_pump, crystal, TINY_SWARM, seeds, small_grids, small_grids)
        singles = [best_of_restarts(small_target, 2, gaussian_pump, crystal, TINY_SWARM, [s], small_grids,
                                    small_grids).accuracy for s in seeds]
        assert best.accuracy == max(singles)

    @pytest.mark.parametrize("parameter, values, kwargs", [
        ("wavelength", [1.0], {}),
        ("N", [], {}),
        ("N", [1.5], {}),
        ("N", [1], {"restarts": 0}),
        ("theta_p", [28.7], {"theta_candidates_deg": [28.7]}),
    ])
    def test_invalid_requests(self, gaussian_pump, crystal, small_grids, small_target, parameter, values, kwargs):
        with pytest.raises(DomainError):
            sweep(parameter, values, small_target, gaussian_pump, crystal, 2, TINY_SWARM,
                  search_grids=small_grids, report_grids=small_grids, **kwargs)


@pytest.mark.slow
class TestDeskScaleAccuracy:
    def test_gaussian_target_reaches_high_accuracy(self, gaussian_pump, crystal):
        target = make_target("gaussian", 20, 150)
        swarm = SwarmConfig(seed=20240501)
        result = best_of_restarts(target, 5, gaussian_pump, crystal, swarm, point_seeds(swarm.seed, 3),
                                  grid_for_tier("coarse", 150), grid_for_tier("coarse", 150))
        assert result.accuracy >= 97.0

    def test_collinear_angle_is_worse(self, gaussian_pump, crystal):
        target = make_target("gaussian", 20, 150)
        swarm = SwarmConfig(seed=20240501)
        grids = grid_for_tier("coarse", 150)
        seeds = point_seeds(swarm.seed, 3)
        collinear = crystal.with_theta(collinear_angle(crystal))
        g_collinear = best_of_restarts(target, 5, gaussian_pump, collinear, swarm, seeds, grids, grids).accuracy
        g_noncollinear = best_of_restarts(target, 5, gaussian_pump, crystal, swarm, seeds, grids, grids).accuracy
        assert g_noncollinear - g_collinear >= 5.0

    def test_accuracy_is_flat_in_thickness(self, gaussian_pump, crystal):
        target = make_target("gaussian", 20, 150)
        grids = grid_for_tier("coarse", 150)
        curve = sweep("L", [5.0, 10.0, 15.0], target, gaussian_pump, crystal, 5, SwarmConfig(seed=20240501),
                      restarts=3, theta_candidates_deg=[28.69, 28.71, 28.73, 28.75], search_grids=grids,
                      report_grids=grids)
        assert curve["G_percent"].max() - curve["G_percent"].min() <= 5.0

    def test_shaped_targets_reach_high_accuracy(self, gaussian_pump, crystal):
        grids = grid_for_tier("coarse", 150)
        swarm = SwarmConfig(seed=20240501)
        triangular = best_of_restarts(make_target("triangular", 100, 150), 5, gaussian_pump, crystal, swarm,
                                      point_seeds(swarm.seed, 3), grids, grids)
        assert triangular.accuracy >= 97.0
        curve = sweep("N", [5, 10], make_target("rectangular", 100, 150), gaussian_pump, crystal, 5, swarm,
                      restarts=3, search_grids=grids, report_grids=grids)
        g5, g10 = curve["G_percent"].to_numpy()
        assert g10 >= 95.0
        assert g5 <= g10 + 0.1
