import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from corebargain.errors import AssumptionViolationError
from corebargain.game import (
    CharacteristicFunction,
    bounding_set,
    core_is_nonempty,
    is_in_core,
)
from corebargain.harness import scenario_bounds
from corebargain.protocol import (
    AllocationState,
    corner_proposals,
    lyapunov_series,
    run,
    step_average,
    step_robust,
)
from corebargain.stochastic import SeededStream, ValueProcessSpec


@pytest.fixture
def A_matrices(pair_schedule):
    return [pair_schedule.matrix_at(t) for t in range(3)]


class TestStepRobust:
    def test_first_step_mixes_players_two_three(self, vmax_I, A_matrices):
        state = AllocationState(0, corner_proposals(3, 10.0))
        nxt, rec = step_robust(state, vmax_I, A_matrices[0])
        assert_array_equal(nxt.proposals[0], [10, 0, 0])
        assert_array_equal(nxt.proposals[1], [0, 5, 5])
        assert_array_equal(nxt.proposals[2], [0, 5, 5])
        assert_allclose(rec.errors, 0.0)  # mixes were already feasible

    def test_projection_step(self, vmax_I, A_matrices):
        state = AllocationState(2, np.array([[5, 2.5, 2.5], [0, 5, 5], [5, 2.5, 2.5]]))
        nxt, rec = step_robust(state, vmax_I, A_matrices[2])
        assert_allclose(nxt.proposals[0], [7.0, 1.5, 1.5], atol=1e-10)
        assert_allclose(nxt.proposals[1], [2.5, 3.75, 3.75], atol=1e-12)
        assert_allclose(nxt.proposals[2], [5.0, 2.5, 2.5], atol=1e-12)
        assert_allclose(rec.mixed[0], [2.5, 3.75, 3.75], atol=1e-12)
        # only player 1 projected
        assert np.linalg.norm(rec.errors[0]) > 1.0
        assert_allclose(rec.errors[1:], 0.0, atol=1e-12)

    def test_common_feasible_point_is_fixed(self, vmax_I, A_matrices):
        z = np.array([7.0, 3.0, 0.0])
        state = AllocationState(0, np.tile(z, (3, 1)))
        for A in A_matrices:
            state, rec = step_robust(state, vmax_I, A)
            assert_allclose(rec.errors, 0.0, atol=1e-12)
            assert_allclose(state.proposals, np.tile(z, (3, 1)), atol=1e-12)

    def test_post_projection_feasibility(self, vmax_I, A_matrices):
        rng = np.random.default_rng(2)
        state = AllocationState(0, rng.uniform(-5, 15, (3, 3)))
        for t in range(12):
            state, _ = step_robust(state, vmax_I, A_matrices[t % 3])
            for i in (1, 2, 3):
                assert bounding_set(i, vmax_I).max_violation(state.proposals[i - 1]) <= 1e-9


class TestStepAverage:
    def test_worked_average_projection(self, A_matrices):
        vbar = CharacteristicFunction(3, np.array([4.7, 1.8, 0, 0, 0, 0, 10]))
        state = AllocationState(2, np.array([[5, 2.5, 2.5], [0, 5, 5], [5, 2.5, 2.5]]))
        nxt, _ = step_average(state, vbar, A_matrices[2])
        assert_allclose(nxt.proposals[0], [4.7, 2.65, 2.65], atol=1e-10)
        assert_allclose(nxt.proposals[1], [2.5, 3.75, 3.75], atol=1e-12)

    def test_matches_robust_on_same_values(self, vmax_I, A_matrices):
        rng = np.random.default_rng(8)
        state = AllocationState(0, rng.uniform(0, 10, (3, 3)))
        a, rec_a = step_average(state, vmax_I, A_matrices[1])
        r, rec_r = step_robust(state, vmax_I, A_matrices[1])
        assert_array_equal(a.proposals, r.proposals)
        assert_array_equal(rec_a.errors, rec_r.errors)

    def test_feasible_mix_has_zero_error(self, vmean_I, A_matrices):
        state = AllocationState(0, np.tile([6.0, 2.0, 2.0], (3, 1)))
        _, rec = step_average(state, vmean_I, A_matrices[0])
        assert_allclose(rec.errors, 0.0, atol=1e-12)


class TestRun:
    def _robust_stream(self, seed=2024, run_index=0):
        return SeededStream(
            seed, run_index, ValueProcessSpec.robust_coinflip(scenario_bounds("I"), 0.5)
        )

    def _average_stream(self, seed=2024, run_index=0):
        return SeededStream(seed, run_index, ValueProcessSpec.uniform(scenario_bounds("I")))

    def test_single_step_trace(self, pair_schedule):
        tr = run("robust", self._robust_stream(), pair_schedule, corner_proposals(3, 10.0), 1)
        assert tr.horizon == 1
        assert len(tr.records) == 1
        assert tr.final.t == 1
        # the one record is consistent with one stepper call
        assert_array_equal(tr.records[0].proposals, corner_proposals(3, 10.0))
        assert_array_equal(
            tr.records[0].mixed + tr.records[0].errors, tr.final.proposals
        )

    def test_error_bookkeeping_identity_is_exact(self, pair_schedule):
        tr = run("robust", self._robust_stream(), pair_schedule, corner_proposals(3, 10.0), 40)
        for t, rec in enumerate(tr.records):
            nxt = tr.proposals_at(t + 1)
            assert_array_equal(rec.errors, nxt - rec.mixed)

    def test_mean_evolves_by_average_error(self, pair_schedule):
        # doubly stochastic mixing preserves the mean, so
        # y(t+1) = y(t) + mean of the step's errors
        tr = run("average", self._average_stream(), pair_schedule, corner_proposals(3, 10.0), 40)
        for t, rec in enumerate(tr.records):
            expected = rec.mean + rec.errors.mean(axis=0)
            assert np.abs(tr.mean_at(t + 1) - expected).max() <= 1e-12

    def test_robust_run_approaches_singleton_core(self, pair_schedule, vmax_I):
        tr = run("robust", self._robust_stream(), pair_schedule, corner_proposals(3, 10.0), 100)
        assert np.abs(tr.mean_at(100) - np.array([7.0, 3, 0])).max() <= 5e-2
        assert tr.disagreement_at(100) <= 1e-2
        assert is_in_core(tr.mean_at(100), vmax_I, 5e-2)

    def test_average_mode_feasibility_invariant(self, pair_schedule):
        stream = self._average_stream()
        tr = run("average", stream, pair_schedule, corner_proposals(3, 10.0), 30)
        vbar = stream.draw(0)
        from corebargain.game import running_average

        for t in range(1, 31):
            X = tr.proposals_at(t)
            for i in (1, 2, 3):
                assert bounding_set(i, vbar).max_violation(X[i - 1]) <= 1e-9
            if t < 30:
                vbar = running_average(vbar, t, stream.draw(t))

    def test_grand_value_drift_rejected(self, pair_schedule):
        class DriftingStream:
            def draw(self, t):
                vals = np.array([1.0, 1.0, 0, 0, 0, 0, 10.0 + 0.1 * t])
                return CharacteristicFunction(3, vals)

        with pytest.raises(AssumptionViolationError, match="grand"):
            run("average", DriftingStream(), pair_schedule, corner_proposals(3, 10.0), 5)

    def test_robust_mode_tolerates_grand_drift_check_absence(self, pair_schedule):
        # robust mode places no constancy requirement on the stream here;
        # the bounding sets simply follow the draws
        class DriftingStream:
            def draw(self, t):
                return CharacteristicFunction(
                    3, np.array([1.0, 1.0, 0, 0, 0, 0, 10.0 + 0.1 * t])
                )

        tr = run("robust", DriftingStream(), pair_schedule, corner_proposals(3, 10.0), 5)
        assert tr.horizon == 5

    def test_bad_mode_and_horizon(self, pair_schedule):
        with pytest.raises(ValueError):
            run("minimax", self._robust_stream(), pair_schedule, corner_proposals(3, 10.0), 5)
        with pytest.raises(ValueError):
            run("robust", self._robust_stream(), pair_schedule, corner_proposals(3, 10.0), 0)

    def test_convergence_detection_on_constant_stream(self, pair_schedule, vmax_I):
        stream = SeededStream(1, 0, ValueProcessSpec.constant_value(vmax_I))
        tr = run("robust", stream, pair_schedule, corner_proposals(3, 10.0), 200)
        assert tr.converged_at is not None
        assert tr.converged_at >= 5
        assert tr.disagreement_at(200) <= 1e-6

    def test_no_convergence_flag_on_short_run(self, pair_schedule):
        tr = run("robust", self._robust_stream(), pair_schedule, corner_proposals(3, 10.0), 3)
        assert tr.converged_at is None


def _pair_frame(n, i, j):
    W = np.eye(n)
    W[i, i] = W[j, j] = 0.5
    W[i, j] = W[j, i] = 0.5
    return W


class TestLargerGames:
    def test_five_player_robust_run(self):
        from corebargain.game import robust_characteristic
        from corebargain.graphs import GraphSchedule
        from corebargain.stochastic import SeededStream

        sched = GraphSchedule.from_matrices(
            [_pair_frame(5, k, (k + 1) % 5) for k in range(5)]
        )
        lo = np.zeros(31)
        hi = np.zeros(31)
        lo[0], hi[0] = 1.0, 3.0
        hi[1] = 2.0
        lo[-1] = hi[-1] = 12.0
        from corebargain.game import ValueBounds

        bounds = ValueBounds(5, lo, hi)
        proc = ValueProcessSpec.robust_coinflip(bounds, 0.5)
        stream = SeededStream(3, 0, proc)
        tr = run("robust", stream, sched, corner_proposals(5, 12.0), 100)
        vmax = robust_characteristic(bounds)
        assert is_in_core(tr.mean_at(100), vmax, 5e-2)
        assert tr.disagreement_at(100) <= 5e-2
        # post-projection feasibility through the dual-ascent projector
        replay = SeededStream(3, 0, proc)
        for t, rec in enumerate(tr.records):
            v = replay.draw(t)
            post = rec.mixed + rec.errors
            for i in range(5):
                assert bounding_set(i + 1, v).max_violation(post[i]) <= 1e-9

    def test_six_player_smoke(self):
        from corebargain.game import ValueBounds
        from corebargain.graphs import GraphSchedule
        from corebargain.stochastic import SeededStream

        sched = GraphSchedule.from_matrices(
            [_pair_frame(6, k, (k + 1) % 6) for k in range(6)]
        )
        lo = np.zeros(63)
        hi = np.zeros(63)
        hi[0] = 2.0
        lo[-1] = hi[-1] = 12.0
        proc = ValueProcessSpec.robust_coinflip(ValueBounds(6, lo, hi), 0.5)
        tr = run("robust", SeededStream(3, 0, proc), sched, corner_proposals(6, 12.0), 30)
        assert tr.horizon == 30
        assert np.isfinite(tr.final.proposals).all()


class TestRunningAverageConvergence:
    def test_monte_carlo_bound_on_realized_average(self):
        # loose law-of-large-numbers check across the preset's 50 run seeds
        spec = ValueProcessSpec.uniform(scenario_bounds("I"))
        target = spec.mean_characteristic().values
        worst = 0.0
        for k in range(50):
            stream = SeededStream(2024, k, spec)
            vals = np.mean([stream.draw(t).values for t in range(101)], axis=0)
            worst = max(worst, float(np.abs(vals - target).max()))
        assert worst <= 1.0


class TestLyapunov:
    def test_series_at_common_point_is_zero(self, pair_schedule, vmax_I):
        z = np.array([7.0, 3.0, 0.0])
        stream = SeededStream(1, 0, ValueProcessSpec.constant_value(vmax_I))
        tr = run("robust", stream, pair_schedule, np.tile(z, (3, 1)), 10)
        assert_allclose(lyapunov_series(tr, z), 0.0, atol=1e-18)

    def test_descent_with_core_point(self, pair_schedule, vmax_I):
        nonempty, z = core_is_nonempty(vmax_I)
        assert nonempty
        stream = SeededStream(
            2024, 1, ValueProcessSpec.robust_coinflip(scenario_bounds("I"), 0.5)
        )
        tr = run("robust", stream, pair_schedule, corner_proposals(3, 10.0), 100)
        V = lyapunov_series(tr, z)
        assert len(V) == 101
        for t, rec in enumerate(tr.records):
            e2 = float((rec.error_norms() ** 2).sum())
            assert V[t + 1] <= V[t] - e2 + 1e-8

    def test_error_energy_bounded_by_initial_potential(self, pair_schedule, vmax_I):
        _, z = core_is_nonempty(vmax_I)
        for k in range(5):
            stream = SeededStream(
                2024, k, ValueProcessSpec.robust_coinflip(scenario_bounds("I"), 0.5)
            )
            tr = run("robust", stream, pair_schedule, corner_proposals(3, 10.0), 100)
            V0 = lyapunov_series(tr, z)[0]
            total = sum(float((rec.error_norms() ** 2).sum()) for rec in tr.records)
            assert total <= V0 + 1e-8
            assert V0 == pytest.approx(274.0)  # corner start vs [7,3,0]
