import numpy as np
import pytest
from numpy.testing import assert_allclose

from corebargain.errors import AssumptionViolationError
from corebargain.graphs import (
    GraphFrame,
    GraphSchedule,
    minimal_connectivity_window,
    phi_product,
    rate_bound_check,
    validate_connectivity,
    validate_weights,
)


def _identity_schedule(n=3):
    return GraphSchedule.from_matrices([np.eye(n)])


class TestGraphFrame:
    def test_from_matrix_infers_edges(self):
        W = np.array([[0.5, 0.5, 0], [0.5, 0.5, 0], [0, 0, 1.0]])
        frame = GraphFrame.from_matrix(W)
        assert (1, 2) in frame.edges and (2, 1) in frame.edges
        assert all((i, i) in frame.edges for i in (1, 2, 3))
        assert (1, 3) not in frame.edges

    def test_missing_self_loop_rejected(self):
        with pytest.raises(ValueError, match="self-loop"):
            GraphFrame(n=2, edges=frozenset({(1, 1), (1, 2)}), weights=np.eye(2))

    def test_weight_off_edge_rejected(self):
        with pytest.raises(ValueError, match="without a matching edge"):
            GraphFrame(
                n=2,
                edges=frozenset({(1, 1), (2, 2)}),
                weights=np.array([[0.5, 0.5], [0.5, 0.5]]),
            )


class TestValidateWeights:
    def test_rotating_pair_alpha(self, pair_schedule):
        assert validate_weights(pair_schedule) == 0.5

    def test_identity_alpha_is_one(self):
        assert validate_weights(_identity_schedule()) == 1.0

    def test_row_sum_violation(self):
        frame = GraphFrame.from_matrix(np.array([[0.9, 0.0], [0.1, 1.0]]))
        with pytest.raises(AssumptionViolationError, match="frame 0"):
            validate_weights(GraphSchedule((frame,)))

    def test_column_sum_violation(self):
        W = np.array([[0.5, 0.5], [0.0, 1.0]])  # row-stochastic only
        with pytest.raises(AssumptionViolationError, match="column"):
            validate_weights(GraphSchedule((GraphFrame.from_matrix(W),)))

    def test_zero_diagonal(self):
        W = np.array([[0.0, 1.0], [1.0, 0.0]])
        frame = GraphFrame(
            n=2, edges=frozenset({(1, 1), (2, 2), (1, 2), (2, 1)}), weights=W
        )
        with pytest.raises(AssumptionViolationError, match="diagonal"):
            validate_weights(GraphSchedule((frame,)))


class TestValidateConnectivity:
    def test_rotating_pair_window_two(self, pair_schedule):
        assert validate_connectivity(pair_schedule, 2) is True

    def test_rotating_pair_window_one_fails(self, pair_schedule):
        assert validate_connectivity(pair_schedule, 1) is False

    def test_complete_graph_every_frame(self):
        W = np.full((3, 3), 1.0 / 3)
        sched = GraphSchedule.from_matrices([W])
        assert validate_connectivity(sched, 1) is True

    def test_identity_never_connects(self):
        sched = _identity_schedule()
        assert validate_connectivity(sched, 1) is False
        assert validate_connectivity(sched, 7) is False
        assert minimal_connectivity_window(sched, q_max=10) is None

    def test_minimal_window(self, pair_schedule):
        assert minimal_connectivity_window(pair_schedule) == 2

    def test_window_must_be_positive(self, pair_schedule):
        with pytest.raises(ValueError):
            validate_connectivity(pair_schedule, 0)


class TestMixingInvariants:
    def test_column_sums_preserved(self, pair_schedule):
        # doubly stochastic mixing conserves each coordinate's total mass
        rng = np.random.default_rng(3)
        X = rng.uniform(-5, 15, (3, 3))
        for t in range(3):
            A = pair_schedule.matrix_at(t)
            assert_allclose((A @ X).sum(axis=0), X.sum(axis=0), atol=1e-12)

    def test_mixed_rows_stay_in_coordinate_hull(self, pair_schedule):
        rng = np.random.default_rng(4)
        X = rng.uniform(-5, 15, (3, 3))
        lo, hi = X.min(axis=0), X.max(axis=0)
        for t in range(3):
            W = pair_schedule.matrix_at(t) @ X
            assert np.all(W >= lo - 1e-12) and np.all(W <= hi + 1e-12)

    def test_periodic_evaluation(self, pair_schedule):
        for t in range(12):
            assert_allclose(
                pair_schedule.matrix_at(t),
                pair_schedule.matrix_at(t % pair_schedule.period),
            )


class TestPhiProduct:
    def test_single_factor(self, pair_schedule):
        assert_allclose(phi_product(pair_schedule, 1, 1), pair_schedule.matrix_at(1))

    def test_three_factor_product(self, pair_schedule):
        # A(2) @ A(1) @ A(0), multiplied by hand
        expected = np.array(
            [[0.25, 0.375, 0.375], [0.25, 0.375, 0.375], [0.5, 0.25, 0.25]]
        )
        assert_allclose(phi_product(pair_schedule, 2, 0), expected, atol=1e-15)

    def test_products_stay_doubly_stochastic(self, pair_schedule):
        for s in range(4):
            for t in range(s, 12):
                M = phi_product(pair_schedule, t, s)
                assert_allclose(M.sum(axis=0), np.ones(3), atol=1e-10)
                assert_allclose(M.sum(axis=1), np.ones(3), atol=1e-10)
                assert M.min() >= 0.0

    def test_bad_order_rejected(self, pair_schedule):
        with pytest.raises(ValueError):
            phi_product(pair_schedule, 1, 2)


class TestRateBoundCheck:
    def test_rotating_pair_schedule_holds(self, pair_schedule):
        report = rate_bound_check(pair_schedule, alpha=0.5, Q=2, horizon=30)
        assert report.worst_slack >= 0.0

    def test_long_products_approach_consensus(self, pair_schedule):
        M = phi_product(pair_schedule, 60, 0)
        assert np.abs(M - 1.0 / 3).max() <= 1e-12

    def test_single_player_trivial(self):
        sched = GraphSchedule.from_matrices([np.ones((1, 1))])
        report = rate_bound_check(sched, alpha=1.0, Q=1, horizon=5)
        assert report.worst_slack >= 0.0

    def test_violation_raises(self, pair_schedule):
        # an absurd alpha shrinks the bound below the actual mixing rate,
        # tripping the diagnostic
        with pytest.raises(AssumptionViolationError, match="rate bound"):
            rate_bound_check(pair_schedule, alpha=35.9, Q=2, horizon=10)

    def test_alpha_out_of_range_rejected(self, pair_schedule):
        with pytest.raises(ValueError, match="alpha"):
            rate_bound_check(pair_schedule, alpha=36.0, Q=2, horizon=10)
