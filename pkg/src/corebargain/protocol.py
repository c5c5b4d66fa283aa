"""Synchronous bargaining recursions over a neighbor-graph schedule.

One step mixes every player's proposal with its neighbors' proposals
through the step's weight matrix and projects the mix onto the player's
constraint set: the instantaneous-game bounding set in robust mode, the
running-average-game bounding set in average mode. Proposals are stored as
an (n, n) array whose row i-1 is player i's proposed allocation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import AssumptionViolationError, InfeasibleSetError
from .game import (
    FEASIBILITY_TOL,
    CharacteristicFunction,
    bounding_set,
    core_constraints,
    running_average,
)
from .geometry import distance_to, project_point
from .graphs import GraphSchedule

#: Convergence detection: disagreement and summed error-norm thresholds,
#: required to hold on this many consecutive steps.
CONVERGENCE_TOL = 1e-6
CONVERGENCE_STREAK = 5

#: Average mode rejects value streams whose grand value drifts beyond this.
GRAND_VALUE_DRIFT_TOL = 1e-9

Mode = Literal["robust", "average"]


def corner_proposals(n: int, total: float) -> np.ndarray:
    """Initial proposals where player i claims the whole grand value."""
    return total * np.eye(n)


@dataclass(frozen=True, eq=False)
class AllocationState:
    """Proposals of all players at one time step."""

    t: int
    proposals: np.ndarray

    def __post_init__(self):
        X = np.ascontiguousarray(np.asarray(self.proposals, dtype=float))
        X.setflags(write=False)
        if X.ndim != 2 or X.shape[0] != X.shape[1]:
            raise ValueError("proposals must form an (n, n) array")
        if not np.all(np.isfinite(X)):
            raise ValueError("proposals must be finite")
        object.__setattr__(self, "proposals", X)

    @property
    def n(self) -> int:
        return self.proposals.shape[0]

    def mean(self) -> np.ndarray:
        """Instantaneous average of the players' proposals."""
        return self.proposals.mean(axis=0)

    def disagreement(self) -> float:
        """Largest distance of any proposal from the instantaneous average."""
        y = self.mean()
        return float(np.linalg.norm(self.proposals - y, axis=1).max())


@dataclass(frozen=True, eq=False)
class StepRecord:
    """Everything one step produced, keyed by its departure time t.

    errors is exactly the stored difference between the post-step proposals
    and the mixed points, so the next state's proposals equal
    ``mixed + errors`` bitwise. core_distances holds each post-step
    proposal's distance to the core of the game used in the step (+inf when
    that core is empty).
    """

    t: int
    proposals: np.ndarray
    mixed: np.ndarray
    errors: np.ndarray
    mean: np.ndarray
    disagreement: float
    core_distances: np.ndarray

    def error_norms(self) -> np.ndarray:
        return np.linalg.norm(self.errors, axis=1)


@dataclass(frozen=True, eq=False)
class RunTrace:
    """Per-step records of a single bargaining run plus the final state.

    converged_at is the step index completing the first streak of
    CONVERGENCE_STREAK consecutive steps with disagreement and summed error
    norm both below CONVERGENCE_TOL, or None; runs always continue to the
    horizon regardless.
    """

    mode: str
    records: tuple
    final: AllocationState
    converged_at: int | None

    @property
    def n(self) -> int:
        return self.final.n

    @property
    def horizon(self) -> int:
        return len(self.records)

    def proposals_at(self, t: int) -> np.ndarray:
        """Proposals x(t) for 0 <= t <= horizon."""
        if t == self.horizon:
            return self.final.proposals
        return self.records[t].proposals

    def mean_at(self, t: int) -> np.ndarray:
        return self.proposals_at(t).mean(axis=0)

    def disagreement_at(self, t: int) -> float:
        X = self.proposals_at(t)
        y = X.mean(axis=0)
        return float(np.linalg.norm(X - y, axis=1).max())


def _step(
    state: AllocationState, values: CharacteristicFunction, A_t: np.ndarray
) -> tuple[AllocationState, StepRecord]:
    n = state.n
    if values.n != n:
        raise ValueError("characteristic function and state disagree on n")
    A_t = np.asarray(A_t, dtype=float)
    if A_t.shape != (n, n):
        raise ValueError(f"weight matrix must be {n}x{n}")
    X = state.proposals
    W = A_t @ X
    new = np.empty_like(W)
    for i in range(n):
        Xi = bounding_set(i + 1, values)
        if Xi.max_violation(W[i]) <= FEASIBILITY_TOL:
            new[i] = W[i]
            continue
        try:
            new[i] = project_point(W[i], Xi)
        except InfeasibleSetError as err:
            raise InfeasibleSetError(
                f"bounding set of player {i + 1} is empty for values "
                f"{values.values.tolist()}",
                player=i + 1,
                values=values,
            ) from err
    errors = new - W
    core = core_constraints(values)
    core_distances = np.empty(n)
    try:
        for i in range(n):
            core_distances[i] = distance_to(new[i], core)
    except InfeasibleSetError:
        core_distances[:] = np.inf
    record = StepRecord(
        t=state.t,
        proposals=X,
        mixed=W,
        errors=errors,
        mean=X.mean(axis=0),
        disagreement=state.disagreement(),
        core_distances=core_distances,
    )
    return AllocationState(t=state.t + 1, proposals=new), record


def step_robust(
    state: AllocationState, v_t: CharacteristicFunction, A_t: np.ndarray
) -> tuple[AllocationState, StepRecord]:
    """One robust-mode step: mix with A_t, then project each player onto its
    bounding set for the realized game v_t."""
    return _step(state, v_t, A_t)


def step_average(
    state: AllocationState, v_bar_t: CharacteristicFunction, A_t: np.ndarray
) -> tuple[AllocationState, StepRecord]:
    """One average-mode step: identical recursion against the bounding sets
    of the running-average game v_bar_t."""
    return _step(state, v_bar_t, A_t)


def run(
    mode: Mode,
    value_stream,
    sched: GraphSchedule,
    x0: np.ndarray,
    T: int,
) -> RunTrace:
    """Run T bargaining steps from proposals x0.

    value_stream.draw(t) supplies the realized game of step t. In average
    mode every player projects against the same running average of the
    draws, and a grand-coalition value drifting by more than
    GRAND_VALUE_DRIFT_TOL aborts the run (violated standing assumption).
    """
    if mode not in ("robust", "average"):
        raise ValueError(f"mode must be 'robust' or 'average', got {mode!r}")
    if T < 1:
        raise ValueError(f"horizon must be >= 1, got {T}")
    state = x0 if isinstance(x0, AllocationState) else AllocationState(0, x0)
    if state.t != 0:
        raise ValueError("initial state must be at t=0")
    records = []
    vbar = None
    grand0 = None
    streak = 0
    converged_at = None
    for t in range(T):
        v = value_stream.draw(t)
        if mode == "average":
            if vbar is None:
                vbar, grand0 = v, v.grand_value
            else:
                if abs(v.grand_value - grand0) > GRAND_VALUE_DRIFT_TOL:
                    raise AssumptionViolationError(
                        f"grand-coalition value drifted from {grand0} to "
                        f"{v.grand_value} at t={t}; average mode requires it constant"
                    )
                vbar = running_average(vbar, t, v)
            state, rec = _step(state, vbar, sched.matrix_at(t))
        else:
            state, rec = _step(state, v, sched.matrix_at(t))
        records.append(rec)
        quiet = (
            rec.disagreement <= CONVERGENCE_TOL
            and float(rec.error_norms().sum()) <= CONVERGENCE_TOL
        )
        streak = streak + 1 if quiet else 0
        if converged_at is None and streak >= CONVERGENCE_STREAK:
            converged_at = rec.t
    return RunTrace(
        mode=mode, records=tuple(records), final=state, converged_at=converged_at
    )


def lyapunov_series(trace: RunTrace, z: np.ndarray) -> list[float]:
    """Summed squared distances of all proposals from z, per step 0..T.

    With z in the core of the upper-bound game this sequence decreases by at
    least the summed squared error norms at every robust-mode step.
    """
    z = np.asarray(z, dtype=float)
    return [
        float(((trace.proposals_at(t) - z) ** 2).sum())
        for t in range(trace.horizon + 1)
    ]
