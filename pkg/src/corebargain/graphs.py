"""Time-varying neighbor graphs, mixing-weight schedules, and diagnostics.

A schedule is a finite list of frames cycled periodically: frame t of a
schedule with period p is ``frames[t % p]``. Each frame pairs a directed
edge set (edge (i, j) means player i observes player j; players are
1-based) with an n-by-n weight matrix whose entry (i, j) is the weight
player i puts on player j's proposal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import AssumptionViolationError

_STOCHASTIC_TOL = 1e-12
_PRODUCT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class GraphFrame:
    """One time slot of a schedule: edge set plus weight matrix."""

    n: int
    edges: frozenset
    weights: np.ndarray

    def __post_init__(self):
        W = np.ascontiguousarray(np.asarray(self.weights, dtype=float))
        W.setflags(write=False)
        if W.shape != (self.n, self.n):
            raise ValueError(f"weight matrix must be {self.n}x{self.n}")
        edges = frozenset((int(i), int(j)) for i, j in self.edges)
        for i, j in edges:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge ({i},{j}) outside player range 1..{self.n}")
        for i in range(1, self.n + 1):
            if (i, i) not in edges:
                raise ValueError(f"self-loop ({i},{i}) missing from edge set")
        for i in range(self.n):
            for j in range(self.n):
                if W[i, j] != 0.0 and (i + 1, j + 1) not in edges:
                    raise ValueError(
                        f"nonzero weight ({i + 1},{j + 1}) without a matching edge"
                    )
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "weights", W)

    @classmethod
    def from_matrix(cls, weights: np.ndarray) -> "GraphFrame":
        """Build a frame whose edges are the nonzero weights plus all
        self-loops (a player always observes itself)."""
        W = np.asarray(weights, dtype=float)
        n = W.shape[0]
        edges = {(i, i) for i in range(1, n + 1)}
        edges |= {(i + 1, j + 1) for i in range(n) for j in range(n) if W[i, j] != 0.0}
        return cls(n=n, edges=frozenset(edges), weights=W)


@dataclass(frozen=True, eq=False)
class GraphSchedule:
    """Periodic schedule of frames; frame at time t is frames[t % period]."""

    frames: tuple

    def __post_init__(self):
        frames = tuple(self.frames)
        if not frames:
            raise ValueError("schedule needs at least one frame")
        n = frames[0].n
        if any(f.n != n for f in frames):
            raise ValueError("all frames must have the same player count")
        object.__setattr__(self, "frames", frames)

    @classmethod
    def from_matrices(cls, matrices: Iterable[np.ndarray]) -> "GraphSchedule":
        return cls(tuple(GraphFrame.from_matrix(W) for W in matrices))

    @property
    def n(self) -> int:
        return self.frames[0].n

    @property
    def period(self) -> int:
        return len(self.frames)

    def frame_at(self, t: int) -> GraphFrame:
        return self.frames[t % self.period]

    def matrix_at(self, t: int) -> np.ndarray:
        return self.frame_at(t).weights

    def edges_at(self, t: int) -> frozenset:
        return self.frame_at(t).edges


def validate_weights(sched: GraphSchedule) -> float:
    """Check every frame is doubly stochastic with positive diagonal and
    return alpha, the smallest strictly positive weight in the schedule.

    Raises AssumptionViolationError naming the offending frame otherwise.
    """
    alpha = math.inf
    for idx, frame in enumerate(sched.frames):
        W = frame.weights
        if np.any(W < 0.0):
            raise AssumptionViolationError(f"frame {idx}: negative weight")
        rows = W.sum(axis=1)
        cols = W.sum(axis=0)
        if np.max(np.abs(rows - 1.0)) > _STOCHASTIC_TOL:
            raise AssumptionViolationError(
                f"frame {idx}: row sums {rows.tolist()} are not all 1"
            )
        if np.max(np.abs(cols - 1.0)) > _STOCHASTIC_TOL:
            raise AssumptionViolationError(
                f"frame {idx}: column sums {cols.tolist()} are not all 1"
            )
        diag = np.diag(W)
        if np.any(diag <= 0.0):
            raise AssumptionViolationError(f"frame {idx}: diagonal entry not positive")
        positive = W[W > 0.0]
        alpha = min(alpha, float(positive.min()))
    if not alpha > 0.0:
        raise AssumptionViolationError("no positive weight found in schedule")
    return alpha


def _strongly_connected(n: int, edges: set) -> bool:
    fwd = {i: set() for i in range(1, n + 1)}
    bwd = {i: set() for i in range(1, n + 1)}
    for i, j in edges:
        fwd[i].add(j)
        bwd[j].add(i)

    def reaches_all(adj):
        seen = {1}
        stack = [1]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == n

    return reaches_all(fwd) and reaches_all(bwd)


def validate_connectivity(sched: GraphSchedule, Q: int) -> bool:
    """True iff the union graph over every window [tQ, (t+1)Q - 1] is
    strongly connected. Periodicity means only lcm(period, Q) / Q distinct
    windows exist, so the check is finite and exact."""
    if Q < 1:
        raise ValueError(f"window length must be >= 1, got {Q}")
    windows = math.lcm(sched.period, Q) // Q
    for t in range(windows):
        union = set()
        for tau in range(t * Q, (t + 1) * Q):
            union |= sched.edges_at(tau)
        if not _strongly_connected(sched.n, union):
            return False
    return True


def minimal_connectivity_window(sched: GraphSchedule, q_max: int | None = None) -> int | None:
    """Smallest window length Q for which the schedule is Q-connected,
    or None if none up to q_max (default: one full period)."""
    if q_max is None:
        q_max = sched.period
    for Q in range(1, q_max + 1):
        if validate_connectivity(sched, Q):
            return Q
    return None


def phi_product(sched: GraphSchedule, t: int, s: int) -> np.ndarray:
    """Left product A(t) A(t-1) ... A(s) of the schedule's weight matrices."""
    if not 0 <= s <= t:
        raise ValueError(f"need t >= s >= 0, got t={t}, s={s}")
    M = sched.matrix_at(s)
    for tau in range(s + 1, t + 1):
        M = sched.matrix_at(tau) @ M
    dev = max(
        float(np.abs(M.sum(axis=1) - 1.0).max()),
        float(np.abs(M.sum(axis=0) - 1.0).max()),
    )
    if dev > _PRODUCT_TOL:
        raise AssumptionViolationError(
            f"product over [{s},{t}] lost double stochasticity (dev={dev:.3e})"
        )
    return M


@dataclass(frozen=True)
class RateBoundReport:
    """Outcome of checking the geometric consensus bound on all windows."""

    n: int
    alpha: float
    Q: int
    horizon: int
    worst_slack: float
    worst_pair: tuple


def rate_bound_check(
    sched: GraphSchedule, alpha: float, Q: int, horizon: int
) -> RateBoundReport:
    """Verify max_ij |[A(t)...A(s)]_ij - 1/n| <= (1 - alpha/(4 n^2)) to the
    power ceil((t - s + 1)/Q) - 2, for every 0 <= s <= t <= horizon.

    Returns the worst (smallest) slack; raises AssumptionViolationError on
    any violation, which indicates broken weight/connectivity assumptions or
    an arithmetic bug.
    """
    n = sched.n
    base = 1.0 - alpha / (4.0 * n * n)
    if not 0.0 < base < 1.0:
        raise ValueError(f"alpha={alpha} leaves no usable contraction base for n={n}")
    worst_slack = math.inf
    worst_pair = (0, 0)
    target = np.full((n, n), 1.0 / n)
    for s in range(horizon + 1):
        M = np.eye(n)
        for t in range(s, horizon + 1):
            M = sched.matrix_at(t) @ M
            dev = float(np.abs(M - target).max())
            bound = base ** (math.ceil((t - s + 1) / Q) - 2)
            slack = bound - dev
            if slack < worst_slack:
                worst_slack = slack
                worst_pair = (t, s)
            if slack < 0.0:
                raise AssumptionViolationError(
                    f"consensus rate bound violated at (t={t}, s={s}): "
                    f"deviation {dev:.6e} > bound {bound:.6e}"
                )
    return RateBoundReport(
        n=n, alpha=alpha, Q=Q, horizon=horizon,
        worst_slack=worst_slack, worst_pair=worst_pair,
    )
