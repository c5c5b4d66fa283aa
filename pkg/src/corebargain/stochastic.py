"""Seeded generators for random characteristic-function sequences.

Randomness is counter-based: every scalar draw comes from a Philox
generator keyed by (master seed, run index) with the counter set to
(time step, lane). Lanes are coalition masks for per-coalition value draws
(retailer singleton masks for demand draws) and lane 0 is reserved for the
coin flip, so draws are independent of evaluation order, reproducible, and
safe to fan out across parallel runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .game import (
    CharacteristicFunction,
    ValueBounds,
    _check_player_count,
    _incidence_rows,
    robust_characteristic,
)

#: Counter lane reserved for coin flips (coalition masks start at 1).
COIN_LANE = 0

_KINDS = ("uniform-interval", "robust-coinflip", "supply-chain", "constant")


@dataclass(frozen=True, eq=False)
class ValueProcessSpec:
    """Declarative description of a characteristic-function process.

    kind selects the generator:
      - "uniform-interval": independent per-coalition uniforms on bounds
      - "robust-coinflip": with probability uniform_probability draw from
        the intervals, otherwise realize every coalition at its upper bound
      - "supply-chain": joint-reorder savings game with truck cost
        warehouse_cost and i.i.d. uniform demands in [demand_lo, demand_hi]
      - "constant": the fixed function constant every step
    """

    kind: str
    bounds: ValueBounds | None = None
    uniform_probability: float | None = None
    warehouse_cost: float | None = None
    demand_lo: np.ndarray | None = None
    demand_hi: np.ndarray | None = None
    constant: CharacteristicFunction | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ConfigurationError(f"unknown process kind {self.kind!r}")
        if self.kind in ("uniform-interval", "robust-coinflip"):
            if self.bounds is None:
                raise ConfigurationError(f"{self.kind} needs value bounds")
        if self.kind == "robust-coinflip":
            p = self.uniform_probability
            if p is None or not 0.0 <= p <= 1.0:
                raise ConfigurationError("uniform_probability must lie in [0, 1]")
            if p >= 1.0:
                # The upper-bound game would almost surely never realize, so
                # the convergence hypothesis for the robust protocol is void.
                raise ConfigurationError(
                    "uniform_probability must be < 1 so the upper-bound game "
                    "realizes with positive probability"
                )
        if self.kind == "supply-chain":
            if self.warehouse_cost is None or not self.warehouse_cost > 0.0:
                raise ConfigurationError("warehouse_cost must be positive")
            lo = np.asarray(self.demand_lo, dtype=float)
            hi = np.asarray(self.demand_hi, dtype=float)
            if lo.ndim != 1 or lo.shape != hi.shape:
                raise ConfigurationError("demand bounds must be equal-length vectors")
            if np.any(lo > hi) or np.any(lo < 0.0):
                raise ConfigurationError("demand bounds must satisfy 0 <= lo <= hi")
            lo.setflags(write=False)
            hi.setflags(write=False)
            object.__setattr__(self, "demand_lo", lo)
            object.__setattr__(self, "demand_hi", hi)
        if self.kind == "constant" and self.constant is None:
            raise ConfigurationError("constant process needs a characteristic function")

    @classmethod
    def uniform(cls, bounds: ValueBounds) -> "ValueProcessSpec":
        return cls(kind="uniform-interval", bounds=bounds)

    @classmethod
    def robust_coinflip(
        cls, bounds: ValueBounds, uniform_probability: float
    ) -> "ValueProcessSpec":
        return cls(
            kind="robust-coinflip",
            bounds=bounds,
            uniform_probability=uniform_probability,
        )

    @classmethod
    def supply_chain(
        cls, warehouse_cost: float, demand_lo, demand_hi
    ) -> "ValueProcessSpec":
        return cls(
            kind="supply-chain",
            warehouse_cost=warehouse_cost,
            demand_lo=demand_lo,
            demand_hi=demand_hi,
        )

    @classmethod
    def constant_value(cls, v: CharacteristicFunction) -> "ValueProcessSpec":
        return cls(kind="constant", constant=v)

    @property
    def n(self) -> int:
        if self.bounds is not None:
            return self.bounds.n
        if self.constant is not None:
            return self.constant.n
        return len(self.demand_lo)

    def upper_characteristic(self) -> CharacteristicFunction | None:
        """Per-coalition upper-bound game, when the process defines one."""
        if self.bounds is not None:
            return robust_characteristic(self.bounds)
        if self.kind == "constant":
            return self.constant
        return None

    def mean_characteristic(self) -> CharacteristicFunction | None:
        """Ergodic limit of the running averages, when analytic."""
        if self.kind == "uniform-interval":
            return CharacteristicFunction(self.bounds.n, self.bounds.midpoints())
        if self.kind == "robust-coinflip":
            p = self.uniform_probability
            mix = p * self.bounds.midpoints() + (1.0 - p) * self.bounds.hi
            return CharacteristicFunction(self.bounds.n, mix)
        if self.kind == "constant":
            return self.constant
        return None


@dataclass(frozen=True, eq=False)
class SeededStream:
    """Per-run draw source: identical (master_seed, run_index, t) always
    yields bit-identical characteristic functions."""

    master_seed: int
    run_index: int
    process: ValueProcessSpec

    def __post_init__(self):
        if not 0 <= self.master_seed < 2**64:
            raise ConfigurationError("master seed must fit in an unsigned 64-bit int")
        if not 0 <= self.run_index < 2**64:
            raise ConfigurationError("run index must fit in an unsigned 64-bit int")

    def generator(self, t: int, lane: int) -> np.random.Generator:
        """Keyed generator for one (step, lane) cell of the stream."""
        key = np.array([self.master_seed, self.run_index], dtype=np.uint64)
        counter = np.array([t, lane, 0, 0], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(counter=counter, key=key))

    def draw(self, t: int) -> CharacteristicFunction:
        p = self.process
        if p.kind == "uniform-interval":
            return draw_uniform(p.bounds, self, t)
        if p.kind == "robust-coinflip":
            return draw_robust_coinflip(p.bounds, p.uniform_probability, self, t)
        if p.kind == "supply-chain":
            return draw_supply_chain(p.warehouse_cost, p.demand_lo, p.demand_hi, self, t)
        return p.constant


def draw_uniform(bounds: ValueBounds, stream: SeededStream, t: int) -> CharacteristicFunction:
    """Independent uniform draw per coalition interval; degenerate intervals
    (including the grand coalition) consume no randomness."""
    values = bounds.lo.copy()
    for mask in range(1, len(values) + 1):
        lo, hi = bounds.lo[mask - 1], bounds.hi[mask - 1]
        if hi > lo:
            u = stream.generator(t, mask).random()
            values[mask - 1] = lo + (hi - lo) * u
    return CharacteristicFunction(bounds.n, values)


def draw_robust_coinflip(
    bounds: ValueBounds, uniform_probability: float, stream: SeededStream, t: int
) -> CharacteristicFunction:
    """Interval draw with probability uniform_probability, otherwise every
    coalition at its upper bound. Any uniform_probability < 1 makes the
    upper-bound game realize infinitely often with probability 1."""
    if not 0.0 <= uniform_probability < 1.0:
        raise ConfigurationError("uniform_probability must lie in [0, 1)")
    coin = stream.generator(t, COIN_LANE).random()
    if coin < uniform_probability:
        return draw_uniform(bounds, stream, t)
    return robust_characteristic(bounds)


def draw_supply_chain(
    warehouse_cost: float, demand_lo, demand_hi, stream: SeededStream, t: int
) -> CharacteristicFunction:
    """Joint-reorder savings game for one demand realization.

    Retailer demands are uniform on their bounds (keyed by the retailer's
    singleton mask); a coalition pays min(warehouse_cost, total demand) and
    its value is the members' stand-alone costs minus the coalition cost.
    """
    if not warehouse_cost > 0.0:
        raise ConfigurationError("warehouse_cost must be positive")
    lo = np.asarray(demand_lo, dtype=float)
    hi = np.asarray(demand_hi, dtype=float)
    n = lo.shape[0]
    d = lo.copy()
    for i in range(n):
        if hi[i] > lo[i]:
            u = stream.generator(t, 1 << i).random()
            d[i] = lo[i] + (hi[i] - lo[i]) * u
    single_cost = np.minimum(warehouse_cost, d)
    m = (1 << n) - 1
    values = np.empty(m)
    for mask in range(1, m + 1):
        members = [i for i in range(n) if mask >> i & 1]
        coalition_cost = min(warehouse_cost, float(d[members].sum()))
        values[mask - 1] = float(single_cost[members].sum()) - coalition_cost
    return CharacteristicFunction(n, values)


def incidence_matrix(n: int) -> np.ndarray:
    """Coalition-by-player 0/1 matrix: the row for mask S is the incidence
    vector of S, so x lies in the core of v iff incidence_matrix(n) @ x >= v
    holds with equality on the last (grand-coalition) row."""
    _check_player_count(n)
    return _incidence_rows(range(1, 1 << n), n)
