"""Transferable-utility games over coalitions encoded as bitmasks.

Players are labeled 1..n. A coalition is a nonempty subset of players,
identified by the bitmask with bit (i-1) set iff player i belongs to it.
Characteristic functions store one value per coalition in increasing-mask
order, so ``values[mask - 1]`` is the value of coalition ``mask`` and the
last entry is the grand-coalition value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from .errors import CoalitionError

#: Absolute feasibility tolerance used for core membership and witnesses.
FEASIBILITY_TOL = 1e-9

#: Largest supported player count (constraint systems grow as 2^n).
MAX_PLAYERS = 6


def _check_player_count(n: int) -> None:
    if not 1 <= n <= MAX_PLAYERS:
        raise CoalitionError(f"player count must be in 1..{MAX_PLAYERS}, got {n}")


def _members_of(mask: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def _incidence_rows(masks: Iterable[int], n: int) -> np.ndarray:
    """0/1 matrix whose row for mask S is the incidence vector of S."""
    masks = list(masks)
    rows = np.zeros((len(masks), n))
    for r, mask in enumerate(masks):
        for i in range(n):
            if mask >> i & 1:
                rows[r, i] = 1.0
    return rows


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(np.asarray(a, dtype=float))
    a.setflags(write=False)
    return a


@dataclass(frozen=True, order=True)
class CoalitionId:
    """Identity of a nonempty coalition within an n-player game."""

    mask: int
    n: int

    def __post_init__(self):
        _check_player_count(self.n)
        if not 1 <= self.mask < (1 << self.n):
            raise CoalitionError(
                f"coalition mask must be in 1..{(1 << self.n) - 1}, got {self.mask}"
            )

    @classmethod
    def from_members(cls, members: Iterable[int], n: int) -> "CoalitionId":
        mask = 0
        for i in members:
            if not 1 <= i <= n:
                raise CoalitionError(f"player {i} outside 1..{n}")
            mask |= 1 << (i - 1)
        return cls(mask, n)

    @property
    def members(self) -> frozenset[int]:
        return _members_of(self.mask)

    @property
    def size(self) -> int:
        return bin(self.mask).count("1")

    @property
    def is_grand(self) -> bool:
        return self.mask == (1 << self.n) - 1

    def incidence(self) -> np.ndarray:
        """0/1 incidence vector of the coalition."""
        return _incidence_rows([self.mask], self.n)[0]


def coalition_members(cid: CoalitionId) -> frozenset[int]:
    """Players belonging to the coalition (1-based labels)."""
    return cid.members


@dataclass(frozen=True, eq=False)
class CharacteristicFunction:
    """Coalition values of an n-player TU game, indexed by coalition mask."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        _check_player_count(self.n)
        values = _readonly(self.values)
        if values.shape != (self.m,):
            raise ValueError(
                f"expected {self.m} coalition values for n={self.n}, "
                f"got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("coalition values must be finite")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_dict(
        cls, n: int, entries: Mapping[object, float], default: float = 0.0
    ) -> "CharacteristicFunction":
        """Build from a mapping keyed by mask or by an iterable of members."""
        values = np.full((1 << n) - 1, default)
        for key, val in entries.items():
            if isinstance(key, CoalitionId):
                mask = key.mask
            elif isinstance(key, int):
                mask = key
            else:
                mask = CoalitionId.from_members(key, n).mask
            if not 1 <= mask <= len(values):
                raise CoalitionError(f"coalition mask {mask} outside 1..{len(values)}")
            values[mask - 1] = val
        return cls(n, values)

    @property
    def m(self) -> int:
        return (1 << self.n) - 1

    @property
    def grand_mask(self) -> int:
        return self.m

    @property
    def grand_value(self) -> float:
        return float(self.values[-1])

    def value(self, coalition) -> float:
        mask = coalition.mask if isinstance(coalition, CoalitionId) else int(coalition)
        if not 1 <= mask <= self.m:
            raise CoalitionError(f"coalition mask {mask} outside 1..{self.m}")
        return float(self.values[mask - 1])

    __getitem__ = value

    def proper_masks(self) -> range:
        """Masks of all proper nonempty coalitions, increasing."""
        return range(1, self.m)


@dataclass(frozen=True, eq=False)
class ValueBounds:
    """Per-coalition value intervals; the grand-coalition value is fixed."""

    n: int
    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        _check_player_count(self.n)
        lo = _readonly(self.lo)
        hi = _readonly(self.hi)
        m = (1 << self.n) - 1
        if lo.shape != (m,) or hi.shape != (m,):
            raise ValueError(f"bounds must have shape ({m},)")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise ValueError("bounds must be finite")
        if np.any(lo > hi):
            raise ValueError("lower bounds must not exceed upper bounds")
        if lo[-1] != hi[-1]:
            raise ValueError("grand-coalition value must be fixed (lo == hi)")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def grand_value(self) -> float:
        return float(self.hi[-1])

    def midpoints(self) -> np.ndarray:
        return (self.lo + self.hi) / 2.0


@dataclass(frozen=True, eq=False)
class PolyhedronSpec:
    """One equality plus coalition-sum inequalities over allocation space.

    The equality is ``equality_normal . x == equality_rhs`` with the all-ones
    normal; inequality row k is ``ineq_normals[k] . x >= ineq_rhs[k]`` and is
    tagged with the coalition it came from. Duplicate rows are permitted.
    """

    n: int
    equality_normal: np.ndarray
    equality_rhs: float
    ineq_normals: np.ndarray
    ineq_rhs: np.ndarray
    ineq_tags: tuple[CoalitionId, ...] = field(default=())

    def __post_init__(self):
        eq = _readonly(self.equality_normal)
        A = _readonly(np.atleast_2d(self.ineq_normals))
        b = _readonly(np.atleast_1d(self.ineq_rhs))
        if A.size == 0:
            A = np.zeros((0, self.n))
            A.setflags(write=False)
        if b.shape != (A.shape[0],):
            raise ValueError("inequality system shapes are inconsistent")
        # Normal patterns recur every step with fresh right-hand sides, so
        # their structural checks are cached by content.
        pattern = (self.n, eq.shape, eq.tobytes(), A.shape, A.tobytes())
        if pattern not in _VALIDATED_PATTERNS:
            if eq.shape != (self.n,):
                raise ValueError("equality normal has wrong dimension")
            if not np.array_equal(eq, np.ones(self.n)):
                raise ValueError("equality normal must be the all-ones vector")
            if A.shape[1] != self.n:
                raise ValueError("inequality system shapes are inconsistent")
            if not np.all((A == 0.0) | (A == 1.0)):
                raise ValueError("inequality normals must be 0/1 incidence vectors")
            if len(_VALIDATED_PATTERNS) > 4096:
                _VALIDATED_PATTERNS.clear()
            _VALIDATED_PATTERNS.add(pattern)
        if len(self.ineq_tags) != A.shape[0]:
            raise ValueError("one coalition tag required per inequality")
        object.__setattr__(self, "equality_normal", eq)
        object.__setattr__(self, "equality_rhs", float(self.equality_rhs))
        object.__setattr__(self, "ineq_normals", A)
        object.__setattr__(self, "ineq_rhs", b)
        object.__setattr__(self, "ineq_tags", tuple(self.ineq_tags))

    @property
    def k(self) -> int:
        """Number of inequality rows."""
        return self.ineq_normals.shape[0]

    def max_violation(self, x: np.ndarray) -> float:
        """Largest constraint violation at x (0 when feasible)."""
        x = np.asarray(x, dtype=float)
        viol = abs(float(self.equality_normal @ x) - self.equality_rhs)
        if self.k:
            slack = self.ineq_normals @ x - self.ineq_rhs
            viol = max(viol, float(np.maximum(-slack, 0.0).max()))
        return viol

    def contains(self, x: np.ndarray, tol: float = FEASIBILITY_TOL) -> bool:
        return self.max_violation(x) <= tol


_VALIDATED_PATTERNS: set = set()


@lru_cache(maxsize=512)
def _constraint_family(n: int, masks: tuple[int, ...]):
    """Shared immutable pieces of a coalition constraint system."""
    eq = _readonly(np.ones(n))
    normals = _readonly(_incidence_rows(masks, n))
    tags = tuple(CoalitionId(m, n) for m in masks)
    index = np.array(masks, dtype=np.intp) - 1
    return eq, normals, tags, index


def _coalition_polyhedron(v: CharacteristicFunction, masks: tuple[int, ...]) -> PolyhedronSpec:
    eq, normals, tags, index = _constraint_family(v.n, masks)
    return PolyhedronSpec(
        n=v.n,
        equality_normal=eq,
        equality_rhs=v.grand_value,
        ineq_normals=normals,
        ineq_rhs=v.values[index],
        ineq_tags=tags,
    )


def bounding_set(i: int, v: CharacteristicFunction) -> PolyhedronSpec:
    """Constraint set of player i: grand-coalition efficiency plus the value
    constraint of every proper coalition containing i."""
    if not 1 <= i <= v.n:
        raise ValueError(f"player index {i} outside 1..{v.n}")
    bit = 1 << (i - 1)
    masks = tuple(m for m in v.proper_masks() if m & bit)
    return _coalition_polyhedron(v, masks)


def core_constraints(v: CharacteristicFunction) -> PolyhedronSpec:
    """Core of the game as a polyhedron: efficiency equality plus one
    inequality per proper nonempty coalition (the intersection of all
    players' bounding sets)."""
    return _coalition_polyhedron(v, tuple(v.proper_masks()))


def robust_characteristic(bounds: ValueBounds) -> CharacteristicFunction:
    """Pointwise-worst-case game: every coalition at its upper value."""
    return CharacteristicFunction(bounds.n, bounds.hi.copy())


def running_average(
    prev: CharacteristicFunction, t: int, v_t: CharacteristicFunction
) -> CharacteristicFunction:
    """Cumulative mean update: given the average of draws 0..t-1 and the
    draw at t, return the average of draws 0..t (t >= 1)."""
    if t < 1:
        raise ValueError(f"running average update requires t >= 1, got {t}")
    if prev.n != v_t.n:
        raise ValueError("player counts differ")
    return CharacteristicFunction(prev.n, (t * prev.values + v_t.values) / (t + 1))


def is_in_core(x: np.ndarray, v: CharacteristicFunction, tol: float = FEASIBILITY_TOL) -> bool:
    """True iff x is efficient and no proper coalition is paid below its
    value, both within absolute tolerance tol."""
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    x = np.asarray(x, dtype=float)
    if abs(float(x.sum()) - v.grand_value) > tol:
        return False
    for mask in v.proper_masks():
        paid = sum(x[i - 1] for i in _members_of(mask))
        if paid < v.value(mask) - tol:
            return False
    return True


def core_is_nonempty(
    v: CharacteristicFunction,
) -> tuple[bool, np.ndarray | None]:
    """Exact feasibility of the core polyhedron via vertex enumeration.

    Returns (nonempty, witness); the witness is the lexicographically
    smallest core vertex, feasible within FEASIBILITY_TOL. The core is
    bounded whenever nonempty (it lies in the efficiency hyperplane with all
    singleton values as per-player lower bounds), so a vertex exists iff the
    core is nonempty.
    """
    from .geometry import enumerate_vertices

    vertices = enumerate_vertices(core_constraints(v))
    if not vertices:
        return False, None
    return True, vertices[0]
