"""Exact Euclidean projection onto coalition polyhedra.

All sets handled here are intersections of one efficiency hyperplane
(all-ones normal) with half-spaces whose normals are 0/1 incidence vectors.
Integrality of the normals is exploited throughout: a stacked constraint
matrix is singular iff the determinant of its (integer) Gram matrix is zero,
so rank tests are exact.

For dimensions up to 4 the projection is computed by exhaustive active-set
enumeration: every independent subset of at most n-1 inequalities defines an
affine set whose projection is a candidate; the feasible candidate closest
to the input is the projection. For n = 5, 6 a dual cyclic coordinate-ascent
method (Hildreth-style) is used with a KKT stopping test.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy.optimize import nnls

from .errors import InfeasibleSetError
from .game import FEASIBILITY_TOL, CoalitionId

if TYPE_CHECKING:
    from .game import CharacteristicFunction, PolyhedronSpec

#: KKT residual ceiling guaranteed by ProjectionResult.
KKT_RESIDUAL_TOL = 1e-8

#: Stopping residual and sweep cap for the dual coordinate-ascent path.
_DUAL_TOL = 1e-10
_DUAL_MAX_SWEEPS = 100_000

#: Dimension threshold between enumeration and coordinate ascent.
_ENUM_MAX_N = 4

_CANDIDATE_TOL = FEASIBILITY_TOL


@dataclass(frozen=True, eq=False)
class ProjectionResult:
    """Projection point with its active constraints and a KKT certificate.

    kkt_residual bounds the worst violation among stationarity (the point
    minus the input must be a nonnegative combination of active inequality
    normals plus a signed multiple of the equality normal), primal
    feasibility, and complementary slackness.
    """

    point: np.ndarray
    active_set: tuple[CoalitionId, ...]
    kkt_residual: float

    def __post_init__(self):
        p = np.asarray(self.point, dtype=float)
        p.setflags(write=False)
        object.__setattr__(self, "point", p)


def project_affine(x: np.ndarray, normal: np.ndarray, rhs: float) -> np.ndarray:
    """Orthogonal projection of x onto the hyperplane normal . y == rhs."""
    x = np.asarray(x, dtype=float)
    normal = np.asarray(normal, dtype=float)
    nn = float(normal @ normal)
    if nn == 0.0:
        raise ValueError("hyperplane normal must be nonzero")
    return x - ((float(normal @ x) - rhs) / nn) * normal


class _EnumProjector:
    """Batched active-set enumeration for one family of 0/1 normals.

    For every independent subset J of at most n-1 inequality rows this
    precomputes the affine projector onto {equality} + J, split into a part
    acting on the input point and a part acting on the right-hand sides.
    Only the right-hand sides vary between calls, so one instance serves
    every polyhedron sharing the same normals (bounding sets and cores keep
    their normals as coalition values change over time), and one call costs
    a handful of vectorized operations over all subsets at once.

    Candidate subsets are ordered by size then lexicographically; the
    feasible candidate of minimum distance (first such on ties) is the
    projection.
    """

    def __init__(self, A: np.ndarray, n: int):
        self.A = A
        self.n = n
        k = A.shape[0]
        ones = np.ones(n)
        subsets: list[tuple[int, ...]] = []
        C_list, Ginv_list = [], []
        for size in range(0, n):
            for combo in itertools.combinations(range(k), size):
                C = np.vstack([ones, A[list(combo)]]) if size else ones[None, :]
                G = C @ C.T
                if abs(np.linalg.det(G)) <= 0.5:  # integer Gram: exact rank test
                    continue
                subsets.append(combo)
                C_list.append(C)
                Ginv_list.append(np.linalg.inv(G))
        S = len(subsets)
        self.subsets = subsets
        self._C = C_list
        self._Ginv = Ginv_list
        # x(w, b) = P[s] w + m0[s] f + R[s] b, with R scattering subset
        # right-hand sides from the full b vector.
        self._P = np.empty((S, n, n))
        self._m0 = np.empty((S, n))
        self._R = np.zeros((S, n, k))
        eye = np.eye(n)
        for s, (combo, C, Ginv) in enumerate(zip(subsets, C_list, Ginv_list)):
            M = C.T @ Ginv
            self._P[s] = eye - M @ C
            self._m0[s] = M[:, 0]
            for col, row_idx in enumerate(combo):
                self._R[s, :, row_idx] += M[:, col + 1]

    def project(self, w, b, f):
        """Return (point, multipliers, subset) or None when the set is empty.

        multipliers is the vector (nu, lambda_J) for the winning subset;
        lambda entries may be negative in degenerate geometry even though
        the point itself is the true projection.
        """
        w = np.asarray(w, dtype=float)
        x = self._P @ w + self._m0 * f
        if self.A.shape[0]:
            x += self._R @ b
        feas = np.abs(x.sum(axis=1) - f) <= _CANDIDATE_TOL
        if self.A.shape[0]:
            feas &= (x @ self.A.T >= b - _CANDIDATE_TOL).all(axis=1)
        if not feas.any():
            return None
        dist2 = ((x - w) ** 2).sum(axis=1)
        dist2[~feas] = np.inf
        s = int(np.argmin(dist2))
        combo = self.subsets[s]
        d = np.concatenate([[f], b[list(combo)]])
        mult = -self._Ginv[s] @ (self._C[s] @ w - d)
        return x[s], mult, combo


_projector_cache: dict = {}


def _projector_for(P: "PolyhedronSpec") -> _EnumProjector:
    key = (P.n, P.ineq_normals.tobytes())
    proj = _projector_cache.get(key)
    if proj is None:
        if len(_projector_cache) > 512:
            _projector_cache.clear()
        proj = _EnumProjector(P.ineq_normals, P.n)
        _projector_cache[key] = proj
    return proj


def _dual_ascent(w, A, b, f):
    """Hildreth-style cyclic coordinate ascent on the dual of the projection.

    Maintains x = w + nu * 1 + A' lambda with lambda >= 0. Returns
    (x, lam, residual) on convergence, None when the sweep cap is hit
    (which for these sets means the polyhedron is empty or ill-posed).
    """
    n = w.shape[0]
    k = A.shape[0]
    x = w.astype(float).copy()
    lam = np.zeros(k)
    nu = 0.0
    row_norm2 = (A * A).sum(axis=1)
    zero_rows = np.flatnonzero(row_norm2 == 0.0)
    if zero_rows.size and b[zero_rows].max() > 0.0:
        return None  # 0 >= b_k with b_k > 0: unsatisfiable row
    rows = [j for j in range(k) if row_norm2[j] > 0.0]
    for _ in range(_DUAL_MAX_SWEEPS):
        d = (f - x.sum()) / n
        nu += d
        x += d
        for j in rows:
            r = (b[j] - A[j] @ x) / row_norm2[j]
            step = r if r > -lam[j] else -lam[j]
            if step != 0.0:
                lam[j] += step
                x += step * A[j]
        slack = A @ x - b
        primal = max(abs(x.sum() - f), float(np.maximum(-slack, 0.0).max(initial=0.0)))
        comp = float(np.abs(lam * slack).max(initial=0.0))
        if max(primal, comp) <= _DUAL_TOL:
            return x, lam, max(primal, comp)
    return None


def _certify(P: "PolyhedronSpec", w, x, mult, subset):
    """KKT residual for a projection candidate.

    The winning subset's affine multipliers give an exact stationarity
    representation; when they are dual-feasible the residual is the worst of
    primal violation and complementarity. Otherwise (degenerate geometry) a
    nonnegative representation over all active rows is recovered with NNLS.
    """
    primal = P.max_violation(x)
    slack = P.ineq_normals @ x - P.ineq_rhs if P.k else np.zeros(0)
    lam = None if mult is None else np.asarray(mult[1:], dtype=float)
    if lam is not None and (lam.size == 0 or lam.min() >= -1e-9):
        rows = range(P.k) if subset is None else subset
        comp = max((abs(lam[j] * slack[r]) for j, r in enumerate(rows)), default=0.0)
        lam_neg = max(0.0, -float(lam.min())) if lam.size else 0.0
        return max(primal, comp, lam_neg)
    active = _active_rows(P, x)
    cols = [P.ineq_normals[j] for j in active]
    cols.append(P.equality_normal)
    cols.append(-P.equality_normal)
    B = np.column_stack(cols)
    coef, resid = nnls(B, x - w)
    comp = max((abs(coef[i] * slack[j]) for i, j in enumerate(active)), default=0.0)
    return max(primal, float(resid), comp)


def _active_rows(P: "PolyhedronSpec", x, tol: float = FEASIBILITY_TOL):
    if not P.k:
        return []
    slack = P.ineq_normals @ x - P.ineq_rhs
    return [j for j in range(P.k) if abs(slack[j]) <= tol]


def _project_raw(x: np.ndarray, P: "PolyhedronSpec"):
    """Shared projection kernel: (point, mult, subset, dual_res)."""
    if x.shape != (P.n,):
        raise ValueError(f"point has shape {x.shape}, expected ({P.n},)")
    if P.n <= _ENUM_MAX_N:
        out = _projector_for(P).project(x, P.ineq_rhs, P.equality_rhs)
        if out is None:
            raise InfeasibleSetError("polyhedron is empty")
        point, mult, subset = out
        return point, mult, subset, 0.0
    out = _dual_ascent(x, P.ineq_normals, P.ineq_rhs, P.equality_rhs)
    if out is None:
        if enumerate_vertices(P):
            raise RuntimeError("dual ascent failed to converge on a nonempty set")
        raise InfeasibleSetError("polyhedron is empty")
    point, lam, dual_res = out
    mult = np.concatenate([[0.0], lam])  # stationarity exact by construction
    return point, mult, None, dual_res


def project_polyhedron(x: np.ndarray, P: "PolyhedronSpec") -> ProjectionResult:
    """Euclidean projection of x onto P with a KKT certificate.

    Raises InfeasibleSetError when P is empty (no feasible candidate exists
    across all active-set hypotheses, which is exact for these polyhedra).
    """
    x = np.asarray(x, dtype=float)
    point, mult, subset, dual_res = _project_raw(x, P)
    residual = max(_certify(P, x, point, mult, subset), dual_res)
    tags = tuple(P.ineq_tags[j] for j in _active_rows(P, point))
    return ProjectionResult(point=point, active_set=tags, kkt_residual=residual)


def project_point(x: np.ndarray, P: "PolyhedronSpec") -> np.ndarray:
    """Projection point only, skipping certificate assembly (same kernel as
    project_polyhedron; meant for hot loops)."""
    x = np.asarray(x, dtype=float)
    return _project_raw(x, P)[0]


def distance_to(x: np.ndarray, P: "PolyhedronSpec") -> float:
    """Euclidean distance from x to P; exactly 0 for feasible points."""
    x = np.asarray(x, dtype=float)
    if P.max_violation(x) <= FEASIBILITY_TOL:
        return 0.0
    return float(np.linalg.norm(x - project_point(x, P)))


def enumerate_vertices(P: "PolyhedronSpec", chunk: int = 200_000) -> list[np.ndarray]:
    """All basic feasible points of P, deduplicated and lexicographically
    sorted.

    A vertex is the solution of the equality plus n-1 inequality rows with
    independent normals that satisfies every remaining constraint. An empty
    result means P is empty or has no vertex; bounding sets and cores always
    have a vertex when nonempty.
    """
    n, k = P.n, P.k
    need = n - 1
    found: list[np.ndarray] = []
    if need == 0:
        x = np.array([P.equality_rhs])
        if P.max_violation(x) <= FEASIBILITY_TOL:
            found.append(x)
    elif k >= need:
        A, b, f = P.ineq_normals, P.ineq_rhs, P.equality_rhs
        combo_iter = itertools.combinations(range(k), need)
        while True:
            combos = list(itertools.islice(combo_iter, chunk))
            if not combos:
                break
            idx = np.array(combos, dtype=np.intp)
            C = np.empty((len(combos), n, n))
            C[:, 0, :] = 1.0
            C[:, 1:, :] = A[idx]
            dets = np.linalg.det(C)
            keep = np.abs(dets) > 0.5  # integer matrix: nonsingular iff |det| >= 1
            if not keep.any():
                continue
            d = np.concatenate(
                [np.full((len(combos), 1), f), b[idx]], axis=1
            )[keep]
            pts = np.linalg.solve(C[keep], d[..., None])[..., 0]
            feas = np.abs(pts.sum(axis=1) - f) <= FEASIBILITY_TOL
            feas &= (pts @ A.T >= b - FEASIBILITY_TOL).all(axis=1)
            found.extend(pts[feas])
    if not found:
        return []
    pts = np.array(found)
    order = np.lexsort(pts.T[::-1])
    pts = pts[order]
    out = [pts[0]]
    for p in pts[1:]:
        if np.abs(p - out[-1]).max() > FEASIBILITY_TOL:
            out.append(p)
    return out


def lemma1_ratio(x: np.ndarray, v: "CharacteristicFunction") -> float:
    """Squared distance to the core over the summed squared distances to the
    players' bounding sets, with 0/0 read as 0.

    A finite upper bound for this ratio over all x exists whenever the core
    is nonempty; the empirical maximum over samples is the only estimate
    this package exposes.
    """
    from .game import bounding_set, core_constraints

    x = np.asarray(x, dtype=float)
    num = distance_to(x, core_constraints(v)) ** 2
    den = sum(distance_to(x, bounding_set(i, v)) ** 2 for i in range(1, v.n + 1))
    if den == 0.0:
        return 0.0
    return num / den
