"""Independent test oracles, deliberately coded apart from the library.

The projection oracle enumerates every subset of inequality rows as a
hypothesized active set, solves the equality-constrained stationarity
system, and keeps the candidate that is primal feasible and passes an
explicit KKT cone test (nonnegative multipliers recovered by NNLS), at
minimum distance. Subset sizes run to the dimension n, which covers any
conic Caratheodory representation of the optimality conditions.
"""

import itertools

import numpy as np
from scipy.optimize import nnls


def kkt_projection_oracle(w, P, tol=1e-8):
    """Projection of w onto P by exhaustive KKT enumeration; None if no
    subset yields a feasible KKT point (empty polyhedron)."""
    w = np.asarray(w, dtype=float)
    A, b = P.ineq_normals, P.ineq_rhs
    e, f = P.equality_normal, P.equality_rhs
    best = None
    for size in range(0, min(P.k, P.n) + 1):
        for combo in itertools.combinations(range(P.k), size):
            rows = [e] + [A[j] for j in combo]
            C = np.vstack(rows)
            d = np.concatenate([[f], b[list(combo)]])
            G = C @ C.T
            mu, *_ = np.linalg.lstsq(G, d - C @ w, rcond=None)
            x = w + C.T @ mu
            if np.abs(C @ x - d).max() > tol:
                continue  # inconsistent hypothesis
            if abs(x.sum() - f) > tol:
                continue
            if P.k and float((A @ x - b).min()) < -tol:
                continue
            cols = [A[j] for j in combo] + [e, -e]
            _, resid = nnls(np.column_stack(cols), x - w)
            if resid > tol * (1.0 + np.linalg.norm(x - w)):
                continue  # not a KKT point: x - w outside the active cone
            d2 = float(((x - w) ** 2).sum())
            if best is None or d2 < best[0] - 1e-15:
                best = (d2, x)
    return None if best is None else best[1]


def brute_force_vertices(P, tol=1e-9):
    """Vertices by literal definition: feasible solutions of the equality
    plus n-1 inequalities, found with plain solve-and-filter."""
    out = []
    n = P.n
    if n == 1:
        x = np.array([P.equality_rhs])
        return [x] if P.max_violation(x) <= tol else []
    for combo in itertools.combinations(range(P.k), n - 1):
        C = np.vstack([P.equality_normal] + [P.ineq_normals[j] for j in combo])
        d = np.concatenate([[P.equality_rhs], P.ineq_rhs[list(combo)]])
        try:
            x = np.linalg.solve(C, d)
        except np.linalg.LinAlgError:
            continue
        if not np.all(np.isfinite(x)) or P.max_violation(x) > tol:
            continue
        if all(np.abs(x - y).max() > tol for y in out):
            out.append(x)
    return sorted(out, key=tuple)
