"""Perron-Frobenius numerics for primitive non-negative matrices.

Normalization convention used throughout the library: the right eigenvector
v has unit coordinate sum and the left eigenvector u satisfies u . v = 1.
With this choice the Gibbs-Markov stationary vector is u_i v_i directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg

from .errors import NonConvergenceError, SingularSystemError, StochasticityError
from .shiftspace import TransitionMatrix

DEFAULT_TOL = 1e-13
MAX_ITERATIONS = 10**6


@dataclass(frozen=True, eq=False)
class PositiveMatrixOnSupport:
    """Non-negative matrix positive exactly on the support of the 0/1 base."""

    base: TransitionMatrix
    entries: np.ndarray

    @classmethod
    def on_support(cls, base: TransitionMatrix, entries) -> "PositiveMatrixOnSupport":
        arr = np.array(entries, dtype=float)
        if arr.shape != base.entries.shape:
            raise ValueError("entry array shape does not match the base matrix")
        if ((arr > 0) != (base.entries == 1)).any():
            raise ValueError("entries must be positive exactly on the support of the base")
        arr.setflags(write=False)
        return cls(base, arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class PerronTriple:
    root: float
    left: np.ndarray
    right: np.ndarray
    residual: float
    iterations: int


def _as_entries(A) -> np.ndarray:
    return A.entries if isinstance(A, PositiveMatrixOnSupport) else np.asarray(A, dtype=float)


def perron(
    A: PositiveMatrixOnSupport,
    tol: float = DEFAULT_TOL,
    max_iterations: int = MAX_ITERATIONS,
) -> PerronTriple:
    """Perron root and positive left/right eigenvectors by power iteration.

    The matrix is diagonally balanced first so the stopping test is scale
    invariant; the reported residual is recomputed against the original
    matrix.  Deterministic: the iteration starts from the all-ones vector.
    """
    M = _as_entries(A)
    n = M.shape[0]
    if n == 2 and M[0, 1] > 0 and M[1, 0] > 0:
        # Primitive 2x2 matrices have positive off-diagonals, so the
        # quadratic closed form is exact and numerically stable (all terms
        # in the square root are non-negative).
        a, b, c, d = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
        s = np.hypot(a - d, 2.0 * np.sqrt(b * c))
        # root - a without cancellation (conjugate form when a dominates)
        gap = 2.0 * b * c / (s + (a - d)) if a >= d else ((d - a) + s) / 2.0
        root = a + gap
        right = np.array([b, gap])
        left = np.array([c, gap])
        right = right / right.sum()
        left = left / float(left @ right)
        residual = max(
            float(np.max(np.abs(M @ right - root * right)) / np.max(np.abs(right))),
            float(np.max(np.abs(left @ M - root * left)) / np.max(np.abs(left))),
        )
        return PerronTriple(float(root), left, right, residual, 0)
    # Work on M / max(M): the root scales linearly and extreme magnitudes
    # (e.g. strongly tilted matrices) stay inside the balancing routine's
    # comfortable exponent range.
    magnitude = float(np.max(M))
    if magnitude <= 0 or not np.isfinite(magnitude):
        raise NonConvergenceError("matrix has no positive finite entries")
    # Extreme tilts can overflow intermediate quantities inside the balancing
    # routine; the stopping rule below validates the result regardless.
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        balanced, scale = scipy.linalg.matrix_balance(M / magnitude, permute=False)
    d = np.diag(scale)
    # A diagonal shift keeps the eigenvectors and moves the Perron root away
    # from the rest of the spectrum, so nearly period-2 weightings (where a
    # real eigenvalue close to -lambda stalls plain power iteration) still
    # converge.  The shift cancels in the residual: (B + cI)v - (mu)v = Bv - lam v.
    shift = float(np.max(balanced))
    shifted = balanced + shift * np.eye(n)

    v = np.ones(n)
    u = np.ones(n)
    lam = 1.0
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        bv = shifted @ v
        ub = u @ shifted
        lam = float(u @ bv) / float(u @ v) - shift
        res_r = np.max(np.abs(bv - (lam + shift) * v)) / np.max(np.abs(v))
        res_l = np.max(np.abs(ub - (lam + shift) * u)) / np.max(np.abs(u))
        v = bv / np.max(np.abs(bv))
        u = ub / np.max(np.abs(ub))
        if lam > 0 and max(res_r, res_l) <= tol * lam:
            break
    else:
        raise NonConvergenceError(
            f"power iteration did not reach tol={tol} in {max_iterations} iterations"
        )

    lam *= magnitude
    right = d * v
    left = u / d
    right = right / right.sum()
    left = left / float(left @ right)
    residual = max(
        float(np.max(np.abs(M @ right - lam * right)) / np.max(np.abs(right))),
        float(np.max(np.abs(left @ M - lam * left)) / np.max(np.abs(left))),
    )
    return PerronTriple(lam, left, right, residual, iterations)


def perron_vector_by_linear_solve(A, lam: float) -> np.ndarray:
    """Right Perron vector with unit coordinate sum, via the (N+1)xN system.

    Deletes one eigen-equation row to obtain an invertible NxN system and
    checks the solution against the full system.
    """
    M = _as_entries(A)
    n = M.shape[0]
    C = np.vstack([M - lam * np.eye(n), np.ones(n)])
    b = np.zeros(n + 1)
    b[-1] = 1.0
    scale = max(1.0, float(np.max(np.abs(C))))
    for i in range(n):
        Ci = np.delete(C, i, axis=0)
        bi = np.delete(b, i)
        try:
            x = np.linalg.solve(Ci, bi)
        except np.linalg.LinAlgError:
            continue
        if np.max(np.abs(C @ x - b)) <= 1e-9 * scale and (x > 0).all():
            return x
    raise SingularSystemError("no row deletion yields an invertible, consistent system")


def perron_derivative(
    family: Callable[[float], PositiveMatrixOnSupport],
    q0: float,
    family_derivative: Callable[[float], np.ndarray] | None = None,
    step: float = 1e-6,
    tol: float = DEFAULT_TOL,
) -> float:
    """Derivative of the simple Perron root along a one-parameter family.

    Uses d(lambda)/dq = u M'(q0) v with the normalized eigenpair at q0.
    M'(q0) is taken from ``family_derivative`` when given, otherwise from a
    central difference of the family entries.
    """
    triple = perron(family(q0), tol=tol)
    if family_derivative is not None:
        dM = np.asarray(family_derivative(q0), dtype=float)
    else:
        dM = (_as_entries(family(q0 + step)) - _as_entries(family(q0 - step))) / (2 * step)
    return float(triple.left @ dM @ triple.right)


def stationary_distribution(P: PositiveMatrixOnSupport, tol: float = 1e-12) -> np.ndarray:
    """Stationary probability vector of a row-stochastic matrix."""
    M = _as_entries(P)
    row_defect = np.max(np.abs(M.sum(axis=1) - 1.0))
    if row_defect > tol:
        raise StochasticityError(f"rows sum to 1 only within {row_defect:.3e} (tol {tol})")
    # pi solves pi P = pi, sum pi = 1: the right-eigenvector system of P^T at 1.
    return perron_vector_by_linear_solve(M.T, 1.0)


@dataclass(frozen=True)
class CycleMeanExtremes:
    min_mean: float
    max_mean: float
    min_cycle: tuple[int, ...]
    max_cycle: tuple[int, ...]


def _karp_min_mean(n: int, edges: list[tuple[int, int, float]]) -> tuple[float, tuple[int, ...]]:
    """Karp's minimum mean cycle on vertices 0..n-1 (all on cycles reachable).

    A virtual source n with zero-weight edges to every vertex guarantees
    reachability; cycles never pass through it.
    """
    total = n + 1
    aug = edges + [(n, v, 0.0) for v in range(n)]
    INF = np.inf
    dist = np.full((total + 1, total), INF)
    parent = np.full((total + 1, total), -1, dtype=int)
    dist[0, n] = 0.0
    for k in range(1, total + 1):
        for u, v, w in aug:
            cand = dist[k - 1, u] + w
            if cand < dist[k, v]:
                dist[k, v] = cand
                parent[k, v] = u

    best = INF
    best_v = -1
    for v in range(n):
        if not np.isfinite(dist[total, v]):
            continue
        worst = -INF
        for k in range(total):
            if np.isfinite(dist[k, v]):
                worst = max(worst, (dist[total, v] - dist[k, v]) / (total - k))
        if worst < best:
            best = worst
            best_v = v

    # The optimal walk of length `total` into best_v contains a min-mean cycle.
    walk = [best_v]
    cur = best_v
    for k in range(total, 0, -1):
        cur = int(parent[k, cur])
        walk.append(cur)
    walk.reverse()
    seen: dict[int, int] = {}
    cycle: tuple[int, ...] = ()
    for pos, vertex in enumerate(walk):
        if vertex in seen:
            cycle = tuple(walk[seen[vertex] : pos])
            break
        seen[vertex] = pos
    weight_of = {(u, v): w for u, v, w in aug}
    mean = sum(
        weight_of[(cycle[i], cycle[(i + 1) % len(cycle)])] for i in range(len(cycle))
    ) / len(cycle)
    if abs(mean - best) > 1e-9 * max(1.0, abs(best)):
        raise NonConvergenceError("extracted cycle does not realize the Karp optimum")
    return float(best), cycle


def cycle_mean_extremes(base: TransitionMatrix, weights) -> CycleMeanExtremes:
    """Exact minimum and maximum mean cycle weight over the support graph.

    ``weights`` is an NxN array whose values on support edges are used;
    off-support values are ignored.
    """
    W = np.asarray(weights, dtype=float)
    n = base.n_symbols
    edges = [(i - 1, j - 1, float(W[i - 1, j - 1])) for i, j in base.edges()]
    lo, lo_cycle = _karp_min_mean(n, edges)
    hi_neg, hi_cycle = _karp_min_mean(n, [(u, v, -w) for u, v, w in edges])
    to_word = lambda cyc: tuple(v + 1 for v in cyc)
    return CycleMeanExtremes(lo, -hi_neg, to_word(lo_cycle), to_word(hi_cycle))
