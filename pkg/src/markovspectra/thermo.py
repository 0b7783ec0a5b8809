"""Potentials, pressure, Gibbs-Markov measures, normalized potentials.

Everything is reduced to 2-locally constant potentials before numerical
work: order-1 tables are lifted to order 2, and orders >= 3 go through the
higher-block recoding (a shift-commuting conjugacy, so pressures and
spectra are unchanged).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .errors import EnumerationCapError, WordLengthError
from .perron import (
    PerronTriple,
    PositiveMatrixOnSupport,
    perron,
    stationary_distribution,
)
from .shiftspace import (
    ENUMERATION_CAP,
    BlockRecoding,
    TransitionMatrix,
    Word,
    admissible_words,
    higher_block_recode,
    word_count,
)

LOG_SPACE_DEPTH = 30


@dataclass(frozen=True, eq=False)
class Potential:
    """n-locally constant potential given by a total table on W_A^n."""

    base: TransitionMatrix
    order: int
    values: dict[Word, float]

    @classmethod
    def from_table(cls, base: TransitionMatrix, order: int, table) -> "Potential":
        if order < 1:
            raise ValueError("potential order must be at least 1")
        expected = set(admissible_words(base, order))
        keys = {tuple(k) for k in table}
        if keys != expected:
            missing = sorted(expected - keys)
            extra = sorted(keys - expected)
            raise ValueError(f"table must be total on admissible words; missing={missing[:5]} extra={extra[:5]}")
        values = {tuple(k): float(v) for k, v in table.items()}
        if any(not math.isfinite(v) for v in values.values()):
            raise ValueError("potential values must be finite")
        return cls(base, order, values)

    @classmethod
    def constant(cls, base: TransitionMatrix, c: float, order: int = 2) -> "Potential":
        return cls.from_table(base, order, {w: c for w in admissible_words(base, order)})

    @classmethod
    def from_matrix_log(cls, base: TransitionMatrix, matrix) -> "Potential":
        """Order-2 potential f = log(matrix) on the support of the base."""
        M = np.asarray(matrix, dtype=float)
        table = {(i, j): math.log(M[i - 1, j - 1]) for i, j in base.edges()}
        return cls.from_table(base, 2, table)

    def __call__(self, w: Word) -> float:
        return self.values[tuple(w)]

    def scale(self, q: float) -> "Potential":
        return Potential(self.base, self.order, {w: q * v for w, v in self.values.items()})

    def shift(self, c: float) -> "Potential":
        return Potential(self.base, self.order, {w: v + c for w, v in self.values.items()})


def reduce_to_order2(f: Potential, cap: int = ENUMERATION_CAP) -> tuple[Potential, BlockRecoding | None]:
    """2-locally constant representative of f (recoded base for orders >= 3)."""
    if f.order == 2:
        return f, None
    if f.order == 1:
        table = {(i, j): f.values[(i,)] for i, j in f.base.edges()}
        return Potential.from_table(f.base, 2, table), None
    recoding = higher_block_recode(f.base, f.order, cap=cap)
    table = {
        (s, t): f.values[recoding.edge_word(s, t)]
        for s, t in recoding.matrix.edges()
    }
    return Potential.from_table(recoding.matrix, 2, table), recoding


def edge_matrix(f: Potential) -> PositiveMatrixOnSupport:
    """A(f): exp(f) on support edges, 0 elsewhere.  Requires order 2."""
    if f.order != 2:
        raise ValueError("edge_matrix needs an order-2 potential; reduce first")
    n = f.base.n_symbols
    entries = np.zeros((n, n))
    for (i, j), v in f.values.items():
        entries[i - 1, j - 1] = math.exp(v)
    return PositiveMatrixOnSupport.on_support(f.base, entries)


def _reduced_triple(f: Potential) -> tuple[Potential, PerronTriple]:
    f2, _ = reduce_to_order2(f)
    return f2, perron(edge_matrix(f2))


def pressure(f: Potential) -> float:
    """Topological pressure, log of the Perron root of the edge matrix."""
    _, triple = _reduced_triple(f)
    return math.log(triple.root)


def pressure_by_preimages(f: Potential, terminal_symbol: int, depth: int) -> float:
    """Pressure estimate from weighted preimage sums ending at one symbol.

    Returns log(s_depth / s_{depth-1}) with s_m the terminal column sum of
    A(f)^m, accumulated in log-space.
    """
    if depth < 2:
        raise ValueError("depth must be at least 2")
    f2, _ = reduce_to_order2(f)
    n = f2.base.n_symbols
    if not 1 <= terminal_symbol <= n:
        raise ValueError(f"terminal symbol must be in 1..{n}")
    with np.errstate(divide="ignore"):
        logA = np.log(edge_matrix(f2).entries)
    log_col = np.full(n, -np.inf)
    log_col[terminal_symbol - 1] = 0.0
    prev_sum = None
    for _ in range(depth):
        prev_sum = logsumexp(log_col)
        log_col = logsumexp(logA + log_col[np.newaxis, :], axis=1)
    return float(logsumexp(log_col) - prev_sum)


@dataclass(frozen=True, eq=False)
class MarkovMeasure:
    """Stationary Markov measure: stochastic matrix on support plus pi."""

    P: PositiveMatrixOnSupport
    pi: np.ndarray

    @classmethod
    def from_stochastic(cls, base: TransitionMatrix, matrix) -> "MarkovMeasure":
        P = PositiveMatrixOnSupport.on_support(base, matrix)
        return cls(P, stationary_distribution(P))

    @property
    def base(self) -> TransitionMatrix:
        return self.P.base


def gibbs_markov(f: Potential) -> MarkovMeasure:
    """The unique Gibbs measure of f as a Markov measure.

    P(f)_ij = A(f)_ij v_j / (lambda v_i); the stationary vector is u_i v_i
    under the library's eigenvector normalization.
    """
    f2, triple = _reduced_triple(f)
    A = edge_matrix(f2).entries
    v = triple.right
    P = A * v[np.newaxis, :] / (triple.root * v[:, np.newaxis])
    defect = np.max(np.abs(P.sum(axis=1) - 1.0))
    if defect > 1e-8:
        raise ValueError(f"Gibbs matrix rows stochastic only within {defect:.3e}")
    # absorb the last few ulps of eigenvector error so the rows are exactly
    # stochastic for downstream consumers
    P = P / P.sum(axis=1, keepdims=True)
    pi = triple.left * triple.right
    pi = pi / pi.sum()
    return MarkovMeasure(PositiveMatrixOnSupport.on_support(f2.base, P), pi)


def log_cylinder_measure(mu: MarkovMeasure, w: Word) -> float:
    """log mu([w]); -inf on inadmissible words, 0.0 for the empty word."""
    if not w:
        return 0.0
    if not mu.base.admits(w):
        return -np.inf
    P = mu.P.entries
    total = math.log(mu.pi[w[0] - 1])
    for a, b in zip(w, w[1:]):
        total += math.log(P[a - 1, b - 1])
    return total


def cylinder_measure(mu: MarkovMeasure, w: Word) -> float:
    """mu([w]) as the product of pi and transition entries."""
    if not w:
        return 1.0
    if not mu.base.admits(w):
        return 0.0
    if len(w) > LOG_SPACE_DEPTH:
        return math.exp(log_cylinder_measure(mu, w))
    P = mu.P.entries
    mass = mu.pi[w[0] - 1]
    for a, b in zip(w, w[1:]):
        mass *= P[a - 1, b - 1]
    return float(mass)


def birkhoff_sum(f: Potential, w: Word, m: int) -> float:
    """S_m f on the cylinder [w]; needs |w| >= m + order - 1."""
    if len(w) < m + f.order - 1:
        raise WordLengthError(
            f"word of length {len(w)} cannot determine S_{m} of an order-{f.order} potential"
        )
    return sum(f.values[w[k : k + f.order]] for k in range(m))


def normalize_potential(f: Potential) -> Potential:
    """Coboundary-normalized potential using the left Perron eigenvector.

    The transfer operator prepends symbols, so 1-locally constant
    eigenfunctions obey the left eigen-equation; the normalized table
    satisfies sum_i exp(fhat_ij) = lambda for every j.
    """
    f2, triple = _reduced_triple(f)
    log_u = np.log(triple.left)
    table = {
        (i, j): v + log_u[i - 1] - log_u[j - 1] for (i, j), v in f2.values.items()
    }
    return Potential.from_table(f2.base, 2, table)


def jacobian(f: Potential, w: Word, kind: str = "gibbs") -> float:
    """Single-step Jacobian on [w]: lambda^-1 exp(f) (eigen-measure) or
    lambda^-1 exp(fhat) (Gibbs measure)."""
    if len(w) < 2:
        raise WordLengthError("jacobian needs a word of length at least 2")
    f2, triple = _reduced_triple(f)
    if kind == "eigen":
        g = f2
    elif kind == "gibbs":
        g = normalize_potential(f2)
    else:
        raise ValueError("kind must be 'eigen' or 'gibbs'")
    return math.exp(g.values[tuple(w[:2])]) / triple.root


def eigen_measure_cylinder(f: Potential, w: Word) -> float:
    """Cylinder mass of the eigen-measure: mu_f([w]) / u_{w_0}."""
    f2, triple = _reduced_triple(f)
    mu = gibbs_markov(f2)
    if not w:
        return 1.0
    return cylinder_measure(mu, w) / triple.left[w[0] - 1]


def entropy_rate(mu: MarkovMeasure) -> float:
    """Kolmogorov-Sinai entropy of a stationary Markov measure."""
    P = mu.P.entries
    with np.errstate(divide="ignore", invalid="ignore"):
        plogp = np.where(P > 0, P * np.log(P), 0.0)
    return float(-mu.pi @ plogp.sum(axis=1))


def potential_integral(mu: MarkovMeasure, f: Potential) -> float:
    """Integral of an order-2 potential against a Markov measure on its base."""
    if f.order != 2:
        raise ValueError("potential_integral needs an order-2 potential")
    P = mu.P.entries
    return float(
        sum(mu.pi[i - 1] * P[i - 1, j - 1] * v for (i, j), v in f.values.items())
    )


@dataclass(frozen=True)
class GibbsAudit:
    pressure: float
    constant: float
    observed_min: float
    observed_max: float
    theoretical_min: float
    theoretical_max: float
    depth: int
    within_bounds: bool


def gibbs_constant_audit(f: Potential, depth: int = 12, cap: int = ENUMERATION_CAP) -> GibbsAudit:
    """Audit the defining Gibbs inequality over all cylinders up to `depth`.

    For each w in W_A^{m+1} (m <= depth) the audited ratio is
    mu([w|m]) / exp(-mP + S_m f on [w]); its closed form is
    pi_{w_0} v_{w_0}^{-1} v_{w_{m-1}} lambda / A(f)_{w_{m-1} w_m}, so the
    theoretical extremes run over attainable (start, end, edge) triples.
    """
    f2, triple = _reduced_triple(f)
    total_words = sum(word_count(f2.base, m + 1) for m in range(1, depth + 1))
    if total_words > cap:
        raise EnumerationCapError(f"{total_words} cylinders exceed the cap {cap}")

    mu = gibbs_markov(f2)
    P_press = math.log(triple.root)
    A = edge_matrix(f2).entries
    pi, v = mu.pi, triple.right
    n = f2.base.n_symbols

    # Attainable start->end pairs: a path of length m-1 for some m in 1..depth.
    reach = np.eye(n, dtype=bool)
    attain = reach.copy()
    for _ in range(depth - 1):
        reach = reach.astype(np.int64) @ f2.base.entries > 0
        attain |= reach
    theo_values = [
        pi[i] / v[i] * v[j] * triple.root / A[j, k]
        for i in range(n)
        for j in range(n)
        if attain[i, j]
        for k in range(n)
        if A[j, k] > 0
    ]
    theo_min, theo_max = float(min(theo_values)), float(max(theo_values))
    constant = max(theo_max, 1.0 / theo_min)

    observed_min, observed_max = np.inf, -np.inf
    words = [(i,) for i in range(1, n + 1)]
    for m in range(1, depth + 1):
        words = [w + (j,) for w in words for j in range(1, n + 1) if f2.base.has_edge(w[-1], j)]
        for w in words:
            log_ratio = (
                log_cylinder_measure(mu, w[:m]) + m * P_press - birkhoff_sum(f2, w, m)
            )
            ratio = math.exp(log_ratio)
            observed_min = min(observed_min, ratio)
            observed_max = max(observed_max, ratio)

    slack = 1e-10 * max(1.0, constant)
    within = bool(
        1.0 / constant - slack <= observed_min and observed_max <= constant + slack
    )
    return GibbsAudit(
        P_press, constant, float(observed_min), float(observed_max), theo_min, theo_max, depth, within
    )
