"""Pairwise Markov chain over term pairs and its stationary solvers.

The chain's states are the full cross product of the two ontologies'
terms (sorted id order on each side, row-major indexing). A transition
(x, y) -> (x', y') exists exactly when ontology 1 has an edge x -> x'
and ontology 2 has an edge y -> y' whose label sets are lexically
compatible:

* ``edge-confidence`` mode weights the transition by the thresholded
  reciprocal similarity of the closest label pair;
* ``baseline-sf`` mode admits the transition with weight 1 only when the
  label sets share an identical (normalized) label, reproducing the
  pairwise connectivity graph of plain similarity flooding.

Row normalization turns the raw weights into a row-stochastic matrix.
Two readings of that step are implemented. Both treat the stored weight
as a dissimilarity d (identical labels give the smallest weight, 1):

* ``complement``: T_ij = (sum_j d_ij) - d_ij, then divide by the row sum
  of T. More similar means more probable. This is the default.
* ``formula``: M_i = sum_j 1/d_ij, T_ij = M_i - 1/d_ij, then divide by
  the row sum of T. Note this gives *less* similar edges the larger
  share; it is kept selectable because it is the other defensible
  reading of the normalization, and the discrepancy should stay visible
  rather than silently resolved.

Rows with a single entry get probability 1 on it; empty rows become
self-loops. Baseline chains always normalize to uniform 1/outdegree.

The stationary distribution comes from either power iteration from the
lexical initial distribution, or a direct linear solve of
pi (P - I) = 0 with one equation replaced by sum(pi) = 1. The direct
solve requires a unique stationary distribution; chains whose pair graph
splits into several closed classes make the system singular and raise
``SolverError``. The ergodic damping transform P' = aP + (1-a)I removes
periodicity (it preserves the stationary distribution of irreducible
chains) and should be applied before either solver.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import sparse

from .lexical import (
    SimilarityConfig,
    edit_similarity,
    label_set_confidence,
    labels_share_exact_match,
    normalize_label,
)
from .ontology import OntologyGraph

EDGE_CONFIDENCE = "edge-confidence"
BASELINE_SF = "baseline-sf"
CHAIN_MODES = (EDGE_CONFIDENCE, BASELINE_SF)

NORM_FORMULA = "formula"
NORM_COMPLEMENT = "complement"
NORM_MODES = (NORM_FORMULA, NORM_COMPLEMENT)

METHOD_ITERATIVE = "iterative"
METHOD_STEADY_STATE = "steady-state"
METHODS = (METHOD_ITERATIVE, METHOD_STEADY_STATE)

ROW_SUM_TOL = 1e-9


class SolverError(RuntimeError):
    """The stationary system could not be solved as posed."""


@dataclass(frozen=True)
class PairState:
    """One cross-product state: a term of ontology 1 paired with one of ontology 2."""

    left: str
    right: str
    index: int


@dataclass(frozen=True)
class SolverConfig:
    epsilon: float = 1e-9
    max_iters: int = 10_000
    damping_a: float = 0.85
    method: str = METHOD_ITERATIVE
    norm_mode: str = NORM_COMPLEMENT
    chain_mode: str = EDGE_CONFIDENCE

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be positive, got {self.max_iters}")
        if not 0.0 < self.damping_a <= 1.0:
            raise ValueError(f"damping_a must lie in (0, 1], got {self.damping_a}")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.norm_mode not in NORM_MODES:
            raise ValueError(f"norm_mode must be one of {NORM_MODES}, got {self.norm_mode!r}")
        if self.chain_mode not in CHAIN_MODES:
            raise ValueError(f"chain_mode must be one of {CHAIN_MODES}, got {self.chain_mode!r}")


@dataclass
class PairwiseChain:
    """Sparse row-major transition structure over pair states.

    ``transitions[i]`` lists ``(column, weight)`` pairs with weight > 0,
    sorted by column, no duplicates. ``stochastic`` records whether rows
    have been normalized to sum to 1.
    """

    states: list[PairState]
    transitions: list[list[tuple[int, float]]]
    stochastic: bool = False
    mode: str = EDGE_CONFIDENCE

    def __post_init__(self):
        if len(self.transitions) != len(self.states):
            raise ValueError("one transition row per state required")
        for i, row in enumerate(self.transitions):
            cols = [c for c, _ in row]
            if cols != sorted(set(cols)):
                raise ValueError(f"row {i}: columns must be sorted and unique")
            for c, w in row:
                if not 0 <= c < len(self.states):
                    raise ValueError(f"row {i}: column {c} out of range")
                if w <= 0:
                    raise ValueError(f"row {i}: stored weights must be positive, got {w}")
        if self.stochastic:
            for i, row in enumerate(self.transitions):
                s = sum(w for _, w in row)
                if abs(s - 1.0) > ROW_SUM_TOL:
                    raise ValueError(f"row {i}: stochastic row sums to {s}, not 1")

    def __len__(self) -> int:
        return len(self.states)

    def support(self) -> set[tuple[int, int]]:
        """All (row, column) positions that carry a transition."""
        return {(i, c) for i, row in enumerate(self.transitions) for c, _ in row}

    def to_csr(self) -> sparse.csr_matrix:
        n = len(self.states)
        rows, cols, vals = [], [], []
        for i, row in enumerate(self.transitions):
            for c, w in row:
                rows.append(i)
                cols.append(c)
                vals.append(w)
        return sparse.csr_matrix((vals, (rows, cols)), shape=(n, n))

    def to_dense(self) -> np.ndarray:
        return self.to_csr().toarray()

    def is_identity(self, tol: float = 1e-9) -> bool:
        return all(
            len(row) == 1 and row[0][0] == i and abs(row[0][1] - 1.0) <= tol
            for i, row in enumerate(self.transitions)
        )


@dataclass(frozen=True)
class SolveResult:
    """Stationary distribution plus how it was obtained."""

    distribution: np.ndarray
    iterations: int
    converged: bool
    method: str


def chain_from_matrix(matrix: Sequence[Sequence[float]], stochastic: bool = True,
                      mode: str = EDGE_CONFIDENCE) -> PairwiseChain:
    """Build a chain from a dense square matrix; zeros are not stored.

    Mostly useful for tests and for chains that do not come from a pair
    of ontologies; states get synthetic s<i> names.
    """
    n = len(matrix)
    states = [PairState(left=f"s{i}", right=f"s{i}", index=i) for i in range(n)]
    transitions = [
        [(j, float(w)) for j, w in enumerate(row) if w != 0.0] for row in matrix
    ]
    return PairwiseChain(states=states, transitions=transitions,
                         stochastic=stochastic, mode=mode)


def build_upmc(
    g1: OntologyGraph,
    g2: OntologyGraph,
    cfg: SimilarityConfig | None = None,
    chain_mode: str = EDGE_CONFIDENCE,
) -> PairwiseChain:
    """Construct the unnormalized pairwise chain for two ontologies."""
    cfg = cfg or SimilarityConfig()
    if chain_mode not in CHAIN_MODES:
        raise ValueError(f"chain_mode must be one of {CHAIN_MODES}, got {chain_mode!r}")
    if not g1.terms or not g2.terms:
        raise ValueError("both ontologies must contain at least one term")

    left_ids = g1.term_ids
    right_ids = g2.term_ids
    n2 = len(right_ids)
    left_pos = {t: i for i, t in enumerate(left_ids)}
    right_pos = {t: j for j, t in enumerate(right_ids)}

    states = [
        PairState(left=x, right=y, index=i * n2 + j)
        for i, x in enumerate(left_ids)
        for j, y in enumerate(right_ids)
    ]
    transitions: list[list[tuple[int, float]]] = [[] for _ in states]

    # sigma only depends on the label pair; score each (label set, label set)
    # combination once.
    pair_cache: dict[tuple[frozenset, frozenset], float] = {}

    def pair_weight(labels1: frozenset, labels2: frozenset) -> float:
        key = (labels1, labels2)
        if key not in pair_cache:
            if chain_mode == BASELINE_SF:
                w = 1.0 if labels_share_exact_match(labels1, labels2, cfg) else 0.0
            else:
                w = label_set_confidence(labels1, labels2, cfg)
            pair_cache[key] = w
        return pair_cache[key]

    adj1 = {k: frozenset(v) for k, v in g1.adjacency.items()}
    adj2 = {k: frozenset(v) for k, v in g2.adjacency.items()}
    for (x, x2), labels1 in adj1.items():
        for (y, y2), labels2 in adj2.items():
            w = pair_weight(labels1, labels2)
            if w > 0.0:
                row = left_pos[x] * n2 + right_pos[y]
                col = left_pos[x2] * n2 + right_pos[y2]
                transitions[row].append((col, w))

    for row in transitions:
        row.sort()
    return PairwiseChain(states=states, transitions=transitions,
                         stochastic=False, mode=chain_mode)


def normalize(chain: PairwiseChain, norm_mode: str = NORM_COMPLEMENT) -> PairwiseChain:
    """Rescale every row of an unnormalized chain to sum to 1."""
    if chain.stochastic:
        raise ValueError("chain is already stochastic")
    if norm_mode not in NORM_MODES:
        raise ValueError(f"norm_mode must be one of {NORM_MODES}, got {norm_mode!r}")

    new_rows: list[list[tuple[int, float]]] = []
    for i, row in enumerate(chain.transitions):
        for _, w in row:
            if w < 0:
                raise ValueError(f"row {i}: negative weight {w}")
        if not row:
            new_rows.append([(i, 1.0)])
            continue
        if len(row) == 1:
            new_rows.append([(row[0][0], 1.0)])
            continue
        weights = [w for _, w in row]
        if chain.mode == BASELINE_SF:
            shares = [1.0 / len(row)] * len(row)
        elif norm_mode == NORM_FORMULA:
            m_i = sum(1.0 / w for w in weights)
            temp = [m_i - 1.0 / w for w in weights]
            total = sum(temp)
            shares = [t / total for t in temp]
        else:
            row_sum = sum(weights)
            temp = [row_sum - w for w in weights]
            total = sum(temp)
            shares = [t / total for t in temp]
        # extreme weight ratios can cancel a share to exactly 0.0; zero
        # weights are never stored
        new_rows.append([(c, s) for (c, _), s in zip(row, shares) if s > 0.0])
    return PairwiseChain(states=chain.states, transitions=new_rows,
                         stochastic=True, mode=chain.mode)


def ergodic_transform(chain: PairwiseChain, a: float) -> PairwiseChain:
    """Damp the chain: P' = aP + (1-a)I. ``a`` = 1 returns the chain as is."""
    if not chain.stochastic:
        raise ValueError("ergodic transform requires a stochastic chain")
    if not 0.0 < a <= 1.0:
        raise ValueError(f"a must lie in (0, 1], got {a}")
    if a == 1.0:
        return chain
    new_rows = []
    for i, row in enumerate(chain.transitions):
        scaled = {c: a * w for c, w in row}
        scaled[i] = scaled.get(i, 0.0) + (1.0 - a)
        new_rows.append(sorted(scaled.items()))
    return PairwiseChain(states=chain.states, transitions=new_rows,
                         stochastic=True, mode=chain.mode)


def initial_distribution(
    chain: PairwiseChain,
    g1: OntologyGraph,
    g2: OntologyGraph,
    cfg: SimilarityConfig | None = None,
) -> np.ndarray:
    """Lexical starting point: state (x, y) weighted by sigma of the term labels."""
    cfg = cfg or SimilarityConfig()
    sigma_cache: dict[tuple[str, str], float] = {}
    values = np.zeros(len(chain.states))
    for state in chain.states:
        key = (g1.label(state.left), g2.label(state.right))
        if key not in sigma_cache:
            sigma_cache[key] = edit_similarity(
                normalize_label(key[0], cfg), normalize_label(key[1], cfg)
            )
        values[state.index] = sigma_cache[key]
    total = values.sum()
    if total <= 0.0:
        return np.full(len(values), 1.0 / len(values))
    return values / total


def iterate(chain: PairwiseChain, pi0: np.ndarray, cfg: SolverConfig | None = None) -> SolveResult:
    """Power iteration pi_t = pi_{t-1} P until the max-norm step falls under epsilon."""
    cfg = cfg or SolverConfig()
    if not chain.stochastic:
        raise ValueError("iterate requires a stochastic chain")
    pi = np.asarray(pi0, dtype=float)
    if pi.shape != (len(chain.states),):
        raise ValueError(f"pi0 must have one entry per state ({len(chain.states)})")
    if pi.min() < 0 or pi.sum() <= 0:
        raise ValueError("pi0 must be a non-negative vector with positive mass")
    pi = pi / pi.sum()
    matrix = chain.to_csr()
    iterations = 0
    converged = False
    for iterations in range(1, cfg.max_iters + 1):
        nxt = pi @ matrix
        delta = np.max(np.abs(nxt - pi))
        pi = nxt
        if delta <= cfg.epsilon:
            converged = True
            break
    pi = pi / pi.sum()
    return SolveResult(distribution=pi, iterations=iterations,
                       converged=converged, method=METHOD_ITERATIVE)


def _solve_dense(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Gaussian elimination with partial pivoting; raises on singular systems."""
    n = a.shape[0]
    a = a.copy()
    b = b.copy()
    scale = max(np.abs(a).max(), 1.0)
    tol = scale * 1e-12 * max(n, 10)
    for k in range(n):
        pivot_row = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[pivot_row, k]) < tol:
            raise SolverError(
                "stationary system is singular beyond the expected rank deficiency "
                "(the pair chain likely splits into several closed classes); "
                "increase damping by lowering damping_a and retry"
            )
        if pivot_row != k:
            a[[k, pivot_row]] = a[[pivot_row, k]]
            b[[k, pivot_row]] = b[[pivot_row, k]]
        factors = a[k + 1:, k] / a[k, k]
        a[k + 1:, k:] -= np.outer(factors, a[k, k:])
        b[k + 1:] -= factors * b[k]
    x = np.zeros(n)
    for k in range(n - 1, -1, -1):
        x[k] = (b[k] - a[k, k + 1:] @ x[k + 1:]) / a[k, k]
    return x


def steady_state(chain: PairwiseChain, cfg: SolverConfig | None = None) -> SolveResult:
    """Direct stationary solve: pi (P - I) = 0 with sum(pi) = 1.

    Expects any damping to have been applied already (see
    ``ergodic_transform``). A pure identity chain admits every
    distribution as stationary; the uniform one is returned for it.
    """
    cfg = cfg or SolverConfig()
    if not chain.stochastic:
        raise ValueError("steady_state requires a stochastic chain")
    n = len(chain.states)
    if chain.is_identity():
        pi = np.full(n, 1.0 / n)
        return SolveResult(distribution=pi, iterations=0, converged=True,
                           method=METHOD_STEADY_STATE)
    system = chain.to_dense().T - np.eye(n)
    system[n - 1, :] = 1.0
    rhs = np.zeros(n)
    rhs[n - 1] = 1.0
    pi = _solve_dense(system, rhs)
    lowest = pi.min()
    if lowest < -1e-9:
        raise SolverError(
            f"stationary solve produced a significantly negative entry ({lowest:.3e}); "
            "the system is ill-conditioned, increase damping by lowering damping_a"
        )
    pi = np.clip(pi, 0.0, None)
    pi = pi / pi.sum()
    return SolveResult(distribution=pi, iterations=0, converged=True,
                       method=METHOD_STEADY_STATE)


def dump_triplets(chain: PairwiseChain) -> str:
    """Sparse triplet CSV (row,col,weight) for external inspection."""
    lines = ["row,col,weight"]
    for i, row in enumerate(chain.transitions):
        for c, w in row:
            lines.append(f"{i},{c},{w!r}")
    return "\n".join(lines) + "\n"
