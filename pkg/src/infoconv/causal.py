"""
Effective information and its determinism/degeneracy split.

These operate on any square row-stochastic matrix, including coarse-grained
macro matrices whose state count is not a power of two.
"""

from dataclasses import asdict, dataclass

import numpy as np

from .discrete import SUM_TOL, TPM, entropy, mutual_information
from .errors import ValidationError


def _as_matrix(t):
    m = np.asarray(t.rows if isinstance(t, TPM) else t, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    if np.any(m < 0) or np.any(np.abs(m.sum(axis=1) - 1.0) > SUM_TOL):
        raise ValidationError("matrix is not row-stochastic")
    return m


@dataclass(frozen=True)
class EIReport:
    ei: float
    determinism: float
    degeneracy: float
    log_n: float
    avg_row_entropy: float
    entropy_of_avg_row: float

    def to_dict(self):
        return asdict(self)


def effective_information(t):
    """Effective information of a transition matrix under uniform interventions.

    ``determinism = log2 N - mean_x H(row_x)`` and
    ``degeneracy = log2 N - H(mean_x row_x)``; their difference is the mutual
    information between a uniform past and the next state.
    """
    m = _as_matrix(t)
    n = m.shape[0]
    log_n = float(np.log2(n))
    avg_row_entropy = float(np.mean([entropy(row) for row in m]))
    entropy_of_avg_row = entropy(m.mean(axis=0))
    determinism = log_n - avg_row_entropy
    degeneracy = log_n - entropy_of_avg_row
    return EIReport(
        ei=determinism - degeneracy,
        determinism=determinism,
        degeneracy=degeneracy,
        log_n=log_n,
        avg_row_entropy=avg_row_entropy,
        entropy_of_avg_row=entropy_of_avg_row,
    )


def effective_information_mi(t):
    """EI computed directly as mutual information at the uniform input."""
    m = _as_matrix(t)
    return mutual_information(m / m.shape[0])


@dataclass(frozen=True)
class StatePartition:
    """Surjective map from micro state index to macro state index."""

    mapping: tuple

    def __post_init__(self):
        mapping = tuple(int(g) for g in self.mapping)
        if not mapping or min(mapping) < 0:
            raise ValidationError("partition must map every state to a group index >= 0")
        missing = set(range(max(mapping) + 1)) - set(mapping)
        if missing:
            raise ValidationError(f"macro states {sorted(missing)} have no micro states")
        object.__setattr__(self, "mapping", mapping)

    @property
    def n_micro(self):
        return len(self.mapping)

    @property
    def n_macro(self):
        return max(self.mapping) + 1

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    def groups(self):
        return [[i for i, g in enumerate(self.mapping) if g == k] for k in range(self.n_macro)]


def coarse_grain_tpm(t, partition):
    """Macro transition matrix: average member rows, then sum member columns."""
    m = _as_matrix(t)
    if not isinstance(partition, StatePartition):
        partition = StatePartition(tuple(partition))
    if partition.n_micro != m.shape[0]:
        raise ValidationError(
            f"partition covers {partition.n_micro} states, matrix has {m.shape[0]}"
        )
    indicator = np.zeros((partition.n_micro, partition.n_macro))
    indicator[np.arange(partition.n_micro), partition.mapping] = 1.0
    averaging = indicator.T / indicator.sum(axis=0)[:, None]
    return averaging @ m @ indicator


def set_partitions(n):
    """All partitions of ``range(n)`` as canonical group-index tuples."""
    def grow(prefix, n_groups):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for g in range(n_groups + 1):
            yield from grow(prefix + [g], max(n_groups, g + 1))

    yield from grow([], 0)


def best_coarse_graining(t, max_states=6):
    """Exhaustively find the partition with the highest effective information.

    Returns ``(partition, report)``; ties keep the earliest partition in
    enumeration order, which starts from the all-in-one grouping.
    """
    m = _as_matrix(t)
    if m.shape[0] > max_states:
        raise ValidationError(f"exhaustive search is limited to {max_states} states")
    best = None
    for mapping in set_partitions(m.shape[0]):
        part = StatePartition(mapping)
        report = effective_information(coarse_grain_tpm(m, part))
        if best is None or report.ei > best[1].ei:
            best = (part, report)
    return best
