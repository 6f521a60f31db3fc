"""
Exact discrete probability primitives.

Joint states of ``n`` binary elements are encoded as integers in
``range(2**n)`` with element ``i`` contributing bit ``i`` (little-endian).
All information quantities are in bits.
"""

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import ConvergenceError, ValidationError

SUM_TOL = 1e-12
ZERO_TOL = 1e-15
STATIONARY_TOL = 1e-10
POWER_ITERATION_CAP = 100_000


def _n_elements_for(size):
    n = int(size).bit_length() - 1
    if size < 1 or (1 << n) != size:
        raise ValidationError(f"state count {size} is not a power of two")
    return n


def _readonly(arr):
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


def _check_probability_vector(p, what="distribution"):
    if p.ndim != 1 or p.size == 0:
        raise ValidationError(f"{what} must be a non-empty vector")
    if not np.all(np.isfinite(p)) or np.any(p < 0):
        raise ValidationError(f"{what} has negative or non-finite entries")
    if abs(p.sum() - 1.0) > SUM_TOL:
        raise ValidationError(f"{what} sums to {p.sum()!r}, not 1")


def bit(state, element):
    """Value of ``element`` in the little-endian joint ``state``."""
    return (state >> element) & 1


def state_bits(n_elements):
    """Return an ``(2**n, n)`` array whose row ``x`` holds the bits of ``x``."""
    states = np.arange(1 << n_elements)
    return (states[:, None] >> np.arange(n_elements)[None, :]) & 1


@dataclass(frozen=True)
class StateDistribution:
    """Probability vector over the joint states of ``n_elements`` binary elements."""

    probs: np.ndarray
    n_elements: int = None

    def __post_init__(self):
        probs = _readonly(self.probs)
        _check_probability_vector(probs)
        n = _n_elements_for(probs.size)
        if self.n_elements is not None and self.n_elements != n:
            raise ValidationError(
                f"length {probs.size} does not match n_elements={self.n_elements}"
            )
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "n_elements", n)

    @classmethod
    def uniform(cls, n_elements):
        size = 1 << n_elements
        return cls(np.full(size, 1.0 / size), n_elements)

    @classmethod
    def point_mass(cls, n_elements, state):
        probs = np.zeros(1 << n_elements)
        probs[state] = 1.0
        return cls(probs, n_elements)

    def __len__(self):
        return self.probs.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.probs, dtype=dtype)

    @property
    def support(self):
        return np.flatnonzero(self.probs > ZERO_TOL)


@dataclass(frozen=True)
class TPM:
    """Row-stochastic state-by-state transition matrix, ``rows[x, y] = P(y | x)``."""

    rows: np.ndarray
    n_elements: int = None

    def __post_init__(self):
        rows = _readonly(self.rows)
        if rows.ndim != 2 or rows.shape[0] != rows.shape[1]:
            raise ValidationError(f"TPM must be square, got shape {rows.shape}")
        n = _n_elements_for(rows.shape[0])
        if self.n_elements is not None and self.n_elements != n:
            raise ValidationError(
                f"side {rows.shape[0]} does not match n_elements={self.n_elements}"
            )
        if not np.all(np.isfinite(rows)) or np.any(rows < 0):
            raise ValidationError("TPM has negative or non-finite entries")
        bad = np.flatnonzero(np.abs(rows.sum(axis=1) - 1.0) > SUM_TOL)
        if bad.size:
            raise ValidationError(f"TPM rows {bad.tolist()} do not sum to 1")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "n_elements", n)

    @property
    def n_states(self):
        return self.rows.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.rows, dtype=dtype)

    def to_dict(self):
        return {"n_elements": self.n_elements, "rows": self.rows.tolist()}

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(np.asarray(data["rows"], dtype=float), int(data["n_elements"]))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed TPM document: {exc}") from exc


@dataclass(frozen=True)
class JointDistribution:
    """Joint ``P(x, y)`` of a past state and the following state."""

    p_xy: np.ndarray

    def __post_init__(self):
        p = _readonly(self.p_xy)
        if p.ndim != 2:
            raise ValidationError("joint distribution must be a matrix")
        if np.any(p < 0) or abs(p.sum() - 1.0) > SUM_TOL:
            raise ValidationError("joint distribution is not normalized")
        object.__setattr__(self, "p_xy", p)

    @cached_property
    def p_x(self):
        return self.p_xy.sum(axis=1)

    @cached_property
    def p_y(self):
        return self.p_xy.sum(axis=0)

    @property
    def T(self):
        return JointDistribution(self.p_xy.T)


def as_tpm(t):
    return t if isinstance(t, TPM) else TPM(np.asarray(t, dtype=float))


def as_distribution(d):
    return d if isinstance(d, StateDistribution) else StateDistribution(d)


def entropy(d):
    """Shannon entropy in bits, with ``0 log 0 = 0``.

    Accepts a :class:`StateDistribution` or any probability vector (its length
    need not be a power of two).
    """
    p = np.asarray(d.probs if isinstance(d, StateDistribution) else d, dtype=float)
    _check_probability_vector(p)
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


def mutual_information(p_xy):
    """``I(X; Y)`` in bits from a joint probability matrix."""
    p = np.asarray(p_xy.p_xy if isinstance(p_xy, JointDistribution) else p_xy)
    px = p.sum(axis=1, keepdims=True)
    py = p.sum(axis=0, keepdims=True)
    mask = p > 0
    ratio = p[mask] / (px * py)[mask]
    return float(max((p[mask] * np.log2(ratio)).sum(), 0.0))


def joint_distribution(t, input):
    """``P(x, y) = input(x) * t(x -> y)``."""
    t = as_tpm(t)
    d = as_distribution(input)
    if d.probs.size != t.n_states:
        raise ValidationError(
            f"input has {d.probs.size} states but the TPM has {t.n_states}"
        )
    return JointDistribution(d.probs[:, None] * t.rows)


def temporal_mutual_information(t, input):
    """Mutual information between the past and the next joint state.

    Parameters
    ----------
    t : TPM or array_like
        System dynamics.
    input : StateDistribution or array_like
        Distribution of the past state, typically the stationary distribution.

    Returns
    -------
    mi : float
        ``I(X; Y)`` in bits.
    joint : JointDistribution
        The joint past/future distribution. Its column marginal equals
        ``input @ t``.
    """
    joint = joint_distribution(t, input)
    return mutual_information(joint), joint


def recurrent_classes(t):
    """Closed strongly connected components of the transition graph.

    Returns a list of sorted state-index arrays, one per recurrent class.
    """
    rows = np.asarray(as_tpm(t).rows)
    adjacency = csr_matrix(rows > ZERO_TOL)
    n_comp, labels = connected_components(adjacency, directed=True, connection="strong")
    src, dst = adjacency.nonzero()
    leaves = np.zeros(n_comp, dtype=bool)
    leaves[labels[src][labels[src] != labels[dst]]] = True
    return [np.flatnonzero(labels == c) for c in range(n_comp) if not leaves[c]]


def _solve_class(rows, members):
    sub = rows[np.ix_(members, members)]
    k = members.size
    # Replace one balance equation by the normalization constraint.
    a = sub.T - np.eye(k)
    a[-1, :] = 1.0
    b = np.zeros(k)
    b[-1] = 1.0
    try:
        pi = np.linalg.solve(a, b)
    except np.linalg.LinAlgError:
        pi = np.linalg.lstsq(a, b, rcond=None)[0]
    return pi


def _residual(rows, pi):
    return float(np.max(np.abs(pi @ rows - pi)))


def stationary_distribution(t):
    """Stationary distribution supported on the largest attractor.

    Recurrent classes are found as closed strongly connected components of the
    graph of nonzero transitions. The class with the most states is chosen;
    ties go to the class containing the smallest state index. The distribution
    on that class comes from an exact linear solve, with power iteration as a
    fallback.

    Raises
    ------
    ConvergenceError
        If neither the linear solve nor power iteration reaches a fixed point
        within ``STATIONARY_TOL``.
    """
    t = as_tpm(t)
    rows = np.asarray(t.rows)
    classes = recurrent_classes(t)
    chosen = min(classes, key=lambda c: (-c.size, c[0]))

    pi = np.zeros(t.n_states)
    pi[chosen] = _solve_class(rows, chosen)
    pi[pi < ZERO_TOL] = 0.0
    pi /= pi.sum()
    residual = _residual(rows, pi)
    if residual >= STATIONARY_TOL:
        pi = np.zeros(t.n_states)
        pi[chosen] = 1.0 / chosen.size
        for _ in range(POWER_ITERATION_CAP):
            pi = pi @ rows
            residual = _residual(rows, pi)
            if residual < STATIONARY_TOL:
                break
        else:
            raise ConvergenceError("stationary distribution did not converge", residual)
        pi /= pi.sum()
    return StateDistribution(pi, t.n_elements)


def save_tpm(t, path):
    with open(path, "w") as fh:
        json.dump(as_tpm(t).to_dict(), fh)


def load_tpm(path):
    from .schemas import validate_document

    with open(path) as fh:
        data = json.load(fh)
    validate_document(data, "tpm")
    return TPM.from_dict(data)
