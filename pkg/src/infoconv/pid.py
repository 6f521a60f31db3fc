"""
Partial information decomposition with the Williams-Beer redundancy ``I_min``.

Redundancy values are Moebius-inverted over :class:`~infoconv.lattice.PILattice`
into partial information atoms. The PI spectrum groups atom mass by
longest-chain rank, and the synergy bias is its rank-weighted center of mass
normalized by the lattice height.
"""

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .discrete import (
    ZERO_TOL,
    as_distribution,
    as_tpm,
    joint_distribution,
    mutual_information,
    stationary_distribution,
)
from .errors import NumericalConsistencyError, UndefinedBiasError, ValidationError
from .lattice import MAX_SOURCES, Antichain, build_lattice

ATOM_CLAMP = 1e-6
SUM_CHECK = 1e-9
MI_FLOOR = 1e-12


@dataclass(frozen=True)
class SourcesTarget:
    """Joint distribution of ``n`` source variables and one target variable.

    ``joint`` has shape ``source_arity + (target_arity,)``; axis ``i`` is
    source ``i`` and the last axis is the target.
    """

    joint: np.ndarray

    def __post_init__(self):
        p = np.array(self.joint, dtype=float)
        if p.ndim < 2:
            raise ValidationError("need at least one source axis and a target axis")
        if p.ndim - 1 > MAX_SOURCES:
            raise ValidationError(f"at most {MAX_SOURCES} sources are supported")
        if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-12:
            raise ValidationError("joint distribution is not normalized")
        p.setflags(write=False)
        object.__setattr__(self, "joint", p)

    @classmethod
    def from_matrix(cls, p_xy, source_arity):
        """From a ``(prod(source_arity), target_arity)`` matrix.

        Row index encodes the sources little-endian: source 0 varies fastest.
        """
        p = np.asarray(p_xy, dtype=float)
        arity = tuple(int(a) for a in source_arity)
        if p.ndim != 2 or p.shape[0] != int(np.prod(arity)):
            raise ValidationError(
                f"matrix shape {p.shape} does not match source arities {arity}"
            )
        # C-order reshape puts the slowest-varying source first.
        tensor = p.reshape(arity[::-1] + (p.shape[1],))
        perm = tuple(range(len(arity) - 1, -1, -1)) + (len(arity),)
        return cls(tensor.transpose(perm))

    @classmethod
    def from_samples(cls, sources, target):
        """Convenience constructor from equiprobable outcome rows.

        ``sources`` is a sequence of tuples of source values and ``target`` the
        matching target values; each row gets equal weight.
        """
        sources = np.asarray(sources, dtype=int)
        target = np.asarray(target, dtype=int)
        shape = tuple(sources.max(axis=0) + 1) + (int(target.max()) + 1,)
        p = np.zeros(shape)
        for row, y in zip(sources, target):
            p[tuple(row) + (y,)] += 1.0
        return cls(p / p.sum())

    @property
    def n_sources(self):
        return self.joint.ndim - 1

    @property
    def source_arity(self):
        return self.joint.shape[:-1]

    @property
    def target_arity(self):
        return self.joint.shape[-1]

    @cached_property
    def p_y(self):
        return self.joint.reshape(-1, self.target_arity).sum(axis=0)

    def marginal(self, subset):
        """``P(a, y)`` as a matrix, ``a`` ranging over the subset's joint states."""
        keep = [i for i in range(self.n_sources) if subset >> i & 1]
        drop = tuple(i for i in range(self.n_sources) if not subset >> i & 1)
        m = self.joint.sum(axis=drop) if drop else self.joint
        return m.reshape(-1, self.target_arity) if keep else m.reshape(1, -1)

    @cached_property
    def specific_information_table(self):
        """``table[s, y]`` = specific information of subset mask ``s`` about ``y``.

        Row 0 (the empty subset) is zero. Columns with ``p(y) = 0`` are zero.
        """
        n_sub = 1 << self.n_sources
        table = np.zeros((n_sub, self.target_arity))
        py = self.p_y
        live = py > ZERO_TOL
        for s in range(1, n_sub):
            m = self.marginal(s)
            p_ay = m[:, live]
            p_a = m.sum(axis=1)
            cond = p_ay / py[live]
            with np.errstate(divide="ignore", invalid="ignore"):
                terms = np.where(cond > 0, cond * np.log2(cond / p_a[:, None]), 0.0)
            table[s, live] = np.maximum(terms.sum(axis=0), 0.0)
        table.setflags(write=False)
        return table

    @cached_property
    def total_mi(self):
        full = (1 << self.n_sources) - 1
        return mutual_information(self.marginal(full))


def _subset_mask(subset, n_sources):
    if isinstance(subset, (int, np.integer)):
        mask = int(subset)
    else:
        mask = sum(1 << int(i) for i in subset)
    if not 0 < mask < 1 << n_sources:
        raise ValidationError(f"invalid source subset {subset!r}")
    return mask


def specific_information(st, subset, y):
    """Specific information ``i(A; y)`` in bits.

    ``i(A; y) = sum_a p(a|y) log2(p(a|y) / p(a))``. ``subset`` is a mask or an
    iterable of source indices.
    """
    mask = _subset_mask(subset, st.n_sources)
    if not 0 <= y < st.target_arity or st.p_y[y] <= ZERO_TOL:
        raise ValidationError(f"target state {y} has zero probability")
    return float(st.specific_information_table[mask, y])


def _as_antichain(atom):
    if isinstance(atom, Antichain):
        return atom
    if isinstance(atom, str):
        return Antichain.parse(atom)
    return Antichain(tuple(atom))


def redundancy_wb(st, atom):
    """``I_min`` redundancy of an antichain about the target, in bits."""
    atom = _as_antichain(atom)
    if max(atom.subsets) >= 1 << st.n_sources:
        raise ValidationError(f"atom {atom} refers to missing sources")
    table = st.specific_information_table
    return float(st.p_y @ table[list(atom.subsets)].min(axis=0))


@dataclass(frozen=True)
class PIDResult:
    """Redundancy and partial information for every lattice atom, in bits."""

    lattice: object
    redundancy: np.ndarray
    atoms: np.ndarray
    total_mi: float

    def __getitem__(self, atom):
        """Partial information of an atom given as Antichain or ``"{0}{12}"``."""
        return float(self.atoms[self.lattice.index[_as_antichain(atom)]])

    def red(self, atom):
        return float(self.redundancy[self.lattice.index[_as_antichain(atom)]])

    def as_dict(self):
        return {str(a): float(v) for a, v in zip(self.lattice.atoms, self.atoms)}

    def to_json_dict(self):
        out = {
            "n_sources": self.lattice.n_sources,
            "total_mi": self.total_mi,
            "atoms": self.as_dict(),
        }
        try:
            spec = spectrum_and_bias(self)
        except UndefinedBiasError:
            out["spectrum"] = None
            out["b_syn"] = None
            out["b_red"] = None
        else:
            out["spectrum"] = [[i, float(m)] for i, m in enumerate(spec.layer_mass)]
            out["b_syn"] = spec.b_syn
            out["b_red"] = spec.b_red
        return out

    def to_json(self, **kwargs):
        return json.dumps(self.to_json_dict(), **kwargs)


def decompose(st):
    """Moebius-invert ``I_min`` over the lattice of ``st``'s sources.

    Atoms are visited bottom-up; each gets its redundancy minus the atoms
    strictly below it.

    Raises
    ------
    NumericalConsistencyError
        If an atom falls below ``-ATOM_CLAMP`` or the atoms do not sum to the
        total mutual information.
    """
    lattice = build_lattice(st.n_sources)
    table = st.specific_information_table
    py = st.p_y
    red = np.array([py @ table[list(a.subsets)].min(axis=0) for a in lattice.atoms])
    pi = np.zeros(len(lattice))
    for j in lattice.order:
        down = lattice.strict_down[j]
        pi[j] = red[j] - pi[down].sum()
    if pi.min() < -ATOM_CLAMP:
        worst = lattice.atoms[int(np.argmin(pi))]
        raise NumericalConsistencyError(
            f"partial information of {worst} is {pi.min():.3e} < 0"
        )
    total = st.total_mi
    if abs(pi.sum() - total) > SUM_CHECK:
        raise NumericalConsistencyError(
            f"atoms sum to {pi.sum()!r} but I(sources; target) = {total!r}"
        )
    pi[pi < 0] = 0.0
    red.setflags(write=False)
    pi.setflags(write=False)
    return PIDResult(lattice, red, pi, total)


def temporal_sources_target(t, input=None):
    """Past elements as sources, the joint next state as a single target."""
    t = as_tpm(t)
    if t.n_elements > MAX_SOURCES:
        raise ValidationError(f"at most {MAX_SOURCES} elements are supported")
    d = stationary_distribution(t) if input is None else as_distribution(input)
    joint = joint_distribution(t, d)
    return SourcesTarget.from_matrix(joint.p_xy, (2,) * t.n_elements)


def temporal_pid(t, input=None):
    """PID of the past-to-future mutual information of a binary system.

    ``input`` defaults to the stationary distribution of ``t``.
    """
    return decompose(temporal_sources_target(t, input))


@dataclass(frozen=True)
class PISpectrum:
    """Fraction of total information per lattice layer, with bias scalars."""

    layer_mass: np.ndarray
    height: int
    b_syn: float
    b_red: float

    def pairs(self):
        return [(i, float(m)) for i, m in enumerate(self.layer_mass)]


def spectrum_and_bias(p):
    """PI spectrum and synergy/redundancy bias of a decomposition.

    ``S_i`` is the share of total information in atoms of rank ``i``;
    ``B_syn = sum_i (i / height) S_i`` and ``B_red = 1 - B_syn``.

    Raises
    ------
    UndefinedBiasError
        If the decomposition carries no information or the lattice has a
        single layer.
    """
    if p.total_mi <= MI_FLOOR:
        raise UndefinedBiasError(
            f"total mutual information {p.total_mi:.3e} bit leaves nothing to normalize"
        )
    lattice = p.lattice
    if lattice.height == 0:
        raise UndefinedBiasError("a single-source lattice has no height")
    mass = np.bincount(lattice.rank, weights=p.atoms, minlength=lattice.height + 1)
    mass = mass / p.total_mi
    b_syn = float(np.arange(lattice.height + 1) @ mass / lattice.height)
    b_syn = min(max(b_syn, 0.0), 1.0)
    mass.setflags(write=False)
    return PISpectrum(mass, lattice.height, b_syn, 1.0 - b_syn)


def synergy_bias(t, input=None):
    """Shortcut: synergy bias of the temporal PID of ``t``."""
    return spectrum_and_bias(temporal_pid(t, input)).b_syn
