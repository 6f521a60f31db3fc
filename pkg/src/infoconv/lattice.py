"""
The Williams-Beer redundancy lattice.

Atoms are antichains of nonempty source subsets. Source subsets are bitmasks
over source indices, so ``0b101`` is the subset ``{0, 2}``. The order is
redundancy-ward: ``a <= b`` iff every subset in ``b`` contains some subset of
``a``. Layers are ranks by the longest chain from the bottom atom.
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import NumericalConsistencyError, ValidationError

MAX_SOURCES = 5


def subset_str(mask):
    return "{" + "".join(str(i) for i in range(mask.bit_length()) if mask >> i & 1) + "}"


@dataclass(frozen=True, order=True)
class Antichain:
    """A lattice atom: pairwise incomparable source subsets, sorted by mask."""

    subsets: tuple

    def __post_init__(self):
        subsets = tuple(sorted(set(int(s) for s in self.subsets)))
        if not subsets or subsets[0] <= 0:
            raise ValidationError("an antichain needs nonempty source subsets")
        for i, a in enumerate(subsets):
            for b in subsets[i + 1:]:
                if a & b in (a, b):
                    raise ValidationError(
                        f"{subset_str(a)} and {subset_str(b)} are comparable"
                    )
        object.__setattr__(self, "subsets", subsets)

    @classmethod
    def parse(cls, text):
        """Build from the ``"{0}{12}"`` notation."""
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise ValidationError(f"cannot parse antichain {text!r}")
        masks = []
        for part in text[1:-1].split("}{"):
            if not part or not part.isdigit():
                raise ValidationError(f"cannot parse antichain {text!r}")
            masks.append(sum(1 << int(c) for c in part))
        return cls(tuple(masks))

    def __str__(self):
        return "".join(subset_str(s) for s in self.subsets)

    def __iter__(self):
        return iter(self.subsets)

    def __len__(self):
        return len(self.subsets)


def precedes(a, b):
    """True iff ``a <= b``: each subset of ``b`` contains a subset of ``a``."""
    return all(any(t & s == t for t in a.subsets) for s in b.subsets)


def enumerate_atoms(n_sources):
    """All antichains of nonempty subsets of ``n_sources`` sources.

    Antichains are grown by adding subsets in increasing mask order, so each is
    produced exactly once. The result is sorted canonically.
    """
    if not 1 <= n_sources <= MAX_SOURCES:
        raise ValidationError(f"n_sources must be in 1..{MAX_SOURCES}, got {n_sources}")
    masks = range(1, 1 << n_sources)
    found = []

    def grow(chosen, start):
        for s in masks[start:]:
            if all(s & c not in (s, c) for c in chosen):
                nxt = chosen + (s,)
                found.append(nxt)
                grow(nxt, s)

    grow((), 0)
    return sorted(Antichain(c) for c in found)


class PILattice:
    """Redundancy lattice over a fixed number of sources.

    The order is held through two bitmasks per atom over the ``2**n - 1``
    nonempty subsets: ``members`` (the antichain itself) and ``up`` (every
    subset containing a member). ``a <= b`` iff ``members(b)`` lies inside
    ``up(a)``. Strict down-sets are materialized as sorted index arrays.

    Attributes
    ----------
    atoms : tuple of Antichain
    rank : np.ndarray
        Longest-chain distance of each atom from the bottom.
    height : int
        ``rank`` of the top atom.
    order : np.ndarray
        A topological order (bottom first) of atom indices.
    """

    def __init__(self, n_sources):
        self.n_sources = n_sources
        self.atoms = tuple(enumerate_atoms(n_sources))
        self.index = {a: i for i, a in enumerate(self.atoms)}
        n_sub = (1 << n_sources) - 1
        self._members = np.array(
            [sum(1 << (s - 1) for s in a) for a in self.atoms], dtype=np.uint64
        )
        up_of_subset = [
            sum(1 << (s - 1) for s in range(1, n_sub + 1) if t & s == t)
            for t in range(n_sub + 1)
        ]
        up = []
        for a in self.atoms:
            u = 0
            for t in a:
                u |= up_of_subset[t]
            up.append(u)
        self._up = np.array(up, dtype=np.uint64)
        up_size = np.array([bin(u).count("1") for u in up])
        # a < b strictly shrinks the up-closure, so a larger up-set sorts lower.
        self.order = np.argsort(-up_size, kind="stable")
        self.strict_down = tuple(self._strict_down_column(j) for j in range(len(self.atoms)))
        self.rank, self.height = self._longest_chain_ranks()

    def __len__(self):
        return len(self.atoms)

    def __repr__(self):
        return f"PILattice(n_sources={self.n_sources}, atoms={len(self)}, height={self.height})"

    def _strict_down_column(self, j):
        below = (self._members[j] & ~self._up) == 0
        below[j] = False
        return np.flatnonzero(below)

    def _longest_chain_ranks(self):
        rank = np.full(len(self.atoms), -1)
        for j in self.order:
            down = self.strict_down[j]
            if down.size and np.any(rank[down] < 0):
                raise NumericalConsistencyError("topological order violated")
            rank[j] = rank[down].max() + 1 if down.size else 0
        bottom, top = self.bottom, self.top
        if rank[bottom] != 0 or np.count_nonzero(rank == 0) != 1:
            raise NumericalConsistencyError("lattice has no unique bottom")
        if self.strict_down[top].size != len(self.atoms) - 1:
            raise NumericalConsistencyError("top atom does not dominate the lattice")
        return rank, int(rank[top])

    @cached_property
    def bottom(self):
        return self.index[Antichain(tuple(1 << i for i in range(self.n_sources)))]

    @cached_property
    def top(self):
        return self.index[Antichain(((1 << self.n_sources) - 1,))]

    def leq(self, i, j):
        """Order test by atom index."""
        return bool((self._members[j] & ~self._up[i]) == 0)

    def leq_matrix(self):
        """Dense boolean matrix ``M[i, j] = atoms[i] <= atoms[j]``."""
        return (self._members[None, :] & ~self._up[:, None]) == 0

    def rank_of(self, atom):
        if isinstance(atom, str):
            atom = Antichain.parse(atom)
        return int(self.rank[self.index[atom]])

    def layers(self):
        """Atom indices grouped by rank, bottom layer first."""
        return [np.flatnonzero(self.rank == r) for r in range(self.height + 1)]

    def dump(self):
        """One ``{0}{1} rank`` line per atom, in canonical atom order."""
        return "\n".join(f"{a} {r}" for a, r in zip(self.atoms, self.rank)) + "\n"


@lru_cache(maxsize=None)
def build_lattice(n_sources):
    """Cached :class:`PILattice` for ``n_sources`` sources."""
    if not 1 <= n_sources <= MAX_SOURCES:
        raise ValidationError(f"n_sources must be in 1..{MAX_SOURCES}, got {n_sources}")
    return PILattice(n_sources)


def compute_ranks(lattice):
    """Longest-chain ranks and height of ``lattice``."""
    return lattice.rank.copy(), lattice.height
