"""
Node expansion (macro -> meso -> micro) and random TPM ensembles.

Expanding element ``e`` of an ``n``-element TPM appends element ``n`` as a
second child of ``e``. Both children take the next value of ``e``; everything
else reads the canonical child ``e``, so micro states where the children
disagree are transient and the stationary dynamics are the parent's.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .discrete import TPM, as_tpm, stationary_distribution, temporal_mutual_information
from .errors import InfoConvError, ValidationError
from .lattice import MAX_SOURCES
from .pid import spectrum_and_bias, temporal_pid

log = logging.getLogger(__name__)

DETERMINISTIC_P = 0.99


@dataclass(frozen=True)
class ExpansionRecord:
    parent_tpm: TPM
    child_tpm: TPM
    split_element: int
    child_indices: tuple


def expand_node(t, element):
    """Split ``element`` into an equivalence class of two identical children.

    Returns
    -------
    ExpansionRecord
        ``child_indices`` is ``(element, n)``: the canonical child keeps the
        parent's index, the new child is the highest bit.
    """
    t = as_tpm(t)
    n = t.n_elements
    if not 0 <= element < n:
        raise ValidationError(f"element {element} out of range for {n} elements")
    if n + 1 > MAX_SOURCES:
        raise ValidationError(f"expansion would exceed {MAX_SOURCES} elements")
    size = t.n_states
    parent_of = np.arange(2 * size) & (size - 1)
    ys = np.arange(size)
    child_col = ys | (((ys >> element) & 1) << n)
    rows = np.zeros((2 * size, 2 * size))
    rows[:, child_col] = t.rows[parent_of]
    return ExpansionRecord(t, TPM(rows, n + 1), element, (element, n))


def merge_children(child, child_indices):
    """Coarse-grain two equivalent children back into one element.

    Rows are read from states where the children agree; columns of states
    differing only in the second child are summed.
    """
    child = as_tpm(child)
    keep, drop = child_indices
    if drop != child.n_elements - 1:
        raise ValidationError("the merged child must be the highest-index element")
    size = child.n_states // 2
    xs = np.arange(size)
    agree = xs | (((xs >> keep) & 1) << drop)
    rows = child.rows[agree]
    return TPM(rows[:, :size] + rows[:, size:], child.n_elements - 1)


def generate_gaussian_tpm(rng, n_elements=3):
    """Absolute standard-normal entries, rows normalized."""
    size = 1 << n_elements
    m = np.abs(rng.standard_normal((size, size)))
    return TPM(m / m.sum(axis=1, keepdims=True), n_elements)


def generate_deterministic_tpm(rng, n_elements=3, skeleton="map"):
    """Near-deterministic TPM without fixed points.

    Each state moves to its skeleton successor with probability 0.99 and to
    each other state with ``0.01 / (N - 1)``. ``skeleton="map"`` draws every
    successor uniformly from the other states; ``skeleton="derangement"`` draws
    a fixed-point-free permutation by rejection.
    """
    size = 1 << n_elements
    if skeleton == "map":
        target = (np.arange(size) + rng.integers(1, size, size=size)) % size
    elif skeleton == "derangement":
        while True:
            target = rng.permutation(size)
            if np.all(target != np.arange(size)):
                break
    else:
        raise ValidationError(f"unknown skeleton {skeleton!r}")
    rows = np.full((size, size), (1.0 - DETERMINISTIC_P) / (size - 1))
    rows[np.arange(size), target] = DETERMINISTIC_P
    return TPM(rows, n_elements)


@dataclass(frozen=True)
class EnsembleSpec:
    kind: str
    n_systems: int
    seed: int
    base_elements: int = 3
    skeleton: str = "map"

    def __post_init__(self):
        if self.kind not in ("gaussian", "deterministic"):
            raise ValidationError(f"unknown ensemble kind {self.kind!r}")
        if self.n_systems < 1:
            raise ValidationError("n_systems must be at least 1")
        if self.seed is None or int(self.seed) < 0:
            raise ValidationError("a non-negative integer seed is required")

    def rng(self, index):
        """Independent generator for system ``index``; stable under parallelism."""
        seq = np.random.SeedSequence(int(self.seed), spawn_key=(int(index),))
        return np.random.default_rng(seq)

    def generate(self, index):
        rng = self.rng(index)
        if self.kind == "gaussian":
            return generate_gaussian_tpm(rng, self.base_elements)
        return generate_deterministic_tpm(rng, self.base_elements, self.skeleton)


@dataclass
class SystemRow:
    system_id: int
    kind: str
    macro_bsyn: float
    meso_bsyn: float
    micro_bsyn: float
    mi_bits: float
    micro_mi_bits: float

    @property
    def gain(self):
        """Synergy bias lost on expansion: macro minus micro."""
        return self.macro_bsyn - self.micro_bsyn


@dataclass
class ExperimentResult:
    spec: EnsembleSpec
    levels: int
    split_element: int
    rows: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    def column(self, name):
        return np.array([getattr(r, name) for r in self.rows], dtype=float)

    @property
    def gains(self):
        return self.column("gain")


def analyse_system(t, levels=2, split_element=0):
    """Synergy bias of a TPM and of its expansions, each at its own stationary state.

    Returns ``(macro_bsyn, meso_bsyn, micro_bsyn, macro_mi, micro_mi)``. With
    ``levels=1`` the single expansion is the micro scale and ``meso_bsyn`` is
    ``None``.
    """
    if levels not in (1, 2):
        raise ValidationError("levels must be 1 or 2")
    scales = [as_tpm(t)]
    for _ in range(levels):
        scales.append(expand_node(scales[-1], split_element).child_tpm)
    biases, mis = [], []
    for s in scales:
        pid = temporal_pid(s, stationary_distribution(s))
        biases.append(spectrum_and_bias(pid).b_syn)
        mis.append(pid.total_mi)
    meso = biases[1] if levels == 2 else None
    return biases[0], meso, biases[-1], mis[0], mis[-1]


def _run_one(args):
    spec, index, levels, split_element = args
    try:
        t = spec.generate(index)
        return index, analyse_system(t, levels, split_element), None
    except InfoConvError as exc:
        return index, None, f"{type(exc).__name__}: {exc}"


def run_expansion_experiment(spec, levels=2, split_element=0, jobs=1):
    """Generate an ensemble, expand each system and compare synergy biases.

    Systems whose bias is undefined (zero information) or whose analysis
    fails numerically are recorded in ``skipped`` with the reason. Results do
    not depend on ``jobs``.
    """
    if levels not in (1, 2):
        raise ValidationError("levels must be 1 or 2")
    if not 0 <= split_element < spec.base_elements:
        raise ValidationError(
            f"split element {split_element} out of range for {spec.base_elements} elements"
        )
    if spec.base_elements + levels > MAX_SOURCES:
        raise ValidationError(f"expansion would exceed {MAX_SOURCES} elements")
    tasks = [(spec, i, levels, split_element) for i in range(spec.n_systems)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_one, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        outcomes = [_run_one(task) for task in tasks]
    result = ExperimentResult(spec, levels, split_element)
    for index, values, reason in outcomes:
        if reason is not None:
            log.info("system %d skipped: %s", index, reason)
            result.skipped.append((index, reason))
            continue
        macro, meso, micro, mi, micro_mi = values
        result.rows.append(SystemRow(index, spec.kind, macro, meso, micro, mi, micro_mi))
    return result
