"""
Boolean networks with exogenous inputs, and logic-gate circuits at two scales.

Truth tables are indexed by the little-endian joint state of an element's
inputs: input ``k`` of an element contributes bit ``k`` of the table index.
"""

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .discrete import TPM, StateDistribution
from .errors import UnsupportedTopologyError, ValidationError

GATES = {
    "AND": (0, 0, 0, 1),
    "OR": (0, 1, 1, 1),
    "XOR": (0, 1, 1, 0),
    "NAND": (1, 1, 1, 0),
    "NOT": (1, 0),
    "COPY": (0, 1),
}


@dataclass(frozen=True)
class Element:
    name: str
    inputs: tuple = ()
    table: tuple = (0,)

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(int(i) for i in self.inputs))
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        if len(self.table) != 1 << len(self.inputs):
            raise ValidationError(
                f"element {self.name!r}: table length {len(self.table)} != "
                f"2**{len(self.inputs)}"
            )
        if any(v not in (0, 1) for v in self.table):
            raise ValidationError(f"element {self.name!r}: table must be 0/1")

    def update(self, bits):
        idx = 0
        for k, i in enumerate(self.inputs):
            idx |= bits[i] << k
        return self.table[idx]


def gate(name, kind, inputs):
    """Element computing a named gate of ``inputs``."""
    return Element(name, tuple(inputs), GATES[kind])


def exogenous(name):
    return Element(name, (), (0,))


@dataclass(frozen=True)
class BoolNetwork:
    """Elements with deterministic updates, plus externally driven elements."""

    elements: tuple
    exogenous: frozenset = frozenset()

    def __post_init__(self):
        elements = tuple(self.elements)
        exo = frozenset(int(i) for i in self.exogenous)
        n = len(elements)
        if n == 0:
            raise ValidationError("a network needs at least one element")
        for i, el in enumerate(elements):
            dangling = [j for j in el.inputs if not 0 <= j < n]
            if dangling:
                raise ValidationError(
                    f"element {el.name!r} has dangling input reference(s) {dangling}"
                )
            if i in exo and el.inputs:
                raise ValidationError(f"exogenous element {el.name!r} cannot have inputs")
        if any(not 0 <= i < n for i in exo):
            raise ValidationError(f"exogenous indices {sorted(exo)} out of range")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "exogenous", exo)

    @property
    def n_elements(self):
        return len(self.elements)

    @property
    def exogenous_order(self):
        return tuple(sorted(self.exogenous))

    @property
    def names(self):
        return [el.name for el in self.elements]

    def index_of(self, name):
        return self.names.index(name)

    def step(self, bits, exo_bits=None):
        """One synchronous update; exogenous elements take ``exo_bits``."""
        out = [0] * self.n_elements
        exo_values = dict(zip(self.exogenous_order, exo_bits or ()))
        for i, el in enumerate(self.elements):
            out[i] = exo_values.get(i, 0) if i in self.exogenous else el.update(bits)
        return out

    def depths(self):
        """Propagation depth of each element; exogenous elements have depth 0.

        Raises
        ------
        UnsupportedTopologyError
            If the non-exogenous elements contain a cycle.
        """
        depth = {i: 0 for i in self.exogenous}
        visiting = set()

        def visit(i):
            if i in depth:
                return depth[i]
            if i in visiting:
                raise UnsupportedTopologyError(
                    f"cyclic dependency through element {self.elements[i].name!r}"
                )
            visiting.add(i)
            ins = self.elements[i].inputs
            depth[i] = 1 + max((visit(j) for j in ins), default=0)
            visiting.discard(i)
            return depth[i]

        return [visit(i) for i in range(self.n_elements)]

    def to_dict(self):
        return {
            "elements": [
                {"name": el.name, "inputs": list(el.inputs), "table": list(el.table)}
                for el in self.elements
            ],
            "exogenous": sorted(self.exogenous),
        }

    @classmethod
    def from_dict(cls, data):
        try:
            elements = [
                Element(e["name"], tuple(e.get("inputs", ())), tuple(e["table"]))
                for e in data["elements"]
            ]
            return cls(tuple(elements), frozenset(data.get("exogenous", ())))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed network document: {exc}") from exc


def _exo_probs(net, exo_policy):
    k = len(net.exogenous)
    if exo_policy is None:
        return np.full(1 << k, 1.0 / (1 << k))
    p = np.asarray(exo_policy.probs if isinstance(exo_policy, StateDistribution)
                   else exo_policy, dtype=float)
    if p.shape != (1 << k,):
        raise ValidationError(f"exo_policy must have {1 << k} entries, got {p.shape}")
    StateDistribution(p)
    return p


def _pack(bits):
    return sum(b << i for i, b in enumerate(bits))


def network_to_tpm(net, exo_policy=None):
    """State-by-state TPM of a network.

    Non-exogenous elements update deterministically from the past state.
    Exogenous elements are resampled independently of the past from
    ``exo_policy``, a distribution over their joint state (little-endian in
    increasing element index). ``None`` means uniform.
    """
    p_exo = _exo_probs(net, exo_policy)
    n = net.n_elements
    order = net.exogenous_order
    rows = np.zeros((1 << n, 1 << n))
    for x in range(1 << n):
        bits = [(x >> i) & 1 for i in range(n)]
        base = _pack(net.step(bits, [0] * len(order)))
        for e, pe in enumerate(p_exo):
            y = base
            for k, i in enumerate(order):
                y |= ((e >> k) & 1) << i
            rows[x, y] += pe
    return TPM(rows, n)


def induced_past_distribution(net, exo_policy=None):
    """Stationary distribution of the past state of a feed-forward network.

    Exogenous elements are drawn i.i.d. from ``exo_policy`` every timestep and
    every internal element carries the value propagated from earlier inputs.
    Computed exactly by enumerating exogenous histories as long as the
    deepest propagation path.

    Raises
    ------
    UnsupportedTopologyError
        If the internal elements are not acyclic.
    """
    p_exo = _exo_probs(net, exo_policy)
    n = net.n_elements
    depth = max(net.depths(), default=0)
    k = len(net.exogenous)
    probs = np.zeros(1 << n)
    for history in itertools.product(range(1 << k), repeat=depth + 1):
        weight = float(np.prod([p_exo[e] for e in history]))
        if weight == 0.0:
            continue
        bits = [0] * n
        for e in history:
            bits = net.step(bits, [(e >> j) & 1 for j in range(k)])
        probs[_pack(bits)] += weight
    return StateDistribution(probs / probs.sum(), n)


def steady_output(net, exo_bits, element):
    """Value of ``element`` once the network settles with inputs held fixed."""
    bits = [0] * net.n_elements
    for _ in range(max(net.depths(), default=0) + 1):
        bits = net.step(bits, exo_bits)
    return bits[element]


@dataclass(frozen=True)
class GateCircuitPair:
    """A logic gate as one mechanism (macro) and as a circuit of simpler gates (micro)."""

    kind: str
    macro: BoolNetwork
    micro: BoolNetwork
    macro_output: int
    micro_output: int


def build_gate_pair(kind):
    """Macro gate and its micro circuit.

    Inputs ``A`` and ``B`` are exogenous in both scales.

    * AND: ``N1 = NAND(A, B)``, ``N2 = NAND(N1, N1)``
    * OR: ``N1 = NAND(A, A)``, ``N2 = NAND(B, B)``, ``N3 = NAND(N1, N2)``
    * XOR: ``N = NAND(A, B)``, ``O = OR(A, B)``, ``X = AND(N, O)``
    """
    kind = kind.upper()
    a, b = exogenous("A"), exogenous("B")
    if kind == "AND":
        micro = (a, b, gate("N1", "NAND", (0, 1)), gate("N2", "NAND", (2, 2)))
    elif kind == "OR":
        micro = (a, b, gate("N1", "NAND", (0, 0)), gate("N2", "NAND", (1, 1)),
                 gate("N3", "NAND", (2, 3)))
    elif kind == "XOR":
        micro = (a, b, gate("N", "NAND", (0, 1)), gate("O", "OR", (0, 1)),
                 gate("X", "AND", (2, 3)))
    else:
        raise ValidationError(f"unknown gate kind {kind!r}; expected AND, OR or XOR")
    macro = BoolNetwork((a, b, gate(kind, kind, (0, 1))), frozenset({0, 1}))
    micro = BoolNetwork(micro, frozenset({0, 1}))
    return GateCircuitPair(kind, macro, micro, 2, len(micro.elements) - 1)


def save_network(net, path):
    with open(path, "w") as fh:
        json.dump(net.to_dict(), fh, indent=2)


def load_network(path):
    from .schemas import validate_document

    with open(path) as fh:
        data = json.load(fh)
    validate_document(data, "network")
    return BoolNetwork.from_dict(data)
