from itertools import combinations
from pathlib import Path

import networkx as nx
import numpy as np
import pytest

from infoconv.errors import ValidationError
from infoconv.lattice import (
    Antichain,
    build_lattice,
    compute_ranks,
    enumerate_atoms,
    precedes,
)

DATA = Path(__file__).parent / "data"

# Antichains of the full subset lattice of an n-set (Dedekind numbers). The
# empty antichain and the one holding only the empty set are not atoms.
DEDEKIND = {1: 3, 2: 6, 3: 20, 4: 168, 5: 7581}


def brute_force_atoms(n):
    subsets = range(1, 1 << n)
    found = set()
    for family in range(1, 1 << len(subsets)):
        chosen = [s for k, s in enumerate(subsets) if family >> k & 1]
        if all(a & b not in (a, b) for a, b in combinations(chosen, 2)):
            found.add(tuple(chosen))
    return found


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_atoms_match_brute_force(n):
    atoms = {a.subsets for a in enumerate_atoms(n)}
    assert atoms == brute_force_atoms(n)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_atom_counts(n):
    assert len(build_lattice(n)) == DEDEKIND[n] - 2


def test_atom_counts_explicit():
    assert [len(build_lattice(n)) for n in range(1, 5)] == [1, 4, 18, 166]


@pytest.mark.parametrize("n", [0, 6])
def test_source_range(n):
    with pytest.raises(ValidationError):
        build_lattice(n)


class TestAntichain:
    def test_parse_and_format(self):
        a = Antichain.parse("{12}{0}")
        assert a.subsets == (0b001, 0b110)
        assert str(a) == "{0}{12}"

    def test_comparable_subsets_rejected(self):
        with pytest.raises(ValidationError):
            Antichain.parse("{0}{01}")

    @pytest.mark.parametrize("text", ["", "{}", "0}{1", "{a}"])
    def test_bad_text(self, text):
        with pytest.raises(ValidationError):
            Antichain.parse(text)


@pytest.mark.parametrize("a, b, expected", [
    ("{0}{1}", "{01}", True),
    ("{0}{12}", "{0}", True),
    ("{0}", "{12}", False),
    ("{01}", "{0}{1}", False),
    ("{0}{1}{2}", "{012}", True),
    ("{0}", "{0}", True),
])
def test_precedes_examples(a, b, expected):
    assert precedes(Antichain.parse(a), Antichain.parse(b)) is expected


@pytest.mark.parametrize("n", [2, 3])
def test_bitmask_order_matches_definition(n):
    lat = build_lattice(n)
    leq = lat.leq_matrix()
    for i, a in enumerate(lat.atoms):
        for j, b in enumerate(lat.atoms):
            assert leq[i, j] == precedes(a, b)
            assert lat.leq(i, j) == leq[i, j]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_order_is_partial_order(n):
    leq = build_lattice(n).leq_matrix()
    assert leq.diagonal().all()
    assert not np.any(leq & leq.T & ~np.eye(len(leq), dtype=bool))
    # Transitivity: leq @ leq has no path that leq lacks.
    closure = (leq.astype(int) @ leq.astype(int)) > 0
    assert np.array_equal(closure, leq)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_bottom_and_top(n):
    lat = build_lattice(n)
    leq = lat.leq_matrix()
    assert leq[lat.bottom].all()
    assert leq[:, lat.top].all()
    assert str(lat.atoms[lat.top]) == "{" + "".join(map(str, range(n))) + "}"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_ranks_match_longest_path_oracle(n):
    lat = build_lattice(n)
    leq = lat.leq_matrix()
    g = nx.DiGraph()
    g.add_nodes_from(range(len(lat)))
    g.add_edges_from((i, j) for i, j in zip(*np.nonzero(leq)) if i != j)
    oracle = {}
    for v in nx.topological_sort(g):
        preds = list(g.predecessors(v))
        oracle[v] = max(oracle[p] for p in preds) + 1 if preds else 0
    np.testing.assert_array_equal(lat.rank, [oracle[i] for i in range(len(lat))])
    assert lat.height == nx.dag_longest_path_length(g)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_order_is_topological(n):
    lat = build_lattice(n)
    position = np.empty(len(lat), dtype=int)
    position[lat.order] = np.arange(len(lat))
    for j, down in enumerate(lat.strict_down):
        assert np.all(position[down] < position[j])


def test_heights():
    assert [build_lattice(n).height for n in range(1, 6)] == [0, 2, 6, 14, 30]


def test_strict_down_sizes():
    lat = build_lattice(3)
    assert lat.strict_down[lat.bottom].size == 0
    assert lat.strict_down[lat.top].size == len(lat) - 1


def test_compute_ranks_returns_copy():
    lat = build_lattice(3)
    ranks, height = compute_ranks(lat)
    ranks[:] = -1
    assert lat.rank.min() == 0
    assert height == 6


def test_layers_partition_atoms():
    lat = build_lattice(4)
    layers = lat.layers()
    assert len(layers) == lat.height + 1
    assert sorted(np.concatenate(layers).tolist()) == list(range(len(lat)))


def test_rank_of_string():
    lat = build_lattice(3)
    assert lat.rank_of("{0}{12}") == 2
    assert lat.rank_of("{01}{02}{12}") == 3


def test_golden_dump_two_sources():
    assert build_lattice(2).dump() == "{0} 1\n{0}{1} 0\n{1} 1\n{01} 2\n"


def test_golden_dump_three_sources():
    assert build_lattice(3).dump() == (DATA / "lattice_n3.txt").read_text()


def test_lattice_is_cached():
    assert build_lattice(3) is build_lattice(3)
