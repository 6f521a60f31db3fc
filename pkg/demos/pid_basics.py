"""
Partial information decomposition of two-input gates
====================================================

Redundant, unique and synergistic information of XOR, AND and a copy gate,
and where each sits on the synergy-bias scale.
"""

from infoconv import SourcesTarget, decompose, spectrum_and_bias

inputs = [(0, 0), (0, 1), (1, 0), (1, 1)]

gates = {
    "XOR": [a ^ b for a, b in inputs],
    "AND": [a & b for a, b in inputs],
    "COPY": [a + 2 * b for a, b in inputs],  # target is the pair itself
}

for name, target in gates.items():
    pid = decompose(SourcesTarget.from_samples(inputs, target))
    bias = spectrum_and_bias(pid)
    print(f"{name}: I = {pid.total_mi:.3f} bit, B_syn = {bias.b_syn:.3f}")
    for atom, value in pid.as_dict().items():
        print(f"    {atom:<8s} {value:.4f}")

###############################################################################
# XOR is all synergy: neither input alone says anything about the output.
# AND spreads its information over redundancy and synergy, and the copy gate
# carries one bit of each.

###############################################################################
# The lattice grows quickly with the number of sources.

from infoconv import build_lattice

for n in range(1, 6):
    lat = build_lattice(n)
    print(n, len(lat), "atoms, height", lat.height)
