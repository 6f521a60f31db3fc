"""
infoconv
========

Partial information decomposition of the past-to-future mutual information of
discrete Boolean networks, with tools to compare how that information is
distributed between redundant and synergistic atoms across scales.
"""

from .boolnet import (
    BoolNetwork,
    Element,
    GateCircuitPair,
    build_gate_pair,
    induced_past_distribution,
    network_to_tpm,
)
from .causal import (
    EIReport,
    StatePartition,
    best_coarse_graining,
    coarse_grain_tpm,
    effective_information,
)
from .discrete import (
    TPM,
    JointDistribution,
    StateDistribution,
    entropy,
    mutual_information,
    stationary_distribution,
    temporal_mutual_information,
)
from .errors import (
    ConvergenceError,
    InfoConvError,
    NumericalConsistencyError,
    UndefinedBiasError,
    UndefinedCorrelationError,
    UnsupportedTopologyError,
    ValidationError,
)
from .expansion import (
    EnsembleSpec,
    ExpansionRecord,
    expand_node,
    generate_deterministic_tpm,
    generate_gaussian_tpm,
    merge_children,
    run_expansion_experiment,
)
from .lattice import Antichain, PILattice, build_lattice, enumerate_atoms, precedes
from .pid import (
    PIDResult,
    PISpectrum,
    SourcesTarget,
    decompose,
    redundancy_wb,
    specific_information,
    spectrum_and_bias,
    synergy_bias,
    temporal_pid,
)
from .stats import pearson

__version__ = "0.1.0"
