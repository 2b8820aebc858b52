"""Variable Wiener and Szeged indices, the gap between them and its roots."""

from .critical import (
    RootReport,
    StrongVerdict,
    VerdictKind,
    find_roots,
    strong_conjecture_verdict,
    weak_conjecture_check,
)
from .gkl import GklParams, build_gkl, search_multiroot, szeged_alpha_closed, wiener_alpha_closed
from .graph import (
    DisconnectedGraphError,
    Graph,
    GraphError,
    all_pairs_distances,
    bfs_distances,
    diameter,
    is_bipartite,
    is_block_graph,
    is_complete,
    is_connected,
    parse_edge_list,
)
from .invariants import (
    GapFunction,
    IndexProfile,
    build_profile,
    classical_indices,
    distance_sequence,
    gap,
    gap_derivative,
    szeged_alpha,
    szeged_terms,
    wiener_alpha,
)
from .majorization import (
    Certificate,
    CertificateKind,
    certify_uniqueness,
    check_condition_I,
    check_condition_II,
    check_power_mean,
    check_sparse_regime,
    karamata_gap_check,
    majorizes,
)
from .randgen import random_gnm_connected, random_gnp_connected

__version__ = "0.1.0"
