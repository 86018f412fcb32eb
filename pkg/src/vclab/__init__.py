"""Vertex-connectivity laboratory.

Exact pairwise/single-source/global/Steiner vertex connectivity and element
connectivity via unit-capacity max flow, degree-split and sampling-based
fast solvers, and the clique-hardness constructions (filters, isolating
gadget, the instances H and J) with machine-checkable identities.
"""

from .errors import (
    DemandError,
    GraphParseError,
    InconsistencyError,
    QueryError,
    SizeGuardError,
    VclabError,
)
from .flow import (
    ConnectivitySweep,
    CutCertificate,
    FlowNetwork,
    build_element_network,
    build_vc_network,
    capped_element_connectivity,
    capped_vertex_connectivity,
    cut_disconnects,
    element_connectivity,
    max_flow,
    vertex_connectivity,
    vertex_disjoint_paths,
)
from .graphs import (
    EdgeSet,
    Graph,
    LabeledInstance,
    emit_graph,
    emit_labeled,
    gen_gnp,
    gen_planted_4clique,
    pad_with_isolated_vertices,
    parse_edge_pairs,
    parse_graph,
    parse_labeled,
)
from .oracles import (
    brute_4clique,
    brute_4clique_exhaustive,
    brute_edge_universal,
    brute_mixed_cut,
)
from .reductions import (
    FourPartite,
    HardInstance,
    apvc_threshold,
    attach_gadget,
    build_filter_b,
    build_filter_c,
    build_h,
    build_h_hat,
    build_isolating_gadget,
    build_j,
    emit_hard_instance,
    four_partite,
    parse_hard_instance,
    solve_4clique_via_apvc,
    solve_edge_universal_via_steiner,
    steiner_threshold,
)
from .solvers import (
    ConnectivityMatrix,
    DegreeSplit,
    SampleFamily,
    apvc_naive,
    apvc_via_ssvc,
    capped_apvc_sampled,
    capped_ssvc_sampled,
    degree_split,
    draw_sample_family,
    fast_apvc,
    fast_ssvc,
    global_vc,
    ssvc,
    steiner_vc,
)

__version__ = "0.1.0"
