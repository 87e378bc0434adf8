"""Edge open packings in small graphs: exact solver, theorem checkers,
extremal families and a corpus scan harness."""

from .canon import are_isomorphic, canonical_form, canonical_graph, corpus, enumerate_connected_graphs
from .conditions import (
    ConditionReport,
    Verdict,
    check_c1,
    check_c2,
    check_c3,
    check_c4,
    check_rho2,
    condition_report,
    predict_rho_equals_t,
    predict_rho_window,
)
from .families import (
    FAMILIES,
    FAMILY_IDS,
    FamilyError,
    audit_family,
    generate_family,
    predict_extremal_class,
    recognize_families,
)
from .graph import (
    DisconnectedGraphError,
    Graph,
    GraphError,
    build_graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    path_graph,
    star_graph,
)
from .graph6 import Graph6Error, parse_graph6, write_graph6
from .harness import ScanRecord, ScanSummary, load_corpus, scan
from .packing import (
    EopSet,
    GuardExceeded,
    common_edge,
    conflict_graph,
    eop_number,
    eop_number_exact,
    eop_number_oracle,
    injective_chromatic_index,
    is_eop_set,
    star_decomposition,
)

__version__ = "0.1.0"
