"""Symmetric chain decompositions of cuboids Q_k x n.

Construction, transformation, validation, and exhaustive search for
symmetric chain decompositions of products of graded posets with chains,
with first-class support for detecting and avoiding taut chains (chains
containing a full vertical run of the chain coordinate).
"""

from .chains import (
    SCD,
    ChainCheck,
    NecessaryConditions,
    ScdError,
    ValidationReport,
    expected_chain_count,
    is_taut,
    necessary_conditions,
    validate_chain,
    validate_scd,
)
from .constructions import (
    ConstructionError,
    EdgeMatching,
    MiddleGraph,
    RegionError,
    collapse,
    enumerate_matchings,
    expand,
    extend_dimension,
    generate,
    grid_scd,
    hypercube_scd,
    middle_graph,
    product_lift,
    repair,
    shift,
)
from .data_io import (
    ParseError,
    builtin_table,
    parse_scd,
    render_pictorial,
    serialize_scd,
)
from .posets import (
    GradedPoset,
    Packet,
    PacketGrid,
    PosetError,
    build_chain_poset,
    build_cuboid,
    build_hypercube,
    element_at,
    is_rank_symmetric,
    packet,
    packet_grid,
    poset_times_chain,
    product,
)
from .search import (
    ExistenceResult,
    SearchConfig,
    SearchError,
    SearchOutcome,
    count_scds,
    enumerate_scds,
    exists_nontaut_scd,
)

__version__ = "0.1.0"

__all__ = [
    "SCD",
    "ChainCheck",
    "ConstructionError",
    "EdgeMatching",
    "ExistenceResult",
    "GradedPoset",
    "MiddleGraph",
    "NecessaryConditions",
    "Packet",
    "PacketGrid",
    "ParseError",
    "PosetError",
    "RegionError",
    "ScdError",
    "SearchConfig",
    "SearchError",
    "SearchOutcome",
    "ValidationReport",
    "builtin_table",
    "build_chain_poset",
    "build_cuboid",
    "build_hypercube",
    "collapse",
    "count_scds",
    "element_at",
    "enumerate_matchings",
    "enumerate_scds",
    "exists_nontaut_scd",
    "expand",
    "expected_chain_count",
    "extend_dimension",
    "generate",
    "grid_scd",
    "hypercube_scd",
    "is_rank_symmetric",
    "is_taut",
    "middle_graph",
    "necessary_conditions",
    "packet",
    "packet_grid",
    "parse_scd",
    "poset_times_chain",
    "product",
    "product_lift",
    "render_pictorial",
    "repair",
    "serialize_scd",
    "shift",
    "validate_chain",
    "validate_scd",
]
