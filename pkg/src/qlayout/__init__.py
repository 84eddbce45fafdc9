"""Exact queue layouts: 1-queue recognition via treedepth pruning and queue number via vertex-cover kernels."""

from .errors import CapacityError, GraphError, InternalError, LayoutError, ParseError, QLayoutError
from .graph import Graph, connected_components, induced_subgraph, parse_graph, remove_vertices
from .layout import (
    LinearLayout,
    Rainbow,
    Violation,
    edges_nest,
    max_rainbow,
    min_queues_for_order,
    validate_layout,
)
from .oracle import OracleResult, oracle_is_1queue, oracle_queue_number
from .params import (
    TreedepthDecomposition,
    VertexCoverCertificate,
    has_long_path,
    min_vertex_cover,
    treedepth,
)
from .vc import (
    build_vc_kernel,
    construct_tau_layout,
    extend_vc_layout,
    queue_number_vc,
    solve_kernel,
    type_partition,
)

__version__ = "0.1.0"
