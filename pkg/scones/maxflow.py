"""Maximum flow on the augmented graph and extraction of the minimal source side.

Two solvers are available: scipy's Dinic implementation (default) and
networkx's Boykov-Kolmogorov. Both run on the same fixed-point integer
capacities at scale 2**scale_bits, and both results are checked against the
integer weight of the cut they induce. scipy needs int32 capacities; when they
do not fit, the solve goes to Boykov-Kolmogorov on Python ints at the same
scale.
"""
import logging
from dataclasses import dataclass
from typing import Literal

import networkx as nx
import numpy as np
from networkx.algorithms.flow import boykov_kolmogorov
from scipy.sparse.csgraph import breadth_first_order, maximum_flow

from genotype_data.errors import FlowCertificateError
from .augmented_graph import AugmentedGraph

logger = logging.getLogger(__name__)

FlowSolver = Literal["dinic", "boykov_kolmogorov"]
SOLVERS = ("dinic", "boykov_kolmogorov")


@dataclass(frozen=True)
class MinCut:
    """Result of one max-flow solve.

    Attributes:
        flow_value: Maximum flow in original units (integer flow / scale)
        source_side: Sorted SNP indices reachable from s in the final residual graph
        integer_flow: Maximum flow on the fixed-point capacities
        scale: Fixed-point scale the capacities were multiplied by
        solver: Solver that produced the flow
    """
    flow_value: float
    source_side: np.ndarray
    integer_flow: int
    scale: float
    solver: str = "dinic"


def _integer_cut(graph: AugmentedGraph, scale: float, source_side: np.ndarray) -> int:
    src, snk, pair = graph.integer_capacities(scale)
    inside = np.zeros(graph.n, dtype=bool)
    inside[source_side] = True
    crossing = inside[graph.rows] != inside[graph.cols]
    return int(src[~inside].sum() + snk[inside].sum() + pair[crossing].sum())


def _solve_dinic(graph: AugmentedGraph, scale: float):
    capacities = graph.to_csr(scale)
    result = maximum_flow(capacities, graph.source, graph.sink, method="dinic")
    residual = (capacities - result.flow).tocsr()
    residual.data[residual.data < 0] = 0
    residual.eliminate_zeros()
    reachable = breadth_first_order(
        residual, graph.source, directed=True, return_predecessors=False
    )
    # scipy's int32 flow_value can wrap; the source row of the flow cannot
    out_of_source = result.flow.tocsr()[graph.source]
    integer_flow = int(np.asarray(out_of_source.data, dtype=np.int64).sum())
    return integer_flow, reachable


def _solve_boykov_kolmogorov(graph: AugmentedGraph, scale: float):
    tails, heads, capacities = graph.arcs(scale)
    digraph = nx.DiGraph()
    digraph.add_nodes_from(range(graph.n + 2))
    digraph.add_weighted_edges_from(
        zip(tails.tolist(), heads.tolist(), capacities.tolist()), weight="capacity"
    )
    residual = boykov_kolmogorov(digraph, graph.source, graph.sink, capacity="capacity")
    open_arcs = nx.DiGraph()
    open_arcs.add_node(graph.source)
    open_arcs.add_edges_from(
        (u, v) for u, v, attr in residual.edges(data=True) if attr["capacity"] - attr["flow"] > 0
    )
    reachable = np.fromiter(
        nx.descendants(open_arcs, graph.source) | {graph.source}, dtype=np.int64
    )
    return int(residual.graph["flow_value"]), reachable


def max_flow_min_cut(
    graph: AugmentedGraph,
    solver: FlowSolver = "dinic",
    scale_bits: int = 20,
) -> MinCut:
    """Solve max-flow from s to t and return the minimal source side.

    Args:
        graph: Augmented s/t graph
        solver: "dinic" (scipy) or "boykov_kolmogorov" (networkx)
        scale_bits: Capacities are multiplied by 2**scale_bits and rounded

    Returns:
        MinCut with the flow value and SNPs on the source side

    Raises:
        FlowCertificateError: If the flow value differs from the weight of the
            cut read off the residual graph
    """
    if solver not in SOLVERS:
        raise ValueError(f"Unknown flow solver {solver!r}; choose from {SOLVERS}")
    scale = graph.fixed_point_scale(scale_bits)

    src, _, _ = graph.integer_capacities(scale)
    if not np.asarray(src > 0, dtype=bool).any():
        # nothing leaves s: flow 0 and s reaches no SNP
        return MinCut(
            flow_value=0.0, source_side=np.empty(0, dtype=np.int64), integer_flow=0,
            scale=scale, solver=solver,
        )

    if solver == "dinic" and not graph.fits_int32(scale):
        logger.debug(
            "Arc capacity %.6g overflows int32 at scale 2**%d; using boykov_kolmogorov",
            graph.max_arc_capacity(), scale_bits,
        )
        solver = "boykov_kolmogorov"

    if solver == "dinic":
        integer_flow, reachable = _solve_dinic(graph, scale)
    else:
        integer_flow, reachable = _solve_boykov_kolmogorov(graph, scale)

    if graph.sink in set(reachable.tolist()):
        raise FlowCertificateError("Sink is reachable in the residual graph; flow is not maximal")
    source_side = np.sort(reachable[reachable < graph.n]).astype(np.int64)

    cut = _integer_cut(graph, scale, source_side)
    if cut != integer_flow:
        raise FlowCertificateError(
            f"Flow value {integer_flow} differs from cut weight {cut} at scale {scale:g}"
        )
    return MinCut(
        flow_value=integer_flow / scale,
        source_side=source_side,
        integer_flow=integer_flow,
        scale=scale,
        solver=solver,
    )
