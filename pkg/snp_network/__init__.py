"""SNP-SNP networks: construction, Laplacian quadratic form and edge-list I/O."""
from .network import SnpNetwork, laplacian_quadratic, read_edge_list, remove_edges, write_edge_list
from .builders import NetworkKind, build_gi, build_gm, build_gs, build_network

__all__ = [
    "SnpNetwork",
    "laplacian_quadratic",
    "read_edge_list",
    "remove_edges",
    "write_edge_list",
    "NetworkKind",
    "build_gi",
    "build_gm",
    "build_gs",
    "build_network",
]
