"""Builders for the sequence (GS), gene-membership (GM) and interaction (GI) networks.

All builders index nodes by the canonical order of the SnpMap and emit unit
weights; overlapping constructions collapse to a single edge.
"""
import logging
from enum import Enum
from typing import Dict, List, Optional

import numpy as np

from genotype_data.models import GeneAnnotation, GeneInteractionList, SnpMap
from .network import SnpNetwork

logger = logging.getLogger(__name__)


class NetworkKind(str, Enum):
    GS = "gs"
    GM = "gm"
    GI = "gi"


def _sequence_edges(snp_map: SnpMap) -> np.ndarray:
    parts = []
    for chrom, start, stop in snp_map.chromosome_blocks():
        positions = snp_map.positions[start:stop]
        n_dup = int(np.sum(positions[1:] == positions[:-1]))
        if n_dup:
            logger.warning(
                "Chromosome %s has %d duplicate positions; ordered by SNP id", chrom, n_dup
            )
        idx = np.arange(start, stop - 1, dtype=np.int64)
        parts.append(np.column_stack([idx, idx + 1]))
    if not parts:
        return np.empty((0, 2), dtype=np.int64)
    return np.vstack(parts)


def _clique_edges(members: np.ndarray) -> np.ndarray:
    if members.size < 2:
        return np.empty((0, 2), dtype=np.int64)
    i, j = np.triu_indices(members.size, k=1)
    return np.column_stack([members[i], members[j]])


def _bipartite_edges(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    if left.size == 0 or right.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    a, b = np.meshgrid(left, right, indexing="ij")
    return np.column_stack([a.ravel(), b.ravel()])


def _assemble(snp_map: SnpMap, edge_blocks: List[np.ndarray]) -> SnpNetwork:
    edges = np.vstack(edge_blocks) if edge_blocks else np.empty((0, 2), dtype=np.int64)
    network = SnpNetwork.from_edges(len(snp_map), edges, 1.0, snp_map.snp_ids)
    logger.info("Built network with %d nodes and %d edges", network.n, network.n_edges)
    return network


def build_gs(snp_map: SnpMap) -> SnpNetwork:
    """Connect consecutive SNPs within each chromosome."""
    if len(snp_map) < 1:
        raise ValueError("SNP map is empty")
    return _assemble(snp_map, [_sequence_edges(snp_map)])


def _gene_blocks(near: Dict[str, np.ndarray]) -> List[np.ndarray]:
    return [_clique_edges(members) for members in near.values()]


def build_gm(snp_map: SnpMap, genes: GeneAnnotation, window: int) -> SnpNetwork:
    """GS plus a clique over the SNPs within ``window`` bp of each gene."""
    if len(snp_map) < 1:
        raise ValueError("SNP map is empty")
    near = genes.snps_near(snp_map, window)
    return _assemble(snp_map, [_sequence_edges(snp_map)] + _gene_blocks(near))


def build_gi(
    snp_map: SnpMap,
    genes: GeneAnnotation,
    interactions: GeneInteractionList,
    window: int,
) -> SnpNetwork:
    """GM plus complete bipartite links between SNPs near interacting genes.

    Interactions naming a gene absent from the annotation are skipped and counted.
    """
    if len(snp_map) < 1:
        raise ValueError("SNP map is empty")
    near = genes.snps_near(snp_map, window)
    pairs, n_dropped = interactions.resolve(genes)
    if n_dropped:
        logger.warning("Skipped %d interactions referencing unannotated genes", n_dropped)
    blocks = [_sequence_edges(snp_map)] + _gene_blocks(near)
    blocks += [_bipartite_edges(near[a], near[b]) for a, b in pairs]
    return _assemble(snp_map, blocks)


def build_network(
    kind: NetworkKind,
    snp_map: SnpMap,
    genes: Optional[GeneAnnotation] = None,
    interactions: Optional[GeneInteractionList] = None,
    window: int = 20000,
) -> SnpNetwork:
    """Dispatch to the builder for ``kind``.

    Raises:
        ValueError: If the inputs required by ``kind`` are missing or window < 0
    """
    kind = NetworkKind(kind)
    if window < 0:
        raise ValueError("window must be >= 0")
    if kind is NetworkKind.GS:
        return build_gs(snp_map)
    if genes is None:
        raise ValueError(f"Network '{kind.value}' needs a gene annotation")
    if kind is NetworkKind.GM:
        return build_gm(snp_map, genes, window)
    if interactions is None:
        raise ValueError("Network 'gi' needs a gene interaction list")
    return build_gi(snp_map, genes, interactions, window)
