"""Undirected weighted SNP-SNP network and its Laplacian quadratic form."""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from scipy import sparse

from genotype_data.errors import GenotypeFormatError
from genotype_data.loaders import _read_tsv, _write_lines, format_number

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _readonly(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class SnpNetwork:
    """Undirected graph over ``n`` SNP nodes.

    Each edge is stored once as (row, col) with row < col, sorted by (row, col).
    Weights are strictly positive and finite. The Laplacian L = D - W is never
    materialized; ``degrees`` holds the weighted degree of every node.

    Attributes:
        n: Number of nodes
        rows: Smaller endpoint of each edge
        cols: Larger endpoint of each edge
        weights: Edge weights
        snp_ids: Optional node labels (length n)
    """
    n: int
    rows: np.ndarray
    cols: np.ndarray
    weights: np.ndarray
    snp_ids: Tuple[str, ...] = ()

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.int64).ravel()
        cols = np.asarray(self.cols, dtype=np.int64).ravel()
        weights = np.asarray(self.weights, dtype=np.float64).ravel()
        if self.n < 0:
            raise ValueError("Node count must be >= 0")
        if not (rows.shape == cols.shape == weights.shape):
            raise ValueError("Edge arrays differ in length")
        if rows.size:
            if min(rows.min(), cols.min()) < 0 or max(rows.max(), cols.max()) >= self.n:
                raise ValueError("Edge endpoint out of range")
            if np.any(rows == cols):
                raise ValueError("Self-loops are not allowed")
            if not np.all(np.isfinite(weights)) or np.any(weights <= 0):
                raise ValueError("Edge weights must be positive and finite")

        lo, hi = np.minimum(rows, cols), np.maximum(rows, cols)
        order = np.lexsort((hi, lo))
        lo, hi, weights = lo[order], hi[order], weights[order]
        if lo.size > 1:
            duplicate = (lo[1:] == lo[:-1]) & (hi[1:] == hi[:-1])
            if duplicate.any():
                raise ValueError("Duplicate edges; use SnpNetwork.from_edges to collapse them")

        object.__setattr__(self, "rows", _readonly(lo))
        object.__setattr__(self, "cols", _readonly(hi))
        object.__setattr__(self, "weights", _readonly(weights))
        snp_ids = tuple(str(s) for s in self.snp_ids)
        if snp_ids and len(snp_ids) != self.n:
            raise ValueError(f"Got {len(snp_ids)} SNP ids for {self.n} nodes")
        object.__setattr__(self, "snp_ids", snp_ids)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Tuple[int, int]],
        weights: Union[float, Sequence[float]] = 1.0,
        snp_ids: Sequence[str] = (),
    ) -> "SnpNetwork":
        """Build a network from possibly repeated edges in any orientation.

        Parallel edges collapse to one; the first weight seen for a pair is kept.
        Self-loops are dropped.
        """
        pairs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        w = np.broadcast_to(np.asarray(weights, dtype=np.float64), (pairs.shape[0],))
        lo = np.minimum(pairs[:, 0], pairs[:, 1])
        hi = np.maximum(pairs[:, 0], pairs[:, 1])
        keep = lo != hi
        lo, hi, w = lo[keep], hi[keep], w[keep]
        if lo.size == 0:
            return cls(n=n, rows=lo, cols=hi, weights=w, snp_ids=tuple(snp_ids))
        _, first = np.unique(lo * max(n, 1) + hi, return_index=True)
        return cls(n=n, rows=lo[first], cols=hi[first], weights=w[first], snp_ids=tuple(snp_ids))

    @classmethod
    def from_arrays(cls, n: int, rows, cols, weights, snp_ids: Sequence[str] = ()) -> "SnpNetwork":
        """Same as ``from_edges`` but takes parallel endpoint arrays."""
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        return cls.from_edges(n, np.column_stack([rows, cols]), weights, snp_ids)

    @property
    def n_edges(self) -> int:
        return int(self.rows.shape[0])

    @property
    def degrees(self) -> np.ndarray:
        """Weighted degree of every node (the diagonal of D)."""
        return np.bincount(self.rows, weights=self.weights, minlength=self.n) + np.bincount(
            self.cols, weights=self.weights, minlength=self.n
        )

    def adjacency(self) -> sparse.csr_matrix:
        """Symmetric n x n CSR matrix W."""
        data = np.concatenate([self.weights, self.weights])
        i = np.concatenate([self.rows, self.cols])
        j = np.concatenate([self.cols, self.rows])
        return sparse.csr_matrix((data, (i, j)), shape=(self.n, self.n))

    def edges(self) -> List[Tuple[int, int, float]]:
        return [(int(p), int(q), float(w)) for p, q, w in zip(self.rows, self.cols, self.weights)]

    def edge_set(self) -> set:
        return set(zip(self.rows.tolist(), self.cols.tolist()))

    def subnetwork(self, kept: Sequence[int]) -> "SnpNetwork":
        """Induced subnetwork on ``kept`` nodes, renumbered in the given order."""
        kept = np.asarray(kept, dtype=np.int64)
        new_index = np.full(self.n, -1, dtype=np.int64)
        new_index[kept] = np.arange(kept.size)
        rows, cols = new_index[self.rows], new_index[self.cols]
        mask = (rows >= 0) & (cols >= 0)
        snp_ids = tuple(self.snp_ids[i] for i in kept) if self.snp_ids else ()
        return SnpNetwork(
            n=int(kept.size),
            rows=np.minimum(rows[mask], cols[mask]),
            cols=np.maximum(rows[mask], cols[mask]),
            weights=self.weights[mask],
            snp_ids=snp_ids,
        )


def laplacian_quadratic(network: SnpNetwork, f) -> float:
    """Compute f^T L f as the sum over edges of w * (f_p - f_q)^2.

    Raises:
        ValueError: If ``f`` does not have one entry per node
    """
    f = np.asarray(f, dtype=np.float64)
    if f.shape != (network.n,):
        raise ValueError(f"Vector has length {f.shape[0] if f.ndim else 0}, network has {network.n} nodes")
    diff = f[network.rows] - f[network.cols]
    return float(np.dot(network.weights, diff * diff))


def remove_edges(network: SnpNetwork, fraction: float, rng_seed) -> SnpNetwork:
    """Delete floor(fraction * |E|) edges chosen uniformly without replacement.

    Args:
        network: Input network
        fraction: Share of edges to delete, in [0, 1]
        rng_seed: Seed or numpy Generator
    """
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"fraction must be in [0, 1], got {fraction}")
    n_remove = int(np.floor(fraction * network.n_edges))
    if n_remove == 0:
        return network
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    removed = rng.choice(network.n_edges, size=n_remove, replace=False)
    keep = np.ones(network.n_edges, dtype=bool)
    keep[removed] = False
    logger.debug("Removed %d of %d edges", n_remove, network.n_edges)
    return SnpNetwork(
        n=network.n,
        rows=network.rows[keep],
        cols=network.cols[keep],
        weights=network.weights[keep],
        snp_ids=network.snp_ids,
    )


def write_edge_list(network: SnpNetwork, path: PathLike):
    """Write ``snp_id_a<TAB>snp_id_b<TAB>weight``, smaller id first, lines sorted."""
    if not network.snp_ids:
        raise ValueError("Network has no SNP ids to write")
    ids = network.snp_ids
    records = sorted(
        (min(ids[p], ids[q]), max(ids[p], ids[q]), w)
        for p, q, w in zip(network.rows, network.cols, network.weights)
    )
    lines = ["snp_id_a\tsnp_id_b\tweight"]
    lines += [f"{a}\t{b}\t{format_number(w)}" for a, b, w in records]
    _write_lines(path, lines)


def read_edge_list(path: PathLike, snp_ids: Sequence[str]) -> SnpNetwork:
    """Read an edge list and index it against ``snp_ids``.

    Edges touching SNPs outside ``snp_ids`` are dropped with a warning, so a
    network built on the full map can be reused after MAF filtering.
    """
    frame, first_line = _read_tsv(path, 3, header_name="snp_id_a")
    index = {s: i for i, s in enumerate(snp_ids)}
    weights = pd.to_numeric(frame.iloc[:, 2], errors="coerce").to_numpy()
    bad = np.flatnonzero(~np.isfinite(weights) | (weights <= 0))
    if bad.size:
        raise GenotypeFormatError(path, first_line + int(bad[0]), "edge weight must be a positive number")

    edges, kept_weights = [], []
    n_unknown = 0
    for (a, b), w in zip(frame.iloc[:, :2].itertuples(index=False), weights):
        if a in index and b in index:
            edges.append((index[a], index[b]))
            kept_weights.append(w)
        else:
            n_unknown += 1
    if n_unknown:
        logger.warning("Dropped %d edges referencing SNPs not in the analysis set", n_unknown)
    if not edges:
        return SnpNetwork(n=len(snp_ids), rows=[], cols=[], weights=[], snp_ids=tuple(snp_ids))
    return SnpNetwork.from_edges(len(snp_ids), edges, kept_weights, snp_ids)
