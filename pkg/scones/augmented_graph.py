"""The s/t graph whose minimum cut solves the connectivity-regularized selection problem.

Node numbering: SNP p is node p, the source is node n and the sink node n + 1.
"""
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from scipy import sparse

from association.scores import AssociationScores
from snp_network.network import SnpNetwork

# scipy's max-flow works on int32 capacities
INT32_LIMIT = np.iinfo(np.int32).max
# int64 sums stay exact below this total
INT64_SAFE = 2.0 ** 62


@dataclass(frozen=True)
class RegularizationParams:
    """Connectivity weight ``lam`` and sparsity weight ``eta``, both finite and >= 0."""
    lam: float
    eta: float

    def __post_init__(self):
        for name in ("lam", "eta"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {value}")
            object.__setattr__(self, name, value)


def score_vector(c: Union[AssociationScores, np.ndarray]) -> np.ndarray:
    values = c.c if isinstance(c, AssociationScores) else c
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1 or not np.all(np.isfinite(values)):
        raise ValueError("Scores must be a finite vector")
    return values


@dataclass(frozen=True)
class AugmentedGraph:
    """Capacities of the s/t graph.

    Attributes:
        n: Number of SNP nodes
        source_caps: A_{s,p} = max(c_p - eta, 0)
        sink_caps: A_{p,t} = max(eta - c_p, 0)
        rows, cols: SNP-SNP edges (each stored once, used in both directions)
        pair_caps: A_{p,q} = A_{q,p} = lam * W_{p,q}
    """
    n: int
    source_caps: np.ndarray
    sink_caps: np.ndarray
    rows: np.ndarray
    cols: np.ndarray
    pair_caps: np.ndarray

    @property
    def source(self) -> int:
        return self.n

    @property
    def sink(self) -> int:
        return self.n + 1

    @property
    def n_edges(self) -> int:
        """|E| plus one terminal edge per SNP whose score differs from eta."""
        n_terminal = int(np.count_nonzero(self.source_caps) + np.count_nonzero(self.sink_caps))
        return int(self.rows.shape[0]) + n_terminal

    def max_arc_capacity(self) -> float:
        """Largest single arc capacity, in float units."""
        return float(max(
            self.source_caps.max(initial=0.0),
            self.sink_caps.max(initial=0.0),
            self.pair_caps.max(initial=0.0),
        ))

    def fixed_point_scale(self, scale_bits: int) -> float:
        """Power of two the capacities are multiplied by before the flow solve."""
        return math.ldexp(1.0, scale_bits)

    def fits_int32(self, scale: float) -> bool:
        """True if every rounded arc capacity fits int32 at ``scale``.

        Flow on an arc never exceeds its capacity; totals are summed in int64
        outside the solver.
        """
        # one bit of headroom for rounding
        return 2.0 * self.max_arc_capacity() * scale <= INT32_LIMIT

    def integer_capacities(self, scale: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Round (source, sink, pair) capacities to integers at ``scale``.

        The arrays are int64 while every cut total fits, otherwise object
        arrays of Python ints.
        """
        total = float(self.source_caps.sum() + self.sink_caps.sum() + self.pair_caps.sum()) * scale
        exact_int64 = total < INT64_SAFE

        def rounded(caps: np.ndarray) -> np.ndarray:
            values = np.rint(caps * scale)
            if exact_int64:
                return values.astype(np.int64)
            return np.array([int(v) for v in values], dtype=object)

        return rounded(self.source_caps), rounded(self.sink_caps), rounded(self.pair_caps)

    def arcs(self, scale: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Directed arcs with a positive integer capacity: (tails, heads, capacities)."""
        src, snk, pair = self.integer_capacities(scale)
        p = np.arange(self.n, dtype=np.int64)
        has_src = np.asarray(src > 0, dtype=bool)
        has_snk = np.asarray(snk > 0, dtype=bool)
        has_pair = np.asarray(pair > 0, dtype=bool)
        tails = np.concatenate([
            np.full(int(has_src.sum()), self.source, dtype=np.int64), p[has_snk],
            self.rows[has_pair], self.cols[has_pair],
        ])
        heads = np.concatenate([
            p[has_src], np.full(int(has_snk.sum()), self.sink, dtype=np.int64),
            self.cols[has_pair], self.rows[has_pair],
        ])
        capacities = np.concatenate([src[has_src], snk[has_snk], pair[has_pair], pair[has_pair]])
        return tails, heads, capacities

    def to_csr(self, scale: float) -> sparse.csr_matrix:
        """Directed (n + 2) x (n + 2) int32 capacity matrix for scipy's max-flow.

        Raises:
            OverflowError: If the capacities do not fit int32 at ``scale``
        """
        if not self.fits_int32(scale):
            raise OverflowError(f"Capacities exceed int32 at scale {scale:g}")
        tails, heads, capacities = self.arcs(scale)
        size = self.n + 2
        matrix = sparse.csr_matrix(
            (capacities.astype(np.int32), (tails, heads)), shape=(size, size), dtype=np.int32
        )
        matrix.sum_duplicates()
        return matrix

    def partition_weight(self, selected: np.ndarray) -> float:
        """Weight of the cut with source side {s} + ``selected``, in float units."""
        inside = np.zeros(self.n, dtype=bool)
        inside[selected] = True
        crossing = inside[self.rows] != inside[self.cols]
        return float(
            self.source_caps[~inside].sum() + self.sink_caps[inside].sum() + self.pair_caps[crossing].sum()
        )


def build_augmented_graph(
    c: Union[AssociationScores, np.ndarray],
    network: SnpNetwork,
    params: RegularizationParams,
) -> AugmentedGraph:
    """Lay out the terminal and SNP-SNP capacities for scores ``c`` on ``network``.

    A SNP with c_p == eta is attached to neither terminal.
    """
    scores = score_vector(c)
    if scores.shape[0] != network.n:
        raise ValueError(f"Got {scores.shape[0]} scores for a network of {network.n} nodes")
    shifted = scores - params.eta
    return AugmentedGraph(
        n=network.n,
        source_caps=np.maximum(shifted, 0.0),
        sink_caps=np.maximum(-shifted, 0.0),
        rows=network.rows,
        cols=network.cols,
        pair_caps=params.lam * network.weights,
    )
