"""Wall-clock timing of single selection solves on chain and random networks."""
import logging
import time
from dataclasses import asdict, dataclass
from typing import Dict, List, Sequence

import numpy as np

from genotype_data.random_streams import derive_rng
from scones.augmented_graph import RegularizationParams
from scones.selection import select
from snp_network.network import SnpNetwork

logger = logging.getLogger(__name__)

NETWORK_SHAPES = ("chain", "random")


@dataclass
class BenchmarkRow:
    shape: str
    n: int
    n_edges: int
    seconds: float
    n_selected: int

    def to_dict(self) -> Dict:
        return asdict(self)


def chain_network(n: int) -> SnpNetwork:
    """Path graph 0-1-...-(n-1), the shape of a single-chromosome sequence network."""
    idx = np.arange(n - 1, dtype=np.int64)
    return SnpNetwork(n=n, rows=idx, cols=idx + 1, weights=np.ones(n - 1))


def random_network(n: int, mean_degree: float, rng: np.random.Generator) -> SnpNetwork:
    """Sparse random graph with about ``n * mean_degree / 2`` edges."""
    n_draws = int(round(n * mean_degree / 2))
    a = rng.integers(0, n, size=n_draws)
    b = rng.integers(0, n, size=n_draws)
    return SnpNetwork.from_arrays(n, a, b, 1.0)


def benchmark(
    sizes: Sequence[int],
    shapes: Sequence[str] = NETWORK_SHAPES,
    mean_degree: float = 4.0,
    repeats: int = 3,
    lam: float = 1.0,
    eta: float = 2.0,
    rng_seed: int = 0,
    solver: str = "dinic",
) -> List[BenchmarkRow]:
    """Time ``select`` on synthetic chi-square scores for each size and shape.

    The best of ``repeats`` runs is reported.
    """
    rows = []
    for shape in shapes:
        if shape not in NETWORK_SHAPES:
            raise ValueError(f"Unknown network shape {shape!r}; choose from {NETWORK_SHAPES}")
        for n in sizes:
            if n < 2:
                raise ValueError("Benchmark sizes must be >= 2")
            rng = derive_rng(rng_seed, "benchmark", shape, n)
            scores = rng.chisquare(1.0, size=n)
            network = chain_network(n) if shape == "chain" else random_network(n, mean_degree, rng)
            params = RegularizationParams(lam=lam, eta=eta)

            timings = []
            for _ in range(max(1, repeats)):
                start = time.perf_counter()
                result = select(scores, network, params, solver=solver)
                timings.append(time.perf_counter() - start)
            rows.append(BenchmarkRow(
                shape=shape, n=n, n_edges=network.n_edges, seconds=min(timings), n_selected=result.n_selected
            ))
            logger.info("%s n=%d: %.4f s", shape, n, min(timings))
    return rows
