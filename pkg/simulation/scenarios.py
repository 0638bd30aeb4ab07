"""Placement of causal SNPs under the six structural scenarios.

    a  uniformly at random
    b  a run of consecutive SNPs on one chromosome
    c  near a single gene
    d  near two interacting genes
    e  near three pairwise-interacting genes
    f  near five pairwise-interacting genes

In d-f the causal SNPs are split as evenly as possible between the genes.
"""
import logging
from enum import Enum
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

import networkx as nx
import numpy as np

from genotype_data.errors import InfeasibleConfigurationError
from genotype_data.models import GeneAnnotation, GeneInteractionList, SnpMap

logger = logging.getLogger(__name__)


class InfeasibleScenarioError(InfeasibleConfigurationError):
    """The annotation cannot host the requested scenario."""


class Scenario(str, Enum):
    RANDOM = "a"
    SEQUENCE_ADJACENT = "b"
    SAME_GENE = "c"
    TWO_GENES = "d"
    THREE_GENES = "e"
    FIVE_GENES = "f"

    @property
    def n_genes(self) -> int:
        return {"c": 1, "d": 2, "e": 3, "f": 5}.get(self.value, 0)


def even_split(total: int, parts: int) -> List[int]:
    """Split ``total`` into ``parts`` sizes differing by at most one, larger first."""
    base, extra = divmod(total, parts)
    return [base + 1 if i < extra else base for i in range(parts)]


def _place_run(snp_map: SnpMap, n_causal: int, rng: np.random.Generator) -> np.ndarray:
    starts = []
    for _, start, stop in snp_map.chromosome_blocks():
        starts += range(start, stop - n_causal + 1)
    if not starts:
        raise InfeasibleScenarioError(f"No chromosome holds {n_causal} consecutive SNPs")
    first = starts[int(rng.integers(len(starts)))]
    return np.arange(first, first + n_causal, dtype=np.int64)


def _gene_cliques(genes: GeneAnnotation, interactions: GeneInteractionList, size: int) -> List[Tuple[str, ...]]:
    if size == 1:
        return [(g,) for g in genes.gene_ids]
    graph = nx.Graph()
    pairs, _ = interactions.resolve(genes)
    graph.add_edges_from(pairs)
    cliques = set()
    for clique in nx.find_cliques(graph):
        if len(clique) >= size:
            cliques.update(combinations(sorted(clique), size))
    return sorted(cliques)


def _fill_genes(
    members: Sequence[str],
    quotas: List[int],
    near: Dict[str, np.ndarray],
    rng: np.random.Generator,
) -> np.ndarray:
    chosen: set = set()
    for gene, quota in zip(members, quotas):
        available = np.array(sorted(set(near[gene].tolist()) - chosen), dtype=np.int64)
        picked = rng.choice(available, size=quota, replace=False)
        chosen.update(int(p) for p in picked)
    return np.array(sorted(chosen), dtype=np.int64)


def _feasible(members: Sequence[str], quotas: List[int], near: Dict[str, np.ndarray]) -> bool:
    # conservative: the whole window of an earlier gene counts as taken
    taken: set = set()
    for gene, quota in zip(members, quotas):
        own = set(near[gene].tolist())
        if len(own - taken) < quota:
            return False
        taken |= own
    return True


def place_causal(
    scenario: Scenario,
    snp_map: SnpMap,
    genes: GeneAnnotation,
    interactions: GeneInteractionList,
    n_causal: int,
    rng: np.random.Generator,
    window: int = 2000,
) -> np.ndarray:
    """Pick the causal SNPs for ``scenario``.

    Returns:
        Sorted SNP indices in the canonical order of ``snp_map``

    Raises:
        InfeasibleScenarioError: If no placement satisfies the scenario
    """
    scenario = Scenario(scenario)
    n = len(snp_map)
    if not 1 <= n_causal <= n:
        raise ValueError(f"n_causal must be in 1..{n}, got {n_causal}")

    if scenario is Scenario.RANDOM:
        return np.sort(rng.choice(n, size=n_causal, replace=False)).astype(np.int64)
    if scenario is Scenario.SEQUENCE_ADJACENT:
        return _place_run(snp_map, n_causal, rng)

    size = scenario.n_genes
    if n_causal < size:
        raise InfeasibleScenarioError(f"Scenario {scenario.value} needs at least {size} causal SNPs")
    near = genes.snps_near(snp_map, window)
    quotas = even_split(n_causal, size)
    candidates = [
        clique for clique in _gene_cliques(genes, interactions, size)
        if _feasible(clique, quotas, near)
    ]
    if not candidates:
        raise InfeasibleScenarioError(
            f"No set of {size} interacting genes has {n_causal} SNPs within {window} bp"
        )
    members = candidates[int(rng.integers(len(candidates)))]
    logger.debug("Scenario %s placed on genes %s", scenario.value, ", ".join(members))
    return _fill_genes(members, quotas, near, rng)


def satisfies_scenario(
    scenario: Scenario,
    causal: Sequence[int],
    snp_map: SnpMap,
    genes: GeneAnnotation,
    interactions: GeneInteractionList,
    window: int = 2000,
) -> bool:
    """Check the structural predicate of ``scenario`` on a causal set."""
    scenario = Scenario(scenario)
    causal = sorted(int(i) for i in causal)
    if scenario is Scenario.RANDOM:
        return len(set(causal)) == len(causal)
    if scenario is Scenario.SEQUENCE_ADJACENT:
        blocks = snp_map.chromosome_blocks()
        same_chrom = any(start <= causal[0] and causal[-1] < stop for _, start, stop in blocks)
        return same_chrom and causal == list(range(causal[0], causal[0] + len(causal)))

    near = {g: set(v.tolist()) for g, v in genes.snps_near(snp_map, window).items()}
    size = scenario.n_genes
    for clique in _gene_cliques(genes, interactions, size):
        hits = [near[g] & set(causal) for g in clique]
        covered = set().union(*hits)
        if covered == set(causal) and all(hits):
            return True
    return False
