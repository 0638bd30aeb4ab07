"""How well a SNP selection lands near candidate genes or recovers reference hits."""
import logging
from dataclasses import asdict, dataclass
from typing import Dict, Iterable, Sequence

import numpy as np

from genotype_data.models import GeneAnnotation, SnpMap

logger = logging.getLogger(__name__)


@dataclass
class GeneSupport:
    """Candidate-gene summary of a selection.

    Attributes:
        n_selected: Number of selected SNPs
        n_near_candidates: Selected SNPs within the window of some candidate gene
        fraction_near_candidates: n_near_candidates / n_selected (0 for empty selections)
        n_candidate_genes_hit: Distinct candidate genes with at least one selected SNP nearby
        n_candidate_genes: Candidate genes found in the annotation
    """
    n_selected: int
    n_near_candidates: int
    fraction_near_candidates: float
    n_candidate_genes_hit: int
    n_candidate_genes: int

    def to_dict(self) -> Dict:
        return asdict(self)


def gene_support(
    selected_snps: Iterable[str],
    snp_map: SnpMap,
    genes: GeneAnnotation,
    candidate_genes: Iterable[str],
    window: int = 20000,
) -> GeneSupport:
    """Count selected SNPs lying within ``window`` bp of a candidate gene.

    Candidate ids missing from the annotation are ignored with a warning.
    """
    candidates = set(candidate_genes)
    known = [g for g in genes.gene_ids if g in candidates]
    if len(known) < len(candidates):
        logger.warning("%d candidate genes are not in the annotation", len(candidates) - len(known))

    index = snp_map.index_of()
    selected = sorted({index[s] for s in selected_snps if s in index})
    near = genes.snps_near(snp_map, window)

    chosen = np.zeros(len(snp_map), dtype=bool)
    chosen[selected] = True
    covered = np.zeros(len(snp_map), dtype=bool)
    genes_hit = 0
    for gene_id in known:
        members = near[gene_id]
        covered[members] = True
        if chosen[members].any():
            genes_hit += 1

    n_near = int(np.sum(chosen & covered))
    return GeneSupport(
        n_selected=len(selected),
        n_near_candidates=n_near,
        fraction_near_candidates=n_near / len(selected) if selected else 0.0,
        n_candidate_genes_hit=genes_hit,
        n_candidate_genes=len(known),
    )


def reference_recovery(selected_snps: Iterable[str], reference_snps: Sequence[str]) -> float:
    """Fraction of a reference SNP list present in the selection (0 for an empty reference)."""
    reference = set(reference_snps)
    if not reference:
        return 0.0
    return len(reference & set(selected_snps)) / len(reference)
