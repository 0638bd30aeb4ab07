"""Allele-frequency filtering and individual/SNP alignment."""
import logging
from typing import Optional, Tuple

import numpy as np

from .errors import EmptyResultError
from .models import Covariates, Dataset, GenotypeMatrix, Phenotype, SnpMap

logger = logging.getLogger(__name__)


def minor_allele_frequencies(genotypes: GenotypeMatrix) -> np.ndarray:
    """Per-SNP minor allele frequency min(p, 1 - p) with p = sum / 2m."""
    allele_freq = genotypes.values.sum(axis=0, dtype=np.int64) / (2.0 * genotypes.n_individuals)
    return np.minimum(allele_freq, 1.0 - allele_freq)


def maf_filter(genotypes: GenotypeMatrix, threshold: float) -> Tuple[GenotypeMatrix, np.ndarray]:
    """Keep the SNPs whose minor allele frequency is strictly above ``threshold``.

    Args:
        genotypes: Input genotype matrix
        threshold: MAF cut-off in [0, 0.5)

    Returns:
        (filtered matrix, indices of the kept columns in the input)

    Raises:
        EmptyResultError: If no SNP passes the filter
    """
    if not 0.0 <= threshold < 0.5:
        raise ValueError(f"MAF threshold must be in [0, 0.5), got {threshold}")

    kept = np.flatnonzero(minor_allele_frequencies(genotypes) > threshold)
    if kept.size == 0:
        raise EmptyResultError(f"No SNP has minor allele frequency above {threshold}")
    logger.info("MAF filter %.3f kept %d of %d SNPs", threshold, kept.size, genotypes.n_snps)
    return genotypes.select_snps(kept), kept


def align(
    genotypes: GenotypeMatrix,
    phenotype: Phenotype,
    covariates: Optional[Covariates] = None,
    snp_map: Optional[SnpMap] = None,
) -> Dataset:
    """Join genotypes, phenotype and covariates on individual id.

    Individuals missing from any input are dropped (and listed in the result);
    the remaining rows are ordered lexicographically by id. When a SNP map is
    given, SNP columns are reordered to the map's canonical order and SNPs
    absent from the map are dropped.

    Raises:
        EmptyResultError: If no individual (or no mapped SNP) is shared
    """
    common = set(genotypes.individual_ids) & set(phenotype.individual_ids)
    if covariates is not None:
        common &= set(covariates.individual_ids)
    if not common:
        raise EmptyResultError("Genotype, phenotype and covariate files share no individual id")

    every_id = set(genotypes.individual_ids) | set(phenotype.individual_ids)
    if covariates is not None:
        every_id |= set(covariates.individual_ids)
    dropped = tuple(sorted(every_id - common))
    if dropped:
        logger.warning("Dropped %d individuals not present in every input", len(dropped))

    order = sorted(common)

    def rows(ids):
        index = {iid: i for i, iid in enumerate(ids)}
        return np.array([index[iid] for iid in order], dtype=np.int64)

    genotypes = genotypes.select_individuals(rows(genotypes.individual_ids))
    phenotype = phenotype.select_individuals(rows(phenotype.individual_ids))
    if covariates is not None:
        covariates = covariates.select_individuals(rows(covariates.individual_ids))

    dropped_snps: Tuple[str, ...] = ()
    if snp_map is not None:
        column = genotypes.snp_index()
        mapped = [column[s] for s in snp_map.snp_ids if s in column]
        if not mapped:
            raise EmptyResultError("No genotyped SNP appears in the SNP map")
        in_map = set(snp_map.snp_ids)
        dropped_snps = tuple(s for s in genotypes.snp_ids if s not in in_map)
        if dropped_snps:
            logger.warning("Dropped %d genotyped SNPs absent from the SNP map", len(dropped_snps))
        genotypes = genotypes.select_snps(mapped)

    return Dataset(
        genotypes=genotypes,
        phenotype=phenotype,
        covariates=covariates,
        dropped_individuals=dropped,
        dropped_snps=dropped_snps,
    )
