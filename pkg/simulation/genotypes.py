"""Synthetic genomes: binomial genotypes laid out on chromosomes with tiled genes."""
import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from genotype_data.models import GeneAnnotation, GeneInteractionList, GenotypeMatrix, SnpMap
from genotype_data.random_streams import derive_rng

logger = logging.getLogger(__name__)


class SimulationConfig(BaseModel):
    """Dimensions and effect sizes of a simulated study.

    The default effect and noise standard deviations give a simulated
    heritability near 0.5 for 20 causal SNPs with MAF in [0.1, 0.5].
    """
    m: int = Field(default=200, ge=2)
    n: int = Field(default=1000, ge=1)
    maf_low: float = Field(default=0.1, gt=0.0, le=0.5)
    n_causal: int = Field(default=20, ge=1)
    effect_sd: float = Field(default=1.0, gt=0.0)
    noise_sd: float = Field(default=2.8, gt=0.0)
    rng_seed: int = 0
    n_chromosomes: int = Field(default=5, ge=1)
    snp_spacing: int = Field(default=1000, ge=1)
    gene_length: int = Field(default=20000, ge=1)
    gene_gap: int = Field(default=20000, ge=0)
    window: int = Field(default=2000, ge=0)
    interaction_group: int = Field(default=5, ge=2)

    @model_validator(mode="after")
    def check_dimensions(self) -> "SimulationConfig":
        if self.n_causal > self.n:
            raise ValueError(f"n_causal ({self.n_causal}) exceeds n ({self.n})")
        if self.n_chromosomes > self.n:
            raise ValueError("More chromosomes than SNPs")
        return self


@dataclass(frozen=True)
class SimulatedGenome:
    genotypes: GenotypeMatrix
    snp_map: SnpMap
    genes: GeneAnnotation
    interactions: GeneInteractionList
    allele_frequencies: np.ndarray


def _ids(prefix: str, count: int) -> Tuple[str, ...]:
    width = len(str(count))
    return tuple(f"{prefix}{i + 1:0{width}d}" for i in range(count))


def _layout(config: SimulationConfig) -> Tuple[SnpMap, GeneAnnotation]:
    sizes = np.full(config.n_chromosomes, config.n // config.n_chromosomes)
    sizes[: config.n % config.n_chromosomes] += 1

    snp_ids = _ids("rs", config.n)
    chromosomes: List[str] = []
    positions: List[int] = []
    gene_chrom: List[str] = []
    gene_bounds: List[Tuple[int, int]] = []
    period = config.gene_length + config.gene_gap
    for c, size in enumerate(sizes):
        chrom = str(c + 1)
        chromosomes += [chrom] * int(size)
        positions += [(i + 1) * config.snp_spacing for i in range(int(size))]
        last = int(size) * config.snp_spacing
        start = config.gene_gap + 1
        while start + config.gene_length - 1 <= last:
            gene_chrom.append(chrom)
            gene_bounds.append((start, start + config.gene_length - 1))
            start += period

    snp_map = SnpMap(snp_ids=snp_ids, chromosomes=tuple(chromosomes), positions=np.array(positions))
    genes = GeneAnnotation(
        gene_ids=_ids("G", len(gene_bounds)),
        chromosomes=tuple(gene_chrom),
        starts=np.array([s for s, _ in gene_bounds], dtype=np.int64),
        ends=np.array([e for _, e in gene_bounds], dtype=np.int64),
    )
    return snp_map, genes


def _interactions(genes: GeneAnnotation, group: int) -> GeneInteractionList:
    """Consecutive genes form groups of ``group``; genes in a group all interact."""
    pairs = []
    ids = genes.gene_ids
    for start in range(0, len(ids) - group + 1, group):
        members = ids[start:start + group]
        pairs += [(a, b) for i, a in enumerate(members) for b in members[i + 1:]]
    return GeneInteractionList(pairs=tuple(pairs))


def simulate_genotypes(config: SimulationConfig, *stream: object) -> SimulatedGenome:
    """Draw genotypes and lay out the matching map, genes and interactions.

    Allele frequencies are uniform in [maf_low, 0.5] and counts are Binomial(2, q).
    Extra ``stream`` names select an independent draw under the same seed
    (the study passes the repeat number).
    """
    rng = derive_rng(config.rng_seed, "genotypes", *stream)
    freqs = rng.uniform(config.maf_low, 0.5, size=config.n)
    values = rng.binomial(2, freqs, size=(config.m, config.n)).astype(np.int8)

    snp_map, genes = _layout(config)
    genotypes = GenotypeMatrix(
        values=values, snp_ids=snp_map.snp_ids, individual_ids=_ids("ind", config.m)
    )
    interactions = _interactions(genes, config.interaction_group)
    logger.debug(
        "Simulated %d x %d genotypes, %d genes, %d interactions",
        config.m, config.n, len(genes), len(interactions),
    )
    return SimulatedGenome(
        genotypes=genotypes,
        snp_map=snp_map,
        genes=genes,
        interactions=interactions,
        allele_frequencies=freqs,
    )
