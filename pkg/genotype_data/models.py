"""Core domain types: genotypes, phenotypes, SNP maps, genes and covariates.

All types are immutable after construction. Arrays are copied on the way in
and flagged read-only, so instances can be shared between worker threads.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple
import re

import numpy as np

MISSING_TOKEN = "NA"


def _frozen_array(values, dtype) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.flags.writeable = False
    return array


def _check_unique(ids: Sequence[str], what: str):
    seen = set()
    for identifier in ids:
        if identifier in seen:
            raise ValueError(f"Duplicate {what} id: {identifier!r}")
        seen.add(identifier)


def chromosome_sort_key(chromosome: str) -> Tuple[int, int, str]:
    """Natural order for chromosome labels: 1 < 2 < 10 < X < Y."""
    stripped = re.sub(r"^chr", "", chromosome, flags=re.IGNORECASE)
    if stripped.isdigit():
        return (0, int(stripped), chromosome)
    return (1, 0, chromosome)


@dataclass(frozen=True)
class GenotypeMatrix:
    """Minor-allele counts for m individuals (rows) and n SNPs (columns).

    Attributes:
        values: m x n matrix with entries in {0, 1, 2}
        snp_ids: n unique SNP identifiers
        individual_ids: m unique individual identifiers
        imputed_cells: number of missing cells filled in by the loader
    """
    values: np.ndarray
    snp_ids: Tuple[str, ...]
    individual_ids: Tuple[str, ...]
    imputed_cells: int = 0

    def __post_init__(self):
        values = _frozen_array(self.values, np.int8)
        if values.ndim != 2:
            raise ValueError("Genotype values must be a 2-D matrix")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "snp_ids", tuple(str(s) for s in self.snp_ids))
        object.__setattr__(self, "individual_ids", tuple(str(i) for i in self.individual_ids))

        m, n = values.shape
        if m < 2:
            raise ValueError(f"Need at least 2 individuals, got {m}")
        if n < 1:
            raise ValueError("Need at least 1 SNP")
        if len(self.snp_ids) != n:
            raise ValueError(f"Got {len(self.snp_ids)} SNP ids for {n} columns")
        if len(self.individual_ids) != m:
            raise ValueError(f"Got {len(self.individual_ids)} individual ids for {m} rows")
        if values.size and (values.min() < 0 or values.max() > 2):
            raise ValueError("Genotype entries must be 0, 1 or 2")
        _check_unique(self.snp_ids, "SNP")
        _check_unique(self.individual_ids, "individual")

    @property
    def n_individuals(self) -> int:
        return self.values.shape[0]

    @property
    def n_snps(self) -> int:
        return self.values.shape[1]

    def select_snps(self, indices) -> "GenotypeMatrix":
        """Keep the given SNP columns, in the given order."""
        indices = np.asarray(indices, dtype=np.int64)
        return GenotypeMatrix(
            values=self.values[:, indices],
            snp_ids=tuple(self.snp_ids[i] for i in indices),
            individual_ids=self.individual_ids,
            imputed_cells=self.imputed_cells,
        )

    def select_individuals(self, indices) -> "GenotypeMatrix":
        """Keep the given rows, in the given order."""
        indices = np.asarray(indices, dtype=np.int64)
        return GenotypeMatrix(
            values=self.values[indices, :],
            snp_ids=self.snp_ids,
            individual_ids=tuple(self.individual_ids[i] for i in indices),
            imputed_cells=self.imputed_cells,
        )

    def snp_index(self) -> Dict[str, int]:
        return {snp_id: i for i, snp_id in enumerate(self.snp_ids)}


@dataclass(frozen=True)
class Phenotype:
    """One real-valued trait measurement per individual."""
    values: np.ndarray
    individual_ids: Tuple[str, ...]

    def __post_init__(self):
        values = _frozen_array(self.values, np.float64)
        if values.ndim != 1:
            raise ValueError("Phenotype values must be a vector")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "individual_ids", tuple(str(i) for i in self.individual_ids))
        if len(self.individual_ids) != values.shape[0]:
            raise ValueError("Phenotype ids and values differ in length")
        if not np.all(np.isfinite(values)):
            raise ValueError("Phenotype values must be finite")
        _check_unique(self.individual_ids, "individual")

    def select_individuals(self, indices) -> "Phenotype":
        indices = np.asarray(indices, dtype=np.int64)
        return Phenotype(
            values=self.values[indices],
            individual_ids=tuple(self.individual_ids[i] for i in indices),
        )


@dataclass(frozen=True)
class SnpMap:
    """Chromosome and base-pair position of every SNP.

    Records are stored in canonical order: (chromosome, position, snp_id).
    """
    snp_ids: Tuple[str, ...]
    chromosomes: Tuple[str, ...]
    positions: np.ndarray

    def __post_init__(self):
        snp_ids = tuple(str(s) for s in self.snp_ids)
        chromosomes = tuple(str(c) for c in self.chromosomes)
        positions = np.asarray(self.positions, dtype=np.int64)
        if not (len(snp_ids) == len(chromosomes) == positions.shape[0]):
            raise ValueError("SNP map columns differ in length")
        if positions.size and positions.min() < 0:
            raise ValueError("SNP positions must be non-negative")
        _check_unique(snp_ids, "SNP")

        order = sorted(
            range(len(snp_ids)),
            key=lambda i: (chromosome_sort_key(chromosomes[i]), positions[i], snp_ids[i]),
        )
        object.__setattr__(self, "snp_ids", tuple(snp_ids[i] for i in order))
        object.__setattr__(self, "chromosomes", tuple(chromosomes[i] for i in order))
        object.__setattr__(self, "positions", _frozen_array(positions[order], np.int64))

    def __len__(self) -> int:
        return len(self.snp_ids)

    def index_of(self) -> Dict[str, int]:
        return {snp_id: i for i, snp_id in enumerate(self.snp_ids)}

    def chromosome_blocks(self) -> List[Tuple[str, int, int]]:
        """Return (chromosome, start, stop) index ranges in canonical order."""
        blocks = []
        start = 0
        for i in range(1, len(self.snp_ids) + 1):
            if i == len(self.snp_ids) or self.chromosomes[i] != self.chromosomes[start]:
                blocks.append((self.chromosomes[start], start, i))
                start = i
        return blocks

    def restrict(self, snp_ids: Sequence[str]) -> "SnpMap":
        """Keep only the records of the given SNP ids."""
        keep = set(snp_ids)
        index = [i for i, s in enumerate(self.snp_ids) if s in keep]
        return SnpMap(
            snp_ids=tuple(self.snp_ids[i] for i in index),
            chromosomes=tuple(self.chromosomes[i] for i in index),
            positions=self.positions[index],
        )


@dataclass(frozen=True)
class GeneAnnotation:
    """Gene intervals [start, end] on chromosomes."""
    gene_ids: Tuple[str, ...]
    chromosomes: Tuple[str, ...]
    starts: np.ndarray
    ends: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "gene_ids", tuple(str(g) for g in self.gene_ids))
        object.__setattr__(self, "chromosomes", tuple(str(c) for c in self.chromosomes))
        starts = _frozen_array(self.starts, np.int64)
        ends = _frozen_array(self.ends, np.int64)
        object.__setattr__(self, "starts", starts)
        object.__setattr__(self, "ends", ends)
        if not (len(self.gene_ids) == len(self.chromosomes) == starts.shape[0] == ends.shape[0]):
            raise ValueError("Gene annotation columns differ in length")
        bad = np.flatnonzero(starts > ends)
        if bad.size:
            raise ValueError(f"Gene {self.gene_ids[bad[0]]!r} has start > end")
        _check_unique(self.gene_ids, "gene")

    def __len__(self) -> int:
        return len(self.gene_ids)

    def snps_near(self, snp_map: SnpMap, window: int) -> Dict[str, np.ndarray]:
        """Map each gene to the SNPs lying within ``window`` bp of its interval.

        A SNP is near gene g when it sits on g's chromosome and its position is
        in [start - window, end + window] (both ends inclusive). Returned
        indices refer to the canonical order of ``snp_map`` and are sorted.
        """
        if window < 0:
            raise ValueError("window must be >= 0")
        blocks = {chrom: (start, stop) for chrom, start, stop in snp_map.chromosome_blocks()}
        near: Dict[str, np.ndarray] = {}
        for gene_id, chrom, start, end in zip(self.gene_ids, self.chromosomes, self.starts, self.ends):
            if chrom not in blocks:
                near[gene_id] = np.empty(0, dtype=np.int64)
                continue
            block_start, block_stop = blocks[chrom]
            positions = snp_map.positions[block_start:block_stop]
            lo = np.searchsorted(positions, start - window, side="left")
            hi = np.searchsorted(positions, end + window, side="right")
            near[gene_id] = np.arange(block_start + lo, block_start + hi, dtype=np.int64)
        return near


@dataclass(frozen=True)
class GeneInteractionList:
    """Unordered gene-gene interaction pairs, stored as sorted (a, b) tuples."""
    pairs: Tuple[Tuple[str, str], ...]

    def __post_init__(self):
        canonical = set()
        for a, b in self.pairs:
            a, b = str(a), str(b)
            if a == b:
                raise ValueError(f"Self-interaction for gene {a!r}")
            canonical.add((a, b) if a < b else (b, a))
        object.__setattr__(self, "pairs", tuple(sorted(canonical)))

    def __len__(self) -> int:
        return len(self.pairs)

    def resolve(self, genes: GeneAnnotation) -> Tuple[List[Tuple[str, str]], int]:
        """Split pairs into those whose genes are both annotated, and a drop count."""
        known = set(genes.gene_ids)
        kept = [(a, b) for a, b in self.pairs if a in known and b in known]
        return kept, len(self.pairs) - len(kept)


@dataclass(frozen=True)
class Covariates:
    """m x k real covariate matrix with column labels."""
    values: np.ndarray
    labels: Tuple[str, ...]
    individual_ids: Tuple[str, ...]

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        object.__setattr__(self, "values", _frozen_array(values, np.float64))
        object.__setattr__(self, "labels", tuple(str(label) for label in self.labels))
        object.__setattr__(self, "individual_ids", tuple(str(i) for i in self.individual_ids))
        m, k = values.shape
        if len(self.labels) != k:
            raise ValueError(f"Got {len(self.labels)} labels for {k} covariate columns")
        if len(self.individual_ids) != m:
            raise ValueError("Covariate ids and rows differ in length")
        if k >= m:
            raise ValueError(f"Need fewer covariates than individuals (k={k}, m={m})")
        if not np.all(np.isfinite(values)):
            raise ValueError("Covariate values must be finite")
        for j, label in enumerate(self.labels):
            if m and np.all(values[:, j] == values[0, j]):
                raise ValueError(f"Covariate {label!r} is constant and duplicates the intercept")
        _check_unique(self.labels, "covariate")
        _check_unique(self.individual_ids, "individual")

    @property
    def n_covariates(self) -> int:
        return self.values.shape[1]

    def select_individuals(self, indices) -> "Covariates":
        indices = np.asarray(indices, dtype=np.int64)
        return Covariates(
            values=self.values[indices, :],
            labels=self.labels,
            individual_ids=tuple(self.individual_ids[i] for i in indices),
        )


@dataclass(frozen=True)
class Dataset:
    """Genotypes, phenotype and optional covariates joined on individual id."""
    genotypes: GenotypeMatrix
    phenotype: Phenotype
    covariates: Optional[Covariates] = None
    dropped_individuals: Tuple[str, ...] = field(default_factory=tuple)
    dropped_snps: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.genotypes.individual_ids != self.phenotype.individual_ids:
            raise ValueError("Genotype and phenotype rows are not aligned")
        if self.covariates is not None and self.covariates.individual_ids != self.genotypes.individual_ids:
            raise ValueError("Covariate rows are not aligned with genotypes")

    @property
    def n_individuals(self) -> int:
        return self.genotypes.n_individuals

    @property
    def n_snps(self) -> int:
        return self.genotypes.n_snps

    def select_individuals(self, indices) -> "Dataset":
        """Row subset used for cross-validation folds."""
        return Dataset(
            genotypes=self.genotypes.select_individuals(indices),
            phenotype=self.phenotype.select_individuals(indices),
            covariates=None if self.covariates is None else self.covariates.select_individuals(indices),
            dropped_individuals=self.dropped_individuals,
            dropped_snps=self.dropped_snps,
        )
