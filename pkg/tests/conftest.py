"""Shared fixtures: small TSV inputs written to a temporary directory."""
from pathlib import Path

import numpy as np
import pytest

from genotype_data import (
    GeneAnnotation,
    GenotypeMatrix,
    Phenotype,
    SnpMap,
    write_gene_annotation,
    write_genotypes,
    write_phenotype,
    write_snp_map,
)


@pytest.fixture
def five_snp_map() -> SnpMap:
    """Five SNPs on one chromosome, 1 kb apart."""
    return SnpMap(
        snp_ids=("rs1", "rs2", "rs3", "rs4", "rs5"),
        chromosomes=("1",) * 5,
        positions=np.array([1000, 2000, 3000, 4000, 5000]),
    )


@pytest.fixture
def toy_files(tmp_path: Path) -> dict:
    """Planted-signal dataset: 40 individuals, 6 SNPs, phenotype driven by rs2 and rs3."""
    rng = np.random.default_rng(7)
    m = 40
    values = rng.integers(0, 3, size=(m, 6))
    ids = tuple(f"ind{i:02d}" for i in range(m))
    snp_ids = ("rs1", "rs2", "rs3", "rs4", "rs5", "rs6")
    genotypes = GenotypeMatrix(values=values, snp_ids=snp_ids, individual_ids=ids)
    y = 3.0 * values[:, 1] + 3.0 * values[:, 2] + 0.1 * rng.standard_normal(m)
    phenotype = Phenotype(values=y, individual_ids=ids)
    snp_map = SnpMap(
        snp_ids=snp_ids,
        chromosomes=("1", "1", "1", "1", "2", "2"),
        positions=np.array([100, 200, 300, 400, 100, 200]),
    )
    genes = GeneAnnotation(
        gene_ids=("G1", "G2"),
        chromosomes=("1", "2"),
        starts=np.array([150, 50]),
        ends=np.array([350, 250]),
    )

    paths = {
        "genotypes": tmp_path / "genotypes.tsv",
        "phenotype": tmp_path / "phenotype.tsv",
        "map": tmp_path / "map.tsv",
        "genes": tmp_path / "genes.tsv",
    }
    write_genotypes(genotypes, paths["genotypes"])
    write_phenotype(phenotype, paths["phenotype"])
    write_snp_map(snp_map, paths["map"])
    write_gene_annotation(genes, paths["genes"])
    return {name: str(path) for name, path in paths.items()}
