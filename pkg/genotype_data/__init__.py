"""Genotype data model: domain types, TSV ingestion and alignment."""
from .errors import (
    ConvergenceError,
    EmptyResultError,
    FlowCertificateError,
    GenotypeFormatError,
    InfeasibleConfigurationError,
    RankDeficientCovariatesError,
)
from .models import (
    Covariates,
    Dataset,
    GeneAnnotation,
    GeneInteractionList,
    GenotypeMatrix,
    Phenotype,
    SnpMap,
)
from .loaders import (
    load_covariates,
    load_gene_annotation,
    load_genotypes,
    load_interactions,
    load_phenotype,
    load_snp_list,
    load_snp_map,
    write_covariates,
    write_gene_annotation,
    write_genotypes,
    write_interactions,
    write_phenotype,
    write_snp_list,
    write_snp_map,
)
from .preprocessing import align, maf_filter, minor_allele_frequencies

__all__ = [
    "ConvergenceError",
    "EmptyResultError",
    "FlowCertificateError",
    "GenotypeFormatError",
    "InfeasibleConfigurationError",
    "RankDeficientCovariatesError",
    "Covariates",
    "Dataset",
    "GeneAnnotation",
    "GeneInteractionList",
    "GenotypeMatrix",
    "Phenotype",
    "SnpMap",
    "load_covariates",
    "load_gene_annotation",
    "load_genotypes",
    "load_interactions",
    "load_phenotype",
    "load_snp_list",
    "load_snp_map",
    "write_covariates",
    "write_gene_annotation",
    "write_genotypes",
    "write_interactions",
    "write_phenotype",
    "write_snp_list",
    "write_snp_map",
    "align",
    "maf_filter",
    "minor_allele_frequencies",
]
