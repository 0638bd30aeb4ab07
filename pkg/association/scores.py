"""Per-SNP additive association scores derived from the linear-kernel SKAT statistic."""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from genotype_data.errors import GenotypeFormatError
from genotype_data.loaders import _read_tsv, _write_lines, format_number
from genotype_data.models import Dataset, GenotypeMatrix
from .covariates import residualize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AssociationScores:
    """Nonnegative per-SNP association vector c, aligned to SNP order.

    Attributes:
        c: Length-n score vector
        snp_ids: SNP identifiers in the same order
        provenance: Scorer name and covariate description
    """
    c: np.ndarray
    snp_ids: Tuple[str, ...]
    provenance: str = "skat-linear"

    def __post_init__(self):
        c = np.array(self.c, dtype=np.float64, copy=True).ravel()
        if c.shape[0] != len(self.snp_ids):
            raise ValueError(f"Got {c.shape[0]} scores for {len(self.snp_ids)} SNPs")
        if not np.all(np.isfinite(c)) or np.any(c < 0):
            raise ValueError("Association scores must be finite and nonnegative")
        c.flags.writeable = False
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "snp_ids", tuple(str(s) for s in self.snp_ids))

    def __len__(self) -> int:
        return self.c.shape[0]


def skat_linear_scores(
    genotypes: GenotypeMatrix,
    y_resid: np.ndarray,
    standardize: bool = True,
    weights: Optional[Sequence[float]] = None,
    provenance: str = "skat-linear",
    normalize: bool = False,
) -> AssociationScores:
    """Compute c_p = w_p * (g_p^T y)^2 for every SNP column.

    Columns are mean-centered and, when ``standardize`` is set, scaled to unit
    sample standard deviation. Zero-variance columns score 0. With
    ``normalize`` the scores are divided by y^T y, which puts standardized
    null SNPs on a chi-square(1) scale.

    Args:
        genotypes: m x n genotype matrix
        y_resid: Covariate-residualized phenotype of length m
        standardize: Scale columns to unit standard deviation
        weights: Optional nonnegative per-SNP weights (default 1)
        provenance: Label stored with the scores
        normalize: Divide by the residual sum of squares

    Returns:
        AssociationScores aligned with ``genotypes.snp_ids``
    """
    y = np.asarray(y_resid, dtype=np.float64)
    m, n = genotypes.values.shape
    if y.shape != (m,):
        raise ValueError(f"Residual has shape {y.shape}, expected ({m},)")
    if m < 3:
        raise ValueError("Association scores need at least 3 individuals")

    x = genotypes.values.astype(np.float64)
    x -= x.mean(axis=0)
    sd = x.std(axis=0, ddof=1)
    constant = sd <= 1e-12
    if standardize:
        x[:, ~constant] /= sd[~constant]
    score = x.T @ y
    c = score * score
    c[constant] = 0.0

    if weights is not None:
        w = np.asarray(weights, dtype=np.float64)
        if w.shape != (n,) or np.any(w < 0) or not np.all(np.isfinite(w)):
            raise ValueError("SNP weights must be n finite nonnegative values")
        c = c * w

    if normalize:
        rss = float(y @ y)
        if rss > 0:
            c = c / rss

    if constant.any():
        logger.debug("%d constant SNP columns scored 0", int(constant.sum()))
    return AssociationScores(c=c, snp_ids=genotypes.snp_ids, provenance=provenance)


def association_scores(
    dataset: Dataset,
    standardize: bool = True,
    weights: Optional[Sequence[float]] = None,
    normalize: bool = False,
) -> AssociationScores:
    """Residualize the dataset's phenotype on its covariates, then score every SNP."""
    y_resid = residualize(dataset.phenotype, dataset.covariates)
    if dataset.covariates is None or not dataset.covariates.n_covariates:
        provenance = "skat-linear; covariates: intercept"
    else:
        provenance = "skat-linear; covariates: intercept+" + "+".join(dataset.covariates.labels)
    if normalize:
        provenance += "; normalized"
    return skat_linear_scores(dataset.genotypes, y_resid, standardize, weights, provenance, normalize)


def write_scores(scores: AssociationScores, path: Union[str, Path]):
    """Write ``snp_id<TAB>c``."""
    lines = ["snp_id\tc"] + [f"{s}\t{format_number(v)}" for s, v in zip(scores.snp_ids, scores.c)]
    _write_lines(path, lines)


def read_scores(path: Union[str, Path]) -> AssociationScores:
    frame, first_line = _read_tsv(path, 2, header_name="snp_id")
    values = pd.to_numeric(frame.iloc[:, 1], errors="coerce").to_numpy()
    bad = np.flatnonzero(~np.isfinite(values) | (values < 0))
    if bad.size:
        raise GenotypeFormatError(path, first_line + int(bad[0]), "score must be a nonnegative number")
    return AssociationScores(c=values, snp_ids=tuple(frame.iloc[:, 0]), provenance=f"file:{Path(path).name}")
