"""Single-SNP linear-regression baseline with Bonferroni correction."""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np
from scipy import stats

from genotype_data.models import Covariates, GenotypeMatrix, Phenotype
from .covariates import covariate_basis

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class UnivariateResult:
    """Per-SNP regression statistics and the Bonferroni selection.

    Attributes:
        selected: Sorted column indices with p <= alpha / n
        p_values: Two-sided p-value of each SNP coefficient
        t_statistics: t statistic of each SNP coefficient (0 for degenerate SNPs)
        alpha: Family-wise level before correction
    """
    selected: Tuple[int, ...]
    p_values: np.ndarray
    t_statistics: np.ndarray
    alpha: float

    def selected_ids(self, snp_ids) -> List[str]:
        return [snp_ids[i] for i in self.selected]


def univariate_baseline(
    genotypes: GenotypeMatrix,
    y: Union[Phenotype, np.ndarray],
    covariates: Optional[Covariates] = None,
    alpha: float = 0.05,
) -> UnivariateResult:
    """Regress y on [intercept | covariates | g_p] for each SNP p.

    All SNP regressions are done at once: y and every genotype column are
    projected off [intercept | covariates], after which the SNP coefficient,
    its standard error and the t-test on m - k - 2 degrees of freedom follow
    from the residualized vectors. A SNP whose column lies in the covariate
    span gets p = 1.

    Args:
        genotypes: m x n genotype matrix
        y: Phenotype aligned with the genotype rows
        covariates: Optional m x k covariates
        alpha: Level; SNPs with p <= alpha / n are selected

    Returns:
        UnivariateResult
    """
    y = np.asarray(y.values if isinstance(y, Phenotype) else y, dtype=np.float64)
    m, n = genotypes.values.shape
    k = 0 if covariates is None else covariates.n_covariates
    dof = m - k - 2
    if dof < 1:
        raise ValueError(f"Need m > k + 2 individuals (m={m}, k={k})")

    basis = covariate_basis(covariates, m)
    x = genotypes.values.astype(np.float64)
    x_res = x - basis @ (basis.T @ x)
    y_res = y - basis @ (basis.T @ y)

    sxx = np.einsum("ij,ij->j", x_res, x_res)
    sxy = x_res.T @ y_res
    syy = float(y_res @ y_res)
    column_ss = np.einsum("ij,ij->j", x, x)
    degenerate = sxx <= 1e-10 * np.maximum(column_ss, 1.0)

    t_stat = np.zeros(n)
    p_values = np.ones(n)
    ok = ~degenerate
    beta = sxy[ok] / sxx[ok]
    rss = np.maximum(syy - beta * sxy[ok], 0.0)
    se = np.sqrt(rss / dof / sxx[ok])
    exact = se <= 1e-12 * np.abs(beta)
    fit = (se > 0) & ~exact
    t_ok = np.zeros_like(beta)
    p_ok = np.ones_like(beta)
    t_ok[fit] = beta[fit] / se[fit]
    p_ok[fit] = 2.0 * stats.t.sf(np.abs(t_ok[fit]), dof)
    # zero residual with a nonzero slope: perfect fit
    perfect = exact & (beta != 0)
    t_ok[perfect] = np.sign(beta[perfect]) * np.inf
    p_ok[perfect] = 0.0
    t_stat[ok] = t_ok
    p_values[ok] = p_ok

    if alpha <= 0:
        selected: Tuple[int, ...] = ()
    else:
        selected = tuple(int(i) for i in np.flatnonzero(p_values <= alpha / n))
    logger.info(
        "Univariate baseline: %d of %d SNPs pass p <= %.3g / %d", len(selected), n, alpha, n
    )
    return UnivariateResult(selected=selected, p_values=p_values, t_statistics=t_stat, alpha=alpha)
