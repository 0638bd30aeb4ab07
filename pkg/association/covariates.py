"""Covariate correction: intercept/covariate projection and genotype principal components."""
import logging
from typing import Optional, Union

import numpy as np
from scipy import linalg

from genotype_data.errors import ConvergenceError, RankDeficientCovariatesError
from genotype_data.models import Covariates, GenotypeMatrix, Phenotype

logger = logging.getLogger(__name__)

_INTERCEPT_LABEL = "intercept"


def covariate_basis(covariates: Optional[Covariates], m: int) -> np.ndarray:
    """Orthonormal basis (m x r) of the span of [intercept | covariates].

    Raises:
        RankDeficientCovariatesError: If the design is not of full column rank
    """
    columns = [np.ones((m, 1))]
    labels = [_INTERCEPT_LABEL]
    if covariates is not None and covariates.n_covariates:
        if covariates.values.shape[0] != m:
            raise ValueError(f"Covariates have {covariates.values.shape[0]} rows, expected {m}")
        columns.append(covariates.values)
        labels += list(covariates.labels)
    design = np.hstack(columns)

    q, r, pivots = linalg.qr(design, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    tol = max(design.shape) * np.finfo(np.float64).eps * diag[0]
    rank = int(np.sum(diag > tol))
    if rank < design.shape[1]:
        raise RankDeficientCovariatesError([labels[j] for j in sorted(pivots[rank:])])
    return q


def _as_vector(y: Union[Phenotype, np.ndarray]) -> np.ndarray:
    values = y.values if isinstance(y, Phenotype) else y
    return np.asarray(values, dtype=np.float64)


def residualize(y: Union[Phenotype, np.ndarray], covariates: Optional[Covariates] = None) -> np.ndarray:
    """Remove the least-squares fit of y on [intercept | covariates].

    The residual is orthogonal to the constant vector and to every covariate
    column. Without covariates this is y minus its mean.

    Raises:
        RankDeficientCovariatesError: Names the columns that are linearly dependent
    """
    y = _as_vector(y)
    basis = covariate_basis(covariates, y.shape[0])
    return y - basis @ (basis.T @ y)


def top_principal_components(
    genotypes: GenotypeMatrix,
    k: int,
    max_iter: int = 10000,
    tol: float = 1e-8,
) -> Covariates:
    """Leading principal-component scores of the column-centered genotypes.

    Components are eigenvectors of the m x m Gram matrix X X^T, found one at a
    time by power iteration and deflation. Each returned column has unit norm,
    and its sign makes the largest-magnitude SNP loading X^T v positive.

    Args:
        genotypes: Genotype matrix (m individuals x n SNPs)
        k: Number of components, 1 <= k < min(m, n)
        max_iter: Iteration cap per component
        tol: Convergence threshold on the eigen-residual, relative to the eigenvalue

    Raises:
        ValueError: If k is out of range or the data has rank below k
        ConvergenceError: If a component fails to converge
    """
    m, n = genotypes.values.shape
    if not 1 <= k < min(m, n):
        raise ValueError(f"Need 1 <= k < min(m, n) = {min(m, n)}, got k={k}")

    x = genotypes.values.astype(np.float64)
    x -= x.mean(axis=0)
    gram = x @ x.T
    scale = max(float(np.trace(gram)), 1.0)

    rng = np.random.default_rng(0)
    components = np.zeros((m, k))
    for j in range(k):
        previous = components[:, :j]
        v = rng.standard_normal(m)
        v -= previous @ (previous.T @ v)
        v /= np.linalg.norm(v)
        residual = np.inf
        for _ in range(max_iter):
            w = gram @ v
            w -= previous @ (previous.T @ w)
            eigenvalue = float(v @ w)
            residual = float(np.linalg.norm(w - eigenvalue * v))
            norm = np.linalg.norm(w)
            if norm <= 1e-12 * scale:
                raise ValueError(f"Genotype matrix has rank below {j + 1} after centering")
            if residual <= tol * max(eigenvalue, 1e-12 * scale):
                break
            v = w / norm
        else:
            raise ConvergenceError(f"Principal component {j + 1} did not converge", residual)

        # sign: largest-magnitude SNP loading positive
        loading = x.T @ v
        if loading[np.argmax(np.abs(loading))] < 0:
            v = -v
        components[:, j] = v
        logger.debug("PC%d eigenvalue %.6g after residual %.3g", j + 1, eigenvalue, residual)

    return Covariates(
        values=components,
        labels=tuple(f"PC{j + 1}" for j in range(k)),
        individual_ids=genotypes.individual_ids,
    )
