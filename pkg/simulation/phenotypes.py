"""Additive phenotypes y = G w + noise over a causal SNP set."""
from typing import Optional, Sequence, Tuple

import numpy as np

from genotype_data.models import GenotypeMatrix, Phenotype


def simulate_phenotype(
    genotypes: GenotypeMatrix,
    causal: Sequence[int],
    effect_sd: float,
    noise_sd: float,
    rng: np.random.Generator,
    weights: Optional[Sequence[float]] = None,
) -> Tuple[Phenotype, np.ndarray]:
    """Draw a phenotype from causal effects and Gaussian noise.

    Args:
        genotypes: m x n genotype matrix
        causal: Column indices of the causal SNPs
        effect_sd: Standard deviation of the causal weights (ignored if ``weights`` given)
        noise_sd: Standard deviation of the noise; 0 gives a noise-free phenotype
        rng: Random generator
        weights: Explicit weights for the causal SNPs, in the order of ``causal``

    Returns:
        (phenotype, length-n weight vector with zeros outside ``causal``)
    """
    if effect_sd < 0 or noise_sd < 0:
        raise ValueError("Standard deviations must be >= 0")
    causal = np.asarray(causal, dtype=np.int64)
    m, n = genotypes.values.shape
    if causal.size and (causal.min() < 0 or causal.max() >= n):
        raise ValueError("Causal index outside the genotype columns")

    w = np.zeros(n)
    if weights is not None:
        weights = np.asarray(weights, dtype=np.float64)
        if weights.shape != causal.shape:
            raise ValueError("Need one weight per causal SNP")
        w[causal] = weights
    else:
        w[causal] = rng.normal(0.0, effect_sd, size=causal.size)

    noise = rng.normal(0.0, noise_sd, size=m) if noise_sd > 0 else np.zeros(m)
    y = genotypes.values.astype(np.float64) @ w + noise
    return Phenotype(values=y, individual_ids=genotypes.individual_ids), w
