"""Cross-validated ridge-regression predictivity of a SNP selection."""
import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple, Union

import numpy as np
from sklearn.linear_model import Ridge
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler

from genotype_data.models import Dataset
from .folds import assign_folds

logger = logging.getLogger(__name__)

Folds = Union[int, Sequence[Tuple[np.ndarray, np.ndarray]]]


@dataclass
class PredictivityResult:
    """Mean squared Pearson correlation between held-out predictions and phenotype.

    Attributes:
        r2: Mean over folds of the squared correlation
        fold_r2: Per-fold squared correlation
        empty_selection: True when no SNP was selected (no model fitted, r2 = 0)
        degenerate_folds: Folds whose correlation was undefined and counted as 0
    """
    r2: float
    fold_r2: List[float] = field(default_factory=list)
    empty_selection: bool = False
    degenerate_folds: List[int] = field(default_factory=list)


def squared_pearson(predicted: np.ndarray, actual: np.ndarray) -> Tuple[float, bool]:
    """Squared Pearson correlation, or (0.0, True) when either side is constant."""
    for values in (predicted, actual):
        if np.ptp(values) <= 1e-12 * max(1.0, float(np.abs(values).max())):
            return 0.0, True
    p = predicted - predicted.mean()
    a = actual - actual.mean()
    r = float(p @ a / np.sqrt((p @ p) * (a @ a)))
    return r * r, False


def held_out_r2(
    dataset: Dataset,
    selected: Sequence[int],
    train: np.ndarray,
    test: np.ndarray,
    ridge_penalty: float = 1.0,
) -> Tuple[float, bool]:
    """Squared correlation of one train/test split; (0.0, True) if undefined or nothing selected."""
    selected = np.asarray(selected, dtype=np.int64)
    if selected.size == 0:
        return 0.0, True
    x = dataset.genotypes.values[:, selected].astype(np.float64)
    y = dataset.phenotype.values
    model = make_pipeline(StandardScaler(), Ridge(alpha=ridge_penalty))
    model.fit(x[train], y[train])
    return squared_pearson(model.predict(x[test]), y[test])


def ridge_predictivity(
    dataset: Dataset,
    selected: Sequence[int],
    folds: Folds = 10,
    ridge_penalty: float = 1.0,
    rng_seed: int = 0,
) -> PredictivityResult:
    """Fit ridge on the selected SNP columns in each training fold and score the held-out rows.

    Args:
        dataset: Aligned genotypes and phenotype
        selected: Column indices of the selected SNPs
        folds: Number of folds, or precomputed (train, test) index pairs
        ridge_penalty: Ridge penalty on standardized columns
        rng_seed: Seed for the fold split when ``folds`` is a count

    Returns:
        PredictivityResult
    """
    if ridge_penalty < 0:
        raise ValueError("ridge_penalty must be >= 0")
    if isinstance(folds, int):
        folds = assign_folds(dataset.genotypes.individual_ids, folds, rng_seed)
    if len(folds) < 2:
        raise ValueError("Need at least 2 folds")

    selected = np.asarray(sorted(set(int(i) for i in selected)), dtype=np.int64)
    if selected.size == 0:
        logger.warning("Empty selection: predictivity reported as 0 without fitting")
        return PredictivityResult(r2=0.0, fold_r2=[0.0] * len(folds), empty_selection=True)

    fold_r2, degenerate = [], []
    for i, (train, test) in enumerate(folds):
        r2, undefined = held_out_r2(dataset, selected, train, test, ridge_penalty)
        fold_r2.append(r2)
        if undefined:
            degenerate.append(i)
    if degenerate:
        logger.warning("Correlation undefined in %d folds; counted as 0", len(degenerate))
    return PredictivityResult(
        r2=float(np.mean(fold_r2)), fold_r2=fold_r2, degenerate_folds=degenerate
    )
