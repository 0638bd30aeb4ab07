"""Cross-validated choice of (lambda, eta), consistency scoring and predictivity."""
from .consistency import consistency_index, mean_consistency
from .folds import assign_folds
from .cross_validation import (
    DEFAULT_GRID,
    AllCellsFilteredError,
    CvCell,
    CvConfig,
    CvReport,
    cross_validate,
    log_grid,
    relative_unit,
)
from .predictivity import PredictivityResult, held_out_r2, ridge_predictivity, squared_pearson
from .gene_support import GeneSupport, gene_support, reference_recovery

__all__ = [
    "consistency_index",
    "mean_consistency",
    "assign_folds",
    "DEFAULT_GRID",
    "AllCellsFilteredError",
    "CvCell",
    "CvConfig",
    "CvReport",
    "cross_validate",
    "log_grid",
    "relative_unit",
    "PredictivityResult",
    "held_out_r2",
    "ridge_predictivity",
    "squared_pearson",
    "GeneSupport",
    "gene_support",
    "reference_recovery",
]
