"""Association scoring with covariate correction, and the univariate baseline."""
from .covariates import covariate_basis, residualize, top_principal_components
from .scores import AssociationScores, association_scores, read_scores, skat_linear_scores, write_scores
from .univariate import UnivariateResult, univariate_baseline

__all__ = [
    "covariate_basis",
    "residualize",
    "top_principal_components",
    "AssociationScores",
    "association_scores",
    "read_scores",
    "skat_linear_scores",
    "write_scores",
    "UnivariateResult",
    "univariate_baseline",
]
