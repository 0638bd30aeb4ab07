"""Exception types shared by the toolkit packages."""


class GenotypeFormatError(ValueError):
    """Raised when an input table does not follow its documented TSV layout."""

    def __init__(self, path, line_number: int, message: str):
        self.path = str(path)
        self.line_number = line_number
        super().__init__(f"{self.path}, line {line_number}: {message}")


class EmptyResultError(ValueError):
    """Raised when filtering or joining leaves nothing to work with."""


class RankDeficientCovariatesError(ValueError):
    """Raised when [intercept | covariates] is not of full column rank."""

    def __init__(self, dependent_columns):
        self.dependent_columns = list(dependent_columns)
        super().__init__(
            "Covariate design is rank deficient; linearly dependent columns: "
            + ", ".join(self.dependent_columns)
        )


class ConvergenceError(RuntimeError):
    """Raised when an iterative solver stops at its iteration cap."""

    def __init__(self, message: str, residual: float):
        self.residual = residual
        super().__init__(f"{message} (residual {residual:.3e})")


class FlowCertificateError(RuntimeError):
    """Raised when a max-flow result fails its min-cut certificate."""


class InfeasibleConfigurationError(RuntimeError):
    """Base class for configurations that cannot produce a result."""
