"""Selection quality metrics against a known causal set.

- Power: fraction of causal SNPs that were selected
- FDR: fraction of selected SNPs that are not causal
- F-score: harmonic mean of power and 1 - FDR
"""
import math
from dataclasses import asdict, dataclass
from typing import Dict, Iterable, List, Optional, Set


def calculate_power(selected: Set[int], causal: Set[int]) -> float:
    """Power = |selected & causal| / |causal| (0 when there are no causal SNPs)."""
    if not causal:
        return 0.0
    return len(selected & causal) / len(causal)


def calculate_fdr(selected: Set[int], causal: Set[int]) -> float:
    """FDR = |selected - causal| / |selected| (0 for an empty selection)."""
    if not selected:
        return 0.0
    return len(selected - causal) / len(selected)


def calculate_fscore(power: float, fdr: float) -> float:
    precision = 1.0 - fdr
    if power + precision == 0:
        return 0.0
    return 2.0 * power * precision / (power + precision)


@dataclass(frozen=True)
class SelectionMetrics:
    power: float
    fdr: float
    fscore: float
    n_selected: int

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def score_selection(selected: Iterable[int], causal: Iterable[int], n: int) -> SelectionMetrics:
    """Compare a selection with the causal set over features 0..n-1.

    An empty selection scores (0, 0, 0).

    Raises:
        ValueError: If an index falls outside 0..n-1
    """
    selected, causal = set(int(i) for i in selected), set(int(i) for i in causal)
    for index in selected | causal:
        if not 0 <= index < n:
            raise ValueError(f"Index {index} outside 0..{n - 1}")
    if not selected:
        return SelectionMetrics(power=0.0, fdr=0.0, fscore=0.0, n_selected=0)
    power = calculate_power(selected, causal)
    fdr = calculate_fdr(selected, causal)
    return SelectionMetrics(
        power=power, fdr=fdr, fscore=calculate_fscore(power, fdr), n_selected=len(selected)
    )


def mean_and_standard_error(values: List[float]) -> Dict[str, Optional[float]]:
    """Mean and standard error of the mean; the error is None for a single value."""
    mean = sum(values) / len(values)
    if len(values) < 2:
        return {"mean": mean, "se": None}
    variance = sum((v - mean) ** 2 for v in values) / (len(values) - 1)
    return {"mean": mean, "se": math.sqrt(variance / len(values))}


def aggregate_selection_metrics(all_metrics: List[SelectionMetrics]) -> Dict[str, Dict]:
    """Aggregate metrics across repeats.

    Returns:
        For each metric: mean, standard error and the per-repeat values
    """
    if not all_metrics:
        return {}
    aggregated = {"repeats": len(all_metrics)}
    for name in ("fscore", "power", "fdr", "n_selected"):
        values = [float(getattr(m, name)) for m in all_metrics]
        aggregated[name] = {**mean_and_standard_error(values), "values": values}
    return aggregated
