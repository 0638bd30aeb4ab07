"""Chance-corrected overlap between selected feature sets.

The consistency index of two selections S, S' out of n features is

    I_C(S, S') = (n |S & S'| - |S| |S'|) / (n min(|S|, |S'|) - |S| |S'|)

It is 1 for identical selections and 0 at the overlap expected by chance.
"""
from itertools import combinations
from typing import Iterable, Sequence


def consistency_index(selected: Iterable[int], other: Iterable[int], n: int) -> float:
    """Consistency index of two selections over ``n`` features.

    Degenerate cases (an empty or full selection, or a zero denominator)
    return 0.0.

    Args:
        selected: First selection (feature indices)
        other: Second selection
        n: Total number of features

    Returns:
        Index value, at most 1.0
    """
    s, s_prime = set(selected), set(other)
    a, b = len(s), len(s_prime)
    if a in (0, n) or b in (0, n):
        return 0.0
    denominator = n * min(a, b) - a * b
    if denominator == 0:
        return 0.0
    return (n * len(s & s_prime) - a * b) / denominator


def mean_consistency(selections: Sequence[Iterable[int]], n: int) -> float:
    """Mean consistency index over all k(k-1)/2 unordered pairs of selections.

    Raises:
        ValueError: With fewer than two selections
    """
    selections = [set(s) for s in selections]
    if len(selections) < 2:
        raise ValueError("Mean consistency needs at least two selections")
    pairs = list(combinations(selections, 2))
    return sum(consistency_index(a, b, n) for a, b in pairs) / len(pairs)
