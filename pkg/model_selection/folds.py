"""Deterministic K-fold assignment of individuals."""
from typing import List, Sequence, Tuple

import numpy as np
from sklearn.model_selection import KFold

from genotype_data.random_streams import derive_int_seed


def assign_folds(individual_ids: Sequence[str], k: int, rng_seed: int) -> List[Tuple[np.ndarray, np.ndarray]]:
    """Split individuals into ``k`` folds.

    The split depends only on the seed and the set of ids: ids are sorted
    before shuffling, and the returned indices refer to positions in
    ``individual_ids``.

    Returns:
        List of (train_indices, test_indices), each sorted
    """
    ids = list(individual_ids)
    if k < 2:
        raise ValueError(f"Need at least 2 folds, got {k}")
    if len(ids) < k:
        raise ValueError(f"Cannot split {len(ids)} individuals into {k} folds")

    canonical = np.argsort(np.array(ids, dtype=object), kind="stable")
    splitter = KFold(n_splits=k, shuffle=True, random_state=derive_int_seed(rng_seed, "folds"))
    folds = []
    for train, test in splitter.split(canonical):
        folds.append((np.sort(canonical[train]), np.sort(canonical[test])))
    return folds
