"""Seeded synthetic divergence datasets shaped like the five-source corpus."""

import numpy as np

from .features import DEFAULT_QFS, Dataset

CLASS_COUNTS = (80, 80, 80, 80, 48)
CLASS_NAMES = ("DB1", "DB2", "DB3", "DB4", "contactless")

# typical divergence level per QF column, falling with quality
BASE_PROFILE = np.array([10.0, 9.8, 9.2, 8.6, 7.9, 7.6])


def make_synthetic_dataset(seed=42, counts=CLASS_COUNTS, separation=8.0, sigma=0.25,
                           label_names=None):
    """Gaussian clusters in divergence space, one per class.

    On every feature the class means are a shuffled ladder with rungs
    ``separation * sigma`` apart, so any two class means differ by at least
    ``separation`` standard deviations in each coordinate. Rows are grouped
    by class, as a directory scan would produce them.
    """
    rng = np.random.default_rng(seed)
    n_classes = len(counts)
    n_feat = len(DEFAULT_QFS)
    ladder = separation * sigma * (np.arange(n_classes) - (n_classes - 1) / 2)
    means = np.empty((n_classes, n_feat))
    for f in range(n_feat):
        means[:, f] = BASE_PROFILE[f] + ladder[rng.permutation(n_classes)]

    X = np.vstack([means[c] + sigma * rng.standard_normal((n, n_feat))
                   for c, n in enumerate(counts)])
    # divergences are non-negative by construction
    X = np.abs(X)
    y = np.repeat(np.arange(n_classes), counts)
    if label_names is None:
        label_names = CLASS_NAMES if n_classes == len(CLASS_NAMES) else \
            tuple(f"class{c}" for c in range(n_classes))
    return Dataset.from_arrays(X, y, label_names, DEFAULT_QFS)
