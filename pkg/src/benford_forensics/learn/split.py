import math
from dataclasses import dataclass

import numpy as np

from ..errors import ClassTooSmall

SD_FLOOR = 1e-12


@dataclass(frozen=True)
class SplitConfig:
    train_fraction: float = 0.7
    seed: int = 42
    stratified: bool = True

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError(f"train_fraction must lie in (0, 1), got {self.train_fraction}")


def _n_train(fraction, n):
    # tolerance keeps e.g. 0.29 * 100 from flooring to 28
    return int(math.floor(fraction * n + 1e-9))


def stratified_split(ds, cfg=SplitConfig()):
    """Seeded train/test partition of ``ds``.

    With stratification each class contributes floor(fraction * n_c) rows to
    the training side. Both sides keep the original row order.
    """
    rng = np.random.default_rng(cfg.seed)
    y = ds.y
    train_idx = []
    if cfg.stratified:
        for c in range(ds.n_classes):
            idx = np.flatnonzero(y == c)
            k = _n_train(cfg.train_fraction, len(idx))
            if len(idx) < 2 or k < 1 or k >= len(idx):
                raise ClassTooSmall(
                    f"class {c} ({ds.label_names[c]}) has {len(idx)} rows; "
                    f"cannot leave both partitions non-empty at fraction {cfg.train_fraction}")
            train_idx.extend(rng.permutation(idx)[:k])
    else:
        k = _n_train(cfg.train_fraction, len(y))
        if k < 1 or k >= len(y):
            raise ClassTooSmall(f"{len(y)} rows cannot be split at fraction {cfg.train_fraction}")
        train_idx.extend(rng.permutation(len(y))[:k])

    mask = np.zeros(len(y), dtype=bool)
    mask[np.asarray(train_idx, dtype=np.int64)] = True
    return ds.subset(np.flatnonzero(mask)), ds.subset(np.flatnonzero(~mask))


@dataclass(frozen=True, eq=False)
class Standardizer:
    mean: np.ndarray
    sd: np.ndarray

    @classmethod
    def fit(cls, X):
        X = np.asarray(X, dtype=np.float64)
        return cls(X.mean(axis=0), np.maximum(X.std(axis=0), SD_FLOOR))

    def transform(self, X):
        return (np.asarray(X, dtype=np.float64) - self.mean) / self.sd


def standardize(train, *others):
    """Z-score every dataset with the training set's mean and population sd.

    Returns ``(scaled_train, [scaled_other, ...], standardizer)``.
    """
    stats = Standardizer.fit(train.X)
    return (train.with_features(stats.transform(train.X)),
            [o.with_features(stats.transform(o.X)) for o in others],
            stats)
