from dataclasses import dataclass

import numpy as np

from ..errors import ClassAbsent

VAR_FLOOR = 1e-9


@dataclass(frozen=True, eq=False)
class NBModel:
    """Gaussian naive Bayes: one independent normal per (class, feature)."""

    class_priors: np.ndarray
    means: np.ndarray      # (C, F)
    variances: np.ndarray  # (C, F)

    kind = "nb"

    @property
    def n_features(self):
        return self.means.shape[1]

    def joint_log_likelihood(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        diff = X[:, None, :] - self.means[None, :, :]
        log_density = -0.5 * (np.log(2 * np.pi * self.variances)[None] + diff ** 2 / self.variances[None])
        return np.log(self.class_priors)[None, :] + log_density.sum(axis=2)

    def predict_proba(self, X):
        jll = self.joint_log_likelihood(X)
        jll -= jll.max(axis=1, keepdims=True)
        p = np.exp(jll)
        return p / p.sum(axis=1, keepdims=True)

    def predict(self, X):
        return np.argmax(self.joint_log_likelihood(X), axis=1)


def train_naive_bayes(train):
    X, y = train.X, train.y
    n_classes = train.n_classes
    counts = np.bincount(y, minlength=n_classes)
    if np.any(counts == 0):
        absent = [train.label_names[c] for c in np.flatnonzero(counts == 0)]
        raise ClassAbsent(f"no training rows for classes {absent}")
    means = np.vstack([X[y == c].mean(axis=0) for c in range(n_classes)])
    variances = np.vstack([X[y == c].var(axis=0) for c in range(n_classes)])
    return NBModel(counts / counts.sum(), means, np.maximum(variances, VAR_FLOOR))
