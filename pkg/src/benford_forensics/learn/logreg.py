from dataclasses import dataclass, field

import numpy as np

from ..errors import SingleClass
from .split import Standardizer


def softmax(z):
    z = z - z.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


def cross_entropy(probs, y):
    return float(-np.mean(np.log(np.maximum(probs[np.arange(len(y)), y], 1e-300))))


def lr_loss_and_grad(weights, bias, X, y, l2=0.0):
    """Mean cross-entropy (+ l2/2 * ||W||^2) and its gradient.

    ``weights`` has shape (C, F). Returns ``(loss, dW, db)``.
    """
    n = len(y)
    probs = softmax(X @ weights.T + bias)
    loss = cross_entropy(probs, y) + 0.5 * l2 * float(np.sum(weights ** 2))
    delta = probs.copy()
    delta[np.arange(n), y] -= 1.0
    delta /= n
    return loss, delta.T @ X + l2 * weights, delta.sum(axis=0)


@dataclass(eq=False)
class LRModel:
    weights: np.ndarray  # (C, F)
    bias: np.ndarray     # (C,)
    standardizer: Standardizer
    loss_curve: list = field(default_factory=list)
    hyper: dict = field(default_factory=dict)

    kind = "logreg"

    @property
    def n_features(self):
        return self.weights.shape[1]

    def decision_function(self, X):
        X = self.standardizer.transform(np.atleast_2d(X))
        return X @ self.weights.T + self.bias

    def predict_proba(self, X):
        return softmax(self.decision_function(X))

    def predict(self, X):
        return np.argmax(self.decision_function(X), axis=1)


def train_logistic_regression(train, lr=0.1, epochs=500, l2=0.0, standardize=True):
    """Multinomial logistic regression by full-batch gradient descent.

    Weights start at zero. ``loss_curve[e]`` is the training loss after
    epoch ``e + 1``.
    """
    y = train.y
    n_classes = train.n_classes
    if len(np.unique(y)) < 2:
        raise SingleClass("logistic regression needs at least two classes")
    stats = Standardizer.fit(train.X) if standardize else \
        Standardizer(np.zeros(train.n_features), np.ones(train.n_features))
    X = stats.transform(train.X)

    W = np.zeros((n_classes, X.shape[1]))
    b = np.zeros(n_classes)
    curve = []
    for _ in range(epochs):
        _, dW, db = lr_loss_and_grad(W, b, X, y, l2)
        W -= lr * dW
        b -= lr * db
        curve.append(lr_loss_and_grad(W, b, X, y, l2)[0])
    return LRModel(W, b, stats, curve, {"lr": lr, "epochs": epochs, "l2": l2})
