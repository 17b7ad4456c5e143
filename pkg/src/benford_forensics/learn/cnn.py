"""A one-layer 1-D convolutional network over the feature sequence.

conv(k=3, 16 channels, same padding) -> ReLU -> flatten -> dense -> softmax
"""

from dataclasses import dataclass, field

import numpy as np

from ..errors import SingleClass
from .logreg import cross_entropy, softmax
from .split import Standardizer

KERNEL = 3
CHANNELS = 16
PARAM_NAMES = ("conv_w", "conv_b", "dense_w", "dense_b")


def glorot_uniform(rng, shape, fan_in, fan_out):
    r = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-r, r, size=shape)


def init_params(n_features, n_classes, rng):
    return {
        "conv_w": glorot_uniform(rng, (CHANNELS, KERNEL), KERNEL, KERNEL * CHANNELS),
        "conv_b": np.zeros(CHANNELS),
        "dense_w": glorot_uniform(rng, (n_features * CHANNELS, n_classes),
                                  n_features * CHANNELS, n_classes),
        "dense_b": np.zeros(n_classes),
    }


def param_count(n_features, n_classes):
    return KERNEL * CHANNELS + CHANNELS + n_features * CHANNELS * n_classes + n_classes


def _patches(X):
    pad = KERNEL // 2
    xp = np.pad(X, ((0, 0), (pad, pad)))
    L = X.shape[1]
    # patches[n, t, k] = xp[n, t + k]
    return np.stack([xp[:, k:k + L] for k in range(KERNEL)], axis=2)


def forward(params, X):
    """Logits plus the intermediates needed by :func:`backward`."""
    P = _patches(X)
    z1 = P @ params["conv_w"].T + params["conv_b"]   # (n, L, C_out)
    a1 = np.maximum(z1, 0.0)
    h = a1.reshape(len(X), -1)
    logits = h @ params["dense_w"] + params["dense_b"]
    return logits, (P, z1, h)


def loss_and_grad(params, X, y):
    """Mean cross-entropy and gradients for every parameter array."""
    n = len(y)
    logits, (P, z1, h) = forward(params, X)
    probs = softmax(logits)
    loss = cross_entropy(probs, y)

    d_logits = probs
    d_logits[np.arange(n), y] -= 1.0
    d_logits /= n
    grads = {"dense_w": h.T @ d_logits, "dense_b": d_logits.sum(axis=0)}
    dz1 = (d_logits @ params["dense_w"].T).reshape(z1.shape) * (z1 > 0)
    grads["conv_w"] = np.einsum("ntc,ntk->ck", dz1, P)
    grads["conv_b"] = dz1.sum(axis=(0, 1))
    return loss, grads


@dataclass(eq=False)
class CNNModel:
    params: dict
    n_classes: int
    n_features: int
    standardizer: Standardizer
    loss_curve: list = field(default_factory=list)
    accuracy_curve: list = field(default_factory=list)
    val_loss_curve: list = field(default_factory=list)
    val_accuracy_curve: list = field(default_factory=list)
    hyper: dict = field(default_factory=dict)

    kind = "cnn"

    def logits(self, X):
        X = self.standardizer.transform(np.atleast_2d(X))
        return forward(self.params, X)[0]

    def predict_proba(self, X):
        return softmax(self.logits(X))

    def predict(self, X):
        return np.argmax(self.logits(X), axis=1)


def _score(params, X, y):
    probs = softmax(forward(params, X)[0])
    return cross_entropy(probs, y), float(np.mean(np.argmax(probs, axis=1) == y))


def train_cnn(train, lr=0.01, epochs=150, batch_size=16, seed=42,
              validation=None, standardize=True):
    """Mini-batch gradient descent on cross-entropy.

    One generator seeded with ``seed`` draws the initial weights and then a
    fresh batch permutation each epoch, so a seed fixes the whole run.
    Curves hold full-training-set loss/accuracy after each epoch, and the
    same for ``validation`` when given.
    """
    y = train.y
    if len(np.unique(y)) < 2:
        raise SingleClass("the network needs at least two classes")
    n_classes = train.n_classes
    stats = Standardizer.fit(train.X) if standardize else \
        Standardizer(np.zeros(train.n_features), np.ones(train.n_features))
    X = stats.transform(train.X)
    if validation is not None:
        Xv, yv = stats.transform(validation.X), validation.y

    rng = np.random.default_rng(seed)
    params = init_params(X.shape[1], n_classes, rng)
    model = CNNModel(params, n_classes, X.shape[1], stats,
                     hyper={"lr": lr, "epochs": epochs, "batch_size": batch_size, "seed": seed})
    for _ in range(epochs):
        order = rng.permutation(len(y))
        for start in range(0, len(y), batch_size):
            batch = order[start:start + batch_size]
            _, grads = loss_and_grad(params, X[batch], y[batch])
            for name in PARAM_NAMES:
                params[name] -= lr * grads[name]
        loss, acc = _score(params, X, y)
        model.loss_curve.append(loss)
        model.accuracy_curve.append(acc)
        if validation is not None:
            vloss, vacc = _score(params, Xv, yv)
            model.val_loss_curve.append(vloss)
            model.val_accuracy_curve.append(vacc)
    return model
