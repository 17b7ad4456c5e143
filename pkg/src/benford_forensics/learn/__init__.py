"""From-scratch classifiers, splitting and evaluation for divergence features."""

import numpy as np

from ..errors import ArityMismatch
from .cnn import CNNModel, train_cnn
from .logreg import LRModel, train_logistic_regression
from .metrics import EvalReport, confusion_matrix, report_from_predictions
from .naive_bayes import NBModel, train_naive_bayes
from .serialize import load_model, save_model
from .split import SplitConfig, Standardizer, standardize, stratified_split
from .tree import TreeModel, train_decision_tree

MODEL_KINDS = ("nb", "tree", "logreg", "cnn")


def predict(model, features):
    """Label and per-class scores for a single feature vector.

    Scores are class probabilities, or a one-hot leaf indicator for trees.
    Ties resolve to the lowest class index.
    """
    x = np.asarray(features, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != model.n_features:
        raise ArityMismatch(f"model expects {model.n_features} features, got shape {x.shape}")
    scores = model.predict_proba(x[None, :])[0]
    return int(np.argmax(scores)), scores


def evaluate(model, test):
    y_pred = model.predict(test.X)
    return report_from_predictions(test.y, y_pred, max(test.n_classes, int(test.y.max()) + 1))


__all__ = [
    "CNNModel", "EvalReport", "LRModel", "MODEL_KINDS", "NBModel", "SplitConfig",
    "Standardizer", "TreeModel", "confusion_matrix", "evaluate", "load_model", "predict",
    "report_from_predictions", "save_model", "standardize", "stratified_split", "train_cnn",
    "train_decision_tree", "train_logistic_regression", "train_naive_bayes",
]
