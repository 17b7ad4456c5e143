from dataclasses import dataclass, field

import numpy as np


@dataclass(eq=False)
class EvalReport:
    accuracy: float
    precision: float
    recall: float
    f1: float
    confusion: np.ndarray  # rows = truth, columns = prediction
    per_class: list = field(default_factory=list)
    zero_predicted: list = field(default_factory=list)

    def to_dict(self):
        return {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "confusion": self.confusion.tolist(),
            "per_class": self.per_class,
            "zero_predicted_classes": self.zero_predicted,
        }


def confusion_matrix(y_true, y_pred, n_classes):
    cm = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(cm, (np.asarray(y_true), np.asarray(y_pred)), 1)
    return cm


def _ratio(num, den):
    return num / den if den else 0.0


def report_from_predictions(y_true, y_pred, n_classes=None):
    """Accuracy plus macro-averaged precision, recall and F1.

    Each class is scored one-vs-rest. A class never predicted gets precision
    0 and is listed in ``zero_predicted``.
    """
    y_true = np.asarray(y_true, dtype=np.int64)
    y_pred = np.asarray(y_pred, dtype=np.int64)
    if n_classes is None:
        n_classes = int(max(y_true.max(), y_pred.max())) + 1
    cm = confusion_matrix(y_true, y_pred, n_classes)
    total = int(cm.sum())

    per_class = []
    zero_predicted = []
    for c in range(n_classes):
        tp = int(cm[c, c])
        fp = int(cm[:, c].sum()) - tp
        fn = int(cm[c, :].sum()) - tp
        tn = total - tp - fp - fn
        if tp + fp == 0:
            zero_predicted.append(c)
        p = _ratio(tp, tp + fp)
        r = _ratio(tp, tp + fn)
        per_class.append({"tp": tp, "tn": tn, "fp": fp, "fn": fn,
                          "precision": p, "recall": r, "f1": _ratio(2 * p * r, p + r)})

    return EvalReport(
        accuracy=_ratio(int(np.trace(cm)), total),
        precision=float(np.mean([pc["precision"] for pc in per_class])),
        recall=float(np.mean([pc["recall"] for pc in per_class])),
        f1=float(np.mean([pc["f1"] for pc in per_class])),
        confusion=cm,
        per_class=per_class,
        zero_predicted=zero_predicted,
    )
