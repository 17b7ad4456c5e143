"""Text serialization of trained models (JSON, parameters in row-major decimal)."""

import json
import os

import numpy as np

from ..errors import ModelFormatError
from .cnn import CHANNELS, KERNEL, PARAM_NAMES, CNNModel
from .logreg import LRModel
from .naive_bayes import NBModel
from .split import Standardizer
from .tree import TreeModel

FORMAT_VERSION = 1


def _arr(a):
    a = np.asarray(a)
    return {"shape": list(a.shape), "data": a.ravel().tolist()}


def _unarr(d, dtype=np.float64):
    try:
        return np.asarray(d["data"], dtype=dtype).reshape(d["shape"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"bad array entry: {exc}") from None


def _std(s):
    return {"mean": _arr(s.mean), "sd": _arr(s.sd)}


def _unstd(d):
    return Standardizer(_unarr(d["mean"]), _unarr(d["sd"]))


def model_to_dict(model):
    out = {"format": "benford-forensics-model", "version": FORMAT_VERSION, "kind": model.kind}
    if isinstance(model, NBModel):
        out.update(class_priors=_arr(model.class_priors), means=_arr(model.means),
                   variances=_arr(model.variances))
    elif isinstance(model, TreeModel):
        out.update(criterion=model.criterion, n_classes=model.n_classes, n_features=model.n_features,
                   feature=_arr(model.feature), threshold=_arr(model.threshold),
                   left=_arr(model.left), right=_arr(model.right), value=_arr(model.value))
    elif isinstance(model, LRModel):
        out.update(weights=_arr(model.weights), bias=_arr(model.bias),
                   standardizer=_std(model.standardizer), hyper=model.hyper,
                   loss_curve=list(model.loss_curve))
    elif isinstance(model, CNNModel):
        out.update(architecture={"kernel": KERNEL, "channels": CHANNELS,
                                 "n_features": model.n_features, "n_classes": model.n_classes},
                   params={k: _arr(model.params[k]) for k in PARAM_NAMES},
                   standardizer=_std(model.standardizer), hyper=model.hyper,
                   loss_curve=list(model.loss_curve), accuracy_curve=list(model.accuracy_curve))
    else:
        raise TypeError(f"cannot serialize {type(model).__name__}")
    return out


def model_from_dict(d):
    if d.get("format") != "benford-forensics-model":
        raise ModelFormatError("not a serialized model")
    kind = d.get("kind")
    try:
        if kind == "nb":
            return NBModel(_unarr(d["class_priors"]), _unarr(d["means"]), _unarr(d["variances"]))
        if kind == "tree":
            return TreeModel(_unarr(d["feature"], np.int64), _unarr(d["threshold"]),
                             _unarr(d["left"], np.int64), _unarr(d["right"], np.int64),
                             _unarr(d["value"], np.int64), int(d["n_classes"]),
                             int(d["n_features"]), d.get("criterion", "gini"))
        if kind == "logreg":
            return LRModel(_unarr(d["weights"]), _unarr(d["bias"]), _unstd(d["standardizer"]),
                           list(d.get("loss_curve", [])), dict(d.get("hyper", {})))
        if kind == "cnn":
            arch = d["architecture"]
            if arch["kernel"] != KERNEL or arch["channels"] != CHANNELS:
                raise ModelFormatError(f"unsupported architecture {arch}")
            return CNNModel({k: _unarr(d["params"][k]) for k in PARAM_NAMES},
                            int(arch["n_classes"]), int(arch["n_features"]),
                            _unstd(d["standardizer"]), list(d.get("loss_curve", [])),
                            list(d.get("accuracy_curve", [])), hyper=dict(d.get("hyper", {})))
    except KeyError as exc:
        raise ModelFormatError(f"missing field {exc}") from None
    raise ModelFormatError(f"unknown model kind {kind!r}")


def save_model(model, path):
    with open(os.fspath(path), "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh, indent=1)
        fh.write("\n")


def load_model(path):
    with open(os.fspath(path), encoding="utf-8") as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ModelFormatError(f"{path}: {exc}") from None
    return model_from_dict(d)
