"""Command-line entry point: ``extract``, ``fit`` and ``train-eval``.

Exit codes: 0 success, 1 I/O failure, 2 malformed input, 3 configuration or
data incompatibility.
"""

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .benford import (
    DEFAULT_GBL_PARAMS,
    DigitDistribution,
    FitConfig,
    digit_distribution,
    fit_gbl_params,
    load_param_table,
)
from .errors import (
    AllImagesDegenerate,
    BenfordForensicsError,
    ClassTooSmall,
    EmptyDataset,
    EmptyStream,
    HeaderMismatch,
    MalformedRow,
    ParamFileError,
    QfOutOfRange,
    SingleClass,
    UnknownLabelDirectory,
    UnreadableFile,
    UnsupportedFormat,
)
from .features import CHI_SQUARE_SCALE, DEFAULT_QFS, build_dataset, read_csv, write_csv
from .ingest import load_image, scan_dataset
from .jpeg import extract_coefficients
from .learn import (
    MODEL_KINDS,
    SplitConfig,
    evaluate,
    save_model,
    stratified_split,
    train_cnn,
    train_decision_tree,
    train_logistic_regression,
    train_naive_bayes,
)

EXIT_OK, EXIT_IO, EXIT_INPUT, EXIT_CONFIG = 0, 1, 2, 3

# the published generalized-Benford rows sum to 1 only within this band
DIST_SUM_TOLERANCE = 0.01


class CliError(Exception):
    def __init__(self, code, message):
        self.code = code
        super().__init__(message)


def _qf_list(text):
    try:
        qfs = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None
    return qfs


def _check_qfs(qfs):
    if not qfs:
        raise CliError(EXIT_CONFIG, "empty QF list")
    if any(not 1 <= q <= 100 for q in qfs):
        raise CliError(EXIT_CONFIG, f"QF values must lie in [1, 100]: {qfs}")
    if list(qfs) != sorted(set(qfs)):
        raise CliError(EXIT_CONFIG, f"QF list must be strictly ascending: {qfs}")


def _param_table(path):
    if path is None:
        return DEFAULT_GBL_PARAMS
    try:
        return load_param_table(path)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read parameter file: {exc}") from None
    except ParamFileError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None


def _dump(doc, path):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc}") from None


def _report_header(command, config):
    return {"tool": {"name": "benford-forensics", "version": __version__},
            "command": command, "config": config}


# extract ------------------------------------------------------------------

def cmd_extract(args):
    qfs = args.qf
    _check_qfs(qfs)
    params = _param_table(args.params)
    missing = [q for q in qfs if q not in params]
    if missing:
        raise CliError(EXIT_CONFIG, f"parameter table has no entry for QF {missing}")
    config = {"data": str(args.data), "out": str(args.out), "qf": qfs,
              "params": args.params, "chi_scale": args.chi_scale,
              "label_order": args.label_order, "workers": args.workers}

    t0 = time.perf_counter()
    try:
        image_set = scan_dataset(args.data, args.label_order)
        ds = build_dataset(image_set, params, qfs, args.chi_scale, workers=args.workers)
    except (EmptyDataset, UnknownLabelDirectory) as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None
    except AllImagesDegenerate as exc:
        raise CliError(EXIT_INPUT, f"no usable images; rejected: {exc}") from None
    except UnsupportedFormat as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None
    except (UnreadableFile, OSError) as exc:
        raise CliError(EXIT_IO, str(exc)) from None
    elapsed = time.perf_counter() - t0

    try:
        write_csv(ds, args.out)
    except OSError as exc:
        raise CliError(EXIT_IO, str(exc)) from None

    print(f"wrote {len(ds)} rows to {args.out}; rejected {len(ds.rejected)} images")
    for path, reason in ds.rejected:
        print(f"  rejected {path}: {reason}")
    if args.report:
        doc = _report_header("extract", config)
        doc.update(rows=len(ds), label_names=list(ds.label_names),
                   class_counts=np.bincount(ds.y, minlength=ds.n_classes).tolist(),
                   rejected=[{"path": p, "reason": r} for p, r in ds.rejected],
                   timings={"extract_seconds": elapsed})
        _dump(doc, args.report)
    return EXIT_OK


# fit ----------------------------------------------------------------------

def read_distribution(path):
    """Nine probabilities separated by whitespace or commas; ``#`` comments allowed."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = " ".join(line.split("#", 1)[0] for line in fh)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc}") from None
    try:
        values = np.array([float(v) for v in text.replace(",", " ").split()])
    except ValueError:
        raise CliError(EXIT_INPUT, f"{path}: non-numeric probability") from None
    if values.shape != (9,):
        raise CliError(EXIT_INPUT, f"{path}: expected 9 probabilities, got {values.size}")
    if not np.all(np.isfinite(values)) or np.any(values < 0):
        raise CliError(EXIT_INPUT, f"{path}: probabilities must be finite and non-negative")
    if abs(values.sum() - 1.0) > DIST_SUM_TOLERANCE:
        raise CliError(EXIT_INPUT, f"{path}: probabilities sum to {values.sum():.6g}, not 1")
    return DigitDistribution(values)


def cmd_fit(args):
    if args.dist:
        dist = read_distribution(args.dist)
        source = {"dist": str(args.dist)}
        qf = None
    else:
        if args.qf is None:
            raise CliError(EXIT_CONFIG, "--image requires --qf")
        try:
            image = load_image(args.image)
            _, dist = digit_distribution(extract_coefficients(image, args.qf))
        except (UnreadableFile, OSError) as exc:
            raise CliError(EXIT_IO, str(exc)) from None
        except (UnsupportedFormat, EmptyStream) as exc:
            raise CliError(EXIT_INPUT, str(exc)) from None
        except QfOutOfRange as exc:
            raise CliError(EXIT_CONFIG, str(exc)) from None
        source = {"image": str(args.image), "qf": args.qf}
        qf = args.qf

    result = fit_gbl_params(dist, FitConfig(grid=args.grid), qf=qf)
    doc = _report_header("fit", {**source, "grid": args.grid})
    doc["empirical"] = dist.p.tolist()
    doc["fit"] = {"N": result.params.n_factor, "q": result.params.q_exp,
                  "s": result.params.s_shift, "sse": result.sse,
                  "converged": result.converged, "iterations": result.iterations}
    _dump(doc, args.out)
    return EXIT_OK


# train-eval ---------------------------------------------------------------

def _write_curve(path, column, values):
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"epoch,{column}\n")
        for epoch, v in enumerate(values, 1):
            fh.write(f"{epoch},{v!r}\n")


def cmd_train_eval(args):
    kinds = MODEL_KINDS if args.model == "all" else (args.model,)
    if not 0.0 < args.train_frac < 1.0:
        raise CliError(EXIT_CONFIG, f"--train-frac must lie in (0, 1), got {args.train_frac}")
    config = {"csv": str(args.csv), "model": args.model, "seed": args.seed,
              "train_frac": args.train_frac, "stratified": True,
              "report": args.report, "curves_dir": args.curves_dir,
              "hyper": {"logreg": {"lr": args.lr_rate, "epochs": args.lr_epochs, "l2": args.lr_l2},
                        "cnn": {"lr": args.cnn_rate, "epochs": args.cnn_epochs,
                                "batch_size": args.cnn_batch, "seed": args.seed}}}
    try:
        ds = read_csv(args.csv)
    except (HeaderMismatch, MalformedRow) as exc:
        raise CliError(EXIT_INPUT, f"{args.csv}: {exc}") from None
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {args.csv}: {exc}") from None
    if len(ds) == 0:
        raise CliError(EXIT_INPUT, f"{args.csv}: no data rows")

    try:
        train, test = stratified_split(ds, SplitConfig(args.train_frac, args.seed))
    except ClassTooSmall as exc:
        raise CliError(EXIT_CONFIG, str(exc)) from None

    trainers = {
        "nb": lambda: train_naive_bayes(train),
        "tree": lambda: train_decision_tree(train),
        "logreg": lambda: train_logistic_regression(
            train, lr=args.lr_rate, epochs=args.lr_epochs, l2=args.lr_l2),
        "cnn": lambda: train_cnn(train, lr=args.cnn_rate, epochs=args.cnn_epochs,
                                 batch_size=args.cnn_batch, seed=args.seed, validation=test),
    }
    if args.curves_dir:
        os.makedirs(args.curves_dir, exist_ok=True)
    if args.models_dir:
        os.makedirs(args.models_dir, exist_ok=True)

    models, timings = {}, {}
    for kind in kinds:
        t0 = time.perf_counter()
        try:
            model = trainers[kind]()
        except SingleClass as exc:
            raise CliError(EXIT_CONFIG, str(exc)) from None
        timings[f"{kind}_train_seconds"] = time.perf_counter() - t0
        report = evaluate(model, test)
        entry = {"evaluation": report.to_dict()}
        if kind == "tree":
            entry["training"] = {"nodes": model.n_nodes, "depth": model.depth()}
        elif kind == "logreg":
            entry["training"] = {"loss_curve": model.loss_curve}
        elif kind == "cnn":
            entry["training"] = {"loss_curve": model.loss_curve,
                                 "accuracy_curve": model.accuracy_curve,
                                 "val_loss_curve": model.val_loss_curve,
                                 "val_accuracy_curve": model.val_accuracy_curve}
        models[kind] = entry
        print(f"{kind:>6}: accuracy {report.accuracy:.4f}  precision {report.precision:.4f}  "
              f"recall {report.recall:.4f}  f1 {report.f1:.4f}")

        try:
            if args.curves_dir and kind in ("logreg", "cnn"):
                _write_curve(os.path.join(args.curves_dir, f"{kind}_loss.csv"), "loss", model.loss_curve)
            if args.curves_dir and kind == "cnn":
                d = args.curves_dir
                _write_curve(os.path.join(d, "cnn_accuracy.csv"), "accuracy", model.accuracy_curve)
                _write_curve(os.path.join(d, "cnn_val_loss.csv"), "loss", model.val_loss_curve)
                _write_curve(os.path.join(d, "cnn_val_accuracy.csv"), "accuracy", model.val_accuracy_curve)
            if args.models_dir:
                save_model(model, os.path.join(args.models_dir, f"{kind}.json"))
        except OSError as exc:
            raise CliError(EXIT_IO, str(exc)) from None

    doc = _report_header("train-eval", config)
    doc["dataset"] = {"rows": len(ds), "classes": ds.n_classes,
                      "train_rows": len(train), "test_rows": len(test),
                      "train_class_counts": np.bincount(train.y, minlength=ds.n_classes).tolist(),
                      "test_class_counts": np.bincount(test.y, minlength=ds.n_classes).tolist()}
    doc["models"] = models
    doc["rejected"] = []
    doc["timings"] = timings
    if args.report:
        _dump(doc, args.report)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="benford-forensics",
        description="Benford divergence features from JPEG coefficients and source classification.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="build the divergence-feature CSV from an image tree")
    p.add_argument("--data", required=True, help="root directory, one subdirectory per class")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--qf", type=_qf_list, default=list(DEFAULT_QFS),
                   help="comma-separated quality factors (default 50,60,70,80,90,100)")
    p.add_argument("--params", default=None, help="parameter file with 'qf N q s' lines")
    p.add_argument("--chi-scale", type=float, default=CHI_SQUARE_SCALE,
                   help="multiplier applied to the probability-scale divergence (default 100)")
    p.add_argument("--label-order", type=lambda s: [v for v in s.split(",") if v], default=None,
                   help="comma-separated class directory names in label order")
    p.add_argument("--workers", type=int, default=1, help="parallel extraction processes")
    p.add_argument("--report", default=None, help="optional JSON run report")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("fit", help="fit generalized Benford parameters to a digit distribution")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--dist", help="file with 9 first-digit probabilities")
    src.add_argument("--image", help="image to reduce to a digit distribution")
    p.add_argument("--qf", type=int, default=None, help="quality factor used with --image")
    p.add_argument("--grid", type=int, default=5, help="start points per parameter axis")
    p.add_argument("--out", default=None, help="write the result here instead of stdout")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("train-eval", help="split, train and evaluate classifiers on a feature CSV")
    p.add_argument("--csv", required=True)
    p.add_argument("--model", choices=MODEL_KINDS + ("all",), default="all")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--train-frac", type=float, default=0.7)
    p.add_argument("--report", default=None, help="JSON run report path")
    p.add_argument("--curves-dir", default=None, help="directory for epoch,loss curve CSVs")
    p.add_argument("--models-dir", default=None, help="directory to save trained models")
    p.add_argument("--lr-rate", type=float, default=0.1)
    p.add_argument("--lr-epochs", type=int, default=500)
    p.add_argument("--lr-l2", type=float, default=0.0)
    p.add_argument("--cnn-rate", type=float, default=0.01)
    p.add_argument("--cnn-epochs", type=int, default=150)
    p.add_argument("--cnn-batch", type=int, default=16)
    p.set_defaults(func=cmd_train_eval)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BenfordForensicsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
