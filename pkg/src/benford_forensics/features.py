"""Per-image divergence features and the CSV interchange format."""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .benford import DEFAULT_GBL_PARAMS, chi_square_divergence, digit_distribution, generalized_benford
from .errors import (
    AllImagesDegenerate,
    DegenerateImage,
    EmptyStream,
    HeaderMismatch,
    MalformedRow,
    SinkWriteFailure,
)
from .ingest import load_image
from .jpeg import extract_coefficients

DEFAULT_QFS = (50, 60, 70, 80, 90, 100)

# Probabilities are expressed in percentage points before the divergence is
# taken, which multiplies the probability-scale value by 100.
CHI_SQUARE_SCALE = 100.0

LABEL_COLUMN = "Class Label"


def csv_header(qf_order=DEFAULT_QFS):
    return ",".join([f"QF-{qf}" for qf in qf_order] + [LABEL_COLUMN])


@dataclass(frozen=True, eq=False)
class FeatureVector:
    d: np.ndarray
    label: int
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "d", np.asarray(self.d, dtype=np.float64))


@dataclass(eq=False)
class Dataset:
    """Rows of divergence features with integer class labels."""

    rows: list
    label_names: tuple = ()
    qf_order: tuple = DEFAULT_QFS
    rejected: list = field(default_factory=list)

    def __post_init__(self):
        self.qf_order = tuple(self.qf_order)
        if not self.label_names:
            n = max((r.label for r in self.rows), default=-1) + 1
            self.label_names = tuple(str(i) for i in range(n))
        self.label_names = tuple(self.label_names)

    @classmethod
    def from_arrays(cls, X, y, label_names=(), qf_order=None, sources=None):
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        y = np.asarray(y, dtype=np.int64)
        if qf_order is None:
            qf_order = DEFAULT_QFS if X.shape[1] == len(DEFAULT_QFS) else tuple(range(X.shape[1]))
        sources = sources if sources is not None else [""] * len(y)
        rows = [FeatureVector(x, int(lbl), src) for x, lbl, src in zip(X, y, sources)]
        return cls(rows, tuple(label_names), tuple(qf_order))

    def __len__(self):
        return len(self.rows)

    @property
    def n_classes(self):
        return len(self.label_names)

    @property
    def n_features(self):
        return len(self.qf_order)

    @property
    def X(self):
        if not self.rows:
            return np.empty((0, self.n_features))
        return np.vstack([r.d for r in self.rows])

    @property
    def y(self):
        return np.array([r.label for r in self.rows], dtype=np.int64)

    def subset(self, indices):
        return Dataset([self.rows[i] for i in indices], self.label_names, self.qf_order)

    def with_features(self, X):
        rows = [FeatureVector(x, r.label, r.source) for x, r in zip(np.asarray(X), self.rows)]
        return Dataset(rows, self.label_names, self.qf_order)


def image_feature_vector(image, label, params_by_qf=None, qf_order=DEFAULT_QFS,
                         chi_scale=CHI_SQUARE_SCALE):
    """Divergence of the image's coefficient digits from each QF's model.

    Each quality factor is compared against its own generalized-Benford
    parameters. A QF that leaves no nonzero AC coefficient makes the whole
    image degenerate.
    """
    params_by_qf = DEFAULT_GBL_PARAMS if params_by_qf is None else params_by_qf
    missing = [qf for qf in qf_order if qf not in params_by_qf]
    if missing:
        raise KeyError(f"no generalized Benford parameters for QF {missing}")
    d = np.empty(len(qf_order))
    for i, qf in enumerate(qf_order):
        stream = extract_coefficients(image, qf)
        try:
            _, actual = digit_distribution(stream)
        except EmptyStream:
            raise DegenerateImage(
                f"{image.source_path or 'image'}: no nonzero AC coefficients at QF {qf}") from None
        model = generalized_benford(params_by_qf[qf])
        d[i] = chi_scale * chi_square_divergence(actual, model)
    return FeatureVector(d, int(label), image.source_path)


def _row_for_entry(args):
    path, label, params_by_qf, qf_order, chi_scale = args
    try:
        return image_feature_vector(load_image(path), label, params_by_qf, qf_order, chi_scale)
    except DegenerateImage as exc:
        return (path, str(exc))


def build_dataset(image_set, params_by_qf=None, qf_order=DEFAULT_QFS,
                  chi_scale=CHI_SQUARE_SCALE, workers=1):
    """Feature rows for every non-degenerate image, in ``image_set`` order.

    Degenerate images land in ``Dataset.rejected`` as (path, reason) pairs.
    """
    params_by_qf = DEFAULT_GBL_PARAMS if params_by_qf is None else params_by_qf
    jobs = [(path, label, params_by_qf, tuple(qf_order), chi_scale)
            for path, label in image_set.entries]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_row_for_entry, jobs, chunksize=8))
    else:
        results = [_row_for_entry(job) for job in jobs]

    rows = [r for r in results if isinstance(r, FeatureVector)]
    rejected = [r for r in results if not isinstance(r, FeatureVector)]
    if not rows:
        raise AllImagesDegenerate(
            f"all {len(rejected)} images are degenerate: "
            + "; ".join(reason for _, reason in rejected))
    return Dataset(rows, image_set.label_names, tuple(qf_order), rejected)


def format_value(v):
    return format(float(v), "#.6g")


def dumps_csv(ds):
    lines = [csv_header(ds.qf_order)]
    for row in ds.rows:
        lines.append(",".join([format_value(v) for v in row.d] + [str(int(row.label))]))
    return "\n".join(lines) + "\n"


def write_csv(ds, sink):
    """Serialize ``ds``; ``sink`` is a path or a text stream. Returns bytes written."""
    text = dumps_csv(ds)
    data = text.encode("ascii")
    try:
        if isinstance(sink, (str, os.PathLike)):
            with open(sink, "wb") as fh:
                fh.write(data)
        else:
            sink.write(text)
    except OSError as exc:
        raise SinkWriteFailure(f"cannot write CSV: {exc}") from exc
    return len(data)


def read_csv(source, qf_order=DEFAULT_QFS):
    """Parse a feature CSV written by :func:`write_csv`.

    ``source`` is a path or an open text stream. The header must match
    exactly; bad rows raise :class:`MalformedRow` with a 1-based line number.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8", newline="") as fh:
            text = fh.read()
    else:
        text = source.read()
    lines = text.splitlines()
    expected = csv_header(qf_order)
    if not lines or lines[0].lstrip("﻿").rstrip("\r") != expected:
        got = lines[0] if lines else "<empty>"
        raise HeaderMismatch(f"expected header {expected!r}, got {got!r}")

    width = len(qf_order) + 1
    rows = []
    for lineno, line in enumerate(lines[1:], 2):
        if not line.strip():
            continue
        fields = line.split(",")
        if len(fields) != width:
            raise MalformedRow(lineno, f"expected {width} fields, got {len(fields)}")
        try:
            d = np.array([float(f) for f in fields[:-1]])
        except ValueError:
            raise MalformedRow(lineno, "non-numeric feature value") from None
        if not np.all(np.isfinite(d)) or np.any(d < 0):
            raise MalformedRow(lineno, "features must be finite and non-negative")
        try:
            label = int(fields[-1])
        except ValueError:
            raise MalformedRow(lineno, f"class label {fields[-1]!r} is not an integer") from None
        if label < 0:
            raise MalformedRow(lineno, f"negative class label {label}")
        rows.append(FeatureVector(d, label))
    return Dataset(rows, (), tuple(qf_order))
