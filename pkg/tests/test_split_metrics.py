import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from benford_forensics.errors import ClassTooSmall
from benford_forensics.learn import SplitConfig, report_from_predictions, standardize, stratified_split
from benford_forensics.synthetic import make_synthetic_dataset
from conftest import make_ds


def _keys(ds):
    return [(tuple(r.d), r.label) for r in ds.rows]


def test_five_source_split_counts():
    ds = make_synthetic_dataset(0)
    train, test = stratified_split(ds, SplitConfig(0.7, 42))
    # floor(0.7*80) = 56 for DB1..DB4, floor(0.7*48) = 33
    assert np.bincount(train.y).tolist() == [56, 56, 56, 56, 33]
    assert (len(train), len(test)) == (257, 111)


def test_half_split_single_class():
    ds = make_ds(np.arange(10)[:, None], [0] * 10)
    train, test = stratified_split(ds, SplitConfig(0.5, 1))
    assert (len(train), len(test)) == (5, 5)


def test_split_determinism_and_partition():
    ds = make_synthetic_dataset(3)
    a = stratified_split(ds, SplitConfig(0.7, 9))
    b = stratified_split(ds, SplitConfig(0.7, 9))
    c = stratified_split(ds, SplitConfig(0.7, 10))
    assert _keys(a[0]) == _keys(b[0]) and _keys(a[1]) == _keys(b[1])
    assert _keys(a[0]) != _keys(c[0])
    assert sorted(_keys(a[0]) + _keys(a[1])) == sorted(_keys(ds))
    assert not set(_keys(a[0])) & set(_keys(a[1]))


@given(st.lists(st.integers(2, 40), min_size=1, max_size=5), st.floats(0.05, 0.95), st.integers(0, 2 ** 32))
def test_split_counts_property(counts, frac, seed):
    y = np.repeat(np.arange(len(counts)), counts)
    X = np.arange(len(y), dtype=float)[:, None]
    ds = make_ds(X, y)
    k = [int(np.floor(frac * n + 1e-9)) for n in counts]
    if any(v < 1 or v >= n for v, n in zip(k, counts)):
        with pytest.raises(ClassTooSmall):
            stratified_split(ds, SplitConfig(frac, seed))
        return
    train, test = stratified_split(ds, SplitConfig(frac, seed))
    assert np.bincount(train.y, minlength=len(counts)).tolist() == k
    assert sorted(train.X[:, 0].tolist() + test.X[:, 0].tolist()) == X[:, 0].tolist()


def test_unstratified_split():
    ds = make_synthetic_dataset(0)
    train, test = stratified_split(ds, SplitConfig(0.7, 1, stratified=False))
    assert (len(train), len(test)) == (257, 111)


def test_class_too_small():
    ds = make_ds([[0.0], [1.0], [2.0]], [0, 0, 1])
    with pytest.raises(ClassTooSmall):
        stratified_split(ds, SplitConfig(0.7, 0))


def test_standardize():
    train = make_ds([[1.0, 5.0], [3.0, 5.0]], [0, 1])
    other = make_ds([[2.0, 7.0]], [0])
    st_train, (st_other,), stats = standardize(train, other)
    assert st_train.X[:, 0].tolist() == [-1.0, 1.0]
    assert st_train.X[:, 1].tolist() == [0.0, 0.0]
    assert st_other.X[0, 0] == 0.0
    assert st_other.X[0, 1] == pytest.approx(2.0 / 1e-12)
    assert stats.sd[1] == 1e-12


def test_standardize_moments(rng):
    X = rng.normal(5, 3, (50, 6))
    st_train, _, _ = standardize(make_ds(X, rng.integers(0, 3, 50)))
    assert np.abs(st_train.X.mean(axis=0)).max() < 1e-9
    assert np.abs(st_train.X.std(axis=0) - 1).max() < 1e-9


def _with_errors(n_items, n_errors, n_classes=5):
    y_true = np.arange(n_items) % n_classes
    y_pred = y_true.copy()
    y_pred[:n_errors] = (y_pred[:n_errors] + 1) % n_classes
    return y_true, y_pred


@pytest.mark.parametrize("errors, acc", [(3, 0.9595), (7, 0.9054), (0, 1.0)])
def test_accuracy_from_counts(errors, acc):
    rep = report_from_predictions(*_with_errors(74, errors), 5)
    assert rep.accuracy == pytest.approx(acc, abs=5e-5)
    assert rep.confusion.sum() == 74
    assert rep.accuracy == np.trace(rep.confusion) / rep.confusion.sum()


def test_perfect_report():
    y = np.array([0, 1, 2, 2, 1, 0])
    rep = report_from_predictions(y, y, 3)
    assert rep.accuracy == rep.precision == rep.recall == rep.f1 == 1.0
    assert np.array_equal(rep.confusion, np.diag([2, 2, 2]))


def test_hand_computed_metrics():
    y_true = [0, 0, 0, 1, 1, 2]
    y_pred = [0, 0, 1, 1, 0, 0]
    rep = report_from_predictions(y_true, y_pred, 3)
    assert rep.confusion.tolist() == [[2, 1, 0], [1, 1, 0], [1, 0, 0]]
    c0 = rep.per_class[0]
    assert (c0["tp"], c0["fp"], c0["fn"], c0["tn"]) == (2, 2, 1, 1)
    assert c0["precision"] == 0.5 and c0["recall"] == pytest.approx(2 / 3)
    assert c0["f1"] == pytest.approx(2 * 0.5 * (2 / 3) / (0.5 + 2 / 3))
    assert rep.zero_predicted == [2]
    assert rep.per_class[2]["precision"] == 0.0 and rep.per_class[2]["f1"] == 0.0
    assert rep.precision == pytest.approx((0.5 + 0.5 + 0) / 3)
    assert rep.accuracy == 0.5
