import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from benford_forensics.benford import (
    DEFAULT_GBL_PARAMS,
    DigitDistribution,
    FitConfig,
    GBLParams,
    chi_square_divergence,
    digit_distribution,
    digit_histogram,
    first_digit,
    first_digits,
    fit_gbl_params,
    gbl_sse,
    generalized_benford,
    load_param_table,
    sample_digits,
    standard_benford,
    write_param_table,
)
from benford_forensics.errors import (
    EmptyStream,
    InvalidParams,
    ModelHasZeroBin,
    NonFiniteInput,
    NoValidStart,
    ParamFileError,
    ZeroHasNoFirstDigit,
)
from benford_forensics.jpeg import CoefficientStream


@pytest.mark.parametrize("v, d", [(123, 1), (-0.00456, 4), (9.99, 9), (1, 1), (10, 1),
                                  (999999, 9), (-7, 7), (5e-300, 5), (0.3, 3), (1e308, 1)])
def test_first_digit_examples(v, d):
    assert first_digit(v) == d


def test_first_digit_errors():
    with pytest.raises(ZeroHasNoFirstDigit):
        first_digit(0)
    with pytest.raises(ZeroHasNoFirstDigit):
        first_digit(-0.0)
    for bad in (math.inf, -math.inf, math.nan):
        with pytest.raises(NonFiniteInput):
            first_digit(bad)


@given(st.integers(1, 10 ** 12), st.integers(-15, 15))
def test_first_digit_scale_invariance(m, k):
    v = m * 10 ** k if k >= 0 else m / 10 ** (-k)
    assert first_digit(v) == first_digit(m) == int(str(m)[0])


@given(st.lists(st.integers(-10 ** 9, 10 ** 9).filter(bool), max_size=50))
def test_vectorised_digits_match_scalar(values):
    assert first_digits(np.array(values, dtype=np.int64)).tolist() == [first_digit(v) for v in values]


def test_standard_benford_values():
    p = standard_benford()
    assert p[1] == pytest.approx(0.30103, abs=5e-6)
    assert p[2] == pytest.approx(0.17609, abs=5e-6)
    assert abs(p.p.sum() - 1.0) < 1e-12
    assert np.all(np.diff(p.p) < 0)


def test_generalized_reduces_to_standard():
    g = generalized_benford(GBLParams(1.0, 1.0, 0.0))
    assert np.allclose(g.p, standard_benford().p, atol=1e-15, rtol=0)


def test_generalized_published_rows():
    p100 = generalized_benford(DEFAULT_GBL_PARAMS[100])
    # 1.456 * log10(1 + 1/1.0372)
    assert p100[1] == pytest.approx(0.4269, abs=1e-4)
    for qf, params in DEFAULT_GBL_PARAMS.items():
        assert 0.99 <= generalized_benford(params).p.sum() <= 1.01, qf


def test_generalized_invalid_params():
    with pytest.raises(InvalidParams):
        generalized_benford(GBLParams(-1.0, 1.0, 0.0))
    with pytest.raises(InvalidParams):
        generalized_benford(GBLParams(1.0, 1.0, -1.0))  # s + 1**q == 0


def test_digit_distribution_hand_count():
    hist, dist = digit_distribution(CoefficientStream(np.array([1, -12, 190, 2]), 100, 1))
    assert hist.counts.tolist() == [3, 1, 0, 0, 0, 0, 0, 0, 0]
    assert hist.total == 4
    assert dist[1] == 0.75 and dist[2] == 0.25


def test_digit_distribution_empty():
    with pytest.raises(EmptyStream):
        digit_distribution(CoefficientStream(np.array([], dtype=np.int64), 50, 4))


def test_digit_distribution_benford_sample():
    # 10**U with U uniform has Benford-distributed leading digits
    rng = np.random.default_rng(2024)
    values = 10.0 ** rng.uniform(0, 6, 10 ** 6)
    _, dist = digit_distribution(values)
    assert abs(dist.p.sum() - 1) < 1e-12
    assert np.abs(dist.p - standard_benford().p).max() < 0.005


def test_chi_square_examples():
    b = standard_benford()
    assert chi_square_divergence(b, b) == 0.0
    p = b.p.copy()
    p[0] += 0.01
    p[1] -= 0.01
    expected = 0.0001 / math.log10(2) + 0.0001 / math.log10(1.5)
    assert chi_square_divergence(DigitDistribution(p), b) == pytest.approx(expected, rel=1e-9)
    assert expected == pytest.approx(9.00e-4, abs=1e-6)


def test_chi_square_asymmetric_and_zero_bin():
    a = standard_benford()
    m = generalized_benford(DEFAULT_GBL_PARAMS[50])
    assert chi_square_divergence(a, m) != chi_square_divergence(m, a)
    z = np.full(9, 1 / 8)
    z[8] = 0
    with pytest.raises(ModelHasZeroBin):
        chi_square_divergence(a, DigitDistribution(z))


@settings(max_examples=50)
@given(st.lists(st.floats(0, 1), min_size=9, max_size=9).filter(lambda v: sum(v) > 0),
       st.lists(st.floats(0.01, 1), min_size=9, max_size=9))
def test_chi_square_nonnegative(a, m):
    a = DigitDistribution(np.array(a) / sum(a))
    m = DigitDistribution(np.array(m) / sum(m))
    chi = chi_square_divergence(a, m)
    assert chi >= 0
    assert (chi == 0) == np.array_equal(a.p, m.p)


def test_sampling_matches_model():
    model = generalized_benford(DEFAULT_GBL_PARAMS[70])
    digits = sample_digits(model, 200_000, np.random.default_rng(1))
    hist = digit_histogram(digits)
    assert np.abs(hist.counts / hist.total - model.normalized().p).max() < 0.005


def test_fit_recovers_generating_row():
    target = DEFAULT_GBL_PARAMS[80]
    res = fit_gbl_params(generalized_benford(target), qf=80)
    assert res.sse <= 1e-10
    assert np.abs(res.params.as_array() - [1.324, 1.653, -0.3739]).max() < 1e-3
    assert res.params.qf == 80
    assert res.converged


def test_fit_standard_benford():
    res = fit_gbl_params(standard_benford())
    assert res.sse <= 1e-10
    assert np.abs(res.params.as_array() - [1, 1, 0]).max() < 1e-2


def test_fit_sse_recomputes_and_is_deterministic():
    emp = DigitDistribution(np.array([0.33, 0.18, 0.12, 0.09, 0.08, 0.06, 0.05, 0.05, 0.04]))
    cfg = FitConfig(grid=3)
    a, b = fit_gbl_params(emp, cfg), fit_gbl_params(emp, cfg)
    assert a == b
    n, q, s = a.params.as_array()
    independent = sum((emp.p[x - 1] - n * math.log10(1 + 1 / (s + x ** q))) ** 2 for x in range(1, 10))
    assert abs(a.sse - independent) <= 1e-15
    assert a.sse == gbl_sse(emp, a.params)


def test_fit_reports_iteration_exhaustion():
    res = fit_gbl_params(standard_benford(), FitConfig(grid=2, max_iter=3))
    assert not res.converged
    assert res.iterations == 3


def test_fit_no_valid_start():
    with pytest.raises(NoValidStart):
        fit_gbl_params(standard_benford(), FitConfig(n_range=(-2.0, -1.0), grid=2))


def test_param_file_roundtrip(tmp_path):
    path = tmp_path / "params.txt"
    write_param_table(DEFAULT_GBL_PARAMS, path)
    assert load_param_table(path) == DEFAULT_GBL_PARAMS


def test_param_file_parsing(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("# custom\n\n50 1.5 1.9 -0.27  # trailing\n100 1 1 0\n")
    table = load_param_table(path)
    assert sorted(table) == [50, 100]
    assert table[100] == GBLParams(1.0, 1.0, 0.0, 100)
    for bad in ("50 1 1\n", "50 a 1 0\n", "50 1 1 0\n50 1 1 0\n", "50 -1 1 0\n"):
        path.write_text(bad)
        with pytest.raises(ParamFileError):
            load_param_table(path)
