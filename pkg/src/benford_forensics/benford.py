"""First-digit statistics, Benford models, chi-square divergence and fitting."""

import math
import os
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    EmptyStream,
    InvalidParams,
    ModelHasZeroBin,
    NonFiniteInput,
    NoValidStart,
    ParamFileError,
    ZeroHasNoFirstDigit,
)
from .simplex import nelder_mead

DIGITS = np.arange(1, 10)


def first_digit(v):
    """Leading decimal digit (1..9) of ``|v|``."""
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        if v == 0:
            raise ZeroHasNoFirstDigit("0 has no first significant digit")
        return int(str(abs(int(v)))[0])
    v = float(v)
    if not math.isfinite(v):
        raise NonFiniteInput(f"first digit of {v} is undefined")
    if v == 0.0:
        raise ZeroHasNoFirstDigit("0 has no first significant digit")
    # shortest round-trip repr: 0.3 reads as 3, not as its binary 0.2999...
    return int(repr(abs(v)).lstrip("0.")[0])


def first_digits(values):
    """Vectorised :func:`first_digit`; fast path for integer arrays."""
    values = np.asarray(values)
    if not np.issubdtype(values.dtype, np.integer):
        return np.fromiter((first_digit(float(v)) for v in values.ravel()),
                           dtype=np.int64, count=values.size).reshape(values.shape)
    v = np.abs(values.astype(np.int64))
    if v.size and v.min() == 0:
        raise ZeroHasNoFirstDigit("stream contains zeros")
    v = v.copy()
    big = v >= 10
    while big.any():
        v[big] //= 10
        big = v >= 10
    return v


@dataclass(frozen=True, eq=False)
class DigitHistogram:
    counts: np.ndarray  # index 0 holds digit 1

    @property
    def total(self):
        return int(self.counts.sum())

    def __getitem__(self, digit):
        return int(self.counts[digit - 1])


@dataclass(frozen=True, eq=False)
class DigitDistribution:
    p: np.ndarray  # index 0 holds digit 1

    def __post_init__(self):
        p = np.asarray(self.p, dtype=np.float64)
        if p.shape != (9,):
            raise ValueError(f"a digit distribution has 9 entries, got shape {p.shape}")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise ValueError("digit probabilities must be finite and non-negative")
        object.__setattr__(self, "p", p)

    def __getitem__(self, digit):
        return float(self.p[digit - 1])

    def __eq__(self, other):
        if not isinstance(other, DigitDistribution):
            return NotImplemented
        return np.array_equal(self.p, other.p)

    __hash__ = None

    def normalized(self):
        return DigitDistribution(self.p / self.p.sum())


@dataclass(frozen=True)
class GBLParams:
    """Generalized Benford parameters: p(x) = N log10(1 + 1/(s + x**q))."""

    n_factor: float
    q_exp: float
    s_shift: float
    qf: Optional[int] = None

    def as_array(self):
        return np.array([self.n_factor, self.q_exp, self.s_shift])

    def is_valid(self):
        return _valid(self.n_factor, self.q_exp, self.s_shift)


def _valid(n, q, s):
    if not (math.isfinite(n) and math.isfinite(q) and math.isfinite(s)) or n <= 0:
        return False
    return bool(np.all(s + DIGITS.astype(np.float64) ** q > 0))


# Fitted to JPEG AC coefficients of natural images, keyed by quality factor.
DEFAULT_GBL_PARAMS = {
    100: GBLParams(1.456, 1.47, 0.0372, 100),
    90: GBLParams(1.255, 1.563, -0.3784, 90),
    80: GBLParams(1.324, 1.653, -0.3739, 80),
    70: GBLParams(1.412, 1.732, -0.337, 70),
    60: GBLParams(1.501, 1.813, -0.3025, 60),
    50: GBLParams(1.579, 1.882, -0.2725, 50),
}

# Reported goodness of fit for DEFAULT_GBL_PARAMS.
DEFAULT_GBL_SSE = {100: 7.104e-06, 90: 5.255e-07, 80: 3.06838e-06,
                   70: 5.36171e-06, 60: 6.11167e-06, 50: 6.05446e-06}


def standard_benford():
    return DigitDistribution(np.log10(1.0 + 1.0 / DIGITS))


def _gbl_values(n, q, s):
    return n * np.log10(1.0 + 1.0 / (s + DIGITS.astype(np.float64) ** q))


def generalized_benford(params):
    """Model distribution for ``params``; not renormalised."""
    if not params.is_valid():
        raise InvalidParams(
            f"need N > 0 and s + x**q > 0 for x in 1..9, got {params}")
    return DigitDistribution(_gbl_values(params.n_factor, params.q_exp, params.s_shift))


def digit_histogram(values):
    values = getattr(values, "values", values)
    digits = first_digits(values)
    return DigitHistogram(np.bincount(digits, minlength=10)[1:10].astype(np.int64))


def digit_distribution(stream):
    """Histogram and empirical distribution of the stream's leading digits.

    Raises :class:`EmptyStream` when there is nothing to count.
    """
    hist = digit_histogram(stream)
    total = hist.total
    if total == 0:
        raise EmptyStream("no nonzero coefficients to take digits from")
    return hist, DigitDistribution(hist.counts / total)


def chi_square_divergence(actual, model):
    """sum((actual - model)**2 / model) over digits 1..9.

    Not symmetric: the second argument supplies the denominators.
    """
    m = model.p
    if np.any(m <= 0):
        raise ModelHasZeroBin("model distribution has a non-positive bin")
    return float(np.sum((actual.p - m) ** 2 / m))


def sample_digits(dist, n, rng):
    """Draw ``n`` digits from ``dist`` (renormalised to sum to 1)."""
    p = dist.p / dist.p.sum()
    return rng.choice(DIGITS, size=n, p=p)


# fitting ------------------------------------------------------------------

@dataclass(frozen=True)
class FitConfig:
    n_range: tuple = (0.5, 2.0)
    q_range: tuple = (0.5, 3.0)
    s_range: tuple = (-0.5, 0.5)
    grid: int = 5
    ftol: float = 1e-14
    max_iter: int = 2000
    step_fraction: float = 0.1


@dataclass(frozen=True)
class FitResult:
    params: GBLParams
    sse: float
    iterations: int
    converged: bool
    start_index: int = 0


def gbl_sse(empirical, params):
    """Sum of squared errors between an empirical and a model distribution."""
    n, q, s = (params.n_factor, params.q_exp, params.s_shift) \
        if isinstance(params, GBLParams) else params
    if not _valid(n, q, s):
        return math.inf
    return float(np.sum((empirical.p - _gbl_values(n, q, s)) ** 2))


def fit_gbl_params(empirical, config=FitConfig(), qf=None):
    """Least-squares fit of (N, q, s) by multi-start downhill simplex.

    Starts form a ``grid``**3 lattice spanning the search box; the start with
    the lowest SSE wins, ties going to the earlier start. Running out of
    iterations is reported through ``converged`` rather than raised.
    """
    ranges = np.array([config.n_range, config.q_range, config.s_range], dtype=np.float64)
    axes = [np.linspace(lo, hi, config.grid) for lo, hi in ranges]
    step = config.step_fraction * (ranges[:, 1] - ranges[:, 0])

    def objective(x):
        return gbl_sse(empirical, x)

    best = None
    index = -1
    for n0 in axes[0]:
        for q0 in axes[1]:
            for s0 in axes[2]:
                index += 1
                if not _valid(n0, q0, s0):
                    continue
                res = nelder_mead(objective, [n0, q0, s0], step,
                                  ftol=config.ftol, max_iter=config.max_iter)
                if best is None or res.fun < best[0].fun:
                    best = (res, index)
    if best is None:
        raise NoValidStart("every start point violates N > 0, s + x**q > 0")
    res, index = best
    params = GBLParams(*(float(v) for v in res.x), qf=qf)
    return FitResult(params, gbl_sse(empirical, params), res.iterations, res.converged, index)


# parameter files ----------------------------------------------------------

def load_param_table(path):
    """Read ``qf N q s`` lines into a dict keyed by quality factor.

    Blank lines and ``#`` comments are ignored.
    """
    table = {}
    with open(os.fspath(path), encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ParamFileError(f"{path}:{lineno}: expected 'qf N q s', got {line!r}")
            try:
                qf = int(parts[0])
                n, q, s = (float(v) for v in parts[1:])
            except ValueError:
                raise ParamFileError(f"{path}:{lineno}: non-numeric field in {line!r}") from None
            params = GBLParams(n, q, s, qf)
            if not params.is_valid():
                raise ParamFileError(f"{path}:{lineno}: invalid parameters {line!r}")
            if qf in table:
                raise ParamFileError(f"{path}:{lineno}: duplicate quality factor {qf}")
            table[qf] = params
    return table


def write_param_table(table, path):
    with open(os.fspath(path), "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# qf N q s\n")
        for qf in sorted(table):
            p = table[qf]
            fh.write(f"{qf} {p.n_factor!r} {p.q_exp!r} {p.s_shift!r}\n")
