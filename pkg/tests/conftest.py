import numpy as np
import pytest

from benford_forensics.features import Dataset
from benford_forensics.ingest import write_pgm

ACCEPTANCE_LINES = []


def textured_image(rng, shape=(64, 64), smooth=1):
    """Noise with some spatial correlation, clipped to 8 bits."""
    img = rng.normal(128, 50, shape)
    for _ in range(smooth):
        img = 0.25 * (img + np.roll(img, 1, 0) + np.roll(img, 1, 1) + np.roll(img, (1, 1), (0, 1)))
    return np.clip(np.round(img), 0, 255).astype(np.uint8)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def image_tree(tmp_path):
    """Two classes of three textured images each."""
    rng = np.random.default_rng(7)
    root = tmp_path / "data"
    for name, smooth in (("alpha", 1), ("beta", 3)):
        (root / name).mkdir(parents=True)
        for i in range(3):
            write_pgm(textured_image(rng, (40, 48), smooth), root / name / f"img{i}.pgm")
    return root


def make_ds(X, y, names=()):
    return Dataset.from_arrays(np.asarray(X, dtype=float), y, names)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def numeric_grad(f, arrays, h=1e-5):
    """Central differences of scalar ``f()`` w.r.t. each array in ``arrays`` (mutated in place)."""
    grads = []
    for a in arrays:
        g = np.zeros_like(a)
        it = np.nditer(a, flags=["multi_index"])
        for _ in it:
            i = it.multi_index
            old = a[i]
            a[i] = old + h
            up = f()
            a[i] = old - h
            down = f()
            a[i] = old
            g[i] = (up - down) / (2 * h)
        grads.append(g)
    return grads


def max_rel_error(analytic, numeric, floor=1e-8):
    return max(float(np.max(np.abs(a - n) / np.maximum(np.abs(a) + np.abs(n), floor)))
               for a, n in zip(analytic, numeric))
