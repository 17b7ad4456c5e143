"""Baseline-JPEG luminance path up to quantized block-DCT coefficients.

No entropy coding is performed; the output is the population of nonzero
quantized AC coefficients whose leading digits are analysed downstream.
"""

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import QfOutOfRange

BLOCK = 8

# ITU-T T.81 Annex K, table K.1 (luminance)
BASE_LUMINANCE_TABLE = np.array([
    [16, 11, 10, 16, 24, 40, 51, 61],
    [12, 12, 14, 19, 26, 58, 60, 55],
    [14, 13, 16, 24, 40, 57, 69, 56],
    [14, 17, 22, 29, 51, 87, 80, 62],
    [18, 22, 37, 56, 68, 109, 103, 77],
    [24, 35, 55, 64, 81, 104, 113, 92],
    [49, 64, 78, 87, 103, 121, 120, 101],
    [72, 92, 95, 98, 112, 100, 103, 99],
], dtype=np.int64)


def _check_qf(qf):
    if isinstance(qf, bool) or int(qf) != qf or not 1 <= qf <= 100:
        raise QfOutOfRange(f"quality factor must be an integer in [1, 100], got {qf!r}")
    return int(qf)


@lru_cache(maxsize=None)
def _table(qf):
    scale = 5000 // qf if qf < 50 else 200 - 2 * qf
    q = (BASE_LUMINANCE_TABLE * scale + 50) // 100
    q = np.clip(q, 1, 255)
    q.setflags(write=False)
    return q


def quant_table_for_qf(qf):
    """8x8 luminance quantization table for quality factor ``qf`` (1..100).

    Uses the libjpeg scaling: S = 5000/qf below 50, else 200 - 2*qf, and
    entry = clamp(floor((base*S + 50) / 100), 1, 255).
    """
    return _table(_check_qf(qf)).copy()


@lru_cache(maxsize=None)
def _dct_matrix():
    k = np.arange(BLOCK)
    c = np.where(k == 0, 1.0 / np.sqrt(2.0), 1.0)
    # D[u, x] = C(u)/2 * cos((2x+1) u pi / 16)
    d = 0.5 * c[:, None] * np.cos((2 * k[None, :] + 1) * k[:, None] * np.pi / (2 * BLOCK))
    d.setflags(write=False)
    return d


def forward_dct_block(block):
    """Orthonormal 2-D DCT-II of one level-shifted 8x8 block."""
    block = np.asarray(block, dtype=np.float64)
    if block.shape != (BLOCK, BLOCK):
        raise ValueError(f"expected an 8x8 block, got shape {block.shape}")
    d = _dct_matrix()
    return d @ block @ d.T


def forward_dct_blocks(blocks):
    """Vectorised :func:`forward_dct_block` over an (n, 8, 8) stack."""
    d = _dct_matrix()
    return np.einsum("ux,nxy,vy->nuv", d, np.asarray(blocks, dtype=np.float64), d)


def round_half_away(x):
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def image_blocks(pixels):
    """Edge-pad to multiples of 8 and split into level-shifted 8x8 tiles.

    Tiles come out in raster order, shape (n_blocks, 8, 8).
    """
    px = np.asarray(pixels, dtype=np.float64)
    h, w = px.shape
    ph = -h % BLOCK
    pw = -w % BLOCK
    if ph or pw:
        px = np.pad(px, ((0, ph), (0, pw)), mode="edge")
    H, W = px.shape
    tiles = px.reshape(H // BLOCK, BLOCK, W // BLOCK, BLOCK).swapaxes(1, 2)
    return tiles.reshape(-1, BLOCK, BLOCK) - 128.0


def quantized_blocks(image, qf):
    """All quantized DCT coefficients of ``image`` (DC included), (n, 8, 8) int."""
    table = _table(_check_qf(qf))
    pixels = getattr(image, "pixels", image)
    coeffs = forward_dct_blocks(image_blocks(pixels))
    return round_half_away(coeffs / table).astype(np.int64)


@dataclass(frozen=True, eq=False)
class CoefficientStream:
    values: np.ndarray
    qf: int
    n_blocks: int

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, CoefficientStream):
            return NotImplemented
        return (self.qf == other.qf and self.n_blocks == other.n_blocks
                and np.array_equal(self.values, other.values))

    __hash__ = None


_AC_MASK = np.ones((BLOCK, BLOCK), dtype=bool)
_AC_MASK[0, 0] = False


def extract_coefficients(image, qf):
    """Nonzero quantized AC coefficients of ``image`` at quality ``qf``.

    Blocks are visited in raster order and each block is read row-major
    (no zig-zag); DC terms and zeros are dropped.
    """
    q = quantized_blocks(image, qf)
    ac = q[:, _AC_MASK].ravel()
    return CoefficientStream(ac[ac != 0], int(qf), q.shape[0])


def dump_coefficients(stream, path):
    """Write a stream as text, one integer per line."""
    with open(os.fspath(path), "w", encoding="ascii", newline="\n") as fh:
        fh.writelines(f"{int(v)}\n" for v in stream.values)


def load_coefficients(path, qf=0):
    with open(os.fspath(path), encoding="ascii") as fh:
        values = np.array([int(line) for line in fh if line.strip()], dtype=np.int64)
    return CoefficientStream(values, qf, 0)
