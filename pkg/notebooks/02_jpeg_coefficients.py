# From pixels to quantized AC coefficients
#
# Run with:  python notebooks/02_jpeg_coefficients.py

import numpy as np

from benford_forensics.ingest import GrayImage
from benford_forensics.jpeg import extract_coefficients, forward_dct_block, quant_table_for_qf, quantized_blocks

# Quality factor scales the baseline luminance table; QF 50 is the table
# itself, QF 100 is all ones.
for qf in (50, 80, 100):
    t = quant_table_for_qf(qf)
    print(f"QF {qf:3d}: top-left row {t[0].tolist()}")

# The 8x8 DCT is orthonormal: energy is preserved.
rng = np.random.default_rng(1)
block = rng.uniform(-128, 127, (8, 8))
coef = forward_dct_block(block)
print(f"\nenergy in {np.sum(block ** 2):.3f}, energy out {np.sum(coef ** 2):.3f}")

# A smooth synthetic "ridge" pattern, a little like a fingerprint.
y, x = np.mgrid[0:96, 0:128]
ridges = 128 + 60 * np.sin(0.35 * x + 0.15 * y + 0.002 * (x - 64) ** 2)
ridges += rng.normal(0, 6, ridges.shape)
img = GrayImage(np.clip(np.round(ridges), 0, 255).astype(np.uint8))

# Coarser quantization zeroes out more coefficients.
for qf in range(50, 101, 10):
    s = extract_coefficients(img, qf)
    print(f"QF {qf:3d}: {len(s):6d} nonzero AC coefficients in {s.n_blocks} blocks")

# quantized_blocks keeps everything, DC included, for inspection.
q = quantized_blocks(img, 90)
print("\nfirst block at QF 90:\n", q[0])
