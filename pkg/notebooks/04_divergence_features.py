# Building the six-column divergence dataset
#
# Writes a small class-per-directory image tree to a temporary folder, then
# runs the same extraction as `benford-forensics extract`.
#
# Run with:  python notebooks/04_divergence_features.py

import io
import tempfile
from pathlib import Path

import numpy as np

from benford_forensics.features import build_dataset, read_csv, write_csv
from benford_forensics.ingest import scan_dataset, write_pgm

rng = np.random.default_rng(4)


def sensor_like(smooth, noise):
    img = rng.normal(128, 45, (80, 80))
    for _ in range(smooth):
        img = 0.25 * (img + np.roll(img, 1, 0) + np.roll(img, 1, 1) + np.roll(img, (1, 1), (0, 1)))
    img += rng.normal(0, noise, img.shape)
    return np.clip(np.round(img), 0, 255).astype(np.uint8)


root = Path(tempfile.mkdtemp()) / "sensors"
for name, smooth, noise in (("optical", 1, 2), ("capacitive", 3, 8), ("synthetic", 0, 0)):
    (root / name).mkdir(parents=True)
    for i in range(6):
        write_pgm(sensor_like(smooth, noise), root / name / f"{i:02d}.pgm")
# a flat frame has no AC energy and gets rejected rather than imputed
write_pgm(np.full((80, 80), 128, np.uint8), root / "optical" / "blank.pgm")

images = scan_dataset(root)
print("classes:", images.label_names, "counts:", images.counts())

ds = build_dataset(images)
print(f"{len(ds)} rows, rejected: {[Path(p).name for p, _ in ds.rejected]}")

buf = io.StringIO()
write_csv(ds, buf)
print()
print("\n".join(buf.getvalue().splitlines()[:6]))

# Per-class mean divergence at each QF
X, y = ds.X, ds.y
print("\nmean divergence per class:")
for c, name in enumerate(ds.label_names):
    print(f"  {name:>10}: {np.round(X[y == c].mean(axis=0), 3)}")

# CSV is the hand-off to the learning stage.
back = read_csv(io.StringIO(buf.getvalue()))
print("\nround trip rows:", len(back))
