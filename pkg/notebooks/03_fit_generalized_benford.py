# Fitting generalized-Benford parameters
#
# Run with:  python notebooks/03_fit_generalized_benford.py

import numpy as np

from benford_forensics.benford import (
    DEFAULT_GBL_PARAMS,
    FitConfig,
    digit_distribution,
    fit_gbl_params,
    generalized_benford,
)
from benford_forensics.ingest import GrayImage
from benford_forensics.jpeg import extract_coefficients

# Round trip: a distribution generated from known parameters is recovered.
for qf in (50, 80, 100):
    truth = DEFAULT_GBL_PARAMS[qf]
    res = fit_gbl_params(generalized_benford(truth), qf=qf)
    p = res.params
    print(f"QF {qf}: true ({truth.n_factor}, {truth.q_exp}, {truth.s_shift})  "
          f"fitted ({p.n_factor:.4f}, {p.q_exp:.4f}, {p.s_shift:.4f})  SSE {res.sse:.1e}")

# Fit to the coefficients of an actual (synthetic) image. A smaller start
# grid is enough for a quick look.
rng = np.random.default_rng(3)
noise = rng.normal(128, 40, (128, 128))
for _ in range(2):
    noise = 0.25 * (noise + np.roll(noise, 1, 0) + np.roll(noise, 1, 1) + np.roll(noise, (1, 1), (0, 1)))
img = GrayImage(np.clip(np.round(noise), 0, 255).astype(np.uint8))

print()
for qf in (60, 90):
    _, emp = digit_distribution(extract_coefficients(img, qf))
    res = fit_gbl_params(emp, FitConfig(grid=3), qf=qf)
    model = generalized_benford(res.params)
    print(f"QF {qf}: N={res.params.n_factor:.3f} q={res.params.q_exp:.3f} "
          f"s={res.params.s_shift:+.4f}  SSE={res.sse:.2e}  converged={res.converged}")
    print("   empirical:", np.round(emp.p, 4))
    print("   model:    ", np.round(model.p, 4))
