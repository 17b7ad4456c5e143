# Standard and generalized first-digit laws
#
# Run with:  python notebooks/01_benford_laws.py

import numpy as np

from benford_forensics.benford import (
    DEFAULT_GBL_PARAMS,
    chi_square_divergence,
    first_digit,
    generalized_benford,
    standard_benford,
)

# The leading digit ignores sign and scale.
for v in (123, -0.00456, 9.99, 31415.9):
    print(f"first_digit({v}) = {first_digit(v)}")

# The standard law, p(x) = log10(1 + 1/x).
std = standard_benford()
print("\nstandard law:")
for d in range(1, 10):
    print(f"  {d}: {std[d]:.5f}  " + "#" * int(200 * std[d]))
print(f"  sum = {std.p.sum():.15f}")

# Quantized JPEG AC coefficients follow a three-parameter family instead.
# The shipped table has one parameter set per quality factor; none of them
# is renormalised, so the sums drift slightly from 1.
print("\ngeneralized law, per quality factor:")
print("  QF     N      q       s      p(1)    sum")
for qf in sorted(DEFAULT_GBL_PARAMS):
    prm = DEFAULT_GBL_PARAMS[qf]
    g = generalized_benford(prm)
    print(f"  {qf:3d}  {prm.n_factor:.3f}  {prm.q_exp:.3f}  {prm.s_shift:+.4f}  "
          f"{g[1]:.4f}  {g.p.sum():.4f}")

# Chi-square divergence: the model goes in the denominator, so argument
# order matters.
g50 = generalized_benford(DEFAULT_GBL_PARAMS[50])
print(f"\nchi2(standard || QF50 model) = {chi_square_divergence(std, g50):.5f}")
print(f"chi2(QF50 model || standard) = {chi_square_divergence(g50, std):.5f}")

# Leading digits of 10**U, with U uniform, follow the standard law.
rng = np.random.default_rng(0)
vals = 10 ** rng.uniform(0, 5, 100_000)
digits = np.array([first_digit(v) for v in vals])
emp = np.bincount(digits, minlength=10)[1:] / len(digits)
print("\nempirical vs law for 10**U:", np.round(emp - std.p, 4))
