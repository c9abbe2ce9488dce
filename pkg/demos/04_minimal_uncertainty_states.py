"""
Minimal uncertainty states and their bifurcation
================================================

For pure qubit states in the a-b plane, H_A + H_B is minimized exactly half
way between the two axes as long as the angle gamma between them is small.
Past gamma_c the midpoint turns into a local maximum and two symmetric minima
split off, reaching the eigenstates of A and B at gamma = pi/2.
"""

import numpy as np

from qcuncertainty import extremal as ex
from qcuncertainty import qubit_pair

gamma_c = ex.bifurcation_angle()
c = np.cos(gamma_c / 2)
print(f"gamma_c = {gamma_c:.6f}  (c * artanh(c) = {c * np.arctanh(c):.9f})")

for g in (np.pi / 3, gamma_c + 0.02, 1.3, np.pi / 2):
    res = ex.pure_mus(g)
    thetas = ", ".join(f"{t:.4f}" for t in res.thetas)
    print(f"gamma = {g:.4f}: {res.n_minima} minimum/minima at theta = {thetas}  (beta = {res.beta:.4f})")

# %%
# Fixed purity
# ------------
# Mixing the pure minimizer with I/2 gives one candidate at every entropy.
# Below gamma_c it is optimal; above gamma_c the optimizer does better.
for deg in (60, 75):
    A, B = qubit_pair(np.deg2rad(deg))
    curve = ex.mus_curve(A, B, s_grid=11)
    gap = max(mix.q_sum - opt.q_sum for opt, mix in curve)
    print(f"\ngamma = {deg} deg: largest gain over the mixing line = {gap:.2e}")
    for opt, mix in curve[::2]:
        print(f"  S = {opt.target_s:.3f}  optimal {opt.q_sum:.4f}  mixing line {mix.q_sum:.4f}")

# The qutrit analogue (a few minutes at 41 points):
#   qcuncertainty mus --dim 3 --alpha pi/3 --out qutrit_mus.csv
