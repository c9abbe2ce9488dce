"""
No linear strong bound beyond qubits
====================================

A strong purity-based bound must reproduce Maassen-Uffink at S = 0 and vanish
on I/d. The weakest such bound that is linear in S is
f_w = -2 ln c (1 - S/ln d). It holds for qubits, but for d >= 3 explicit
states beat it.
"""

from qcuncertainty.nolinear import linear_spb_refuter, verify_violation

print(" d    c_AB      S(rho)    Q_A+Q_B    f_w       margin")
for d in (3, 4, 5, 6, 7, 8):
    case = verify_violation(d)
    print(f"{d:2d}  {case.c_max:.5f}  {case.s_rho:.5f}   {case.q_sum:.5f}   {case.f_w:.5f}   {case.margin:+.5f}")

# Dimensions 6 and up reuse the d = 3 state on a subspace: Q_A + Q_B and S are
# unchanged while ln d grows, so the violation only gets larger.

# A random search with local polishing rediscovers violations in d = 3 and
# finds none for qubits.
for d, trials in ((2, 20_000), (3, 5_000)):
    best = linear_spb_refuter(d, trials=trials, seed=0, polish=3)
    print(f"random search, d = {d}: best margin {best.margin:+.3e}")
