"""
Maximal uncertainty and one-way discord
=======================================

There is always a pure state with uniform statistics in both eigenbases. Its
Q_A + Q_B reaches 2 ln d while the maximally mixed state has Q_A + Q_B = 0,
so no nonzero state-independent bound on the quantum part exists. Mixing that
state with I/d keeps H_A + H_B = 2 ln d and hands the uncertainty over from Q
to C.

On a bipartite pure state the smallest Q of a local measurement equals the
entanglement entropy.
"""

import numpy as np

from qcuncertainty import extremal as ex
from qcuncertainty import qutrit_pair, sample_pure, split

A, B = qutrit_pair(np.pi / 3)
psi = ex.find_unbiased(A, B, seed=0)
print(f"unbiased-state residual: {ex.unbiased_residual(A, B, psi):.1e}")
print("   p     H_A+H_B   Q_A+Q_B   2S")
for p in np.linspace(0, 1, 6):
    rho = ex.max_uncertainty_family(A, B, p, psi_star=psi)
    sa, sb = split(A, rho), split(B, rho)
    print(f"  {p:.1f}   {sa.total + sb.total:.4f}    {sa.quantum + sb.quantum:.4f}    {2 * sa.classical:.4f}")
print(f"2 ln 3 = {2 * np.log(3):.4f}")

# %%
# One-way discord of pure states
for dims in ((2, 2), (2, 3)):
    for seed in range(3):
        psi12 = sample_pure(dims[0] * dims[1], seed=seed)
        e = ex.entanglement_entropy(psi12, dims)
        q = ex.one_way_discord(psi12, dims, seed=seed)
        print(f"{dims[0]}x{dims[1]} seed {seed}: min local Q = {q:.8f}   S(Tr_2 psi) = {e:.8f}")
