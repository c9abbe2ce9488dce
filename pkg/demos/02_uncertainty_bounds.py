"""
Bounds on the quantum part of uncertainty
=========================================

For a qubit pair at Bloch angle gamma (overlap c = cos(gamma/2)) we sample
Hilbert-Schmidt random states and compare Q_A + Q_B against:

* Maassen-Uffink moved to the Q plane:  -2 ln c - 2S
* the overlap purity bound:             -2 ln c - S
* the qubit strong purity-based bound:  -2 ln c (1 - S/ln 2)

The last one is the only one that is zero at the maximally mixed state and
equals the Maassen-Uffink value at S = 0.
"""

import numpy as np

from qcuncertainty import bounds as bd
from qcuncertainty import qubit_pair, sample_mixed, split

gamma = np.pi / 3
A, B = qubit_pair(gamma)
c = bd.overlap(A, B).c_max
print(f"gamma = pi/3  ->  c_AB = {c:.4f}")

rho = sample_mixed(2, seed=0, size=20_000)
sa, sb = split(A, rho), split(B, rho)
q = sa.quantum + sb.quantum
s = np.clip(sa.classical, 0, np.log(2))

for name, rhs in [
    ("Maassen-Uffink", -2 * np.log(c) - 2 * s),
    ("overlap purity", bd.overlap_purity_bound(c, s)),
    ("qubit strong", bd.qubit_spb_rhs(c, s)),
]:
    slack = q - rhs
    print(f"{name:15s} min slack {slack.min(): .3e}   mean slack {slack.mean():.3f}")

# The state-dependent bound from dephasing is tighter than all of them:
deph = bd.dephasing_rhs(A, B, rho)
print(f"dephasing RHS   min slack {deph.min_slack: .3e}   mean slack {np.mean(deph.slack):.3f}")

# Binned lower envelope of the cloud next to the strong bound. The envelope
# is curved; no linear-in-S bound can follow it except for MUBs.
edges = np.linspace(0, np.log(2), 9)
idx = np.digitize(s, edges) - 1
for k in range(8):
    sel = idx == k
    if sel.any():
        mid = (edges[k] + edges[k + 1]) / 2
        print(f"S in [{edges[k]:.3f}, {edges[k + 1]:.3f}):  min Q = {q[sel].min():.4f}   strong bound at mid = {bd.qubit_spb_rhs(c, mid):.4f}")

# The same data is produced by:  qcuncertainty qc-plot --gamma pi/3 --out cloud.csv
