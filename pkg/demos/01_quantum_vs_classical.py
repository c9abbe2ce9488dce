"""
Quantum versus classical uncertainty
====================================

The Shannon entropy of a measurement splits into a quantum part (the
coherence destroyed by measuring) and a classical part (the entropy already
present in the state). Two states with the same outcome statistics can sit at
opposite ends of this split.
"""

import numpy as np

from qcuncertainty import computational_basis, degenerate_split, split
from qcuncertainty.states import maximally_mixed, pure_state

Z = computational_basis(2)
plus = pure_state([1, 1])
mixed = maximally_mixed(2)

# Both give a fair coin when measured in Z ...
for name, rho in [("|+><+|", plus), ("I/2", mixed)]:
    h, q, c = split(Z, rho)
    print(f"{name:7s}  H = {h:.4f}   Q = {q:.4f}   C = {c:.4f}")

# ... but for |+> the uncertainty is entirely quantum and for I/2 entirely
# classical. Intermediate states interpolate:
for p in np.linspace(0, 1, 5):
    h, q, c = split(Z, p * plus + (1 - p) * mixed)
    print(f"p = {p:.2f}: Q = {q:.4f}, C = {c:.4f}, Q + C = {h:.4f}")

# %%
# Degenerate measurements
# -----------------------
# With a coarse-grained measurement the classical part is the QC mutual
# information S(rho) - sum_i p_i S(rho_i). For the qutrit state
# (|0><0| + |1><1|)/2 measured with {|0><0| + |1><1|, |2><2|} the outcome is
# certain, and all three quantities vanish although S(rho) = ln 2.
xi = np.diag([0.5, 0.5, 0.0])
coarse = [np.diag([1.0, 1.0, 0.0]), np.diag([0.0, 0.0, 1.0])]
print("coarse measurement on xi:", degenerate_split(coarse, xi))
print("sharp measurement on xi: ", split(computational_basis(3), xi))
