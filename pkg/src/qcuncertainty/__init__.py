"""Quantum and classical parts of entropic uncertainty.

Submodules:

* ``matcore``  -- Hermitian eigendecomposition, exponentials, PSD logarithm
* ``states``   -- density matrices, bases, Bloch form, random sampling
* ``entropy``  -- Shannon, von Neumann and relative entropy (nats)
* ``decomp``   -- ``H = Q + C`` for sharp and degenerate measurements
* ``bounds``   -- uncertainty bounds on ``H_A + H_B`` and ``Q_A + Q_B``
* ``nolinear`` -- counterexamples to linear strong purity-based bounds
* ``extremal`` -- minimal / maximal uncertainty states, one-way discord
* ``cli``      -- the ``qcuncertainty`` command
"""

__version__ = "0.1.0"

from . import bounds, decomp, entropy, extremal, matcore, nolinear, states
from .decomp import UncertaintySplit, degenerate_split, q_sum, split
from .entropy import relative_entropy, shannon, von_neumann
from .errors import QCUncertaintyError
from .states import (
    computational_basis,
    counterexample_bases,
    fourier_basis,
    qubit_pair,
    qutrit_pair,
    sample_mixed,
    sample_pure,
)
