"""Counterexamples to strong purity-based bounds that are linear in S.

The weakest linear bound compatible with Maassen-Uffink and with vanishing
on ``I/d`` is ``f_w = -2 ln c (1 - S/ln d)``. For ``d = 3, 4, 5`` explicit
two-decimal states violate it on the rotated basis pairs of
:func:`qcuncertainty.states.counterexample_bases`; for ``d >= 6`` the ``d = 3``
case is embedded. For qubits the bound is true, so no violation exists.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .bounds import overlap, weakest_linear_spb
from .decomp import q_sum
from .entropy import _xlogx, von_neumann
from .errors import UnsupportedDimension
from .matcore import hermitian_from_params, unitary_exp
from .states import (
    computational_basis,
    counterexample_bases,
    embed_counterexample,
    haar_unitary,
    matrix_to_json,
    validate_density,
)

log = logging.getLogger(__name__)

REPAIR_FLAG_TOL = 5e-3
SEED_ENTROPY_FRACTION = 0.9

# Two-decimal states, written in the A basis. The d = 5 matrix is not
# symmetric as printed ((0, 2) = -0.06 but (2, 0) = -0.05); see hardcoded_state.
RAW_STATES = {
    3: np.array(
        [
            [0.61, -0.15, 0.00],
            [-0.15, 0.26, 0.08],
            [0.00, 0.08, 0.13],
        ]
    ),
    4: np.array(
        [
            [0.08, 0.03, 0.04, -0.03],
            [0.03, 0.06, -0.03, 0.00],
            [0.04, -0.03, 0.08, -0.03],
            [-0.03, 0.00, -0.03, 0.78],
        ]
    ),
    5: np.array(
        [
            [0.19, 0.05, -0.06, -0.02, -0.05],
            [0.05, 0.49, -0.11, 0.00, 0.00],
            [-0.05, -0.11, 0.22, -0.03, 0.02],
            [-0.02, 0.00, -0.03, 0.05, 0.00],
            [-0.05, 0.00, 0.02, 0.00, 0.05],
        ]
    ),
}


@dataclass(frozen=True)
class CounterexampleCase:
    """One (bases, state) instance checked against ``f_w``.

    ``margin = f_w - q_sum``; a positive margin is a violation.
    """

    dim: int
    basis_a: np.ndarray
    basis_b: np.ndarray
    state: np.ndarray
    c_max: float
    s_rho: float
    q_sum: float
    f_w: float

    @property
    def margin(self) -> float:
        return self.f_w - self.q_sum

    @property
    def violates(self) -> bool:
        return self.margin > 0

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "c_max": self.c_max,
            "s_rho": self.s_rho,
            "q_sum": self.q_sum,
            "f_w": self.f_w,
            "margin": self.margin,
            "violates": self.violates,
            "basis_a": matrix_to_json(self.basis_a),
            "basis_b": matrix_to_json(self.basis_b),
            "state": matrix_to_json(self.state),
        }


def repair_psd(m):
    """Clip negative eigenvalues of a Hermitian matrix and renormalize the trace.

    Returns:
        (state, max_entry_change, flagged) where ``flagged`` means the repair
        moved some entry by more than 5e-3.
    """
    m = np.asarray(m, dtype=complex)
    m = (m + m.conj().T) / 2
    w, v = np.linalg.eigh(m)
    w = np.clip(w, 0.0, None)
    fixed = (v * (w / w.sum())) @ v.conj().T
    change = float(np.max(np.abs(fixed - m)))
    return fixed, change, change > REPAIR_FLAG_TOL


def hardcoded_state(dim: int) -> np.ndarray:
    """Validated version of the two-decimal counterexample state for d = 3, 4, 5.

    The asymmetric d = 5 matrix is replaced by its symmetric part.
    """
    if dim not in RAW_STATES:
        raise UnsupportedDimension(f"no hardcoded state for d = {dim}")
    raw = RAW_STATES[dim]
    sym = (raw + raw.T) / 2
    fixed, change, flagged = repair_psd(sym)
    if flagged:
        log.warning("PSD repair of the d=%d state changed an entry by %.2e", dim, change)
    return validate_density(fixed)


def make_case(basis_a, basis_b, state) -> CounterexampleCase:
    d = state.shape[0]
    c = overlap(basis_a, basis_b).c_max
    s = min(max(von_neumann(state), 0.0), np.log(d))
    return CounterexampleCase(
        dim=d,
        basis_a=np.asarray(basis_a),
        basis_b=np.asarray(basis_b),
        state=np.asarray(state),
        c_max=c,
        s_rho=s,
        q_sum=float(q_sum(basis_a, basis_b, state)),
        f_w=weakest_linear_spb(c, s, d),
    )


def verify_violation(dim: int) -> CounterexampleCase:
    """Assemble the counterexample case in dimension ``dim >= 3``."""
    if dim < 3:
        raise UnsupportedDimension("linear strong bounds are only refuted for d >= 3")
    if dim <= 5:
        a, b = counterexample_bases(dim)
        rho = hardcoded_state(dim)
    else:
        a, b, rho = embed_counterexample(dim)
    return make_case(a, b, rho)


# ------------------------------------------------------------ random search


def _entropy_batch(w):
    return -_xlogx(w).sum(axis=-1)


def _screen(dim, trials, rng):
    """Vectorized margins for random (state, basis) trials.

    Returns margins, entropies, B bases and state factors ``F`` with
    ``rho = F F^dagger``. States are Hilbert-Schmidt samples whose spectrum
    is raised to a random power in [0.5, 4] so that low- and high-entropy
    regions are both visited.
    """
    g = rng.standard_normal((trials, dim, dim)) + 1j * rng.standard_normal((trials, dim, dim))
    w, v = np.linalg.eigh(g @ np.swapaxes(g.conj(), -1, -2))
    w = np.clip(w, 0, None) ** rng.uniform(0.5, 4.0, size=(trials, 1))
    w /= w.sum(axis=1, keepdims=True)
    rho = (v * w[:, None, :]) @ np.swapaxes(v.conj(), -1, -2)
    u = haar_unitary(dim, rng, size=trials)
    s = np.clip(_entropy_batch(w), 0, np.log(dim))
    pa = np.clip(np.real(np.einsum("nii->ni", rho)), 0, None)
    pb = np.clip(np.real(np.einsum("nji,njk,nki->ni", u.conj(), rho, u)), 0, None)
    c = np.abs(u).max(axis=(1, 2))
    q = _entropy_batch(pa) + _entropy_batch(pb) - 2 * s
    fw = -2 * np.log(c) * (1 - s / np.log(dim))
    return fw - q, s, u, v * np.sqrt(w)[:, None, :]


def _margin_from_params(x, dim, u0):
    n = dim * dim
    g = (x[:n] + 1j * x[n : 2 * n]).reshape(dim, dim)
    rho = g @ g.conj().T
    tr = np.trace(rho).real
    if tr < 1e-12:
        return -np.inf, None, None
    rho /= tr
    u = u0 @ unitary_exp(hermitian_from_params(x[2 * n :], dim))
    w = np.clip(np.linalg.eigvalsh(rho), 0, None)
    s = min(_entropy_batch(w), np.log(dim))
    pa = np.clip(np.real(np.diag(rho)), 0, None)
    pb = np.clip(np.real(np.einsum("ji,jk,ki->i", u.conj(), rho, u)), 0, None)
    c = min(np.abs(u).max(), 1.0)
    q = _entropy_batch(pa) + _entropy_batch(pb) - 2 * s
    return -2 * np.log(c) * (1 - s / np.log(dim)) - q, rho, u


def linear_spb_refuter(dim: int, trials: int = 100_000, seed=0, polish: int = 8, chunk: int = 20_000):
    """Search for a violation of ``f_w`` by random screening plus local polish.

    ``trials`` random (state, basis) pairs are screened; the ``polish`` best are
    refined with Nelder-Mead on (state factor, basis generator). Returns the
    best :class:`CounterexampleCase`; its margin may be <= 0 when nothing is
    found (as must happen for ``dim = 2``).
    """
    if dim < 2:
        raise UnsupportedDimension("dim must be >= 2")
    rng = np.random.default_rng(seed)
    top = []  # (margin, factor, unitary)
    done = 0
    while done < trials:
        n = min(chunk, trials - done)
        margins, s, u, factor = _screen(dim, n, rng)
        # I/d has margin exactly 0 and attracts the polish; seed away from it
        margins = np.where(s <= SEED_ENTROPY_FRACTION * np.log(dim), margins, -np.inf)
        for k in np.argsort(margins)[::-1][:polish]:
            top.append((margins[k], factor[k], u[k]))
        top = sorted(top, key=lambda t: t[0], reverse=True)[:polish]
        done += n

    best_margin, best_rho, best_u = -np.inf, None, None
    nn = dim * dim
    for m0, factor, u0 in top:
        x0 = np.concatenate([factor.real.ravel(), factor.imag.ravel(), np.zeros(nn)])
        res = minimize(
            lambda x: -_margin_from_params(x, dim, u0)[0],
            x0,
            method="Nelder-Mead",
            options={"maxiter": 400 * len(x0), "xatol": 1e-10, "fatol": 1e-13, "adaptive": True},
        )
        x = res.x if -res.fun >= m0 else x0
        margin, rho, u = _margin_from_params(x, dim, u0)
        if margin > best_margin:
            best_margin, best_rho, best_u = margin, rho, u
    best_rho = validate_density((best_rho + best_rho.conj().T) / 2)
    return make_case(computational_basis(dim), best_u, best_rho)
