"""Entropy functionals, all in nats.

``shannon`` and ``von_neumann`` broadcast over leading axes, which the
verification sweeps rely on to process 10^4-10^5 states at once.
"""

import numpy as np
from scipy.special import entr

from .errors import DimensionMismatch, InvalidDistribution, NotPSD, OutOfRange
from .matcore import PSD_CLIP, eig_hermitian
from .states import validate_density

PROB_CLIP = 1e-12
NORM_TOL = 1e-10


def _xlogx(p: np.ndarray) -> np.ndarray:
    # 0 ln 0 = 0, and anything below PROB_CLIP is treated as 0
    p = np.where(p > PROB_CLIP, p, 0.0)
    safe = np.where(p > 0, p, 1.0)
    return p * np.log(safe)


def shannon(p) -> float | np.ndarray:
    """Shannon entropy ``-sum p_i ln p_i`` along the last axis.

    Raises:
        InvalidDistribution: entries below ``-1e-12`` or sum off by more than 1e-10.
    """
    p = np.asarray(p, dtype=float)
    if p.ndim == 0 or p.shape[-1] == 0:
        raise InvalidDistribution("empty distribution")
    if np.any(p < -PROB_CLIP):
        raise InvalidDistribution("negative probability")
    if np.any(np.abs(p.sum(axis=-1) - 1.0) > NORM_TOL):
        raise InvalidDistribution("probabilities do not sum to 1")
    h = -_xlogx(p).sum(axis=-1)
    return float(h) if h.ndim == 0 else h


def binary_entropy(p) -> float | np.ndarray:
    """``H_2(p) = -p ln p - (1-p) ln(1-p)``; broadcasts over arrays.

    Evaluated exactly (no small-probability clipping): the argument is a
    closed-form number, not eigensolver output.
    """
    p = np.asarray(p, dtype=float)
    if np.any((p < 0) | (p > 1)):
        raise OutOfRange("p must lie in [0, 1]")
    h = entr(p) + entr(1.0 - p)
    return float(h) if h.ndim == 0 else h


def spectrum(rho) -> np.ndarray:
    """Eigenvalues of a state or stack of states, checked for PSD and clipped at 0."""
    rho = np.asarray(rho)
    w = np.linalg.eigvalsh(rho)
    if np.any(w < -PSD_CLIP):
        raise NotPSD(f"eigenvalue {w.min():.3e} is negative")
    return np.clip(w, 0.0, None)


def von_neumann(rho) -> float | np.ndarray:
    """``S(rho) = -Tr rho ln rho``; a single matrix is fully validated first."""
    rho = np.asarray(rho)
    if rho.ndim == 2:
        rho = validate_density(rho)
    h = -_xlogx(spectrum(rho)).sum(axis=-1)
    return float(h) if h.ndim == 0 else h


def relative_entropy(rho, sigma) -> float:
    """Quantum relative entropy ``S(rho || sigma) = Tr rho (ln rho - ln sigma)``.

    Returns ``inf`` when the support of ``rho`` is not contained in that of
    ``sigma``.
    """
    rho = validate_density(rho)
    sigma = validate_density(sigma)
    if rho.shape != sigma.shape:
        raise DimensionMismatch(f"{rho.shape} vs {sigma.shape}")
    wr, vr = eig_hermitian(rho)
    ws, vs = eig_hermitian(sigma)
    kernel = vs[:, ws <= PSD_CLIP]
    if kernel.size and np.real(np.trace(kernel.conj().T @ rho @ kernel)) > PSD_CLIP:
        return float("inf")
    sup = ws > PSD_CLIP
    log_sigma = (vs[:, sup] * np.log(ws[sup])) @ vs[:, sup].conj().T
    neg_s = _xlogx(np.clip(wr, 0.0, None)).sum()
    return float(neg_s - np.real(np.trace(rho @ log_sigma)))
