"""Quantum/classical split of the entropic uncertainty of a measurement.

For a nondegenerate observable with eigenbasis ``O`` (columns) and a state
``rho``::

    H_O(rho) = Q(O, rho) + C(O, rho)
    Q(O, rho) = S(rho || D_O(rho)) = S(D_O(rho)) - S(rho)
    C(O, rho) = S(rho)

and for a (possibly degenerate) projective measurement ``{Pi_i}``::

    Q_Pi = S(D_Pi(rho)) - S(rho)
    C_Pi = S(rho) - sum_i p_i S(rho_i)

Q is always evaluated through the entropy difference; the relative-entropy
form is kept for tests only.
"""

from typing import NamedTuple

import numpy as np

from .entropy import PROB_CLIP, _xlogx, shannon, spectrum, von_neumann
from .errors import DimensionMismatch
from .states import validate_basis, validate_density, validate_measurement

REFINE_TOL = 1e-10


class UncertaintySplit(NamedTuple):
    total: float
    quantum: float
    classical: float


class MeasurementBranches(NamedTuple):
    """Outcome probabilities and normalized post-measurement states.

    ``indices`` maps each kept branch back to its projector; branches with
    ``p_i <= 1e-12`` are dropped.
    """

    probs: np.ndarray
    indices: tuple
    post_states: tuple


def _check_dims(basis, rho):
    if basis.shape[0] != rho.shape[-1]:
        raise DimensionMismatch(f"basis has dim {basis.shape[0]}, state has dim {rho.shape[-1]}")


def _prepare_state(rho):
    rho = np.asarray(rho)
    return validate_density(rho) if rho.ndim == 2 else rho


def outcome_distribution(basis, rho) -> np.ndarray:
    """``p_i = <o_i| rho |o_i>``; broadcasts over a leading stack axis of ``rho``."""
    basis = validate_basis(basis)
    rho = _prepare_state(rho)
    _check_dims(basis, rho)
    p = np.real(np.einsum("ji,...jk,ki->...i", basis.conj(), rho, basis))
    return np.clip(p, 0.0, None)


def dephase(basis, rho) -> np.ndarray:
    """Dephasing map ``D_O(rho) = sum_i <o_i|rho|o_i> |o_i><o_i|``."""
    basis = validate_basis(basis)
    p = outcome_distribution(basis, rho)
    return np.einsum("ij,...j,kj->...ik", basis, p.astype(complex), basis.conj())


def quantum_uncertainty(basis, rho):
    """``Q(O, rho) = S(D_O(rho)) - S(rho)``.

    ``D_O(rho)`` is diagonal in ``O`` with spectrum ``p(O, rho)``, so its
    entropy is the Shannon entropy of the outcome distribution.
    """
    return split(basis, rho).quantum


def classical_uncertainty(rho):
    """``C(O, rho) = S(rho)``, independent of the observable."""
    return von_neumann(_prepare_state(rho))


def split(basis, rho) -> UncertaintySplit:
    """Return ``(H, Q, C)`` for one basis and one state (or a stack of states)."""
    rho = _prepare_state(rho)
    p = outcome_distribution(basis, rho)
    h = shannon(p / p.sum(axis=-1, keepdims=True))
    c = von_neumann(rho)
    return UncertaintySplit(h, h - c, c)


def q_sum(basis_a, basis_b, rho):
    """``Q(A, rho) + Q(B, rho)``."""
    return split(basis_a, rho).quantum + split(basis_b, rho).quantum


# ---------------------------------------------------- degenerate measurements


def dephase_projective(projectors, rho) -> np.ndarray:
    """``D_Pi(rho) = sum_i Pi_i rho Pi_i``."""
    return sum(p @ rho @ p for p in projectors)


def measurement_branches(projectors, rho) -> MeasurementBranches:
    projectors = validate_measurement(projectors)
    rho = validate_density(rho)
    if projectors[0].shape != rho.shape:
        raise DimensionMismatch("measurement and state dimensions differ")
    probs, idx, post = [], [], []
    for i, p in enumerate(projectors):
        block = p @ rho @ p
        pi = np.trace(block).real
        if pi > PROB_CLIP:
            probs.append(pi)
            idx.append(i)
            post.append(block / pi)
    return MeasurementBranches(np.array(probs), tuple(idx), tuple(post))


def degenerate_split(projectors, rho) -> UncertaintySplit:
    """``(H_Pi, Q_Pi, C_Pi)`` for a projective measurement ``{Pi_i}``."""
    branches = measurement_branches(projectors, rho)
    rho = validate_density(rho)
    s_rho = -_xlogx(spectrum(rho)).sum()
    s_deph = -_xlogx(spectrum(dephase_projective(validate_measurement(projectors), rho))).sum()
    s_branches = sum(p * (-_xlogx(spectrum(r)).sum()) for p, r in zip(branches.probs, branches.post_states))
    probs = branches.probs / branches.probs.sum()
    h = shannon(probs)
    return UncertaintySplit(float(h), float(s_deph - s_rho), float(s_rho - s_branches))


def measurement_refines(fine, coarse, tol: float = REFINE_TOL) -> bool:
    """True iff every projector of ``coarse`` is a sum of projectors of ``fine``."""
    fine = validate_measurement(fine)
    coarse = validate_measurement(coarse)
    if fine[0].shape != coarse[0].shape:
        raise DimensionMismatch("measurements act on different dimensions")
    for big in coarse:
        # a fine projector lies inside `big` iff Tr(P big) = Tr(P)
        inside = [p for p in fine if abs(np.trace(p @ big).real - np.trace(p).real) <= tol]
        if not inside or np.max(np.abs(sum(inside) - big)) > tol:
            return False
    return True


def commutes_with_measurement(projectors, rho, tol: float = 1e-8) -> bool:
    """Whether ``[rho, Pi_i] = 0`` for all ``i`` (Frobenius norm within ``tol``)."""
    return all(np.linalg.norm(rho @ p - p @ rho) <= tol for p in projectors)

