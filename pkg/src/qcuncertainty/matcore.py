"""Small dense complex linear algebra.

All routines target d <= ~16 and work on plain ``numpy`` arrays. Matrix
functions go through the Hermitian eigendecomposition, which is exact enough
at these sizes and keeps every function on the same code path.
"""

from typing import NamedTuple

import numpy as np

from .errors import NegativeEigenvalue, NotHermitian, NotSkew

HERMITIAN_TOL = 1e-10
SKEW_TOL = 1e-12
PSD_CLIP = 1e-12


class EigDecomposition(NamedTuple):
    """Ascending eigenvalues and the matching orthonormal eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return bool(np.max(np.abs(a - a.conj().T), initial=0.0) <= tol)


def dagger(a: np.ndarray) -> np.ndarray:
    return np.swapaxes(np.conj(a), -1, -2)


def eig_hermitian(a, tol: float = HERMITIAN_TOL) -> EigDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Raises:
        NotHermitian: if ``max |A - A^dagger| > tol`` or ``A`` is not square.
    """
    a = np.asarray(a, dtype=complex)
    if not is_hermitian(a, tol):
        raise NotHermitian(f"matrix is not Hermitian within {tol:g}")
    # symmetrize so LAPACK sees an exactly Hermitian input
    w, v = np.linalg.eigh((a + a.conj().T) / 2)
    return EigDecomposition(w, v)


def expm_skew(s, theta: float) -> np.ndarray:
    """Orthogonal matrix ``exp(theta * S)`` for a real skew-symmetric ``S``.

    ``iS`` is Hermitian, so ``S = V diag(-i w) V^dagger`` and the exponential
    is assembled from its spectrum. The imaginary residue is discarded.
    """
    s = np.asarray(s)
    if np.iscomplexobj(s):
        if np.max(np.abs(s.imag), initial=0.0) > SKEW_TOL:
            raise NotSkew("matrix has a non-zero imaginary part")
        s = s.real
    s = s.astype(float)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise NotSkew("matrix is not square")
    if np.max(np.abs(s + s.T), initial=0.0) > SKEW_TOL:
        raise NotSkew(f"matrix is not skew-symmetric within {SKEW_TOL:g}")
    w, v = np.linalg.eigh(1j * s)
    r = (v * np.exp(-1j * theta * w)) @ v.conj().T
    return r.real


def unitary_exp(h) -> np.ndarray:
    """``exp(iH)`` for Hermitian ``H``."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * w)) @ v.conj().T


def hermitian_from_params(x, d: int) -> np.ndarray:
    """Map ``d*d`` reals to a Hermitian matrix (upper triangle = real part,
    lower triangle = imaginary part, diagonal real)."""
    k = np.asarray(x, dtype=float).reshape(d, d)
    upper = np.triu(k)
    lower = np.tril(k, -1)
    return upper + np.triu(upper, 1).T + 1j * (lower.T - lower)


def matrix_log_psd(a, clip: float = PSD_CLIP) -> np.ndarray:
    """Natural logarithm of a PSD matrix restricted to its support.

    Eigenvalues in ``[-clip, clip]`` are treated as zero and mapped to ``0`` in
    the output, i.e. the result acts as the zero operator on the kernel. The
    caller is responsible for the ``0 ln 0 = 0`` convention.

    Raises:
        NegativeEigenvalue: an eigenvalue is below ``-clip``.
    """
    w, v = eig_hermitian(a)
    if w[0] < -clip:
        raise NegativeEigenvalue(f"eigenvalue {w[0]:.3e} < -{clip:g}")
    support = w > clip
    logw = np.zeros_like(w)
    logw[support] = np.log(w[support])
    return (v * logw) @ v.conj().T


def support_projector(a, clip: float = PSD_CLIP) -> np.ndarray:
    w, v = eig_hermitian(a)
    vs = v[:, w > clip]
    return vs @ vs.conj().T


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product ``Tr[A^dagger B]``."""
    return complex(np.vdot(np.asarray(a), np.asarray(b)))
