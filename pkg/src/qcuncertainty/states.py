"""States, observable bases and projective measurements.

Conventions used throughout the package:

* a density matrix is a ``(d, d)`` complex ndarray (stacks ``(n, d, d)`` are
  accepted by the vectorized entropy/decomposition helpers);
* an observable is represented only by its eigenbasis, a ``(d, d)`` unitary
  whose *columns* are the eigenvectors ``|o_i>``. Eigenvalues never enter any
  uncertainty quantity, so they are not stored;
* a projective measurement is a list of ``(d, d)`` orthogonal projectors.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    NotHermitian,
    NotOrthonormal,
    NotPSD,
    NotUnitTrace,
    InvalidMeasurement,
    RadiusOutOfRange,
    UnsupportedDimension,
    WrongDimension,
)
from .matcore import HERMITIAN_TOL, PSD_CLIP, expm_skew

TRACE_TOL = 1e-10
ORTHO_TOL = 1e-10

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = np.stack([PAULI_X, PAULI_Y, PAULI_Z])

# rotation angles for the d = 3, 4, 5 counterexample basis pairs
COUNTEREXAMPLE_ANGLES = {3: 4 * np.pi / 7, 4: np.pi / 2, 5: np.pi}


# ---------------------------------------------------------------- validation


def validate_density(m, clip: float = PSD_CLIP) -> np.ndarray:
    """Check that ``m`` is a density matrix and return a cleaned copy.

    The returned matrix is exactly Hermitian; eigenvalues in ``[-clip, 0)``
    are set to zero and the trace is renormalized.

    Raises:
        NotHermitian, NotUnitTrace, NotPSD
    """
    m = np.array(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {m.shape}")
    if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
        raise NotHermitian(f"matrix is not Hermitian within {HERMITIAN_TOL:g}")
    m = (m + m.conj().T) / 2
    tr = np.trace(m).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise NotUnitTrace(f"trace is {tr!r}")
    w, v = np.linalg.eigh(m)
    if w[0] < -clip:
        raise NotPSD(f"smallest eigenvalue {w[0]:.3e} is negative")
    if w[0] < 0:
        w = np.clip(w, 0.0, None)
        w = w / w.sum()
        m = (v * w) @ v.conj().T
        m = (m + m.conj().T) / 2
    return m


def is_density(m) -> bool:
    try:
        validate_density(m)
    except (NotHermitian, NotUnitTrace, NotPSD):
        return False
    return True


def validate_basis(u) -> np.ndarray:
    """Check that the columns of ``u`` are orthonormal; returns a complex copy."""
    u = np.array(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise NotOrthonormal(f"expected a square matrix, got shape {u.shape}")
    err = np.max(np.abs(u.conj().T @ u - np.eye(len(u))))
    if err > ORTHO_TOL:
        raise NotOrthonormal(f"columns are not orthonormal (residual {err:.2e})")
    return u


def validate_measurement(projectors) -> list:
    """Check ``Pi_i Pi_j = delta_ij Pi_i`` and ``sum_i Pi_i = I`` within 1e-10."""
    ps = [np.array(p, dtype=complex) for p in projectors]
    if not ps:
        raise InvalidMeasurement("empty measurement")
    d = ps[0].shape[0]
    for p in ps:
        if p.shape != (d, d):
            raise InvalidMeasurement("projectors have inconsistent shapes")
        if np.max(np.abs(p - p.conj().T)) > ORTHO_TOL:
            raise InvalidMeasurement("projector is not Hermitian")
        if np.trace(p).real < 0.5:
            raise InvalidMeasurement("projector has rank 0")
    for i, p in enumerate(ps):
        for j, q in enumerate(ps):
            target = p if i == j else 0.0
            if np.max(np.abs(p @ q - target)) > ORTHO_TOL:
                raise InvalidMeasurement(f"projectors {i} and {j} violate Pi_i Pi_j = delta_ij Pi_i")
    if np.max(np.abs(sum(ps) - np.eye(d))) > ORTHO_TOL:
        raise InvalidMeasurement("projectors do not sum to the identity")
    return ps


def basis_measurement(u) -> list:
    """Rank-1 projective measurement onto the columns of ``u``."""
    u = validate_basis(u)
    return [np.outer(u[:, i], u[:, i].conj()) for i in range(u.shape[1])]


def pure_state(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def maximally_mixed(d: int) -> np.ndarray:
    return np.eye(d, dtype=complex) / d


# ------------------------------------------------------------------- bases


def computational_basis(d: int) -> np.ndarray:
    return np.eye(d, dtype=complex)


def fourier_basis(d: int) -> np.ndarray:
    """Discrete Fourier basis; mutually unbiased with the computational one."""
    j, k = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    return np.exp(2j * np.pi * j * k / d) / np.sqrt(d)


def qubit_basis_from_bloch(n) -> np.ndarray:
    """Eigenbasis of ``n . sigma``: column 0 is the +1 eigenvector."""
    n = np.asarray(n, dtype=float)
    n = n / np.linalg.norm(n)
    w, v = np.linalg.eigh(np.einsum("k,kij->ij", n, PAULIS))
    return v[:, ::-1]


def qubit_pair(gamma: float) -> tuple:
    """Qubit observables with Bloch axes ``a = z`` and ``b = (sin g, 0, cos g)``.

    The eigenbases overlap as ``c_AB = cos(gamma / 2)``.
    """
    a = qubit_basis_from_bloch([0.0, 0.0, 1.0])
    b = qubit_basis_from_bloch([np.sin(gamma), 0.0, np.cos(gamma)])
    return a, b


def rotation_111(alpha: float) -> np.ndarray:
    """Real 3x3 rotation about the (1,1,1) axis by ``alpha``."""
    n = np.ones(3) / np.sqrt(3)
    k = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
    return np.cos(alpha) * np.eye(3) + np.sin(alpha) * k + (1 - np.cos(alpha)) * np.outer(n, n)


def qutrit_pair(alpha: float) -> tuple:
    """Computational basis and its image under :func:`rotation_111`."""
    return computational_basis(3), rotation_111(alpha).astype(complex)


def skew_ones(d: int) -> np.ndarray:
    """Skew-symmetric matrix with +1 above and -1 below the diagonal."""
    upper = np.triu(np.ones((d, d)), 1)
    return upper - upper.T


def counterexample_bases(dim: int) -> tuple:
    """Basis pair ``(A, B)`` with ``B = exp(theta_d S_d) A`` for d = 3, 4, 5."""
    if dim not in COUNTEREXAMPLE_ANGLES:
        raise UnsupportedDimension(f"counterexample bases exist for d in {{3, 4, 5}}, got {dim}")
    rot = expm_skew(skew_ones(dim), COUNTEREXAMPLE_ANGLES[dim])
    return computational_basis(dim), rot.astype(complex)


def embed_counterexample(dim: int) -> tuple:
    """Lift the d = 3 counterexample to ``dim >= 6``.

    The first three coordinates carry the d = 3 pair, the complement carries
    the computational/Fourier pair (mutually unbiased, overlaps
    ``1/sqrt(dim - 3)``). The d = 3 state is zero-padded.

    Returns:
        (A, B, rho)
    """
    if dim < 6:
        raise UnsupportedDimension(f"embedding needs dim >= 6, got {dim}")
    from .nolinear import hardcoded_state

    a3, b3 = counterexample_bases(3)
    m = dim - 3
    a = np.zeros((dim, dim), dtype=complex)
    b = np.zeros((dim, dim), dtype=complex)
    a[:3, :3] = a3
    b[:3, :3] = b3
    a[3:, 3:] = computational_basis(m)
    b[3:, 3:] = fourier_basis(m)
    rho = np.zeros((dim, dim), dtype=complex)
    rho[:3, :3] = hardcoded_state(3)
    return a, b, rho


# -------------------------------------------------------------------- Bloch


@dataclass(frozen=True)
class BlochState:
    """Qubit state ``(I + r n . sigma)/2`` with ``n = (sin a cos p, sin a sin p, cos a)``."""

    r: float
    alpha: float = 0.0
    phi: float = 0.0

    @property
    def vector(self) -> np.ndarray:
        return self.r * np.array(
            [
                np.sin(self.alpha) * np.cos(self.phi),
                np.sin(self.alpha) * np.sin(self.phi),
                np.cos(self.alpha),
            ]
        )

    def to_density(self) -> np.ndarray:
        return bloch_to_density(self)


def bloch_to_density(s) -> np.ndarray:
    """Density matrix of a :class:`BlochState` (or of a raw Bloch vector)."""
    if isinstance(s, BlochState):
        if not 0.0 <= s.r <= 1.0:
            raise RadiusOutOfRange(f"r = {s.r} outside [0, 1]")
        vec = s.vector
    else:
        vec = np.asarray(s, dtype=float)
        if np.linalg.norm(vec) > 1.0 + 1e-12:
            raise RadiusOutOfRange(f"|r| = {np.linalg.norm(vec)} > 1")
    return (np.eye(2) + np.einsum("k,kij->ij", vec, PAULIS)) / 2


def density_to_bloch(rho) -> np.ndarray:
    rho = np.asarray(rho)
    if rho.shape[-2:] != (2, 2):
        raise WrongDimension("Bloch vectors exist only for qubits")
    return np.real(np.einsum("...ij,kji->...k", rho, PAULIS))


# ----------------------------------------------------------------- sampling


def haar_unitary(dim: int, rng, size=None) -> np.ndarray:
    """Haar-random unitary via QR of a Ginibre matrix with phase correction."""
    shape = (dim, dim) if size is None else (size, dim, dim)
    z = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r, axis1=-2, axis2=-1)
    ph = ph / np.abs(ph)
    return q * ph[..., None, :]


def sample_pure(dim: int, seed, size=None) -> np.ndarray:
    """Haar-random pure state(s) as density matrices.

    With ``size`` set, returns a stack of shape ``(size, dim, dim)``.
    """
    if dim < 2:
        raise UnsupportedDimension("dim must be >= 2")
    rng = np.random.default_rng(seed)
    shape = (dim,) if size is None else (size, dim)
    psi = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    psi /= np.linalg.norm(psi, axis=-1, keepdims=True)
    return psi[..., :, None] * psi.conj()[..., None, :]


def sample_mixed(dim: int, seed, size=None) -> np.ndarray:
    """Hilbert-Schmidt random state(s) ``G G^dagger / Tr(G G^dagger)``."""
    if dim < 2:
        raise UnsupportedDimension("dim must be >= 2")
    rng = np.random.default_rng(seed)
    shape = (dim, dim) if size is None else (size, dim, dim)
    g = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    rho = g @ np.swapaxes(g.conj(), -1, -2)
    rho /= np.trace(rho, axis1=-2, axis2=-1).real[..., None, None]
    return (rho + np.swapaxes(rho.conj(), -1, -2)) / 2


# --------------------------------------------------------------------- JSON


def matrix_to_json(m) -> dict:
    """``{dim, re, im}`` row-major encoding of a square complex matrix."""
    m = np.asarray(m, dtype=complex)
    return {"dim": int(m.shape[0]), "re": m.real.tolist(), "im": m.imag.tolist()}


def matrix_from_json(obj) -> np.ndarray:
    m = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
    if m.shape != (obj["dim"], obj["dim"]):
        raise WrongDimension(f"declared dim {obj['dim']} but matrix has shape {m.shape}")
    return m
