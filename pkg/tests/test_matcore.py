import numpy as np
import pytest
from scipy.linalg import expm

from qcuncertainty.errors import NegativeEigenvalue, NotHermitian, NotSkew
from qcuncertainty.matcore import (
    eig_hermitian,
    expm_skew,
    hermitian_from_params,
    matrix_log_psd,
    unitary_exp,
)
from qcuncertainty.states import PAULI_Z, skew_ones


def random_hermitian(d, rng):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2


def test_eig_identity():
    w, v = eig_hermitian(np.eye(3))
    assert np.allclose(w, 1.0)


def test_eig_pauli_z():
    w, v = eig_hermitian(PAULI_Z)
    assert np.allclose(w, [-1, 1])
    assert np.allclose(np.abs(v[:, 0]), [0, 1])
    assert np.allclose(np.abs(v[:, 1]), [1, 0])


@pytest.mark.parametrize("d", [2, 5, 8])
def test_eig_reconstruction(d):
    rng = np.random.default_rng(d)
    a = random_hermitian(d, rng)
    dec = eig_hermitian(a)
    assert np.linalg.norm(a - dec.reconstruct()) <= 1e-10 * max(1, np.linalg.norm(a))
    assert np.allclose(dec.eigenvectors.conj().T @ dec.eigenvectors, np.eye(d), atol=1e-10)
    assert np.all(np.diff(dec.eigenvalues) >= 0)
    assert abs(np.trace(a).real - dec.eigenvalues.sum()) <= 1e-10


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        eig_hermitian(np.array([[0, 1], [0, 0]]))


def test_expm_skew_zero_angle():
    assert np.allclose(expm_skew(skew_ones(4), 0.0), np.eye(4))


def test_expm_skew_planar_rotation():
    theta = 0.37
    r = expm_skew(np.array([[0, 1], [-1, 0]]), theta)
    assert np.allclose(r, [[np.cos(theta), np.sin(theta)], [-np.sin(theta), np.cos(theta)]], atol=1e-14)


@pytest.mark.parametrize("d,theta", [(3, 4 * np.pi / 7), (4, np.pi / 2), (5, np.pi)])
def test_expm_skew_counterexample_angles(d, theta):
    r = expm_skew(skew_ones(d), theta)
    assert np.max(np.abs(r.T @ r - np.eye(d))) <= 1e-10
    assert abs(np.linalg.det(r) - 1) <= 1e-8
    # independent oracle: scipy's Pade-based expm
    assert np.allclose(r, expm(theta * skew_ones(d)), atol=1e-10)


@pytest.mark.parametrize("d", [2, 5, 8])
def test_expm_skew_inverse(d):
    rng = np.random.default_rng(10 + d)
    k = rng.standard_normal((d, d))
    s = k - k.T
    assert np.allclose(expm_skew(s, 0.8) @ expm_skew(s, -0.8), np.eye(d), atol=1e-10)


def test_expm_skew_rejects_symmetric():
    with pytest.raises(NotSkew):
        expm_skew(np.ones((3, 3)), 1.0)


def test_unitary_exp_matches_scipy():
    rng = np.random.default_rng(3)
    h = random_hermitian(4, rng)
    assert np.allclose(unitary_exp(h), expm(1j * h), atol=1e-12)


def test_hermitian_from_params_spans_hermitian():
    rng = np.random.default_rng(4)
    x = rng.standard_normal(9)
    h = hermitian_from_params(x, 3)
    assert np.allclose(h, h.conj().T)
    # linear and injective: d*d real parameters, d*d real dimensions
    basis = np.array([hermitian_from_params(e, 3).ravel() for e in np.eye(9)])
    real = np.concatenate([basis.real, basis.imag], axis=1)
    assert np.linalg.matrix_rank(real) == 9


def test_log_identity_is_zero():
    assert np.allclose(matrix_log_psd(np.eye(3)), 0)


def test_log_diagonal():
    assert np.allclose(matrix_log_psd(np.diag([np.e, 1.0])), np.diag([1.0, 0.0]))


def test_log_roundtrip_on_support():
    rng = np.random.default_rng(5)
    g = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
    a = g @ g.conj().T  # rank 2
    w, v = np.linalg.eigh(a)
    sup = v[:, w > 1e-12]
    proj = sup @ sup.conj().T
    back = proj @ expm(matrix_log_psd(a)) @ proj
    assert np.allclose(back, a, atol=1e-9)


def test_log_rejects_negative():
    with pytest.raises(NegativeEigenvalue):
        matrix_log_psd(np.diag([1.0, -1e-6]))
