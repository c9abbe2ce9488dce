from mpmath import mp, mpf, log as mlog
import numpy as np
import pytest

from qcuncertainty.decomp import dephase
from qcuncertainty.entropy import binary_entropy, relative_entropy, shannon, von_neumann
from qcuncertainty.errors import DimensionMismatch, InvalidDistribution, OutOfRange
from qcuncertainty.nolinear import hardcoded_state
from qcuncertainty.states import BlochState, fourier_basis, maximally_mixed, pure_state, sample_mixed, sample_pure


def test_shannon_examples():
    assert shannon([1.0, 0.0]) == 0.0
    assert abs(shannon([0.5, 0.5]) - np.log(2)) < 1e-15
    mp.dps = 40
    ref = -(mpf("0.75") * mlog(mpf("0.75")) + mpf("0.25") * mlog(mpf("0.25")))
    assert abs(shannon([0.75, 0.25]) - float(ref)) < 1e-15
    assert abs(binary_entropy(0.75) - float(ref)) < 1e-15


def test_shannon_rejects_bad_input():
    with pytest.raises(InvalidDistribution):
        shannon([0.7, 0.2])
    with pytest.raises(InvalidDistribution):
        shannon([1.1, -0.1])


def test_shannon_batches():
    p = np.array([[1.0, 0.0], [0.5, 0.5]])
    assert np.allclose(shannon(p), [0.0, np.log(2)])


def test_binary_entropy():
    assert binary_entropy(0.0) == 0.0
    assert abs(binary_entropy(0.5) - np.log(2)) < 1e-15
    p = np.linspace(0, 1, 101)
    assert np.allclose(binary_entropy(p), binary_entropy(1 - p))
    assert abs(binary_entropy(0.75) - von_neumann(BlochState(0.5).to_density())) < 1e-14
    with pytest.raises(OutOfRange):
        binary_entropy(1.2)


def test_von_neumann_examples():
    assert abs(von_neumann(sample_pure(4, seed=0))) < 1e-12
    assert abs(von_neumann(maximally_mixed(5)) - np.log(5)) < 1e-12
    rho3 = hardcoded_state(3)
    assert abs(von_neumann(rho3) - shannon(np.clip(np.linalg.eigvalsh(rho3), 0, None))) < 1e-12


def test_relative_entropy_examples():
    rho = sample_mixed(3, seed=1)
    assert abs(relative_entropy(rho, rho)) < 1e-12
    plus = pure_state([1, 1])
    assert abs(relative_entropy(plus, np.eye(2) / 2) - np.log(2)) < 1e-12
    assert relative_entropy(pure_state([1, 0]), pure_state([0, 1])) == np.inf
    with pytest.raises(DimensionMismatch):
        relative_entropy(np.eye(2) / 2, np.eye(3) / 3)


def test_relative_entropy_nonnegative():
    worst = min(relative_entropy(sample_mixed(3, 2 * k), sample_mixed(3, 2 * k + 1)) for k in range(1000))
    assert worst >= -1e-10


def test_relative_entropy_joint_convexity():
    for k in range(50):
        r1, r2, s1, s2 = (sample_mixed(3, 4 * k + j) for j in range(4))
        for lam in (0.25, 0.5, 0.75):
            lhs = relative_entropy(lam * r1 + (1 - lam) * r2, lam * s1 + (1 - lam) * s2)
            rhs = lam * relative_entropy(r1, s1) + (1 - lam) * relative_entropy(r2, s2)
            assert lhs <= rhs + 1e-9


def test_relative_entropy_contractive_under_dephasing():
    b = fourier_basis(3)
    for k in range(100):
        rho, sigma = sample_mixed(3, 2 * k), sample_mixed(3, 2 * k + 1)
        assert relative_entropy(dephase(b, rho), dephase(b, sigma)) <= relative_entropy(rho, sigma) + 1e-9
