import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qcuncertainty.decomp import (
    classical_uncertainty,
    commutes_with_measurement,
    degenerate_split,
    dephase,
    dephase_projective,
    measurement_branches,
    measurement_refines,
    outcome_distribution,
    quantum_uncertainty,
    split,
)
from qcuncertainty.entropy import binary_entropy, relative_entropy, shannon, von_neumann
from qcuncertainty.errors import DimensionMismatch, InvalidMeasurement
from qcuncertainty.nolinear import hardcoded_state
from qcuncertainty.states import (
    BlochState,
    basis_measurement,
    computational_basis,
    counterexample_bases,
    haar_unitary,
    maximally_mixed,
    pure_state,
    sample_mixed,
    sample_pure,
)

Z = computational_basis(2)
X = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
PLUS = pure_state([1, 1])
LN2 = np.log(2)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def random_basis(d, seed):
    return haar_unitary(d, np.random.default_rng(seed))


def test_outcome_distribution_examples():
    assert np.allclose(outcome_distribution(Z, PLUS), [0.5, 0.5])
    assert np.allclose(outcome_distribution(Z, pure_state([1, 0])), [1, 0])
    a, b = counterexample_bases(3)
    rho = hardcoded_state(3)
    assert np.allclose(outcome_distribution(b, rho), np.diag(b.T @ rho @ b).real, atol=1e-14)
    with pytest.raises(DimensionMismatch):
        outcome_distribution(Z, maximally_mixed(3))


def test_dephase_examples():
    diag = np.diag([0.2, 0.3, 0.5]).astype(complex)
    assert np.allclose(dephase(computational_basis(3), diag), diag)
    assert np.allclose(dephase(Z, PLUS), np.eye(2) / 2)
    rho = sample_mixed(4, seed=3)
    o = random_basis(4, 4)
    once = dephase(o, rho)
    assert np.max(np.abs(dephase(o, once) - once)) <= 1e-12
    assert np.allclose(np.diag(o.conj().T @ once @ o).real, outcome_distribution(o, rho))


def test_quantum_uncertainty_examples():
    assert abs(quantum_uncertainty(Z, PLUS) - LN2) < 1e-12
    assert abs(quantum_uncertainty(random_basis(3, 1), maximally_mixed(3))) < 1e-12


@pytest.mark.parametrize("seed", range(5))
def test_q_two_route_oracle(seed):
    rho = sample_mixed(3, seed)
    o = random_basis(3, 100 + seed)
    assert abs(quantum_uncertainty(o, rho) - relative_entropy(rho, dephase(o, rho))) <= 1e-9


def test_classical_uncertainty():
    assert abs(classical_uncertainty(sample_pure(3, 0))) < 1e-12
    assert abs(classical_uncertainty(np.eye(2) / 2) - LN2) < 1e-12
    rho3 = hardcoded_state(3)
    assert classical_uncertainty(rho3) == von_neumann(rho3)


def test_split_examples():
    assert np.allclose(split(Z, PLUS), (LN2, LN2, 0.0), atol=1e-12)
    assert np.allclose(split(Z, np.eye(2) / 2), (LN2, 0.0, LN2), atol=1e-12)
    rho = BlochState(0.5, np.pi / 4).to_density()
    p = (1 + 0.5 * np.cos(np.pi / 4)) / 2
    h, q, c = split(Z, rho)
    assert abs(h - binary_entropy(p)) < 1e-12
    assert abs(c - binary_entropy(0.75)) < 1e-12
    assert abs(q - (h - c)) < 1e-12


def test_split_batches_match_single():
    stack = sample_mixed(3, seed=9, size=20)
    o = random_basis(3, 9)
    batch = split(o, stack)
    for k in range(20):
        assert np.allclose(split(o, stack[k]), [x[k] for x in batch], atol=1e-13)


# ----------------------------------------------------------- Luo criteria


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(2, 5))
def test_c_vanishes_on_pure(seed, d):
    psi = sample_pure(d, seed)
    o = random_basis(d, seed + 1)
    assert abs(split(o, psi).classical) <= 1e-10
    coarse = [sum(basis_measurement(o)[:-1]), basis_measurement(o)[-1]]
    assert abs(degenerate_split(coarse, psi).classical) <= 1e-10


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(2, 5))
def test_q_vanishes_on_commuting(seed, d):
    o = random_basis(d, seed)
    p = np.random.default_rng(seed).dirichlet(np.ones(d))
    rho = (o * p) @ o.conj().T
    assert abs(split(o, rho).quantum) <= 1e-10


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_convexity_of_q_concavity_of_c(seed):
    r1, r2 = sample_mixed(3, seed), sample_mixed(3, seed + 1)
    o = random_basis(3, seed + 2)
    s1, s2 = split(o, r1), split(o, r2)
    for lam in np.linspace(0, 1, 5):
        m = split(o, lam * r1 + (1 - lam) * r2)
        assert m.quantum <= lam * s1.quantum + (1 - lam) * s2.quantum + 1e-9
        assert m.classical >= lam * s1.classical + (1 - lam) * s2.classical - 1e-9


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(2, 5))
def test_split_ranges(seed, d):
    rho = sample_mixed(d, seed)
    h, q, c = split(random_basis(d, seed + 1), rho)
    assert abs(h - q - c) <= 1e-10
    assert -1e-10 <= q <= h + 1e-10
    assert -1e-10 <= c <= h + 1e-10
    assert h <= np.log(d) + 1e-10


def test_q_is_minimal_relative_entropy():
    o = random_basis(3, 42)
    rng = np.random.default_rng(43)
    for k in range(5):
        rho = sample_mixed(3, 1000 + k)
        q = quantum_uncertainty(o, rho)
        for _ in range(100):
            p = rng.dirichlet(np.ones(3))
            sigma = (o * p) @ o.conj().T
            assert q <= relative_entropy(rho, sigma) + 1e-9


# --------------------------------------------------- degenerate measurements

XI = np.diag([0.5, 0.5, 0.0]).astype(complex)
COARSE = [np.diag([1.0, 1.0, 0.0]), np.diag([0.0, 0.0, 1.0])]


def test_xi_example_vanishes():
    h, q, c = degenerate_split(COARSE, XI)
    assert max(abs(h), abs(q), abs(c)) <= 1e-12
    assert von_neumann(XI) > 0.6


def test_rank_one_matches_split():
    for k in range(20):
        rho = sample_mixed(3, k)
        o = random_basis(3, 50 + k)
        assert np.allclose(degenerate_split(basis_measurement(o), rho), split(o, rho), atol=1e-12)


def test_degenerate_orthogonal_support_identity():
    o = random_basis(4, 7)
    proj = basis_measurement(o)
    meas = [proj[0] + proj[1], proj[2] + proj[3]]
    rho = sample_mixed(4, 8)
    h, q, c = degenerate_split(meas, rho)
    br = measurement_branches(meas, rho)
    s_deph = von_neumann(dephase_projective(meas, rho))
    assert abs(s_deph - (shannon(br.probs) + sum(p * von_neumann(r) for p, r in zip(br.probs, br.post_states)))) < 1e-12
    assert abs(h - q - c) <= 1e-10
    assert min(h, q, c) >= -1e-10


def test_branches_drop_zero_probability():
    br = measurement_branches(COARSE, XI)
    assert br.indices == (0,)
    assert np.allclose(br.probs, [1.0])


def test_invalid_measurement():
    with pytest.raises(InvalidMeasurement):
        degenerate_split([np.diag([1.0, 0.0, 0.0]), np.diag([0.0, 1.0, 0.0])], XI)
    with pytest.raises(InvalidMeasurement):
        degenerate_split([np.diag([1.0, 1.0, 0.0]), np.diag([0.0, 1.0, 1.0])], XI)


def test_measurement_refines():
    fine = basis_measurement(computational_basis(3))
    assert measurement_refines(fine, COARSE)
    assert measurement_refines(COARSE, COARSE)
    assert not measurement_refines(COARSE, fine)
    assert not measurement_refines(basis_measurement(Z), basis_measurement(X))


def test_refinement_monotonicity():
    for k in range(100):
        o = random_basis(4, k)
        proj = basis_measurement(o)
        coarse = [proj[0] + proj[1], proj[2] + proj[3]]
        rho = sample_mixed(4, 10_000 + k)
        assert degenerate_split(coarse, rho).classical <= degenerate_split(proj, rho).classical + 1e-9


def test_q_vanishing_iff_commuting():
    # forward: commuting => Q = 0; reverse: Q > 1e-6 => some commutator is non-zero
    for k in range(50):
        o = random_basis(4, k)
        proj = basis_measurement(o)
        meas = [proj[0] + proj[1], proj[2] + proj[3]]
        blocks = [sample_mixed(2, 3 * k), sample_mixed(2, 3 * k + 1)]
        rho = np.zeros((4, 4), dtype=complex)
        rho[:2, :2], rho[2:, 2:] = blocks[0] / 2, blocks[1] / 2
        rho = o @ rho @ o.conj().T
        assert commutes_with_measurement(meas, rho)
        assert abs(degenerate_split(meas, rho).quantum) <= 1e-10
        generic = sample_mixed(4, 3 * k + 2)
        if degenerate_split(meas, generic).quantum > 1e-6:
            assert not commutes_with_measurement(meas, generic)
