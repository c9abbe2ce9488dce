import numpy as np
import pytest

from qcuncertainty.bounds import weakest_linear_spb
from qcuncertainty.errors import UnsupportedDimension
from qcuncertainty.nolinear import (
    RAW_STATES,
    hardcoded_state,
    linear_spb_refuter,
    repair_psd,
    verify_violation,
)
from qcuncertainty.states import matrix_from_json

# margins f_w - (Q_A + Q_B) of the published states, frozen on first run
REGRESSION_MARGINS = {3: 0.000771, 4: 0.006968, 5: 0.015927}


@pytest.mark.parametrize("d", [3, 4])
def test_published_trace_is_one(d):
    assert abs(np.trace(RAW_STATES[d]) - 1.0) < 1e-12


def test_rho3_first_row():
    assert np.allclose(hardcoded_state(3)[0], [0.61, -0.15, 0.0])


def test_rho5_spectrum_before_clipping():
    raw = RAW_STATES[5]
    w = np.linalg.eigvalsh((raw + raw.T) / 2)
    assert w.min() >= -1e-3
    state = hardcoded_state(5)
    assert np.linalg.eigvalsh(state).min() >= 0


def test_repair_psd_flags_large_changes():
    fixed, change, flagged = repair_psd(np.diag([1.1, -0.1]))
    assert flagged and np.linalg.eigvalsh(fixed).min() >= 0
    _, change, flagged = repair_psd(np.diag([0.5, 0.5]))
    assert change == 0 and not flagged


def test_hardcoded_state_rejects_other_dims():
    with pytest.raises(UnsupportedDimension):
        hardcoded_state(6)


@pytest.mark.parametrize("d", [3, 4, 5])
def test_verify_violation_regression(d):
    case = verify_violation(d)
    assert case.violates
    assert case.margin == pytest.approx(REGRESSION_MARGINS[d], abs=1e-6)
    assert case.f_w == pytest.approx(weakest_linear_spb(case.c_max, case.s_rho, d))


def test_d3_overlap():
    assert abs(verify_violation(3).c_max - 0.6851) < 5e-4


@pytest.mark.parametrize("d", [6, 7, 8])
def test_embedding(d):
    base = verify_violation(3)
    case = verify_violation(d)
    assert case.violates
    assert abs(case.q_sum - base.q_sum) <= 1e-10
    assert abs(case.s_rho - base.s_rho) <= 1e-10
    assert abs(case.c_max - base.c_max) <= 1e-12
    adjusted = -2 * np.log(base.c_max) * (1 - base.s_rho / np.log(d)) - base.q_sum
    assert abs(case.margin - adjusted) <= 1e-6
    assert case.margin > base.margin


def test_verify_violation_rejects_qubits():
    with pytest.raises(UnsupportedDimension):
        verify_violation(2)


def test_case_json():
    obj = verify_violation(3).to_json()
    assert obj["violates"] is True
    assert np.allclose(matrix_from_json(obj["state"]), hardcoded_state(3))


def test_refuter_finds_violation_in_d3():
    case = linear_spb_refuter(3, trials=2000, seed=1, polish=2)
    assert case.margin > 0


def test_refuter_qubits_never_violate():
    case = linear_spb_refuter(2, trials=20_000, seed=2, polish=4)
    assert case.margin <= 1e-9


def test_refuter_is_deterministic():
    a = linear_spb_refuter(3, trials=500, seed=5, polish=1)
    b = linear_spb_refuter(3, trials=500, seed=5, polish=1)
    assert a.margin == b.margin
    assert np.array_equal(a.state, b.state)
