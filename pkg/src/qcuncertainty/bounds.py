"""Lower bounds on total and quantum uncertainty.

Scalar bounds take ``(c_max, S, d)`` because their right-hand side depends on
nothing else; report-producing functions take bases and a state (or a stack
of states, in which case ``lhs`` and ``slack`` are arrays).

Overlap-purity and improved-EUR bounds are written in expanded form
``-2 ln c -/+ S`` which equals the bracketed form ``-2 ln c [1 + S/(2 ln c)]``
but stays finite for ``c = 1``.
"""

import enum
from dataclasses import dataclass

import numpy as np
from scipy.special import entr

from .decomp import outcome_distribution, split
from .errors import DimensionMismatch, OutOfRange, WrongDimension
from .states import qubit_pair, validate_basis

LN2 = np.log(2.0)
RANGE_TOL = 1e-12


class BoundKind(enum.Enum):
    MU = "MU"
    MUB_PURITY = "MUB_PURITY"
    OVERLAP_PURITY = "OVERLAP_PURITY"
    QUBIT_SPB = "QUBIT_SPB"
    WEAKEST_LINEAR = "WEAKEST_LINEAR"
    DEPHASING_RHS_AB = "DEPHASING_RHS_AB"
    DEPHASING_RHS_BA = "DEPHASING_RHS_BA"
    IMPROVED_EUR = "IMPROVED_EUR"


@dataclass(frozen=True)
class OverlapMatrix:
    """``c[i, j] = |<a_i|b_j>|`` and its maximum."""

    c: np.ndarray

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    @property
    def c_max(self) -> float:
        return float(self.c.max())


@dataclass(frozen=True)
class BoundReport:
    """``lhs >= rhs`` claim; ``slack = lhs - rhs`` is reported, never asserted."""

    kind: BoundKind
    lhs: float | np.ndarray
    rhs: float | np.ndarray

    @property
    def slack(self):
        return self.lhs - self.rhs

    @property
    def min_slack(self) -> float:
        return float(np.min(self.slack))

    def holds(self, tol: float = 1e-9) -> bool:
        return self.min_slack >= -tol


def overlap(basis_a, basis_b) -> OverlapMatrix:
    a = validate_basis(basis_a)
    b = validate_basis(basis_b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    return OverlapMatrix(np.abs(a.conj().T @ b))


# ------------------------------------------------------------ scalar bounds


def _check_c(c_max):
    c_max = np.asarray(c_max, dtype=float)
    if np.any((c_max <= 0) | (c_max > 1 + RANGE_TOL)):
        raise OutOfRange("c_max must lie in (0, 1]")
    return np.minimum(c_max, 1.0)


def _check_s(s, d=None):
    s = np.asarray(s, dtype=float)
    if np.any(s < -RANGE_TOL):
        raise OutOfRange("entropy must be non-negative")
    if d is not None and np.any(s > np.log(d) + RANGE_TOL):
        raise OutOfRange(f"entropy exceeds ln {d}")
    return s


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def mub_purity_bound(d: int, s):
    """``Q_A + Q_B >= ln d - S`` for mutually unbiased bases."""
    s = _check_s(s, d)
    return _out(np.log(d) - s)


def overlap_purity_bound(c_max, s):
    """``Q_A + Q_B >= -2 ln c - S``."""
    return _out(-2 * np.log(_check_c(c_max)) - _check_s(s))


def improved_eur_rhs(c_max, s):
    """``H_A + H_B >= -2 ln c + S``."""
    return _out(-2 * np.log(_check_c(c_max)) + _check_s(s))


def weakest_linear_spb(c_max, s, d: int):
    """``f_w = -2 ln c (1 - S / ln d)``, the weakest bound linear in S that
    implies Maassen-Uffink and vanishes on the maximally mixed state."""
    if d < 2:
        raise OutOfRange("d must be >= 2")
    s = _check_s(s, d)
    return _out(-2 * np.log(_check_c(c_max)) * (1 - s / np.log(d)))


def qubit_spb_rhs(c_max, s):
    """Qubit strong purity-based bound on ``Q_A + Q_B``."""
    return weakest_linear_spb(c_max, s, 2)


def qubit_total_rhs(c_max, s):
    """Qubit strong bound rewritten for ``H_A + H_B``:
    ``-2 ln c + 2 S (1 + ln c / ln 2)``."""
    c = _check_c(c_max)
    s = _check_s(s, 2)
    return _out(-2 * np.log(c) + 2 * s * (1 + np.log(c) / LN2))


# ---------------------------------------------------------- state reports


def _h_sum(a, b, rho):
    sa = split(a, rho)
    sb = split(b, rho)
    return sa, sb


def maassen_uffink(basis_a, basis_b, rho) -> BoundReport:
    sa, sb = _h_sum(basis_a, basis_b, rho)
    c = overlap(basis_a, basis_b).c_max
    return BoundReport(BoundKind.MU, sa.total + sb.total, -2 * np.log(c))


def improved_eur(basis_a, basis_b, rho) -> BoundReport:
    sa, sb = _h_sum(basis_a, basis_b, rho)
    c = overlap(basis_a, basis_b).c_max
    return BoundReport(BoundKind.IMPROVED_EUR, sa.total + sb.total, improved_eur_rhs(c, np.clip(sa.classical, 0, None)))


def mub_purity(basis_a, basis_b, rho) -> BoundReport:
    sa, sb = _h_sum(basis_a, basis_b, rho)
    d = np.shape(basis_a)[0]
    s = np.clip(sa.classical, 0, np.log(d))
    return BoundReport(BoundKind.MUB_PURITY, sa.quantum + sb.quantum, mub_purity_bound(d, s))


def overlap_purity(basis_a, basis_b, rho) -> BoundReport:
    sa, sb = _h_sum(basis_a, basis_b, rho)
    c = overlap(basis_a, basis_b).c_max
    return BoundReport(BoundKind.OVERLAP_PURITY, sa.quantum + sb.quantum, overlap_purity_bound(c, np.clip(sa.classical, 0, None)))


def weakest_linear(basis_a, basis_b, rho) -> BoundReport:
    sa, sb = _h_sum(basis_a, basis_b, rho)
    d = np.shape(basis_a)[0]
    c = overlap(basis_a, basis_b).c_max
    s = np.clip(sa.classical, 0, np.log(d))
    return BoundReport(BoundKind.WEAKEST_LINEAR, sa.quantum + sb.quantum, weakest_linear_spb(c, s, d))


def dephasing_rhs(basis_a, basis_b, rho, order: str = "AB") -> BoundReport:
    """Contractivity bound ``Q_A + Q_B >= -S(rho) - Tr[rho ln D_B(D_A(rho))]``.

    ``order="BA"`` swaps the roles of the two bases. Expanded, the trace term
    is ``sum_i p_i(B) ln(sum_j |<a_j|b_i>|^2 p_j(A))``; a vanishing argument
    under a non-zero ``p_i(B)`` makes the bound ``-inf``.
    """
    if order not in ("AB", "BA"):
        raise ValueError("order must be 'AB' or 'BA'")
    a, b = (basis_a, basis_b) if order == "AB" else (basis_b, basis_a)
    kind = BoundKind.DEPHASING_RHS_AB if order == "AB" else BoundKind.DEPHASING_RHS_BA
    sa, sb = _h_sum(a, b, rho)
    pa = outcome_distribution(a, rho)
    pb = outcome_distribution(b, rho)
    t = overlap(a, b).c ** 2  # t[j, i] = |<a_j|b_i>|^2
    mixed = pa @ t  # distribution of D_B(D_A(rho)) in the B basis
    with np.errstate(divide="ignore"):
        logs = np.log(mixed)
    terms = np.where(pb > 0, pb * logs, 0.0)
    rhs = -sa.classical - terms.sum(axis=-1)
    return BoundReport(kind, sa.quantum + sb.quantum, _out(rhs))


def qubit_spb(gamma: float, rho) -> BoundReport:
    """Strong purity-based bound for the qubit pair at Bloch angle ``gamma``."""
    rho = np.asarray(rho)
    if rho.shape[-2:] != (2, 2):
        raise WrongDimension("qubit_spb needs 2x2 states")
    a, b = qubit_pair(gamma)
    sa, sb = _h_sum(a, b, rho)
    s = np.clip(sa.classical, 0, LN2)
    return BoundReport(BoundKind.QUBIT_SPB, sa.quantum + sb.quantum, qubit_spb_rhs(np.cos(gamma / 2), s))


def qubit_spb_total(gamma: float, rho) -> BoundReport:
    """Same bound expressed on ``H_A + H_B``."""
    a, b = qubit_pair(gamma)
    sa, sb = _h_sum(a, b, rho)
    s = np.clip(sa.classical, 0, LN2)
    return BoundReport(BoundKind.QUBIT_SPB, sa.total + sb.total, qubit_total_rhs(np.cos(gamma / 2), s))


# --------------------------------------------------------- qubit function F


def cos_beta(alpha, phi, gamma):
    """Cosine of the angle between the state's Bloch vector and ``b``."""
    return np.cos(phi) * np.sin(alpha) * np.sin(gamma) + np.cos(alpha) * np.cos(gamma)


def qubit_F(alpha, phi, gamma, r):
    """``H_A + H_B - 2S - (-2 ln c)(1 - S/ln 2)`` for a qubit in Bloch form.

    Non-negative everywhere iff the qubit strong bound holds. Broadcasts.
    """
    alpha, phi, gamma, r = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (alpha, phi, gamma, r)))
    if np.any((r < 0) | (r > 1)):
        raise OutOfRange("r must lie in [0, 1]")
    if np.any((gamma < 0) | (gamma > np.pi / 2 + RANGE_TOL)):
        raise OutOfRange("gamma must lie in [0, pi/2]")
    cb = np.clip(cos_beta(alpha, phi, gamma), -1.0, 1.0)
    lnc = np.log(np.cos(gamma / 2))

    def h2(p):
        return entr(p) + entr(1.0 - p)

    val = (
        h2((1 + r * np.cos(alpha)) / 2)
        + h2((1 + r * cb) / 2)
        + 2 * lnc
        - 2 * h2((1 + r) / 2) * (1 + lnc / LN2)
    )
    return _out(val)


def qubit_F_dr(alpha, phi, gamma, r):
    """Closed-form ``dF/dr`` (valid for ``0 <= r < 1``)."""
    ca = np.cos(alpha)
    cb = np.clip(cos_beta(alpha, phi, gamma), -1.0, 1.0)
    lnc = np.log(np.cos(gamma / 2))
    return _out(-np.arctanh(r * ca) * ca - np.arctanh(r * cb) * cb + 2 * np.arctanh(r) * (1 + lnc / LN2))

