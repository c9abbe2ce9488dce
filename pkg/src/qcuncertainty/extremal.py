"""Extremal states of the summed quantum uncertainty ``Q_A + Q_B``.

* :func:`pure_mus` / :func:`bifurcation_angle` -- pure qubit minimizers of
  ``H_A + H_B`` and the angle where the single symmetric minimum splits in two;
* :func:`mus_fixed_purity` / :func:`mixing_line` / :func:`mus_curve` -- states
  of fixed von Neumann entropy minimizing ``Q_A + Q_B``, and the reference
  curve obtained by depolarizing the pure minimizer;
* :func:`find_unbiased` / :func:`max_uncertainty_family` -- a pure state with
  uniform statistics in both bases and its depolarized family;
* :func:`one_way_discord` -- minimum of Q over local bases on a bipartite
  pure state.

Entropy constraints are always met by root finding on a scalar parameter,
never by penalties.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import schur
from scipy.optimize import brentq, least_squares, minimize
from scipy.special import entr

from .decomp import outcome_distribution
from .entropy import _xlogx, binary_entropy, spectrum
from .errors import ConvergenceFailure, DimensionMismatch, OutOfRange, UnbiasedStateUnavailable
from .matcore import hermitian_from_params, unitary_exp
from .states import (
    PAULIS,
    density_to_bloch,
    maximally_mixed,
    pure_state,
    validate_basis,
    validate_density,
)

LN2 = np.log(2.0)
ENTROPY_TOL = 1e-6
N_STARTS = 20
S_GRID = 41


def _h(p):
    return -_xlogx(np.clip(p, 0.0, None)).sum(axis=-1)


def _entropy_of(rho):
    return float(_h(spectrum(rho)))


def _hsum(a, b, rho):
    pa = np.real(np.einsum("ji,jk,ki->i", a.conj(), rho, a))
    pb = np.real(np.einsum("ji,jk,ki->i", b.conj(), rho, b))
    return _h(pa) + _h(pb)


def _check_target(target_s, d):
    if target_s < -1e-12 or target_s > np.log(d) + 1e-12:
        raise OutOfRange(f"target entropy {target_s} outside [0, ln {d}]")
    return float(np.clip(target_s, 0.0, np.log(d)))


# ------------------------------------------------------------ pure qubit MUS


def golden_section(f, lo: float, hi: float, tol: float = 1e-11, maxiter: int = 200):
    """Golden-section minimization of a unimodal ``f`` on ``[lo, hi]``."""
    invphi = (np.sqrt(5) - 1) / 2
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(maxiter):
        if hi - lo <= tol:
            break
        if fc <= fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = f(d)
    x = (lo + hi) / 2
    return x, f(x)


def pure_qubit_objective(theta, gamma):
    """``H_A + H_B`` for the pure state at angle ``theta`` from ``a`` in the a-b plane."""
    return binary_entropy((1 + np.cos(theta)) / 2) + binary_entropy((1 + np.cos(theta - gamma)) / 2)


@dataclass(frozen=True)
class PureMusResult:
    gamma: float
    beta: float
    thetas: tuple
    value: float

    @property
    def n_minima(self) -> int:
        return len(self.thetas)

    @property
    def bloch_vectors(self) -> tuple:
        return tuple(np.array([np.sin(t), 0.0, np.cos(t)]) for t in self.thetas)


def pure_mus(gamma: float, n_grid: int = 2001, depth_tol: float = 1e-13) -> PureMusResult:
    """Pure-state minimizers of ``H_A + H_B`` for the qubit pair at angle ``gamma``.

    The objective is even about ``theta = gamma/2``, so the search runs over
    the displacement ``x = gamma/2 - theta`` in ``[0, pi/2]``. A displaced
    minimum counts as a genuine pair only if it sits more than 1e-6 rad away
    from the midpoint and is deeper than the midpoint by ``depth_tol``.
    """
    if not 0 < gamma <= np.pi / 2 + 1e-12:
        raise OutOfRange("gamma must lie in (0, pi/2]")
    mid = gamma / 2

    def g(x):
        return pure_qubit_objective(mid - x, gamma)

    xs = np.linspace(0.0, np.pi / 2, n_grid)
    k = int(np.argmin(g(xs)))
    lo = xs[max(k - 1, 0)]
    hi = xs[min(k + 1, n_grid - 1)]
    x_star, g_star = golden_section(g, lo, hi)
    x_star = abs(float(x_star))
    g0 = float(g(0.0))
    if x_star > 1e-6 and g0 - float(g_star) > depth_tol:
        return PureMusResult(gamma, x_star, (mid - x_star, mid + x_star), float(g_star))
    return PureMusResult(gamma, 0.0, (mid,), g0)


def bifurcation_angle(lo: float = 1.0, hi: float = 1.4, tol: float = 1e-7) -> float:
    """Bisection on the number of pure minima (1 below, 2 above the threshold)."""
    if pure_mus(lo).n_minima != 1 or pure_mus(hi).n_minima != 2:
        raise ConvergenceFailure("bracket does not straddle the bifurcation")
    while hi - lo > tol:
        m = (lo + hi) / 2
        if pure_mus(m).n_minima == 1:
            lo = m
        else:
            hi = m
    return (lo + hi) / 2


# ------------------------------------------------------ fixed-purity search


@dataclass
class MusCurvePoint:
    target_s: float
    achieved_s: float
    q_sum: float
    state: np.ndarray
    converged: bool
    params: dict = field(default_factory=dict)


def radius_for_entropy(target_s: float) -> float:
    """Bloch radius ``r`` with ``H_2((1 + r)/2) = target_s``."""
    target_s = _check_target(target_s, 2)
    if target_s <= 0:
        return 1.0
    if target_s >= LN2:
        return 0.0
    return brentq(lambda r: binary_entropy((1 + r) / 2) - target_s, 0.0, 1.0, xtol=1e-15, rtol=1e-15)


def qubit_plane(basis_a, basis_b):
    """Orthonormal frame ``(e1, e2)`` of the plane spanned by the Bloch axes,
    with ``e1 = a``, plus the angle between the axes."""
    a = density_to_bloch(pure_state(basis_a[:, 0]))
    b = density_to_bloch(pure_state(basis_b[:, 0]))
    perp = b - (b @ a) * a
    if np.linalg.norm(perp) < 1e-12:
        # parallel axes: any perpendicular direction spans a valid plane
        trial = np.array([1.0, 0.0, 0.0]) if abs(a[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
        perp = trial - (trial @ a) * a
    e2 = perp / np.linalg.norm(perp)
    gamma = float(np.arctan2(b @ e2, b @ a))
    return a, e2, gamma


def _qubit_state(r, theta, e1, e2):
    n = r * (np.cos(theta) * e1 + np.sin(theta) * e2)
    return (np.eye(2) + np.einsum("k,kij->ij", n, PAULIS)) / 2


def _mus_qubit(a, b, target_s, n_grid=720):
    r = radius_for_entropy(target_s)
    s = float(binary_entropy((1 + r) / 2))
    e1, e2, gamma = qubit_plane(a, b)

    def q(theta):
        return _hsum(a, b, _qubit_state(r, theta, e1, e2)) - 2 * s

    # entropies are pi-periodic in theta (n and -n give the same statistics)
    thetas = np.linspace(0.0, np.pi, n_grid, endpoint=False)
    vals = np.array([q(t) for t in thetas])
    step = thetas[1] - thetas[0]
    is_min = (vals <= np.roll(vals, 1)) & (vals <= np.roll(vals, -1))
    starts = list(thetas[is_min]) + [gamma / 2]
    best_t, best_q = None, np.inf
    for t0 in starts:
        t1, v1 = golden_section(q, t0 - step, t0 + step)
        for t, v in ((t1, v1), (t0, q(t0))):
            if v < best_q:
                best_t, best_q = float(t), float(v)
    best_t = best_t % np.pi
    rho = _qubit_state(r, best_t, e1, e2)
    achieved = _entropy_of(rho)
    return MusCurvePoint(
        target_s,
        achieved,
        best_q,
        rho,
        abs(achieved - target_s) <= ENTROPY_TOL,
        {"r": r, "theta": best_t},
    )


def spectrum_with_entropy(logits, target_s):
    """Probability vector with entropy ``target_s`` built from ``softmax(logits)``.

    With ``q = softmax(logits)``: if ``H(q) <= target`` mix ``q`` toward the
    uniform vector, else mix the vertex ``e_argmax(q)`` toward ``q``. Entropy
    is monotone along both segments, so the mixing weight is found by root
    finding. Every spectrum of entropy ``target`` is reachable (take
    ``q`` equal to it).
    """
    logits = np.asarray(logits, dtype=float)
    d = logits.size
    q = np.exp(logits - logits.max())
    q /= q.sum()
    hq = float(_h(q))
    if abs(hq - target_s) <= 1e-15:
        return q
    if hq < target_s:
        u = np.full(d, 1.0 / d)

        def path(t):
            return (1 - t) * q + t * u

    else:
        e = np.zeros(d)
        e[np.argmax(q)] = 1.0

        def path(t):
            return (1 - t) * e + t * q

    def f(t):
        return entr(path(t)).sum() - target_s

    if f(0.0) >= 0:
        return path(0.0)
    if f(1.0) <= 0:
        return path(1.0)
    t = brentq(f, 0.0, 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    return path(t)


def _state_from_params(x, d, target_s):
    lam = spectrum_with_entropy(x[:d], target_s)
    u = unitary_exp(hermitian_from_params(x[d:], d))
    return (u * lam) @ u.conj().T


def params_from_state(rho):
    """Inverse of the ``(logits, generator)`` parametrization for a given state."""
    rho = np.asarray(rho, dtype=complex)
    w, v = np.linalg.eigh(rho)
    logits = np.log(np.clip(w, 1e-30, None))
    t, z = schur(v, output="complex")
    h = (z * np.angle(np.diag(t))) @ z.conj().T
    h = (h + h.conj().T) / 2
    k = np.triu(h.real) + np.tril(h.imag.T, -1)
    return np.concatenate([logits, k.ravel()])


def _nelder_mead(obj, x0, maxiter):
    res = minimize(
        obj,
        x0,
        method="Nelder-Mead",
        options={"maxiter": maxiter, "xatol": 1e-10, "fatol": 1e-13, "adaptive": True},
    )
    return res.x, float(res.fun)


def _mus_general(a, b, target_s, seed, n_starts, seed_states, maxiter, n_polish=3):
    d = a.shape[0]
    rng = np.random.default_rng(seed)

    def obj(x):
        return _hsum(a, b, _state_from_params(x, d, target_s))

    starts = [params_from_state(s) for s in seed_states]
    starts += [np.concatenate([rng.normal(scale=2.0, size=d), rng.normal(scale=np.pi, size=d * d)]) for _ in range(n_starts)]
    # short runs from every start, then restarted polish of the best few
    runs = []
    for x0 in starts:
        v0 = obj(x0)
        x, v = _nelder_mead(obj, x0, maxiter // 5)
        runs.append((x, v) if v <= v0 else (x0, v0))
    runs.sort(key=lambda t: t[1])
    best_x, best_v = runs[0]
    for x, v in runs[:n_polish]:
        for _ in range(3):
            x_new, v_new = _nelder_mead(obj, x, maxiter)
            if v_new >= v - 1e-14:
                break
            x, v = x_new, v_new
        if v < best_v:
            best_x, best_v = x, v
    rho = _state_from_params(best_x, d, target_s)
    achieved = _entropy_of(rho)
    q = _hsum(a, b, rho) - 2 * achieved
    return MusCurvePoint(target_s, achieved, float(q), rho, abs(achieved - target_s) <= ENTROPY_TOL, {"x": best_x.tolist()})


def mus_fixed_purity(
    basis_a,
    basis_b,
    target_s: float,
    seed=0,
    n_starts: int = N_STARTS,
    seed_states=(),
    maxiter: int = 4000,
    strict: bool = True,
) -> MusCurvePoint:
    """Minimize ``Q_A + Q_B`` over states with ``S(rho) = target_s``.

    Qubits use the in-plane ``(r, theta)`` parametrization with a grid plus
    golden-section refinement; ``d >= 3`` uses spectrum/unitary parameters and
    multistart Nelder-Mead. ``seed_states`` are extra starting points (any
    entropy; the constraint is re-imposed).

    Raises:
        ConvergenceFailure: if ``strict`` and the entropy residual exceeds 1e-6.
    """
    a = validate_basis(basis_a)
    b = validate_basis(basis_b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    d = a.shape[0]
    target_s = _check_target(target_s, d)
    if target_s >= np.log(d) - 1e-15:
        rho = maximally_mixed(d)
        point = MusCurvePoint(target_s, np.log(d), 0.0, rho, True, {})
    elif d == 2:
        point = _mus_qubit(a, b, target_s)
    else:
        point = _mus_general(a, b, target_s, seed, n_starts, seed_states, maxiter)
    if strict and not point.converged:
        raise ConvergenceFailure(f"entropy residual {abs(point.achieved_s - target_s):.2e}")
    return point


def mixing_line(basis_a, basis_b, pure_mus_state, target_s: float) -> MusCurvePoint:
    """``p I/d + (1 - p) psi`` with ``p`` chosen so that the entropy is ``target_s``."""
    a = validate_basis(basis_a)
    b = validate_basis(basis_b)
    psi = validate_density(pure_mus_state)
    d = psi.shape[0]
    target_s = _check_target(target_s, d)
    mixed = maximally_mixed(d)

    def state(p):
        return p * mixed + (1 - p) * psi

    f = lambda p: _entropy_of(state(p)) - target_s  # noqa: E731
    if f(0.0) >= 0:
        p = 0.0
    elif f(1.0) <= 0:
        p = 1.0
    else:
        p = brentq(f, 0.0, 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    rho = state(p)
    achieved = _entropy_of(rho)
    if abs(achieved - target_s) > ENTROPY_TOL:
        raise ConvergenceFailure(f"mixing line cannot reach entropy {target_s}")
    q = _hsum(a, b, rho) - 2 * achieved
    return MusCurvePoint(target_s, achieved, float(q), rho, True, {"p": p})


def mus_curve(basis_a, basis_b, s_grid: int = S_GRID, seed=0, n_starts: int = N_STARTS, maxiter: int = 4000):
    """Optimized and mixing-line ``Q_A + Q_B`` on a uniform entropy grid.

    Returns a list of ``(optimal_point, mixing_point)`` pairs. For ``d >= 3``
    each optimization is also seeded with the mixing-line state and the
    previous grid point's optimum, so the optimized curve never lies above the
    mixing line.
    """
    a = validate_basis(basis_a)
    b = validate_basis(basis_b)
    d = a.shape[0]
    grid = np.linspace(0.0, np.log(d), s_grid)
    first = mus_fixed_purity(a, b, 0.0, seed=seed, n_starts=n_starts, maxiter=maxiter)
    pure = first.state
    out = []
    prev = pure
    for k, s in enumerate(grid):
        mix = mixing_line(a, b, pure, s)
        if k == 0:
            opt = first
        else:
            opt = mus_fixed_purity(
                a, b, s, seed=seed + k, n_starts=n_starts, seed_states=(mix.state, prev), maxiter=maxiter, strict=False
            )
        prev = opt.state
        out.append((opt, mix))
    return out


# ------------------------------------------------------- unbiased state


def unbiased_residual(basis_a, basis_b, rho) -> float:
    d = np.shape(rho)[0]
    pa = outcome_distribution(basis_a, rho)
    pb = outcome_distribution(basis_b, rho)
    return float(np.sum((pa - 1 / d) ** 2) + np.sum((pb - 1 / d) ** 2))


def find_unbiased(basis_a, basis_b, seed=0, max_starts: int = 50, tol: float = 1e-12) -> np.ndarray:
    """Pure state whose outcome distributions in both bases are uniform.

    Levenberg-Marquardt on the ``2d`` residuals ``p_i - 1/d`` over unnormalized
    complex amplitudes, restarted from random points until the summed squared
    residual is at most ``tol``. Such a state always exists, so failure means
    the search budget was too small.
    """
    a = validate_basis(basis_a)
    b = validate_basis(basis_b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    d = a.shape[0]
    rng = np.random.default_rng(seed)

    def resid(x):
        psi = x[:d] + 1j * x[d:]
        psi = psi / np.linalg.norm(psi)
        return np.concatenate([np.abs(a.conj().T @ psi) ** 2, np.abs(b.conj().T @ psi) ** 2]) - 1.0 / d

    best = None
    for _ in range(max_starts):
        res = least_squares(resid, rng.standard_normal(2 * d), method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15)
        r2 = float(np.sum(res.fun**2))
        if best is None or r2 < best[0]:
            best = (r2, res.x)
        if r2 <= tol:
            break
    if best[0] > tol:
        raise ConvergenceFailure(f"no unbiased state found (residual {best[0]:.2e})")
    return pure_state(best[1][:d] + 1j * best[1][d:])


def max_uncertainty_family(basis_a, basis_b, p: float, psi_star=None, seed=0) -> np.ndarray:
    """``p I/d + (1 - p) |psi*><psi*|`` with ``psi*`` unbiased in both bases."""
    if not 0.0 <= p <= 1.0:
        raise OutOfRange("p must lie in [0, 1]")
    if psi_star is None:
        try:
            psi_star = find_unbiased(basis_a, basis_b, seed=seed)
        except ConvergenceFailure as exc:
            raise UnbiasedStateUnavailable(str(exc)) from exc
    psi_star = validate_density(psi_star)
    d = psi_star.shape[0]
    return p * maximally_mixed(d) + (1 - p) * psi_star


# ------------------------------------------------------ one-way discord


def partial_trace(rho, dims, keep: int = 0) -> np.ndarray:
    """Reduced state of subsystem ``keep`` (0 or 1) of a bipartite ``rho``."""
    d1, d2 = dims
    t = np.asarray(rho).reshape(d1, d2, d1, d2)
    return np.einsum("ajbj->ab", t) if keep == 0 else np.einsum("iaib->ab", t)


def entanglement_entropy(psi12, dims) -> float:
    """``S(Tr_2 psi)``."""
    return _entropy_of(partial_trace(psi12, dims, keep=0))


def _dephased_entropy(basis1, rho12, dims):
    # the dephased state is block diagonal in the rotated frame
    d1, d2 = dims
    u = np.kron(basis1, np.eye(d2))
    rot = (u.conj().T @ rho12 @ u).reshape(d1, d2, d1, d2)
    blocks = rot[np.arange(d1), :, np.arange(d1), :]
    w = np.clip(np.linalg.eigvalsh(blocks), 0.0, None)
    return float(-_xlogx(w).sum())


def local_q(basis1, rho12, dims) -> float:
    """``Q(O_1 (x) I_2, rho)`` with ``Pi_i = |o_i><o_i| (x) I``."""
    rho12 = np.asarray(rho12)
    return _dephased_entropy(basis1, rho12, dims) - _entropy_of(rho12)


def one_way_discord(psi12, dims, seed=0, n_starts: int = N_STARTS) -> float:
    """Minimum of ``Q(O_1 (x) I, psi)`` over local bases ``O_1`` of subsystem 1.

    Local bases are ``exp(iH)`` for Hermitian ``H``; multistart Nelder-Mead.
    """
    d1, d2 = dims
    if d1 * d2 > 9:
        raise OutOfRange("one_way_discord supports d1 * d2 <= 9")
    rho = validate_density(psi12)
    if rho.shape != (d1 * d2, d1 * d2):
        raise DimensionMismatch(f"state shape {rho.shape} does not match dims {dims}")
    if abs(np.trace(rho @ rho).real - 1.0) > 1e-8:
        raise OutOfRange("one_way_discord expects a pure bipartite state")
    rng = np.random.default_rng(seed)

    s12 = _entropy_of(rho)

    def obj(x):
        return _dephased_entropy(unitary_exp(hermitian_from_params(x, d1)), rho, dims)

    best = np.inf
    for _ in range(n_starts):
        x0 = rng.normal(scale=np.pi, size=d1 * d1)
        res = minimize(obj, x0, method="Nelder-Mead", options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 2000, "adaptive": True})
        best = min(best, float(res.fun) - s12)
    if not np.isfinite(best):
        raise ConvergenceFailure("local-basis minimization failed")
    return best

