"""Command-line entry point: ``qcuncertainty <command> [flags]``.

Every output starts with a metadata block recording the resolved run
configuration: ``# key: value`` comment lines for CSV, a ``"metadata"``
object for JSON. :func:`parse_metadata` turns either back into a
:class:`RunConfig`. Identical configurations produce identical bytes.

Exit status: 0 if every checked claim holds, 1 if one is violated, 2 on a
configuration or runtime error.
"""

import argparse
import io
import json
import re
import sys
from dataclasses import dataclass, fields

import numpy as np

from . import bounds as bd
from .decomp import degenerate_split, outcome_distribution, split
from .errors import ConfigError, QCUncertaintyError
from .extremal import (
    entanglement_entropy,
    find_unbiased,
    max_uncertainty_family,
    mus_curve,
    one_way_discord,
    unbiased_residual,
)
from .nolinear import verify_violation
from .states import (
    computational_basis,
    counterexample_bases,
    embed_counterexample,
    fourier_basis,
    matrix_to_json,
    qubit_pair,
    qutrit_pair,
    sample_mixed,
    sample_pure,
)

COMMANDS = ("qc-plot", "bounds-check", "counterexample", "mus", "maxus", "unbiased", "discord", "degenerate-demo")
TABULAR = {"qc-plot", "mus", "discord"}
SLACK_TOL = 1e-9
DEFAULT_SAMPLES = 10_000
DEFAULT_DISCORD_SAMPLES = 10

EXIT_OK, EXIT_VIOLATED, EXIT_ERROR = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    command: str
    dim: int = 2
    gamma: float | None = None
    alpha: float | None = None
    preset: str | None = None
    samples: int = DEFAULT_SAMPLES
    seed: int = 0
    s_grid: int = 41
    format: str = "csv"
    bounds: str | None = None
    bound_offset: float = 0.0
    dims: str = "2x2"
    out: str | None = None

    @property
    def angle(self):
        return self.gamma if self.gamma is not None else self.alpha


_ANGLE_RE = re.compile(r"^\s*(?:([0-9.]+)\s*\*?\s*)?pi\s*(?:/\s*([0-9.]+))?\s*$")


def parse_angle(text: str) -> float:
    """Parse ``1.2``, ``pi``, ``pi/3`` or ``2*pi/3`` (radians)."""
    m = _ANGLE_RE.match(text)
    if m:
        num = float(m.group(1)) if m.group(1) else 1.0
        den = float(m.group(2)) if m.group(2) else 1.0
        return num * np.pi / den
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}") from None


# ------------------------------------------------------------------ metadata


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def metadata_items(cfg: RunConfig, c_ab=None) -> list:
    items = [(f.name, getattr(cfg, f.name)) for f in fields(cfg)]
    if c_ab is not None:
        items.append(("c_AB", float(c_ab)))
    return items


def _csv_header(cfg, c_ab) -> str:
    return "".join(f"# {k}: {_fmt(v)}\n" for k, v in metadata_items(cfg, c_ab))


_INT_KEYS = ("dim", "samples", "seed", "s_grid")
_FLOAT_KEYS = ("gamma", "alpha", "bound_offset")


def _coerce(name, raw):
    if raw is None or raw == "None":
        return None
    if name in _INT_KEYS:
        return int(raw)
    if name in _FLOAT_KEYS:
        return float(raw)
    return raw


def parse_metadata(text: str) -> tuple:
    """Recover ``(RunConfig, c_AB)`` from a CSV or JSON output produced here."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        raw = json.loads(stripped)["metadata"]
    else:
        raw = {}
        for line in text.splitlines():
            if not line.startswith("#"):
                break
            key, _, val = line[1:].strip().partition(": ")
            raw[key] = val
    c_ab = raw.pop("c_AB", None)
    names = {f.name for f in fields(RunConfig)}
    cfg = RunConfig(**{k: _coerce(k, v) for k, v in raw.items() if k in names})
    return cfg, (float(c_ab) if c_ab is not None else None)


# -------------------------------------------------------------- basis pairs


def basis_pair(cfg: RunConfig):
    """``(A, B)`` selected by the preset, ``gamma`` (d=2), ``alpha`` (d=3),
    or else the computational/Fourier pair."""
    d = cfg.dim
    if d < 2:
        raise ConfigError("--dim must be >= 2")
    if cfg.preset == "counterexample":
        if d < 3:
            raise ConfigError("the counterexample preset needs --dim >= 3")
        if d <= 5:
            a, b = counterexample_bases(d)
        else:
            a, b, _ = embed_counterexample(d)
        return a, b
    if cfg.preset is not None:
        raise ConfigError(f"unknown preset {cfg.preset!r}")
    if cfg.gamma is not None:
        if d != 2:
            raise ConfigError("--gamma selects a qubit pair; use --dim 2")
        return qubit_pair(cfg.gamma)
    if cfg.alpha is not None:
        if d != 3:
            raise ConfigError("--alpha selects a qutrit pair; use --dim 3")
        return qutrit_pair(cfg.alpha)
    return computational_basis(d), fourier_basis(d)


def _c_ab(a, b) -> float:
    return bd.overlap(a, b).c_max


# ------------------------------------------------------------------ writers


def _csv(cfg, c_ab, header, rows) -> str:
    buf = io.StringIO()
    buf.write(_csv_header(cfg, c_ab))
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join("" if v is None else _fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _json(cfg, c_ab, payload) -> str:
    meta = {k: v for k, v in metadata_items(cfg, c_ab)}
    return json.dumps({"metadata": meta, **payload}, indent=2) + "\n"


def _table(cfg, c_ab, header, rows, extra=None) -> str:
    if cfg.format == "json":
        payload = {"rows": [dict(zip(header, r)) for r in rows]}
        if extra:
            payload.update(extra)
        return _json(cfg, c_ab, payload)
    return _csv(cfg, c_ab, header, rows)


# ----------------------------------------------------------------- commands


def cmd_qc_plot(cfg: RunConfig):
    """Random-state cloud in the (2S, Q_A + Q_B) plane plus bound lines."""
    a, b = basis_pair(cfg)
    d = a.shape[0]
    c = _c_ab(a, b)
    rho = sample_mixed(d, cfg.seed, size=cfg.samples)
    sa = split(a, rho)
    qsum = sa.quantum + split(b, rho).quantum
    csum = 2 * sa.classical
    rows = [(float(x), float(y), None, None, None) for x, y in zip(csum, qsum)]
    for s in np.linspace(0.0, np.log(d), cfg.s_grid):
        s = float(s)
        spb = bd.qubit_spb_rhs(c, s) if d == 2 else None
        rows.append((2 * s, None, float(-2 * np.log(c) - 2 * s), spb, bd.overlap_purity_bound(c, s)))
    header = ("c_sum", "q_sum", "mu_bound", "spb_bound", "mub_bound")
    return _table(cfg, c, header, rows), EXIT_OK


def _selected_bounds(cfg, d, c):
    if cfg.bounds:
        names = [n.strip().upper() for n in cfg.bounds.split(",") if n.strip()]
    else:
        names = ["MU", "IMPROVED_EUR", "OVERLAP_PURITY", "DEPHASING_RHS_AB", "DEPHASING_RHS_BA"]
        if abs(c - 1 / np.sqrt(d)) <= 1e-12:
            names.append("MUB_PURITY")
        if d == 2:
            names.append("QUBIT_SPB")
    known = {k.value for k in bd.BoundKind}
    bad = [n for n in names if n not in known]
    if bad:
        raise ConfigError(f"unknown bound(s): {', '.join(bad)}")
    if "QUBIT_SPB" in names and d != 2:
        raise ConfigError("QUBIT_SPB applies to qubits only")
    return names


def cmd_bounds_check(cfg: RunConfig):
    """Minimum slack of each applicable bound over ``samples`` random states."""
    a, b = basis_pair(cfg)
    d = a.shape[0]
    c = _c_ab(a, b)
    rho = sample_mixed(d, cfg.seed, size=cfg.samples)
    reporters = {
        "MU": lambda: bd.maassen_uffink(a, b, rho),
        "IMPROVED_EUR": lambda: bd.improved_eur(a, b, rho),
        "OVERLAP_PURITY": lambda: bd.overlap_purity(a, b, rho),
        "MUB_PURITY": lambda: bd.mub_purity(a, b, rho),
        "WEAKEST_LINEAR": lambda: bd.weakest_linear(a, b, rho),
        "DEPHASING_RHS_AB": lambda: bd.dephasing_rhs(a, b, rho, "AB"),
        "DEPHASING_RHS_BA": lambda: bd.dephasing_rhs(a, b, rho, "BA"),
        # for d = 2 the weakest linear bound is the qubit strong bound
        "QUBIT_SPB": lambda: bd.weakest_linear(a, b, rho),
    }
    results = {}
    for name in _selected_bounds(cfg, d, c):
        slack = reporters[name]().min_slack - cfg.bound_offset
        results[name] = {"min_slack": slack, "holds": bool(slack >= -SLACK_TOL)}
    ok = all(r["holds"] for r in results.values())
    text = _json(cfg, c, {"bounds": results, "all_hold": ok})
    return text, EXIT_OK if ok else EXIT_VIOLATED


def cmd_counterexample(cfg: RunConfig):
    """Explicit state beating the weakest linear bound in dimension ``dim``; exit 1 if it does not."""
    case = verify_violation(cfg.dim)
    text = _json(cfg, case.c_max, {"case": case.to_json()})
    return text, EXIT_OK if case.violates else EXIT_VIOLATED


def _theta_or_params(point) -> str:
    if "theta" in point.params:
        return repr(float(point.params["theta"]))
    if "x" in point.params:
        return ";".join(repr(float(v)) for v in point.params["x"])
    return ""


def cmd_mus(cfg: RunConfig):
    """Optimized fixed-entropy MUS curve next to the mixing-line curve."""
    a, b = basis_pair(cfg)
    c = _c_ab(a, b)
    rows, ok = [], True
    for opt, mix in mus_curve(a, b, s_grid=cfg.s_grid, seed=cfg.seed):
        ok &= opt.converged and opt.q_sum <= mix.q_sum + 1e-6
        rows.append((opt.target_s, opt.q_sum, mix.q_sum, _theta_or_params(opt), int(opt.converged)))
    header = ("S", "q_opt", "q_mixline", "theta_or_params", "converged")
    return _table(cfg, c, header, rows), EXIT_OK if ok else EXIT_VIOLATED


def cmd_maxus(cfg: RunConfig):
    """``p I/d + (1-p) psi*`` on 11 values of p; checks ``H_A + H_B = 2 ln d``."""
    a, b = basis_pair(cfg)
    d = a.shape[0]
    c = _c_ab(a, b)
    psi = find_unbiased(a, b, seed=cfg.seed)
    target = 2 * np.log(d)
    family, ok = [], True
    for p in np.linspace(0.0, 1.0, 11):
        rho = max_uncertainty_family(a, b, float(p), psi_star=psi)
        sa, sb = split(a, rho), split(b, rho)
        h = sa.total + sb.total
        ok &= abs(h - target) <= 1e-7
        family.append({"p": float(p), "h_sum": float(h), "q_sum": float(sa.quantum + sb.quantum), "S": float(sa.classical)})
    payload = {"psi_star": matrix_to_json(psi), "two_ln_d": float(target), "family": family, "verified": bool(ok)}
    return _json(cfg, c, payload), EXIT_OK if ok else EXIT_VIOLATED


def cmd_unbiased(cfg: RunConfig):
    """Pure state with uniform statistics in both bases."""
    a, b = basis_pair(cfg)
    c = _c_ab(a, b)
    psi = find_unbiased(a, b, seed=cfg.seed)
    res = unbiased_residual(a, b, psi)
    payload = {
        "state": matrix_to_json(psi),
        "residual": res,
        "p_A": outcome_distribution(a, psi).tolist(),
        "p_B": outcome_distribution(b, psi).tolist(),
    }
    return _json(cfg, c, payload), EXIT_OK if res <= 1e-12 else EXIT_VIOLATED


def _parse_dims(text):
    try:
        d1, d2 = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise ConfigError(f"--dims must look like 2x3, got {text!r}") from None
    if d1 < 2 or d2 < 2 or d1 * d2 > 9:
        raise ConfigError("--dims needs d1, d2 >= 2 and d1 * d2 <= 9")
    return d1, d2


def cmd_discord(cfg: RunConfig):
    """Minimized local Q against the entanglement entropy on random pure states."""
    dims = _parse_dims(cfg.dims)
    states = sample_pure(dims[0] * dims[1], cfg.seed, size=cfg.samples)
    rows, ok = [], True
    for k, psi in enumerate(states):
        e = entanglement_entropy(psi, dims)
        q = one_way_discord(psi, dims, seed=cfg.seed + k)
        ok &= abs(q - e) <= 1e-5
        rows.append((k, e, q, q - e))
    return _table(cfg, None, ("index", "entanglement", "discord", "difference"), rows), EXIT_OK if ok else EXIT_VIOLATED


def cmd_degenerate_demo(cfg: RunConfig):
    """Qutrit ``xi = (|0><0| + |1><1|)/2`` under ``{|0><0| + |1><1|, |2><2|}``."""
    xi = np.diag([0.5, 0.5, 0.0]).astype(complex)
    proj = [np.diag([1.0, 1.0, 0.0]).astype(complex), np.diag([0.0, 0.0, 1.0]).astype(complex)]
    h, q, c = degenerate_split(proj, xi)
    sharp = split(computational_basis(3), xi)
    ok = max(abs(h), abs(q), abs(c)) <= 1e-12
    payload = {
        "state": matrix_to_json(xi),
        "coarse": {"H": h, "Q": q, "C": c},
        "sharp": {"H": sharp.total, "Q": sharp.quantum, "C": sharp.classical},
        "vanishes": bool(ok),
    }
    return _json(cfg, None, payload), EXIT_OK if ok else EXIT_VIOLATED


HANDLERS = {
    "qc-plot": cmd_qc_plot,
    "bounds-check": cmd_bounds_check,
    "counterexample": cmd_counterexample,
    "mus": cmd_mus,
    "maxus": cmd_maxus,
    "unbiased": cmd_unbiased,
    "discord": cmd_discord,
    "degenerate-demo": cmd_degenerate_demo,
}


# ------------------------------------------------------------------- parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcuncertainty", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=HANDLERS[name].__doc__.splitlines()[0] if HANDLERS[name].__doc__ else None)
        p.add_argument("--dim", type=int, default=None)
        p.add_argument("--gamma", type=parse_angle, default=None, help="qubit Bloch angle between a and b (radians, 'pi/3' ok)")
        p.add_argument("--alpha", type=parse_angle, default=None, help="qutrit rotation angle about (1,1,1)")
        p.add_argument("--samples", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--s-grid", type=int, default=41)
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--preset", choices=("counterexample",), default=None)
        p.add_argument("--bounds", default=None, help="comma-separated bound names (bounds-check)")
        p.add_argument("--bound-offset", type=float, default=0.0, help="test hook: subtract from every slack")
        p.add_argument("--dims", default="2x2", help="bipartite dims for discord, e.g. 2x3")
    return parser


def config_from_args(args) -> RunConfig:
    cmd = args.command
    dim = args.dim
    if dim is None:
        dim = 3 if (args.alpha is not None or cmd in ("counterexample", "degenerate-demo")) else 2
    if args.gamma is not None and args.alpha is not None:
        raise ConfigError("--gamma and --alpha are mutually exclusive")
    samples = args.samples
    if samples is None:
        samples = DEFAULT_DISCORD_SAMPLES if cmd == "discord" else DEFAULT_SAMPLES
    if samples < 1:
        raise ConfigError("--samples must be positive")
    if args.s_grid < 2:
        raise ConfigError("--s-grid must be >= 2")
    fmt = args.format or ("csv" if cmd in TABULAR else "json")
    if fmt == "csv" and cmd not in TABULAR:
        raise ConfigError(f"{cmd} only writes JSON")
    return RunConfig(
        command=cmd,
        dim=dim,
        gamma=args.gamma,
        alpha=args.alpha,
        preset=args.preset,
        samples=samples,
        seed=args.seed,
        s_grid=args.s_grid,
        format=fmt,
        bounds=args.bounds,
        bound_offset=args.bound_offset,
        dims=args.dims,
        out=args.out,
    )


def run(cfg: RunConfig) -> tuple:
    """Execute a configuration; returns ``(text, exit_code)``."""
    return HANDLERS[cfg.command](cfg)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        text, code = run(cfg)
        if cfg.out:
            with open(cfg.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except (QCUncertaintyError, OSError) as exc:
        print(f"qcuncertainty {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return code


if __name__ == "__main__":
    sys.exit(main())
