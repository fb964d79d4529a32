"""Command-line front end: parameter ingestion, sweeps, CSV/JSON emission.

Output is deterministic: floats are serialized with their shortest
round-trip representation (at most 17 significant digits), rows are emitted
in grid order, and repeated identical invocations produce identical bytes.
Time sweeps may be evaluated concurrently (DPA_THREADS caps the worker
count, 0 = auto, unset = serial) but results are assembled in input order.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import canonical, statistics, verify
from .characteristic import mu_pair, wronskian
from .errors import PhysicsDomainError
from .ermakov import evolve_closed_form, slow_invariants
from .fock import WavefunctionGrid, amplitudes, wavefunction_grid
from .model import InitialData, ModelParams, Variant
from .phase_space import contour_q, wigner_grid
from .propagators import propagate as propagate_grid

_EXIT_OK = 0
_EXIT_RUNTIME = 1
_EXIT_USAGE = 2
_EXIT_PHYSICS = 3


def _fmt(x: float) -> str:
    """Shortest round-trip decimal form (capped at 17 significant digits)."""
    return repr(float(x) + 0.0)  # + 0.0 folds -0.0 into 0.0


@dataclass
class RunConfig:
    command: str
    model: ModelParams
    init: InitialData
    times: list[float]
    fmt: str = "csv"
    out: str | None = None
    nmax: int | None = None
    level: float = 2.0
    grid_points: int = 129
    num_contour_points: int = 256
    quick: bool = False
    infile: str | None = None
    extra: dict = field(default_factory=dict)


def _parse_time_grid(spec: str) -> list[float]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"--t-grid expects start:stop:count, got {spec!r}")
    start, stop = float(parts[0]), float(parts[1])
    count = int(parts[2])
    if count < 1 or stop < start:
        raise ValueError("--t-grid needs count >= 1 and stop >= start")
    if count == 1:
        return [start]
    return [start + (stop - start) * i / (count - 1) for i in range(count)]


def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"config line is not key=value: {line!r}")
            key, val = line.split("=", 1)
            values[key.strip()] = val.strip()
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dpakit",
        description="Closed-form degenerate-parametric-amplifier toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, needs_time: bool = True) -> None:
        p.add_argument("--config", help="key=value file; explicit flags override it")
        p.add_argument("--model", choices=["phi0", "phi90"], default=None)
        p.add_argument("--omega", type=float, default=None)
        p.add_argument("--lambda", dest="lam", type=float, default=None)
        p.add_argument("--init", default=None,
                       help="alpha,beta,gamma,delta,eps,kappa (default: vacuum)")
        p.add_argument("--n", type=int, default=None, help="Fock index (default 0)")
        if needs_time:
            p.add_argument("--t", type=float, default=None)
            p.add_argument("--t-grid", dest="t_grid", default=None,
                           help="start:stop:count")
        p.add_argument("--format", dest="fmt", choices=["csv", "json"], default=None)
        p.add_argument("--out", default=None)

    for name, help_text in [
        ("mu", "fundamental solutions mu0, mu1 and the Wronskian"),
        ("ermakov", "six-parameter state and slow invariants"),
        ("stats", "photon statistics and quadrature variances"),
        ("squeeze-params", "rotation/squeeze/displacement parameters"),
    ]:
        p = sub.add_parser(name, help=help_text)
        add_common(p)

    p = sub.add_parser("amplitudes", help="transition amplitudes c_mn")
    add_common(p)
    p.add_argument("--nmax", default=None,
                   help="truncation order or 'auto' (default auto)")

    p = sub.add_parser("wigner", help="Wigner function grid")
    add_common(p)
    p.add_argument("--grid-points", type=int, default=129)

    p = sub.add_parser("figure1", help="contour polylines of Q(U,V) = level")
    add_common(p)
    p.add_argument("--level", type=float, default=2.0)
    p.add_argument("--contour-points", type=int, default=256)

    p = sub.add_parser("tmin", help="minimum-uncertainty times (roots of alpha)")
    add_common(p)

    p = sub.add_parser("propagate", help="propagate an initial grid (CSV: x, Re, Im)")
    add_common(p)
    p.add_argument("--in", dest="infile", required=True)

    p = sub.add_parser("verify", help="run the verification suite (JSON report)")
    p.add_argument("--quick", action="store_true")
    p.add_argument("--out", default=None)
    return parser


def parse_args(argv: Sequence[str]) -> RunConfig:
    """Parse argv into a validated RunConfig (raises PhysicsDomainError/ValueError)."""
    parser = _build_parser()
    ns = parser.parse_args(argv)
    if ns.command == "verify":
        return RunConfig(
            command="verify",
            model=ModelParams(1.0, 0.25, Variant.PHI_ZERO),
            init=InitialData(beta0=1.0),
            times=[0.0],
            fmt="json",
            out=ns.out,
            quick=ns.quick,
        )

    file_vals = _read_config_file(ns.config) if ns.config else {}

    def pick(flag_val, key: str, default):
        if flag_val is not None:
            return flag_val
        if key in file_vals:
            return file_vals[key]
        return default

    model_name = str(pick(ns.model, "model", "phi0"))
    omega = float(pick(ns.omega, "omega", 1.0))
    lam = float(pick(ns.lam, "lambda", 0.0))
    variant = Variant.PHI_ZERO if model_name == "phi0" else Variant.PHI_HALF_PI
    if model_name not in ("phi0", "phi90"):
        raise ValueError(f"unknown model {model_name!r}")
    model = ModelParams(omega, lam, variant)

    init_spec = pick(ns.init, "init", None)
    n_idx = int(pick(ns.n, "n", 0))
    if init_spec is None:
        init = InitialData(alpha0=0.0, beta0=math.sqrt(omega), n=n_idx)
    else:
        parts = [float(v) for v in str(init_spec).split(",")]
        if len(parts) != 6:
            raise ValueError("--init expects six comma-separated values")
        init = InitialData(
            alpha0=parts[0], beta0=parts[1], gamma0=parts[2],
            delta0=parts[3], eps0=parts[4], kappa0=parts[5], n=n_idx,
        )

    t_flag = getattr(ns, "t", None)
    t_grid_flag = getattr(ns, "t_grid", None)
    t_spec = pick(t_grid_flag, "t-grid", None)
    if t_spec is not None:
        times = _parse_time_grid(str(t_spec))
    else:
        times = [float(pick(t_flag, "t", 1.0))]

    nmax_raw = pick(getattr(ns, "nmax", None), "nmax", None)
    nmax = None if nmax_raw in (None, "auto") else int(nmax_raw)

    return RunConfig(
        command=ns.command,
        model=model,
        init=init,
        times=times,
        fmt=str(pick(ns.fmt, "format", "csv")),
        out=ns.out if ns.out is not None else file_vals.get("out"),
        nmax=nmax,
        level=float(pick(getattr(ns, "level", None), "level", 2.0)),
        grid_points=int(pick(getattr(ns, "grid_points", None), "grid-points", 129)),
        num_contour_points=int(pick(getattr(ns, "contour_points", None), "contour-points", 256)),
        infile=getattr(ns, "infile", None),
    )


def _worker_count() -> int | None:
    raw = os.environ.get("DPA_THREADS")
    if raw is None:
        return None
    count = int(raw)
    if count == 0:
        return os.cpu_count() or 1
    return max(1, count)


def _map_ordered(fn: Callable, items: Iterable) -> list:
    items = list(items)
    workers = _worker_count()
    if workers is None or workers == 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _emit_rows(cfg: RunConfig, columns: list[str], rows: list[list[float]],
               meta: dict | None = None) -> str:
    if cfg.fmt == "csv":
        lines = []
        if meta:
            for key in sorted(meta):
                lines.append(f"# {key}={meta[key]}")
        lines.append(",".join(columns))
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
        return "\n".join(lines) + "\n"
    doc: dict = {"columns": columns, "rows": rows}
    if meta:
        doc["meta"] = meta
    return json.dumps(doc, sort_keys=True) + "\n"


def _cmd_mu(cfg: RunConfig) -> str:
    def one(t: float) -> list[float]:
        pair = mu_pair(t, cfg.model)
        return [t, pair.mu0, pair.mu1, wronskian(t, cfg.model)]

    return _emit_rows(cfg, ["t", "mu0", "mu1", "wronskian"], _map_ordered(one, cfg.times))


def _cmd_ermakov(cfg: RunConfig) -> str:
    def one(t: float) -> list[float]:
        st = evolve_closed_form(cfg.init, t, cfg.model)
        inv = slow_invariants(cfg.init, t, cfg.model)
        return [t, st.alpha, st.beta, st.gamma, st.delta, st.eps, st.kappa,
                inv.A, inv.B, inv.C, inv.D]

    cols = ["t", "alpha", "beta", "gamma", "delta", "eps", "kappa", "A", "B", "C", "D"]
    return _emit_rows(cfg, cols, _map_ordered(one, cfg.times))


def _cmd_stats(cfg: RunConfig) -> str:
    def one(t: float) -> list[float]:
        rep = statistics.statistics_report(cfg.init, t, cfg.model)
        return [t, rep.mean_n, rep.var_n, rep.g2, rep.sigma_q, rep.sigma_p,
                rep.sigma_pq, rep.mean_q, rep.mean_p]

    cols = ["t", "mean_n", "var_n", "g2", "sigma_q", "sigma_p", "sigma_pq", "mean_q", "mean_p"]
    return _emit_rows(cfg, cols, _map_ordered(one, cfg.times))


def _cmd_squeeze_params(cfg: RunConfig) -> str:
    def one(t: float) -> list[float]:
        st = evolve_closed_form(cfg.init, t, cfg.model)
        sp = canonical.squeeze_parameters(st, cfg.model.omega)
        return [t, sp.theta, sp.tau, sp.phi, sp.xi_d.real, sp.xi_d.imag]

    cols = ["t", "theta", "tau", "phi", "re_xi", "im_xi"]
    return _emit_rows(cfg, cols, _map_ordered(one, cfg.times))


def _cmd_amplitudes(cfg: RunConfig) -> str:
    t = cfg.times[-1]
    am = amplitudes(cfg.init, t, cfg.model, nmax=cfg.nmax)
    meta = {"t": _fmt(t), "n": cfg.init.n, "nmax": am.nmax, "tail_mass": _fmt(am.tail_mass)}
    rows = [
        [m, am.entries[m].real, am.entries[m].imag, abs(am.entries[m]) ** 2]
        for m in range(am.nmax + 1)
    ]
    return _emit_rows(cfg, ["m", "re_c", "im_c", "prob"], rows, meta=meta)


def _cmd_wigner(cfg: RunConfig) -> str:
    t = cfg.times[-1]
    npts = cfg.grid_points if cfg.grid_points % 2 == 1 else cfg.grid_points + 1
    grid = wigner_grid(cfg.init, t, cfg.model, num_x=npts, num_p=npts)
    if cfg.fmt == "json":
        doc = {
            "t": t,
            "x": list(grid.x_points()),
            "p": list(grid.p_points()),
            "w": [list(row) for row in grid.values],
        }
        return json.dumps(doc, sort_keys=True) + "\n"
    xs, ps = grid.x_points(), grid.p_points()
    rows = [
        [xs[i], ps[j], grid.values[i, j]]
        for i in range(npts)
        for j in range(npts)
    ]
    return _emit_rows(cfg, ["x", "p", "w"], rows, meta={"t": _fmt(t)})


def _cmd_figure1(cfg: RunConfig) -> str:
    def one(t: float) -> np.ndarray:
        return contour_q(cfg.level, t, cfg.init, cfg.model, cfg.num_contour_points)

    polylines = _map_ordered(one, cfg.times)
    if cfg.fmt == "json":
        doc = {
            "level": cfg.level,
            "contours": [
                {"t": t, "points": [[float(x), float(p)] for x, p in poly]}
                for t, poly in zip(cfg.times, polylines)
            ],
        }
        return json.dumps(doc, sort_keys=True) + "\n"
    rows = []
    for t, poly in zip(cfg.times, polylines):
        for x, p in poly:
            rows.append([t, float(x), float(p)])
    return _emit_rows(cfg, ["t", "x", "p"], rows, meta={"level": _fmt(cfg.level)})


def _cmd_tmin(cfg: RunConfig) -> str:
    t_lo = min(cfg.times)
    t_hi = max(cfg.times)
    if t_hi <= t_lo:
        t_hi = t_lo + 2 * math.pi / cfg.model.omega
    roots = canonical.minimum_uncertainty_times(cfg.init, cfg.model, (t_lo, t_hi))
    return _emit_rows(cfg, ["t_min"], [[r] for r in roots])


def _cmd_propagate(cfg: RunConfig) -> str:
    assert cfg.infile is not None
    xs: list[float] = []
    re: list[float] = []
    im: list[float] = []
    with open(cfg.infile, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            try:
                vals = [float(v) for v in parts[:3]]
            except ValueError:
                continue  # header row
            xs.append(vals[0])
            re.append(vals[1])
            im.append(vals[2])
    if len(xs) < 3:
        raise ValueError("initial grid must contain at least 3 samples")
    if len(xs) % 2 == 0:
        raise ValueError("initial grid must have an odd number of samples")
    values = np.array(re) + 1j * np.array(im)
    grid = WavefunctionGrid(
        x_min=xs[0], x_max=xs[-1], num_points=len(xs), values=values,
        t=0.0, n=cfg.init.n,
    )
    out = propagate_grid(grid, cfg.times[-1], cfg.model)
    rows = [
        [float(x), out.values[i].real, out.values[i].imag]
        for i, x in enumerate(out.points())
    ]
    return _emit_rows(cfg, ["x", "re_psi", "im_psi"], rows, meta={"t": _fmt(cfg.times[-1])})


def _cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    report = verify.run_suite(quick=cfg.quick)
    text = json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"
    return text, _EXIT_OK if report.all_passed else _EXIT_RUNTIME


_COMMANDS = {
    "mu": _cmd_mu,
    "ermakov": _cmd_ermakov,
    "stats": _cmd_stats,
    "squeeze-params": _cmd_squeeze_params,
    "amplitudes": _cmd_amplitudes,
    "wigner": _cmd_wigner,
    "figure1": _cmd_figure1,
    "tmin": _cmd_tmin,
    "propagate": _cmd_propagate,
}


def run(cfg: RunConfig) -> int:
    """Dispatch a parsed configuration; returns the process exit code."""
    if cfg.command == "verify":
        text, code = _cmd_verify(cfg)
    else:
        text = _COMMANDS[cfg.command](cfg)
        code = _EXIT_OK
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = parse_args(argv)
    except PhysicsDomainError as exc:
        print(f"dpakit: invalid physics parameters: {exc}", file=sys.stderr)
        return _EXIT_PHYSICS
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code) if exc.code is not None else _EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"dpakit: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    try:
        return run(cfg)
    except PhysicsDomainError as exc:
        print(f"dpakit: invalid physics parameters: {exc}", file=sys.stderr)
        return _EXIT_PHYSICS
    except Exception as exc:  # singular times, convergence failures, I/O
        print(f"dpakit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return _EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
