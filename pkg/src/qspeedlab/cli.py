"""Command-line front end.

Subcommands ``bound``, ``reproduce``, ``sweep`` and ``verify`` write CSV to
``--out`` (a file, or a directory for ``reproduce``) or to stdout. Exit codes:
0 success, 1 usage or configuration error, 2 a bound or rate inequality was
violated.
"""

from __future__ import annotations

import argparse
import io
import itertools
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import speedlimits as sl
from .dynamics import Picture, Process, default_steps, evolve
from .errors import (
    NotProductInitial,
    NotPure,
    NotSeparableProcess,
    NotUnitaryProcess,
    QSLError,
    SupportEscape,
)
from .figures import FIGURES, figure_curves, get_figure
from .states import make_chsh, make_psi_p, adapted_chsh_settings

__all__ = ["main", "RunConfig", "format_value", "run_bounds", "ConfigError"]

EXIT_OK, EXIT_CONFIG, EXIT_VIOLATION = 0, 1, 2

PROCESSES = ("nonlocal", "dephasing", "depolarizing", "amplitude")
BOUNDS = ("nsl", "csl", "icsl", "bqsl", "bqsl-sep", "misl", "esl", "oqsl")
HEISENBERG_BOUNDS = {"bqsl", "bqsl-sep", "oqsl"}
MEASURES = ("negativity", "concurrence_sq", "i_concurrence_sq", "entropy")
BOUND_COLUMNS = ("t_final", "bound_kind", "numerator", "lambda", "bound_value", "tightness", "argmin_alpha")


class ConfigError(ValueError):
    pass


def format_value(x) -> str:
    """12 significant digits in positional notation; magnitudes below 1e-12 print as 0."""
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return str(x)
    if abs(x) < 1e-12:
        return "0"
    return np.format_float_positional(x, precision=12, unique=False, fractional=False, trim="-")


def _csv(rows, header) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(format_value(v) for v in row) + "\n")
    return buf.getvalue()


@dataclass(frozen=True)
class RunConfig:
    process: str = "dephasing"
    gamma: float = 1.0
    theta: float = 1.0
    mu_z: float = 0.1
    p: float = 0.5
    eta: float | None = None
    t_final: float = 0.1
    steps: int | None = None
    bounds: tuple[str, ...] = ("all",)
    picture: str | None = None
    out: str | None = None
    workers: int = 1
    measures: tuple[str, ...] = ("all",)
    extra: dict = field(default_factory=dict)

    def validate(self) -> "RunConfig":
        if self.process not in PROCESSES:
            raise ConfigError(f"unknown process {self.process!r}; choose from {', '.join(PROCESSES)}")
        if not self.t_final > 0:
            raise ConfigError("t_final must be positive")
        if not 0.0 <= self.p <= 1.0:
            raise ConfigError("p must lie in [0, 1]")
        if self.gamma < 0:
            raise ConfigError("gamma must be nonnegative")
        if self.steps is not None and (self.steps < 2 or self.steps % 2):
            raise ConfigError("steps must be an even integer >= 2")
        unknown = set(self.bounds) - set(BOUNDS) - {"all"}
        if unknown:
            raise ConfigError(f"unknown bound(s) {sorted(unknown)}; choose from {', '.join(BOUNDS)}, all")
        if self.picture is not None and self.picture not in ("schrodinger", "heisenberg"):
            raise ConfigError("picture must be 'schrodinger' or 'heisenberg'")
        return self

    @property
    def n_steps(self) -> int:
        return default_steps(self.t_final) if self.steps is None else self.steps

    def make_process(self) -> Process:
        return Process.from_name(self.process, gamma=self.gamma, theta=self.theta, mu_z=self.mu_z)

    def settings(self):
        a, a2, b, b2 = adapted_chsh_settings(self.p)
        if self.eta is None:
            return a, a2, b, b2
        z, x = np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0])
        return a, a2, np.cos(self.eta) * z + np.sin(self.eta) * x, np.cos(self.eta) * z - np.sin(self.eta) * x


def _applicable(cfg: RunConfig, kind: str) -> str | None:
    """Reason ``kind`` cannot run under ``cfg``, or None."""
    unitary = cfg.process == "nonlocal"
    if kind in ("csl", "icsl") and not unitary:
        return f"{kind} needs the unitary (nonlocal) process"
    if kind == "bqsl-sep" and unitary:
        return "bqsl-sep needs a separable process"
    if kind == "misl" and 0.0 < cfg.p < 1.0:
        return "misl needs a product initial state (p = 0 or 1)"
    if cfg.picture is not None:
        wanted = "heisenberg" if kind in HEISENBERG_BOUNDS else "schrodinger"
        if wanted != cfg.picture:
            return f"{kind} is evaluated in the {wanted} picture"
    return None


def _selected(cfg: RunConfig) -> tuple[list[str], list[str]]:
    if "all" in cfg.bounds:
        kinds = [k for k in BOUNDS if _applicable(cfg, k) is None]
        return kinds, []
    errors = [r for k in cfg.bounds if (r := _applicable(cfg, k))]
    return list(dict.fromkeys(cfg.bounds)), errors


def run_bounds(cfg: RunConfig, explicit: bool | None = None) -> list[sl.BoundReport]:
    """Evaluate the selected bounds. Bounds that turn out inapplicable are skipped when ``all`` was requested."""
    cfg.validate()
    kinds, errors = _selected(cfg)
    if errors:
        raise ConfigError("; ".join(errors))
    explicit = "all" not in cfg.bounds if explicit is None else explicit
    proc = cfg.make_process()
    n = cfg.n_steps
    rho0 = make_psi_p(cfg.p)
    schrod = heis = None
    reports = []
    for kind in kinds:
        try:
            if kind in HEISENBERG_BOUNDS:
                if heis is None:
                    heis = evolve(proc, make_chsh(*cfg.settings()), cfg.t_final, n)
                if kind == "bqsl-sep":
                    rep = sl.bound_bell_separable(heis, rho0, proc, settings=cfg.settings())
                elif kind == "bqsl":
                    rep = sl.bound_bell(heis, rho0, proc)
                else:
                    rep = sl.bound_observable(heis, rho0, proc)
            else:
                if schrod is None:
                    schrod = evolve(proc, rho0, cfg.t_final, n)
                rep = {
                    "nsl": lambda: sl.bound_negativity(schrod, proc),
                    "csl": lambda: sl.bound_concurrence(schrod, proc),
                    "icsl": lambda: sl.bound_i_concurrence(schrod, proc),
                    "misl": lambda: sl.bound_mutual_info(schrod, proc),
                    "esl": lambda: sl.bound_entropy(schrod, proc),
                }[kind]()
        except (SupportEscape, NotProductInitial, NotPure, NotUnitaryProcess, NotSeparableProcess) as exc:
            if explicit:
                raise ConfigError(f"{kind}: {exc}") from exc
            continue
        reports.append(rep)
    return reports


def _report_row(rep: sl.BoundReport):
    return (rep.T_actual, rep.bound_kind.value, rep.numerator, rep.Lambda, rep.bound_value,
            rep.tightness, rep.argmin_alpha or "")


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, newline="\n")


def cmd_bound(cfg: RunConfig) -> int:
    reports = run_bounds(cfg)
    _emit(_csv([_report_row(r) for r in reports], BOUND_COLUMNS), cfg.out)
    bad = [r for r in reports if not r.holds()]
    for r in bad:
        print(f"bound violated: {r.bound_kind.value} = {r.bound_value:.12g} > T = {r.T_actual:.12g}",
              file=sys.stderr)
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_reproduce(figure: str, out_dir: str | None) -> int:
    ids = list(FIGURES) if figure == "all" else [get_figure(figure).fig_id]
    out = Path(out_dir or ".")
    out.mkdir(parents=True, exist_ok=True)
    for fig_id in ids:
        for name, (T, v) in figure_curves(fig_id).items():
            path = out / f"{fig_id}_{name}.csv"
            path.write_text(_csv(zip(T, v), ("T", "value")), newline="\n")
            print(path, file=sys.stderr)
    return EXIT_OK


SWEEP_COLUMNS = ("process", "gamma", "theta", "mu_z", "p", "t_final") + BOUNDS + ("violations",)


def sweep_grid(processes, gammas, thetas, ps, ts) -> list[tuple]:
    """Grid points ``(process, gamma, theta, p, T)`` in lexicographic order."""
    grid = []
    for proc in processes:
        params = [(None, th) for th in thetas] if proc == "nonlocal" else [(g, None) for g in gammas]
        for (g, th), p, t in itertools.product(params, ps, ts):
            grid.append((proc, g, th, p, t))
    return grid


def _sweep_point(base: RunConfig, point) -> tuple:
    proc, g, th, p, t = point
    cfg = replace(base, process=proc, gamma=g if g is not None else base.gamma,
                  theta=th if th is not None else base.theta, p=p, t_final=t, bounds=("all",))
    reports = {r.bound_kind.value: r for r in run_bounds(cfg)}
    values = tuple(reports[k].bound_value if k in reports else None for k in BOUNDS)
    violations = sum(not r.holds() for r in reports.values())
    return (proc, g, th, cfg.mu_z if proc == "nonlocal" else None, p, t) + values + (violations,)


def cmd_sweep(base: RunConfig, gammas, thetas, ps, ts, processes) -> int:
    grid = sweep_grid(processes, gammas, thetas, ps, ts)
    for point in grid:
        replace(base, process=point[0], p=point[3], t_final=point[4]).validate()
    if base.workers > 1:
        with ThreadPoolExecutor(base.workers) as pool:
            rows = list(pool.map(lambda pt: _sweep_point(base, pt), grid))
    else:
        rows = [_sweep_point(base, pt) for pt in grid]
    _emit(_csv(rows, SWEEP_COLUMNS), base.out)
    n_bad = sum(r[-1] for r in rows)
    if n_bad:
        print(f"{n_bad} bound violation(s) in sweep", file=sys.stderr)
    return EXIT_VIOLATION if n_bad else EXIT_OK


VERIFY_COLUMNS = ("measure", "points", "max_rate_gap", "worst_excess", "crossing_points", "ok")


def cmd_verify(cfg: RunConfig) -> int:
    cfg.validate()
    proc = cfg.make_process()
    traj = evolve(proc, make_psi_p(cfg.p), cfg.t_final, cfg.n_steps)
    measures = list(MEASURES) if "all" in cfg.measures else list(cfg.measures)
    rows = []
    ok = True
    for m in measures:
        if m not in MEASURES:
            raise ConfigError(f"unknown measure {m!r}; choose from {', '.join(MEASURES)}, all")
        if m in ("concurrence_sq", "i_concurrence_sq") and not proc.is_unitary:
            if "all" in cfg.measures:
                continue
            raise ConfigError(f"{m} needs the unitary (nonlocal) process")
        rep = sl.verify_rate_inequality(traj, m, proc)
        ok &= rep.ok
        rows.append((m, len(rep.lhs), rep.violation, rep.worst_excess, int(rep.crossings.sum()),
                     "true" if rep.ok else "false"))
    _emit(_csv(rows, VERIFY_COLUMNS), cfg.out)
    return EXIT_OK if ok else EXIT_VIOLATION


# ---------------------------------------------------------------- parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _floats(text: str) -> list[float]:
    return [float(x) for x in str(text).split(",") if x.strip()]


def _words(text: str) -> list[str]:
    return [x.strip() for x in str(text).split(",") if x.strip()]


def _add_run_flags(sp, *, lists: bool = False) -> None:
    kind = str if lists else float
    sp.add_argument("--process", help="nonlocal | dephasing | depolarizing | amplitude")
    sp.add_argument("--gamma", type=kind, help="bath rate (both qubits)")
    sp.add_argument("--theta", type=kind, help="mu_x - mu_y of the nonlocal Hamiltonian")
    sp.add_argument("--mu-z", type=float, help="ZZ coupling of the nonlocal Hamiltonian")
    sp.add_argument("--p", type=kind, help="initial state sqrt(p)|00> + sqrt(1-p)|11>")
    sp.add_argument("--eta", type=float, help="override the CHSH angle")
    sp.add_argument("--t-final", type=kind, help="evolution time")
    sp.add_argument("--steps", type=int, help="RK4 steps (even; default 2000 per unit time)")
    sp.add_argument("--picture", choices=("schrodinger", "heisenberg"))
    sp.add_argument("--out", help="output path (stdout when omitted)")
    sp.add_argument("--config", help="key=value file; command-line flags take precedence")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qspeedlab", description="Speed limits on correlations in two-qubit dynamics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bound", help="evaluate bounds on one trajectory")
    _add_run_flags(b)
    b.add_argument("--bound", help=f"comma list of {', '.join(BOUNDS)} or all")

    r = sub.add_parser("reproduce", help="write figure curves as CSV")
    r.add_argument("figure", nargs="?", help=f"one of {', '.join(FIGURES)} or all")
    r.add_argument("--figure", dest="figure_flag")
    r.add_argument("--out", help="output directory")
    r.add_argument("--config")

    s = sub.add_parser("sweep", help="evaluate every applicable bound over a grid")
    _add_run_flags(s, lists=True)
    s.add_argument("--bound", help=argparse.SUPPRESS)
    s.add_argument("--workers", type=int, help="worker threads")

    v = sub.add_parser("verify", help="check the rate inequalities along a trajectory")
    _add_run_flags(v)
    v.add_argument("--measure", help=f"comma list of {', '.join(MEASURES)} or all")
    return parser


def read_config(path: str) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment. Keys use underscores or dashes."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, value = (x.strip() for x in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _merged(args: argparse.Namespace) -> dict:
    values = read_config(args.config) if getattr(args, "config", None) else {}
    for key, value in vars(args).items():
        if value is not None and key not in ("command", "config"):
            values[key] = value
    return values


def _config_from(values: dict, *, scalar: bool = True) -> RunConfig:
    conv = {"gamma": float, "theta": float, "mu_z": float, "p": float, "eta": float,
            "t_final": float, "steps": int, "workers": int}
    kw = {}
    for key, value in values.items():
        if key == "bound":
            kw["bounds"] = tuple(_words(value))
        elif key == "measure":
            kw["measures"] = tuple(_words(value))
        elif key in ("process", "picture", "out"):
            kw[key] = str(value)
        elif key in conv:
            if scalar or key in ("mu_z", "eta", "steps", "workers"):
                try:
                    kw[key] = conv[key](value)
                except ValueError as exc:
                    raise ConfigError(f"{key}: {exc}") from exc
        elif key not in ("figure", "figure_flag"):
            raise ConfigError(f"unknown config key {key!r}")
    return RunConfig(**kw)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        values = _merged(args)
        if args.command == "bound":
            return cmd_bound(_config_from(values).validate())
        if args.command == "verify":
            return cmd_verify(_config_from(values))
        if args.command == "reproduce":
            figure = values.get("figure_flag") or values.get("figure")
            if not figure:
                raise ConfigError("reproduce needs a figure id")
            return cmd_reproduce(figure, values.get("out"))
        # sweep: list-valued grid axes
        lists = {k: values.pop(k) for k in ("gamma", "theta", "p", "t_final") if k in values}
        processes = _words(values.pop("process", ",".join(PROCESSES)))
        base = _config_from(values)
        try:
            gammas = _floats(lists.get("gamma", "1"))
            thetas = _floats(lists.get("theta", "1"))
            ps = _floats(lists.get("p", "0.5"))
            ts = _floats(lists.get("t_final", "0.1"))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        for proc in processes:
            if proc not in PROCESSES:
                raise ConfigError(f"unknown process {proc!r}")
        return cmd_sweep(base, gammas, thetas, ps, ts, processes)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except QSLError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
