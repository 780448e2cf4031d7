"""Command-line front end.

Subcommands: moments, verify, sweep, p3limit.  Numbers are rendered in
scientific notation with a digit count of round(0.3 * bits); data files
carry no timestamps, a fixed column order and sorted rows, so repeated
runs are byte-identical for a fixed configuration.

Exit codes: 0 pass, 1 identity failure, 2 configuration error,
3 numeric/precision failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from mpmath import mp, mpf

from .identities.registry import SUITES, TOLERANCE_CLASSES
from .identities.runner import all_pass, run_verify
from .moments import SHIFT_EDGE, SHIFT_PLAIN, moment_table
from .pipeline import build_pipeline
from .precision import PJLabError, PrecisionCtx, sci_str
from .svg import polyline_plot
from .weights import WeightParams

EXIT_PASS = 0
EXIT_IDENTITY_FAILURE = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

SWEEP_QUANTITIES = ("alpha_n", "beta_n", "R_n", "Rstar_n", "r_n", "rstar_n", "H_n", "S_n")


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    alpha: str = "1"
    beta: str = "1"
    t_grid: list = field(default_factory=lambda: ["0.5", "1", "2"])
    n_max: int = 10
    bits: int = 256
    k_max: int = 12
    tolerances: dict = field(default_factory=dict)
    suites: list = field(default_factory=list)
    betas: list = field(default_factory=lambda: ["1e3", "1e4", "1e5"])
    out: str = "-"
    fmt: str = "csv"
    svg: str = ""

    def validate(self):
        if not self.t_grid:
            raise ConfigError("t grid must be nonempty")
        if self.n_max < 1:
            raise ConfigError("n_max must be >= 1")
        if self.bits < 64:
            raise ConfigError("bits must be >= 64")
        for s in self.suites:
            if s not in SUITES:
                raise ConfigError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")
        for key in self.tolerances:
            if key not in TOLERANCE_CLASSES:
                raise ConfigError(f"unknown tolerance class {key!r}")
        if self.fmt not in ("csv", "json"):
            raise ConfigError("format must be csv or json")

    @property
    def digits(self) -> int:
        return max(4, round(self.bits * 0.3))

    def ctx(self) -> PrecisionCtx:
        return PrecisionCtx(working_bits=self.bits)


def _config_from_file(path: str) -> dict:
    out = {}
    for line_no, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{line_no}: expected key=value")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _split_list(text: str) -> list:
    return [piece.strip() for piece in text.split(",") if piece.strip()]


def build_config(args) -> RunConfig:
    cfg = RunConfig()
    file_values = _config_from_file(args.config) if getattr(args, "config", None) else {}
    merged = dict(file_values)
    for key in ("alpha", "beta", "t", "nmax", "bits", "kmax", "suites", "out", "format", "svg", "betas"):
        v = getattr(args, key if key != "format" else "fmt", None)
        if v is not None:
            merged[key] = v
    if "alpha" in merged:
        cfg.alpha = str(merged["alpha"])
    if "beta" in merged:
        cfg.beta = str(merged["beta"])
    if "t" in merged:
        cfg.t_grid = _split_list(merged["t"]) if isinstance(merged["t"], str) else list(merged["t"])
    if "nmax" in merged:
        cfg.n_max = int(merged["nmax"])
    if "bits" in merged:
        cfg.bits = int(merged["bits"])
    if "kmax" in merged:
        cfg.k_max = int(merged["kmax"])
    if "suites" in merged and merged["suites"]:
        cfg.suites = _split_list(merged["suites"]) if isinstance(merged["suites"], str) else list(merged["suites"])
    if "betas" in merged and merged["betas"]:
        cfg.betas = _split_list(merged["betas"]) if isinstance(merged["betas"], str) else list(merged["betas"])
    if "out" in merged:
        cfg.out = str(merged["out"])
    if "format" in merged:
        cfg.fmt = str(merged["format"])
    if "svg" in merged and merged["svg"]:
        cfg.svg = str(merged["svg"])
    for item in list(file_values.get("tol", "").split(";")) + list(getattr(args, "tol", None) or []):
        if not item:
            continue
        if "=" not in item:
            raise ConfigError(f"--tol expects class=value, got {item!r}")
        key, value = item.split("=", 1)
        cfg.tolerances[key.strip()] = mpf(value.strip())
    cfg.validate()
    return cfg


def _emit(cfg: RunConfig, text: str, suffix: str = ""):
    if cfg.out == "-":
        sys.stdout.write(text)
    else:
        path = Path(cfg.out + suffix if suffix else cfg.out)
        path.write_text(text)


def _csv(rows: list, columns: list) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(str(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def _json_doc(payload) -> str:
    return json.dumps({"schema": "1", **payload}, indent=1, sort_keys=False) + "\n"


def cmd_moments(cfg: RunConfig) -> int:
    ctx = cfg.ctx()
    rows = []
    for t in cfg.t_grid:
        params = WeightParams(cfg.alpha, cfg.beta, t)
        tables = moment_table(params, cfg.k_max, {SHIFT_PLAIN, SHIFT_EDGE}, ctx)
        for shift in (SHIFT_PLAIN, SHIFT_EDGE):
            table = tables[shift]
            for k in range(table.k_lo, table.k_max + 1):
                agreement = ""
                if table.route_delta is not None:
                    agreement = sci_str(table.route_delta[k], cfg.digits)
                rows.append(
                    {
                        "k": k,
                        "shift": f"({shift[0]};{shift[1]})",
                        "t": sci_str(params.t, cfg.digits),
                        "mu": sci_str(table.mu[k], cfg.digits),
                        "bound": sci_str(table.bounds[k], cfg.digits),
                        "route_agreement": agreement,
                    }
                )
    columns = ["k", "shift", "t", "mu", "bound", "route_agreement"]
    if cfg.fmt == "csv":
        _emit(cfg, _csv(rows, columns))
    else:
        _emit(cfg, _json_doc({"moments": rows}))
    return EXIT_PASS


def cmd_verify(cfg: RunConfig) -> int:
    ctx = cfg.ctx()
    reports = run_verify(
        cfg.alpha, cfg.beta, cfg.t_grid, cfg.n_max, ctx,
        suites=cfg.suites or None,
        tolerances=cfg.tolerances or None,
        p3_betas=cfg.betas,
    )
    rows = [r.row(cfg.digits) for r in reports]
    doc = _json_doc(
        {
            "config": {
                "alpha": cfg.alpha, "beta": cfg.beta, "t": cfg.t_grid,
                "n_max": cfg.n_max, "bits": cfg.bits,
                "suites": cfg.suites or "default",
            },
            "reports": rows,
        }
    )
    _emit(cfg, doc)
    ok = all_pass(reports)
    summary = _summarize(reports)
    print(summary, file=sys.stderr)
    return EXIT_PASS if ok else EXIT_IDENTITY_FAILURE


def _summarize(reports) -> str:
    total = len(reports)
    failed = sum(1 for r in reports if r.conclusive and not r.passed)
    inconclusive = sum(1 for r in reports if not r.conclusive)
    return f"{total} checks: {total - failed - inconclusive} pass, {failed} fail, {inconclusive} inconclusive"


def cmd_sweep(cfg: RunConfig) -> int:
    ctx = cfg.ctx()
    if cfg.svg and len(cfg.t_grid) < 2:
        raise ConfigError("sweep plots need at least 2 grid points")
    rows = []
    per_n = {}
    with mp.workprec(cfg.bits):
        tvals = [WeightParams(cfg.alpha, cfg.beta, t).t for t in cfg.t_grid]
        if cfg.svg and any(b <= a for a, b in zip(tvals, tvals[1:])):
            raise ConfigError("sweep plots need a strictly increasing t grid")
    for t in cfg.t_grid:
        params = WeightParams(cfg.alpha, cfg.beta, t)
        pipe = build_pipeline(params, cfg.n_max, ctx)
        for n in range(0, cfg.n_max + 1):
            values = {
                "alpha_n": pipe.ortho.alpha_rec[n] if n < cfg.n_max else None,
                "beta_n": pipe.ortho.beta_rec[n] if n >= 1 else None,
                "R_n": pipe.aux.R[n],
                "Rstar_n": pipe.aux.Rstar[n],
                "r_n": pipe.aux.r[n],
                "rstar_n": pipe.aux.rstar[n],
                "H_n": pipe.aux.H[n],
                "S_n": pipe.aux.S[n],
            }
            rows.append(
                {
                    "n": n,
                    "t": sci_str(params.t, cfg.digits),
                    **{
                        k: ("" if v is None else sci_str(v, cfg.digits))
                        for k, v in values.items()
                    },
                }
            )
            if cfg.svg:
                v = values.get(cfg.svg)
                if v is not None:
                    per_n.setdefault(f"n={n}", []).append((float(params.t), float(v)))
    columns = ["n", "t"] + list(SWEEP_QUANTITIES)
    if cfg.fmt == "csv":
        _emit(cfg, _csv(rows, columns))
    else:
        _emit(cfg, _json_doc({"sweep": rows}))
    if cfg.svg:
        if cfg.svg not in SWEEP_QUANTITIES:
            raise ConfigError(f"--svg must be one of {', '.join(SWEEP_QUANTITIES)}")
        art = polyline_plot(per_n, "t", cfg.svg, f"{cfg.svg} across the t grid")
        target = cfg.out if cfg.out != "-" else "sweep"
        Path(str(target) + f".{cfg.svg}.svg").write_text(art)
    return EXIT_PASS


def cmd_p3limit(cfg: RunConfig) -> int:
    from .identities.p3 import check_p3_limit

    ctx = cfg.ctx()
    s_value = cfg.t_grid[0]
    reports = check_p3_limit(min(2, cfg.n_max), s_value, cfg.betas, mpf(cfg.alpha), ctx)
    rows = [r.row(cfg.digits) for r in reports]
    _emit(cfg, _json_doc({"p3limit": rows}))
    print(_summarize(reports), file=sys.stderr)
    return EXIT_PASS if all_pass(reports) else EXIT_IDENTITY_FAILURE


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pjlab",
        description="high-precision identity laboratory for an essentially deformed Jacobi weight",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in (
        ("moments", cmd_moments),
        ("verify", cmd_verify),
        ("sweep", cmd_sweep),
        ("p3limit", cmd_p3limit),
    ):
        p = sub.add_parser(name)
        p.add_argument("--alpha", default=None)
        p.add_argument("--beta", default=None)
        p.add_argument("--t", default=None, help="comma-separated t grid (s grid for p3limit)")
        p.add_argument("--nmax", type=int, default=None)
        p.add_argument("--bits", type=int, default=None)
        p.add_argument("--kmax", type=int, default=None)
        p.add_argument("--tol", action="append", default=None, metavar="CLASS=VALUE")
        p.add_argument("--suites", default=None, help="comma-separated suite names")
        p.add_argument("--betas", default=None, help="comma-separated beta ladder (p3limit)")
        p.add_argument("--out", default=None, help="output path, '-' for stdout")
        p.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None)
        p.add_argument("--svg", default=None, help="sweep quantity to plot")
        p.add_argument("--config", default=None, help="key=value file; flags override")
        p.set_defaults(fn=fn)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
    except (ConfigError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.fn(cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PJLabError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
