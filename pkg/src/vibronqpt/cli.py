"""Command-line front end: sweeps and figure data written as CSV or JSON.

Subcommands: sweep, husimi-grid, variational, zeros, critical.
Settings resolve as command-line flag, then config file, then default.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .cp2quad import build_grid, moment, wehrl
from .husimi import axis_coordinates, cross_section, make_field
from .spectra import ConvergenceError
from .variational import cat_energy, criticality_scan, cs_equilibrium, solve
from .zeros import zero_lines

log = logging.getLogger("vibronqpt")

THREADS_ENV = "VIBRONQPT_THREADS"
EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3
SOURCES = ("exact", "cs", "cat")

# per-subcommand defaults, mirroring the figure settings
DEFAULTS = {
    "sweep": {"N": "4,8,16", "xi_min": "0", "xi_max": "1", "xi_step": "0.01",
              "nu": "2", "source": "exact,cs,cat", "tol": "1e-6"},
    "husimi-grid": {"N": "8", "xi": "0", "source": "exact", "axis": "momentum",
                    "range": "-2,2", "step": "0.05"},
    "variational": {"N": "8,60,inf", "xi_min": "0", "xi_max": "1", "xi_step": "0.01"},
    "zeros": {"N": "8", "xi": "0.5"},
    "critical": {"xi_min": "0", "xi_max": "1", "xi_step": "0.001"},
}


class UsageError(ValueError):
    pass


def fmt(x) -> str:
    """17 significant digits; empty for missing values."""
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(float(x), ".17g")


def read_config(path: str) -> dict[str, str]:
    """Flat ``key = value`` file; '#' starts a comment, dashes in keys are
    treated as underscores."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_").lstrip("_")] = value.strip("'\"")
    return out


def parse_int_list(text: str, allow_inf: bool = False) -> list:
    vals = []
    for tok in str(text).replace(" ", "").split(","):
        if not tok:
            continue
        if allow_inf and tok.lower() in ("inf", "infinity", "∞"):
            vals.append(math.inf)
        else:
            try:
                vals.append(int(tok))
            except ValueError:
                raise UsageError(f"not an integer: {tok!r}") from None
    if not vals:
        raise UsageError("empty list")
    return vals


def parse_float_list(text: str) -> list[float]:
    try:
        vals = [float(t) for t in str(text).replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not vals:
        raise UsageError("empty list")
    return vals


def xi_grid(lo: float, hi: float, step: float) -> list[float]:
    if not (0.0 <= lo <= hi <= 1.0) or not step > 0:
        raise UsageError(f"invalid xi range [{lo}, {hi}] step {step}")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    # rounding keeps grid values such as 0.3 exact in the output
    return [round(lo + k * step, 12) for k in range(n)]


@dataclass
class SweepRecord:
    N: int
    xi: float
    source: str
    ipr: float
    wehrl: float
    renyi: list[tuple[float, float]] = field(default_factory=list)
    radius: float | None = None
    energy_per_particle: float | None = None


def sweep_cell(N: int, xi: float, source: str, nus: list[float], tol: float) -> SweepRecord:
    f = make_field(source, N, xi)
    grid = build_grid(N, max([2.0] + nus), tol)
    ipr = moment(f, 2, grid, reduce=True).value
    w = wehrl(f, build_grid(N, 1.0, tol), reduce=True)
    renyi = []
    for nu in nus:
        val = w if nu == 1 else math.log(moment(f, nu, grid, reduce=True).value) / (1 - nu)
        renyi.append((nu, val))
    if source == "exact":
        radius, energy = None, f.gs.energy / N
    elif source == "cs":
        radius, energy = cs_equilibrium(xi)
    else:
        radius = f.r
        energy = cat_energy(N, xi, radius)
    return SweepRecord(N, xi, source, ipr, w, renyi, radius, energy)


def sweep_header(nus: list[float]) -> list[str]:
    cols = ["N", "xi", "source", "ipr", "wehrl"]
    for k in range(1, len(nus) + 1):
        cols += [f"renyi_nu_{k}", f"renyi_value_{k}"]
    return cols + ["radius", "energy"]


def sweep_row(rec: SweepRecord) -> list[str]:
    row = [fmt(rec.N), fmt(rec.xi), rec.source, fmt(rec.ipr), fmt(rec.wehrl)]
    for nu, val in rec.renyi:
        row += [fmt(nu), fmt(val)]
    return row + [fmt(rec.radius), fmt(rec.energy_per_particle)]


def run_sweep(Ns, xis, sources, nus, tol, threads=1) -> list[SweepRecord]:
    cells = [(N, xi, s) for N in Ns for xi in xis for s in sources]
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        return list(pool.map(lambda c: sweep_cell(c[0], c[1], c[2], nus, tol), cells))


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _write(path: str | None, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _format_for(args) -> str:
    if args.format:
        return args.format
    return "json" if (args.out or "").endswith(".json") else "csv"


def _records_json(records: list[dict]) -> str:
    return json.dumps(records, indent=1, allow_nan=True) + "\n"


def cmd_sweep(opt, args) -> str:
    Ns = parse_int_list(opt["N"])
    if min(Ns) < 2:
        raise UsageError("sweep needs N >= 2")
    xis = xi_grid(float(opt["xi_min"]), float(opt["xi_max"]), float(opt["xi_step"]))
    sources = [s for s in opt["source"].replace(" ", "").split(",") if s]
    bad = set(sources) - set(SOURCES)
    if bad or not sources:
        raise UsageError(f"unknown source(s): {sorted(bad)}")
    sources = [s for s in SOURCES if s in sources]
    nus = parse_float_list(opt["nu"])
    if min(nus) <= 0:
        raise UsageError("nu must be positive")
    records = run_sweep(Ns, xis, sources, nus, float(opt["tol"]), opt["threads"])
    if _format_for(args) == "json":
        return _records_json([
            {"N": r.N, "xi": r.xi, "source": r.source, "ipr": r.ipr, "wehrl": r.wehrl,
             "renyi": [{"nu": nu, "value": v} for nu, v in r.renyi],
             "radius": r.radius, "energy": r.energy_per_particle}
            for r in records
        ])
    return _csv_text(sweep_header(nus), [sweep_row(r) for r in records])


def cmd_husimi_grid(opt, args) -> str:
    N = parse_int_list(opt["N"])[0]
    xi = float(opt["xi"])
    lo, hi = _parse_range(opt["range"])
    step = float(opt["step"])
    axis_coordinates(lo, hi, step)
    field_ = make_field(opt["source"].strip(), N, xi)
    sec = cross_section(field_, opt["axis"].strip(), lo, hi, step)
    lab = ("x1", "x2") if sec.axis == "position" else ("p1", "p2")
    header = [f"{lab[0]}\\{lab[1]}"] + [fmt(u) for u in sec.coords]
    rows = [[fmt(u)] + [fmt(v) for v in row] for u, row in zip(sec.coords, sec.values)]
    return _csv_text(header, rows)


def _parse_range(text: str) -> tuple[float, float]:
    vals = parse_float_list(text)
    if len(vals) == 1:
        return -abs(vals[0]), abs(vals[0])
    if len(vals) != 2:
        raise UsageError("range takes 'R' or 'lo,hi'")
    return vals[0], vals[1]


def cmd_variational(opt, args) -> str:
    Ns = parse_int_list(opt["N"], allow_inf=True)
    if min(Ns) < 2:
        raise UsageError("variational needs N >= 2")
    xis = xi_grid(float(opt["xi_min"]), float(opt["xi_max"]), float(opt["xi_step"]))
    cells = [(N, xi) for N in Ns for xi in xis]
    with ThreadPoolExecutor(max_workers=max(1, opt["threads"])) as pool:
        sols = list(pool.map(lambda c: solve(c[0], c[1], "cat"), cells))
    if _format_for(args) == "json":
        return _records_json([
            {"N": "inf" if math.isinf(s.N) else s.N, "xi": s.xi,
             "radius": s.radius, "energy": s.energy_per_particle} for s in sols
        ])
    rows = [[fmt(s.N), fmt(s.xi), fmt(s.radius), fmt(s.energy_per_particle)] for s in sols]
    return _csv_text(["N", "xi", "radius", "energy"], rows)


def cmd_zeros(opt, args) -> str:
    N = parse_int_list(opt["N"])[0]
    xi = float(opt["xi"])
    if not 0 <= xi <= 1 or N < 2:
        raise UsageError("zeros needs N >= 2 and xi in [0, 1]")
    sol = solve(N, xi, "cat")
    lines = zero_lines(N, sol.radius)
    out = {"N": N, "xi": xi, "radius": sol.radius,
           "records": [{"index": z.index, "offset": z.offset} for z in lines]}
    return json.dumps(out, indent=1) + "\n"


def cmd_critical(opt, args) -> str:
    xis = xi_grid(float(opt["xi_min"]), float(opt["xi_max"]), float(opt["xi_step"]))
    rep = criticality_scan(xis)
    out = {"xi_c": rep.xi_c, "jump": rep.jump, "jump_coarse_grid": rep.jump_coarse,
           "step": rep.step}
    return json.dumps(out, indent=1) + "\n"


COMMANDS = {
    "sweep": cmd_sweep,
    "husimi-grid": cmd_husimi_grid,
    "variational": cmd_variational,
    "zeros": cmd_zeros,
    "critical": cmd_critical,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vibronqpt", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--config", help="flat key = value settings file")
        s.add_argument("--out", help="output path ('-' or omitted: stdout)")
        s.add_argument("--threads", type=int, help=f"worker threads (env {THREADS_ENV})")
        s.add_argument("-v", "--verbose", action="store_true")
        if name in ("sweep", "variational"):
            s.add_argument("--format", choices=("csv", "json"))
        else:
            s.set_defaults(format=None)
        keys = DEFAULTS[name]
        if "N" in keys:
            s.add_argument("--N", dest="N", help="comma-separated boson numbers")
        for k in ("xi_min", "xi_max", "xi_step"):
            if k in keys:
                s.add_argument("--" + k.replace("_", "-"), dest=k)
        if "xi" in keys:
            s.add_argument("--xi", dest="xi")
        for k in ("nu", "source", "axis", "range", "step", "tol"):
            if k in keys:
                s.add_argument("--" + k, dest=k)
    return p


def resolve(args) -> dict:
    cfg = read_config(args.config) if args.config else {}
    opt = {}
    for key, default in DEFAULTS[args.command].items():
        flag = getattr(args, key, None)
        opt[key] = flag if flag is not None else cfg.get(key, default)
    threads = args.threads
    if threads is None:
        threads = int(cfg.get("threads", os.environ.get(THREADS_ENV, "1")))
    if threads < 1:
        raise UsageError("threads must be >= 1")
    opt["threads"] = threads
    if args.out is None and "out" in cfg:
        args.out = cfg["out"]
    return opt


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        opt = resolve(args)
        text = COMMANDS[args.command](opt, args)
        _write(args.out, text)
    except ConvergenceError as exc:
        print(f"vibronqpt: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        print(f"vibronqpt: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
