"""Command-line front end: sweeps, phase diagrams and the asymptotics report.

Sweep rows are written in (L, T, B) order with the columns in
``SWEEP_COLUMNS``; phase-diagram rows in (L, T) order with
``PHASE_COLUMNS``. Floats use 17 significant digits, so equal inputs give
byte-identical files whatever ``--threads`` is.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

import numpy as np

from . import validation
from .analysis import (ALL_MEASURES, FiniteContext, ThermoContext,
                       measurement_transition_field, sweep_point)
from .measures import DISCORD, EntropyKind

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SWEEP_COLUMNS = (
    "B", "T", "L", "N", "I2", "I2_gamma", "I1", "I1_gamma", "Iq", "Iq_gamma",
    "D", "D_gamma", "C", "ev_pp", "ev_mm", "ev_bell_plus", "ev_bell_minus",
    "phase_I2", "phase_I1", "dominant",
    # extras, always after the fixed block
    "I2_closed", "phase_Iq", "phase_D", "q", "status",
)
PHASE_COLUMNS = ("L", "T", "B_t", "B_c", "q", "N", "crossover_lo", "crossover_hi",
                 "n_roots", "flagged", "status")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

def parse_int_list(text: str) -> list[int]:
    """``"1,2,5"``, ``"1-20"`` or a mix such as ``"1-3,8"``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise UsageError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(part))
    if not out:
        raise UsageError("empty separation list")
    return out


def make_grid(lo: float, hi: Optional[float], steps: int, log: bool = False) -> np.ndarray:
    if steps < 1:
        raise UsageError("grid needs at least one step")
    hi = lo if hi is None else hi
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise UsageError("grid bounds must be finite")
    if steps == 1:
        return np.array([lo])
    if log:
        if lo <= 0 or hi <= 0:
            raise UsageError("log grid needs positive bounds")
        return np.geomspace(lo, hi, steps)
    return np.linspace(lo, hi, steps)


def _add_common(p: argparse.ArgumentParser, measures_default: str):
    p.add_argument("--model", choices=("thermo", "finite"), default="thermo")
    p.add_argument("--N", type=int, default=None, help="chain length (finite model)")
    p.add_argument("--J", type=float, default=1.0, help="coupling; B and T are in these units")
    p.add_argument("--B-min", type=float, default=0.0)
    p.add_argument("--B-max", type=float, default=None)
    p.add_argument("--B-steps", type=int, default=1)
    p.add_argument("--T-min", type=float, default=0.0)
    p.add_argument("--T-max", type=float, default=None)
    p.add_argument("--T-steps", type=int, default=1)
    p.add_argument("--T-log", action="store_true", help="log-spaced temperature grid")
    p.add_argument("--L", type=str, default="1", help="separations, e.g. 1,2,5 or 1-20")
    p.add_argument("--q", type=float, default=3.0, help="entropic index of Iq")
    p.add_argument("--measures", type=str, default=measures_default)
    p.add_argument("--out", type=str, default="-", help="output path, '-' for stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xxdiscord", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sweep", help="measures on a (B, T, L) grid")
    _add_common(sp, ",".join(ALL_MEASURES))

    pd = sub.add_parser("phase-diagram", help="transition fields B_t and B_c on an (L, T) grid")
    _add_common(pd, "I2")

    va = sub.add_parser("validate-asymptotics", help="exact results against asymptotic laws")
    va.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                    help="override the tolerance of a check or check-name prefix")
    va.add_argument("--checks", type=str, default=None,
                    help=f"comma list of groups from: {', '.join(validation.SUITE)}")
    va.add_argument("--out", type=str, default="-")
    va.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


@dataclasses.dataclass(frozen=True)
class RunConfig:
    model: str
    N: Optional[int]
    J: float
    B: tuple
    T: tuple
    L: tuple
    q: float
    measures: tuple
    threads: int


def config_from_args(args) -> RunConfig:
    if args.model == "finite":
        if args.N is None:
            raise UsageError("--model finite needs --N")
        if args.N < 4 or args.N % 2:
            raise UsageError("--N must be even and >= 4")
    elif args.N is not None:
        raise UsageError("--N only applies to --model finite")
    if not (math.isfinite(args.J) and args.J > 0):
        raise UsageError("--J must be positive")
    if not (math.isfinite(args.q) and args.q > 0):
        raise UsageError("--q must be positive")
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    B = make_grid(args.B_min, args.B_max, args.B_steps)
    T = make_grid(args.T_min, args.T_max, args.T_steps, args.T_log)
    if (B < 0).any() or (T < 0).any():
        raise UsageError("fields and temperatures must be non-negative")
    try:
        L = parse_int_list(args.L)
    except ValueError as exc:
        raise UsageError(f"bad --L: {exc}") from None
    if min(L) < 1:
        raise UsageError("separations must be >= 1")
    if args.model == "finite" and max(L) > args.N // 2:
        raise UsageError(f"separation {max(L)} exceeds N/2 = {args.N // 2}")
    measures = tuple(m.strip() for m in args.measures.split(",") if m.strip())
    bad = [m for m in measures if m not in ALL_MEASURES]
    if not measures or bad:
        raise UsageError(f"--measures must be a subset of {','.join(ALL_MEASURES)}")
    return RunConfig(args.model, args.N, args.J, tuple(args.J * B), tuple(args.J * T),
                     tuple(L), args.q, measures, args.threads)


def _context(cfg: RunConfig, B: float, T: float):
    if cfg.model == "finite":
        return FiniteContext(cfg.N, B, cfg.J, T)
    return ThermoContext(B, cfg.J, T)


# ---------------------------------------------------------------------------
# workers (module level so they pickle)
# ---------------------------------------------------------------------------

def _sweep_task(cfg: RunConfig, B: float, T: float) -> list[dict]:
    ctx = _context(cfg, B, T)
    try:
        states = ctx.pair_states(cfg.L)
    except Exception:
        states = {}
    return [dataclasses.asdict(sweep_point(ctx, L, cfg.q, cfg.measures, states.get(L)))
            for L in cfg.L]


def _measure_for(cfg: RunConfig):
    name = cfg.measures[0]
    return {"I2": EntropyKind(2.0), "I1": EntropyKind(1.0),
            "Iq": EntropyKind(cfg.q), "D": DISCORD}.get(name)


def _phase_task(cfg: RunConfig, L: int, T: float) -> dict:
    row = {"L": L, "T": T, "B_t": None, "B_c": None, "q": None, "N": cfg.N,
           "crossover_lo": None, "crossover_hi": None, "n_roots": 0,
           "flagged": False, "status": "ok"}
    try:
        rec = measurement_transition_field(_context(cfg, 0.0, T), L, _measure_for(cfg))
    except Exception as exc:
        row["status"] = f"error: {type(exc).__name__}: {exc}"
        return row
    row.update(B_t=rec.B_t, B_c=rec.B_c, q=rec.q, n_roots=len(rec.roots),
               flagged=rec.flagged)
    if rec.crossover is not None:
        row["crossover_lo"], row["crossover_hi"] = rec.crossover
    if rec.B_t is None:
        row["status"] = "none-found"
    return row


def _run(fn, cfg: RunConfig, jobs: list[tuple]) -> list:
    if cfg.threads == 1 or len(jobs) < 2:
        return [fn(cfg, *j) for j in jobs]
    with ProcessPoolExecutor(max_workers=cfg.threads) as ex:
        # map keeps submission order, so the output never depends on scheduling
        return list(ex.map(fn, [cfg] * len(jobs), *zip(*jobs)))


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def format_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _json_value(v):
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    if isinstance(v, np.integer):
        return int(v)
    return v


def render(rows: list[dict], columns, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{c: _json_value(r.get(c)) for c in columns} for r in rows],
                          indent=1, allow_nan=False) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([format_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def _emit(text: str, out: str):
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_sweep(args) -> int:
    cfg = config_from_args(args)
    jobs = [(B, T) for T in cfg.T for B in cfg.B]
    per_point = _run(_sweep_task, cfg, jobs)
    rows = []
    for i in range(len(cfg.L)):
        for recs in per_point:
            r = recs[i]
            r["N"] = "inf" if r["N"] is None else r["N"]
            rows.append(r)
    bad = sum(1 for r in rows if r["status"] != "ok")
    _emit(render(rows, SWEEP_COLUMNS, args.format), args.out)
    if bad:
        print(f"warning: {bad} of {len(rows)} points failed (see status column)",
              file=sys.stderr)
    return EXIT_OK


def cmd_phase_diagram(args) -> int:
    cfg = config_from_args(args)
    if len(cfg.measures) != 1 or cfg.measures[0] == "C":
        raise UsageError("phase-diagram takes exactly one of I2, I1, Iq, D in --measures")
    rows = _run(_phase_task, cfg, [(L, T) for L in cfg.L for T in cfg.T])
    for r in rows:
        r["N"] = "inf" if r["N"] is None else r["N"]
    bad = sum(1 for r in rows if r["status"].startswith("error"))
    _emit(render(rows, PHASE_COLUMNS, args.format), args.out)
    if bad:
        print(f"warning: {bad} of {len(rows)} points failed", file=sys.stderr)
    return EXIT_OK


def cmd_validate(args) -> int:
    tols = {}
    for item in args.tol:
        name, sep, value = item.partition("=")
        try:
            tols[name.strip()] = float(value)
        except ValueError:
            sep = ""
        if not sep or not name.strip():
            raise UsageError(f"--tol expects NAME=VALUE, got {item!r}")
    groups = None
    if args.checks:
        groups = [g.strip() for g in args.checks.split(",") if g.strip()]
    try:
        checks = validation.run_suite(tols, groups)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    rows = [dict(name=c.name, value=c.value, reference=c.reference, error=c.error,
                 kind=c.kind, tol=c.tol, passed=c.passed) for c in checks]
    _emit(render(rows, ("name", "value", "reference", "error", "kind", "tol", "passed"),
                 args.format), args.out)
    failed = [c.name for c in checks if not c.passed]
    if failed:
        print(f"{len(failed)} of {len(checks)} checks failed: {', '.join(failed)}",
              file=sys.stderr)
        return EXIT_FAIL
    print(f"all {len(checks)} checks passed", file=sys.stderr)
    return EXIT_OK


COMMANDS = {"sweep": cmd_sweep, "phase-diagram": cmd_phase_diagram,
            "validate-asymptotics": cmd_validate}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"xxdiscord: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
