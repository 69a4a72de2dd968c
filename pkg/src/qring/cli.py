"""Command-line sweeps over the ring model.

Three subcommands:

* ``qring table1``   -- the field-independent measure combinations on the
  default (n, m) grid, one CSV row per orbital.
* ``qring sweep``    -- any measure subset along one physical axis
  (``nu``, ``a`` or ``wc_ratio``) for one or more states.
* ``qring waveform`` -- radial position or momentum waveform on an ``r``
  or ``k`` grid.

Output is CSV (default) or JSON on stdout or ``--output``.  The first CSV
line is a comment header recording version, units convention and tolerance;
numbers are printed in scientific notation with 9 significant digits.
Identical invocations produce byte-identical output.

Exit codes: 0 success, 2 invalid specification, 3 some rows failed,
4 all rows failed.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .measures import measure_bundle
from .model import QuantumState, RingParams
from .quadrature import QuadConfig
from .waveforms import dump_grid

__all__ = ["main", "cmd_table1", "cmd_sweep", "cmd_waveform"]

# Columns derived from a MeasureSet, in fixed output order.
_MEASURES = [
    "energy", "current", "magnetization",
    "s_rho", "s_gamma", "s_sum",
    "i_rho", "i_gamma", "i_prod",
    "o_rho", "o_gamma", "o_prod",
    "cgl_rho", "cgl_gamma",
    "r2", "k2", "rk_prod",
]
_COMBO_PARTS = {
    "s_sum": ("s_rho", "s_gamma"),
    "i_prod": ("i_rho", "i_gamma"),
    "o_prod": ("o_rho", "o_gamma"),
    "rk_prod": ("r2", "k2"),
}


class SpecError(ValueError):
    """Invalid command specification (maps to exit code 2)."""


def _fmt(x):
    """9 significant digits, scientific, '.' decimal separator."""
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return f"{x:.8e}"


def _parse_int_list(text, name):
    try:
        return [int(tok) for tok in text.split(",") if tok != ""]
    except ValueError:
        raise SpecError(f"--{name} expects a comma-separated integer list, got {text!r}")


def _parse_range(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise SpecError(f"--range expects start:stop:count, got {text!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise SpecError(f"--range expects numeric start:stop:count, got {text!r}")
    if count < 1:
        raise SpecError("--range count must be >= 1")
    return start, stop, count


def _grid(start, stop, count):
    if count == 1:
        return [start]
    step = (stop - start) / (count - 1)
    return [start + i * step for i in range(count)]


def _base_omega0(units):
    # r0 = sqrt(1/(2 omega0)): the r0-unity convention fixes omega0 = 1/2.
    return 1.0 if units == "omega0" else 0.5


def _make_params(args, a=None, wc_ratio=None, nu=None):
    omega0 = _base_omega0(args.units)
    a = args.a if a is None else a
    wc_ratio = args.omega_c_ratio if wc_ratio is None else wc_ratio
    nu = args.nu if nu is None else nu
    try:
        return RingParams(a=a, omega0=omega0, omega_c=wc_ratio * omega0, nu=nu)
    except ValueError as exc:
        raise SpecError(str(exc))


def _cfg(args):
    try:
        return QuadConfig(rel_tol=args.rel_tol)
    except ValueError as exc:
        raise SpecError(str(exc))


def _workers():
    raw = os.environ.get("QRING_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _bundle_task(task):
    params, state, cfg = task
    try:
        return measure_bundle(params, state, cfg), ""
    except Exception as exc:  # per-row failure, serialized into the row
        return None, f"{type(exc).__name__}: {exc}"


def _run_bundles(tasks):
    """Evaluate measure bundles for (params, state, cfg) tasks in spec order."""
    nworkers = _workers()
    if nworkers == 1 or len(tasks) <= 1:
        return [_bundle_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=nworkers) as pool:
        return list(pool.map(_bundle_task, tasks))


def _emit(lines_meta, header, rows, args):
    """Serialize header + rows as CSV or JSON to --output (default stdout)."""
    if args.format == "csv":
        buf = io.StringIO()
        buf.write(f"# qring {__version__} units={args.units} tol={args.rel_tol:g}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        doc = {
            "program": "qring",
            "version": __version__,
            "units": args.units,
            "tol": args.rel_tol,
            **lines_meta,
            "columns": header,
            "rows": rows,
        }
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# table1

def cmd_table1(args):
    a = args.a
    n_list = list(range(args.n_max + 1))
    m_list = _parse_int_list(args.m, "m") if args.m else [0, 1, 2, 3, 4, 5, 10]
    cfg = _cfg(args)
    params = _make_params(args, a=a, wc_ratio=0.0, nu=0.0)
    tasks = [(params, QuantumState(n, m), cfg) for n in n_list for m in m_list]
    results = _run_bundles(tasks)

    header = ["n", "m", "s_sum", "i_prod", "o_prod", "cgl_rho", "cgl_gamma", "status"]
    rows = []
    failures = 0
    for (_, state, _), (b, err) in zip(tasks, results):
        if b is None:
            rows.append([state.n, state.m, "", "", "", "", "", err])
            failures += 1
        else:
            rows.append([
                state.n, state.m,
                _fmt(b.s_sum), _fmt(b.i_prod), _fmt(b.o_prod),
                _fmt(b.cgl_rho), _fmt(b.cgl_gamma), "ok",
            ])
    _emit({"command": "table1", "a": a}, header, rows, args)
    return _exit_code(failures, len(rows))


# ---------------------------------------------------------------------------
# sweep

def cmd_sweep(args):
    if args.axis not in ("nu", "a", "wc_ratio"):
        raise SpecError(f"sweep axis must be nu, a or wc_ratio, got {args.axis!r}")
    start, stop, count = _parse_range(args.range)
    if args.axis in ("a", "wc_ratio") and min(start, stop) < 0:
        raise SpecError(f"axis {args.axis} requires non-negative grid bounds")
    grid = _grid(start, stop, count)
    n_list = _parse_int_list(args.n, "n")
    m_list = _parse_int_list(args.m, "m")
    if not n_list or not m_list:
        raise SpecError("--n and --m must each select at least one value")
    measures = (
        [tok for tok in args.measures.split(",") if tok] if args.measures else list(_MEASURES)
    )
    bad = sorted(set(measures) - set(_MEASURES))
    if bad:
        raise SpecError(f"unknown measures {bad}; available: {', '.join(_MEASURES)}")
    cfg = _cfg(args)

    tasks = []
    keys = []
    for x in grid:
        params = _make_params(args, **{args.axis: x})
        for n in n_list:
            for m in m_list:
                tasks.append((params, QuantumState(n, m), cfg))
                keys.append((x, n, m))
    results = _run_bundles(tasks)

    header = [args.axis, "n", "m"]
    for name in measures:
        header += [name, name + "_src", name + "_err"]
    header.append("status")

    rows = []
    failures = 0
    for (x, n, m), (b, err) in zip(keys, results):
        row = [_fmt(x), n, m]
        if b is None:
            row += ["", "", ""] * len(measures) + [err]
            failures += 1
        else:
            ok = True
            for name in measures:
                val = getattr(b, name)
                src, est = _column_provenance(b, name)
                if isinstance(val, float) and math.isnan(val):
                    ok = False
                row += [_fmt(val), src, _fmt(est) if est is not None else ""]
            row.append("ok" if ok else "partial")
            if not ok:
                failures += 1
        rows.append(row)
    _emit({"command": "sweep", "axis": args.axis}, header, rows, args)
    return _exit_code(failures, len(rows))


def _column_provenance(bundle, name):
    """(provenance flag, error estimate or None) for one output column."""
    parts = _COMBO_PARTS.get(name, (name,))
    srcs = [bundle.provenance.get(p, "closed") for p in parts]
    if any(s.startswith("error") for s in srcs):
        return "error", None
    src = "closed" if all(s == "closed" for s in srcs) else "numeric"
    if src == "closed":
        return src, None
    est = sum(bundle.error_estimates.get(p, 0.0) for p in parts)
    return src, est


# ---------------------------------------------------------------------------
# waveform

def cmd_waveform(args):
    if args.axis not in ("r", "k"):
        raise SpecError(f"waveform axis must be r or k, got {args.axis!r}")
    start, stop, count = _parse_range(args.range)
    if start < 0:
        raise SpecError("waveform grid must start at >= 0")
    if count > 1 and not start < stop:
        raise SpecError("waveform grid requires start < stop")
    n_list = _parse_int_list(args.n, "n")
    m_list = _parse_int_list(args.m, "m")
    if len(n_list) != 1 or len(m_list) != 1:
        raise SpecError("waveform takes exactly one --n and one --m value")
    params = _make_params(args)
    cfg = _cfg(args)
    try:
        dump = dump_grid(
            params,
            QuantumState(n_list[0], m_list[0]),
            args.axis,
            start,
            stop,
            count,
            log_spaced=args.log_spaced,
            cfg=cfg,
        )
    except SpecError:
        raise
    except ValueError as exc:
        raise SpecError(str(exc))
    header = [dump.axis, "waveform"]
    rows = [[_fmt(float(x)), _fmt(float(v))] for x, v in zip(dump.axis_values, dump.values)]
    _emit({"command": "waveform", "metadata": dump.metadata}, header, rows, args)
    return 0


def _exit_code(failures, total):
    if failures == 0:
        return 0
    return 4 if failures == total else 3


# ---------------------------------------------------------------------------
# argument parsing

def _add_common(p):
    p.add_argument("--a", type=float, default=20.0, help="antidot strength (default 20)")
    p.add_argument(
        "--omega-c-ratio", type=float, default=0.0,
        help="uniform-field cyclotron ratio omega_c/omega0 (default 0)",
    )
    p.add_argument("--nu", type=float, default=0.0, help="AB flux in flux quanta")
    p.add_argument(
        "--units", choices=("omega0", "r0"), default="omega0",
        help="unit convention: omega0=1 (default) or r0=1 (omega0=1/2)",
    )
    p.add_argument("--rel-tol", type=float, default=1e-10, help="quadrature relative tolerance")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default=None, help="output path (default stdout)")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="qring",
        description="Spectra, currents, waveforms and information measures of a 2D quantum ring",
    )
    parser.add_argument("--version", action="version", version=f"qring {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p1 = sub.add_parser("table1", help="field-independent measure combinations per orbital")
    _add_common(p1)
    p1.add_argument("--n-max", type=int, default=5, help="largest principal number (default 5)")
    p1.add_argument("--m", default=None, help="comma list of m values (default 0..5,10)")
    p1.set_defaults(func=cmd_table1)

    p2 = sub.add_parser("sweep", help="measures along one physical axis")
    _add_common(p2)
    p2.add_argument("--axis", required=True, help="sweep axis: nu, a or wc_ratio")
    p2.add_argument("--range", required=True, help="axis grid start:stop:count")
    p2.add_argument("--n", default="0", help="comma list of principal numbers")
    p2.add_argument("--m", default="0", help="comma list of magnetic numbers")
    p2.add_argument("--measures", default=None, help="comma subset of measure columns")
    p2.set_defaults(func=cmd_sweep)

    p3 = sub.add_parser("waveform", help="radial waveform on an r or k grid")
    _add_common(p3)
    p3.add_argument("--axis", required=True, help="grid axis: r or k")
    p3.add_argument("--range", required=True, help="axis grid start:stop:count")
    p3.add_argument("--n", default="0", help="principal quantum number")
    p3.add_argument("--m", default="0", help="magnetic quantum number")
    p3.add_argument("--log-spaced", action="store_true", help="geometric axis grid")
    p3.set_defaults(func=cmd_waveform)
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses code 2 for usage errors already; preserve 0 for --help.
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"qring: invalid specification: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
