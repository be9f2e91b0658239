"""Command-line front end: conversions, solvers, cross sections, suites and ray limits.

Output is JSON (default) or CSV, written to ``--out`` or standard output.
Exit codes: 0 success, 1 verification failure, 2 domain or usage error,
3 solver non-convergence.
"""

import argparse
import io
import math
import os
import sys

from .converters import (
    DehnThurston,
    FenchelNielsen,
    cp_to_dt,
    cp_to_fn,
    dt_to_cp,
    fn_to_cp,
)
from .errors import (
    CollarError,
    DomainError,
    GridTooCoarse,
    NoConvergence,
    NotInDelta,
    NotOnH,
    UnsupportedWord,
)
from .geometry import (
    CollarParams,
    TriangleLengths,
    collar_residual_relative,
    cross_section,
    delta_residual,
    invert_pi_delta,
    invert_pi_H,
    project_pi,
)
from .holonomy import TorusWord, foliation_half_length, ray_limit_experiment
from .numerics import DEFAULT_TOL, Tolerance
from .verify import SUITES, run_suite

SYSTEMS = ("fn", "dt", "cp", "tri-h", "tri-d")
ARITY = {"fn": 2, "dt": 2, "cp": 2, "tri-h": 3, "tri-d": 3}
FIELDS = {
    "fn": ("two_ell", "two_tau"),
    "dt": ("two_ell", "two_tau"),
    "cp": ("x", "y"),
    "tri-h": ("a", "b", "c"),
    "tri-d": ("a", "b", "c"),
}
CONFIG_KEYS = ("abs_tol", "rel_tol", "max_iter", "format", "out", "seed", "cases")

EXIT_OK, EXIT_FAILED, EXIT_DOMAIN, EXIT_SOLVER = 0, 1, 2, 3


class UsageError(ValueError):
    pass


# ---- serialization ---------------------------------------------------------

def format_number(x):
    """17 significant digits; non-finite values become ``None``."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    x = float(x)
    if not math.isfinite(x):
        return None
    return format(x, ".17g")


def _json(obj, indent=0):
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{inner}{_json_str(k)}: {_json(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(_json(v) for v in obj) + "]"
        return "[\n" + ",\n".join(inner + _json(v, indent + 1) for v in obj) + "\n" + pad + "]"
    if isinstance(obj, str):
        return _json_str(obj)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    s = format_number(obj)
    return "null" if s is None else s


def _json_str(s):
    out = ['"']
    for ch in s:
        if ch in '"\\':
            out.append("\\" + ch)
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def dumps(obj):
    """Deterministic JSON with 17-significant-digit floats and ``null`` for NaN/inf."""
    return _json(obj) + "\n"


def to_csv(header, rows):
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        cells = []
        for v in row:
            if isinstance(v, float):
                s = format_number(v)
                cells.append("" if s is None else s)
            elif v is None:
                cells.append("")
            else:
                cells.append(str(v))
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


# ---- configuration ---------------------------------------------------------

def read_config(path):
    """Parse a ``key = value`` file; ``#`` starts a comment."""
    values = {}
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in CONFIG_KEYS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = value
    return values


def resolve_settings(args, environ=None):
    """Merge defaults, COLLAR_TOL, the config file and flags (later wins)."""
    environ = os.environ if environ is None else environ
    merged = {
        "abs_tol": DEFAULT_TOL.abs_tol,
        "rel_tol": DEFAULT_TOL.rel_tol,
        "max_iter": DEFAULT_TOL.max_iter,
        "format": "json",
        "out": None,
        "seed": 0,
        "cases": 100,
    }
    if environ.get("COLLAR_TOL"):
        merged["abs_tol"] = environ["COLLAR_TOL"]
    if getattr(args, "config", None):
        merged.update(read_config(args.config))
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    try:
        tol = Tolerance(float(merged["abs_tol"]), float(merged["rel_tol"]), int(merged["max_iter"]))
        seed, cases = int(merged["seed"]), int(merged["cases"])
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad setting: {exc}") from exc
    if merged["format"] not in ("json", "csv"):
        raise UsageError(f"format must be json or csv, got {merged['format']!r}")
    if cases < 1:
        raise UsageError("cases must be positive")
    return {"tol": tol, "format": merged["format"], "out": merged["out"], "seed": seed,
            "cases": cases}


def tolerance_record(tol):
    return {"abs_tol": tol.abs_tol, "rel_tol": tol.rel_tol, "max_iter": tol.max_iter}


# ---- commands --------------------------------------------------------------

def _to_cp(system, values, tol):
    if system == "fn":
        return fn_to_cp(FenchelNielsen(*values))
    if system == "dt":
        return dt_to_cp(DehnThurston(*values))
    if system == "cp":
        return CollarParams(*values)
    t = TriangleLengths(*values)
    if system == "tri-h":
        if not t.in_H(max(1e-9, tol.abs_tol)):
            raise NotOnH(f"{t} does not satisfy the collar equation")
    elif not t.in_Delta(max(1e-12, tol.abs_tol)):
        raise NotInDelta(f"{t} does not satisfy the triangle equality")
    return project_pi(t)


def _from_cp(system, p, tol):
    if system == "fn":
        fn = cp_to_fn(p, tol)
        return (fn.two_ell, fn.two_tau)
    if system == "dt":
        dt = cp_to_dt(p)
        return (dt.two_ell, dt.two_tau)
    if system == "cp":
        return tuple(p)
    if system == "tri-h":
        return tuple(invert_pi_H(p, tol))
    return tuple(invert_pi_delta(p))


def cmd_convert(args, settings):
    tol = settings["tol"]
    src, dst = args.source, args.target
    if len(args.values) != ARITY[src]:
        raise UsageError(f"{src} takes {ARITY[src]} values, got {len(args.values)}")
    p = _to_cp(src, args.values, tol)
    out = _from_cp(dst, p, tol)
    h_point = invert_pi_H(p, tol)
    d_point = invert_pi_delta(p)
    record = {
        "command": "convert",
        "from": src,
        "to": dst,
        "input": dict(zip(FIELDS[src], args.values)),
        "output": dict(zip(FIELDS[dst], out)),
        "collar_params": {"x": p.x, "y": p.y},
        "residuals": {
            "collar_relative": collar_residual_relative(h_point),
            "delta": delta_residual(d_point),
            "projection": (project_pi(h_point) - p).norm,
        },
        "tolerance": tolerance_record(tol),
    }
    header = ["system", *FIELDS[dst], "collar_relative", "delta", "abs_tol"]
    rows = [[dst, *out, record["residuals"]["collar_relative"], record["residuals"]["delta"],
             tol.abs_tol]]
    return record, header, rows, EXIT_OK


def cmd_solve(args, settings):
    tol = settings["tol"]
    p = CollarParams(args.x, args.y)
    d_point = invert_pi_delta(p)
    record = {
        "command": "solve",
        "surface": args.surface,
        "collar_params": {"x": p.x, "y": p.y},
        "tolerance": tolerance_record(tol),
    }
    if args.surface == "Delta":
        lengths = d_point
        record["lengths"] = dict(zip("abc", lengths))
        record["residuals"] = {
            "delta": delta_residual(lengths),
            "projection": (project_pi(lengths) - p).norm,
        }
    else:
        lengths = invert_pi_H(p, tol)
        record["lengths"] = dict(zip("abc", lengths))
        record["delta_lengths"] = dict(zip("abc", d_point))
        record["h_exceeds_delta"] = {k: u > v for k, u, v in zip("abc", lengths, d_point)}
        record["residuals"] = {
            "collar_relative": collar_residual_relative(lengths),
            "projection": (project_pi(lengths) - p).norm,
        }
    header = ["a", "b", "c", *record["residuals"], "abs_tol"]
    rows = [[*lengths, *record["residuals"].values(), tol.abs_tol]]
    return record, header, rows, EXIT_OK


def cmd_cross_section(args, settings):
    tol = settings["tol"]
    points = cross_section(args.C, args.n, tol)
    rows, items = [], []
    for i, q in enumerate(points):
        t = invert_pi_H(q, tol)
        sum_err = t.total - args.C
        res = collar_residual_relative(t)
        items.append({"x": q.x, "y": q.y, "a": t.a, "b": t.b, "c": t.c,
                      "sum_error": sum_err, "collar_relative": res})
        rows.append([i, q.x, q.y, t.a, t.b, t.c, sum_err, res, tol.abs_tol])
    record = {
        "command": "cross-section",
        "C": args.C,
        "n": args.n,
        "closed": True,
        "points": items,
        "tolerance": tolerance_record(tol),
    }
    header = ["index", "x", "y", "a", "b", "c", "sum_error", "collar_relative", "abs_tol"]
    return record, header, rows, EXIT_OK


def cmd_verify(args, settings):
    tol = settings["tol"]
    results = run_suite(args.suite, settings["seed"], settings["cases"], tol)
    passed = all(r.passed for r in results)
    record = {
        "command": "verify",
        "suite": args.suite,
        "seed": settings["seed"],
        "cases": settings["cases"],
        "passed": passed,
        "properties": [r.as_dict() for r in results],
        "tolerance": tolerance_record(tol),
    }
    header = ["suite", "property", "passed", "worst", "threshold", "cases", "abs_tol"]
    rows = [[r.suite, r.name, str(r.passed).lower(), r.worst, r.threshold, r.cases, tol.abs_tol]
            for r in results]
    return record, header, rows, EXIT_OK if passed else EXIT_FAILED


def _parse_t_list(text):
    try:
        values = [float(s) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise UsageError(f"bad t list {text!r}") from exc
    if not values or any(not v > 0 for v in values):
        raise UsageError("t values must be positive")
    if any(v2 <= v1 for v1, v2 in zip(values, values[1:])):
        raise UsageError("t values must be increasing")
    return values


def cmd_limit(args, settings):
    tol = settings["tol"]
    p = CollarParams(args.x, args.y)
    if p.x == 0.0 and p.y == 0.0:
        raise UsageError("direction (0, 0) is excluded")
    w = TorusWord.parse(args.word)
    t_values = _parse_t_list(args.t)
    try:
        prediction = foliation_half_length(p, w)
    except UnsupportedWord:
        prediction = None
    table, rows = [], []
    for t, value in ray_limit_experiment(p, w, t_values, tol):
        status = "ok" if value is not None else "not_hyperbolic"
        gap = None if value is None or prediction is None else value - prediction
        table.append({"t": t, "normalized_length": value, "prediction": prediction,
                      "gap": gap, "status": status})
        rows.append([t, value, prediction, gap, status, tol.abs_tol])
    record = {
        "command": "limit",
        "direction": {"x": p.x, "y": p.y},
        "word": str(w),
        "rows": table,
        "tolerance": tolerance_record(tol),
    }
    header = ["t", "normalized_length", "prediction", "gap", "status", "abs_tol"]
    return record, header, rows, EXIT_OK


# ---- parser and entry point ------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value settings file; flags take precedence")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--out", default=None, help="output file (default: standard output)")
    common.add_argument("--abs-tol", dest="abs_tol", type=float, default=None)
    common.add_argument("--rel-tol", dest="rel_tol", type=float, default=None)
    common.add_argument("--max-iter", dest="max_iter", type=int, default=None)

    parser = argparse.ArgumentParser(prog="collar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", parents=[common], help="change coordinates")
    p.add_argument("--from", dest="source", choices=SYSTEMS, required=True)
    p.add_argument("--to", dest="target", choices=SYSTEMS, required=True)
    p.add_argument("values", type=float, nargs="+")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("solve", parents=[common], help="triangle lengths over collar parameters")
    p.add_argument("--surface", choices=("H", "Delta"), required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("cross-section", parents=[common], help="polyline of H at a + b + c = C")
    p.add_argument("--C", type=float, required=True)
    p.add_argument("--n", type=int, default=64)
    p.set_defaults(func=cmd_cross_section)

    p = sub.add_parser("verify", parents=[common], help="run seeded property suites")
    p.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--cases", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("limit", parents=[common], help="normalized word lengths along a ray")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--t", default="1,10,100,1000")
    p.set_defaults(func=cmd_limit)
    return parser


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _error_record(exc, code):
    return {"error": type(exc).__name__, "message": str(exc), "exit_code": code}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = resolve_settings(args)
        record, header, rows, code = args.func(args, settings)
    except (DomainError, UsageError) as exc:
        sys.stdout.write(dumps(_error_record(exc, EXIT_DOMAIN)))
        return EXIT_DOMAIN
    except (NoConvergence, GridTooCoarse) as exc:
        sys.stdout.write(dumps(_error_record(exc, EXIT_SOLVER)))
        return EXIT_SOLVER
    except (OSError, CollarError) as exc:
        sys.stdout.write(dumps(_error_record(exc, EXIT_DOMAIN)))
        return EXIT_DOMAIN
    text = to_csv(header, rows) if settings["format"] == "csv" else dumps(record)
    _emit(text, settings["out"])
    return code


if __name__ == "__main__":
    sys.exit(main())
