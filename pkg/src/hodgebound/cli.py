"""Command-line interface: ``hodgebound verify | bounds | clifford | sphere``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on a usage or
input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from . import bounds as bd
from ._config import TOL_ENV, default_tol
from .curvature import constant_curvature, gauss_intrinsic, ric_min, ric_p
from .models import clifford_torus, geodesic_sphere, mu_star, sharpness_checks
from .report import FAIL, NOT_APPLICABLE, PASS, CheckRecord, check, summarize_records
from .submanifold import SYMMETRY_TOL, SecondFundamentalForm, gamma_p, p_curvature_beta, summarize
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
TOOL = "hodgebound"


class UsageError(Exception):
    """Bad flags or a malformed input document (exit code 2)."""


def _clean(x: Any) -> Any:
    """JSON-safe copy: numpy scalars to Python, non-finite floats to strings."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_clean(v) for v in x)
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    return x


def _dumps(doc: dict) -> str:
    # float repr is the shortest round-trip form, at most 17 significant digits
    return json.dumps(_clean(doc), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _fmt_csv(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.12g}"
    if isinstance(x, (dict, list, tuple)):
        return json.dumps(_clean(x), sort_keys=True)
    return str(x)


def _csv(rows: list[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt_csv(row.get(c)) for c in columns])
    return buf.getvalue()


def _text(rows: list[dict], columns: Sequence[str]) -> str:
    body = [[_fmt_csv(r.get(c)) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(b[i]) for b in body]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    lines += ["  ".join(v.ljust(w) for v, w in zip(b, widths)) for b in body]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def _document(command: str, params: dict, rows: list[dict], records: list[CheckRecord], seed=None) -> dict:
    return {
        "tool": TOOL,
        "version": __version__,
        "command": command,
        "seed": seed,
        "params": params,
        "rows": rows,
        "records": [r.as_dict() for r in records],
        "summary": summarize_records(records),
    }


def _emit(doc: dict, fmt: str, columns: Sequence[str], out) -> None:
    if fmt == "json":
        out.write(_dumps(doc))
    elif fmt == "csv":
        out.write(_csv(doc["rows"], columns))
    else:
        out.write(_text(doc["rows"], columns))
        s = doc["summary"]
        out.write(f"{s[PASS]} pass, {s[FAIL]} fail, {s[NOT_APPLICABLE]} not-applicable ({s['total']} checks)\n")


def _exit_code(records: list[CheckRecord]) -> int:
    return EXIT_FAIL if any(r.status == FAIL for r in records) else EXIT_OK


# ---------------------------------------------------------------- verify

RECORD_COLUMNS = ("name", "status", "value", "residual", "inputs")


def cmd_verify(args, out) -> int:
    records = run_suite(args.suite, seed=args.seed, trials=args.trials, tol=args.tol)
    rows = [r.as_dict() for r in records]
    params = {"suite": args.suite, "trials": args.trials, "tol": args.tol}
    _emit(_document("verify", params, rows, records, seed=args.seed), args.format, RECORD_COLUMNS, out)
    return _exit_code(records)


# ---------------------------------------------------------------- bounds

def _number(doc: dict, key: str, kind=float):
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise UsageError(f"field {key!r} must be a number")
    if kind is int:
        if value != int(value):
            raise UsageError(f"field {key!r} must be an integer")
        return int(value)
    if not math.isfinite(value):
        raise UsageError(f"field {key!r} must be finite")
    return float(value)


def parse_input(doc: Any) -> dict:
    """Validate an input document and return ``{n, m, B, ambient, ric_min}``.

    ``ambient`` is ``{"kind": "constant", "c": c}``, ``{"c_lower", "c_upper"}`` or None.
    """
    if not isinstance(doc, dict):
        raise UsageError("input document must be a JSON object")
    for key in ("n", "m", "h"):
        if key not in doc:
            raise UsageError(f"missing field {key!r}")
    n, m = _number(doc, "n", int), _number(doc, "m", int)
    if n < 1 or m < 1:
        raise UsageError("n and m must be positive")
    try:
        h = np.array(doc["h"], dtype=float)
    except (TypeError, ValueError):
        raise UsageError("h must be a numeric array h[alpha][i][j]") from None
    if h.shape != (m, n, n):
        raise UsageError(f"h has shape {h.shape}, expected {(m, n, n)}")
    if not np.all(np.isfinite(h)):
        raise UsageError("h must be finite")
    if np.max(np.abs(h - h.transpose(0, 2, 1)), initial=0.0) > SYMMETRY_TOL:
        raise UsageError("h must be symmetric in its last two indices")
    ambient = doc.get("ambient")
    if ambient is not None:
        if not isinstance(ambient, dict):
            raise UsageError("ambient must be an object")
        if ambient.get("kind") == "constant" or ("c" in ambient and "c_lower" not in ambient):
            ambient = {"kind": "constant", "c": _number(ambient, "c") if "c" in ambient else None}
            if ambient["c"] is None:
                raise UsageError("constant ambient needs field 'c'")
        elif "c_lower" in ambient and "c_upper" in ambient:
            ambient = {"c_lower": _number(ambient, "c_lower"), "c_upper": _number(ambient, "c_upper")}
        else:
            raise UsageError("ambient must be {kind: constant, c} or {c_lower, c_upper}")
    ric = _number(doc, "ric_min") if doc.get("ric_min") is not None else None
    return {"n": n, "m": m, "B": SecondFundamentalForm(h), "ambient": ambient, "ric_min": ric}


def _load_input(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None
    return parse_input(doc)


def _resolve_ambient(parsed: dict, args) -> tuple[float, float, bool]:
    """(c_lower, c_upper, constant) from the document, overridden by flags."""
    amb = parsed["ambient"] or {}
    if args.c is not None:
        return args.c, args.c, True
    if "c" in amb:
        lo = hi = amb["c"]
    else:
        lo, hi = amb.get("c_lower"), amb.get("c_upper")
    lo = args.c_lower if args.c_lower is not None else lo
    hi = args.c_upper if args.c_upper is not None else hi
    if lo is None and hi is None:
        raise UsageError("ambient curvature required: give ambient in the input or --c / --c-lower / --c-upper")
    if lo is None or hi is None:
        raise UsageError("two-sided ambient needs both c_lower and c_upper")
    constant = "c" in amb and args.c_lower is None and args.c_upper is None
    return lo, hi, constant


BOUND_COLUMNS = ("name", "p", "value", "sense", "target", "satisfied", "dual", "note")


def bound_rows(B: SecondFundamentalForm, p: int, c_lower: float, c_upper: float,
               constant: bool, ricmin: float | None, tol: float) -> list[dict]:
    """Every bound and threshold for one degree, compared with its target where known."""
    n = B.n
    s = summarize(B)
    weak = None
    if constant:
        R = gauss_intrinsic(constant_curvature(n, c_lower), B)
        if ricmin is None:
            ricmin = ric_min(R)
        if 1 <= p <= n:
            weak = ric_p(R, p) / p

    reports: list[tuple[bd.BoundReport, float | None]] = [
        (bd.thm11_bound(B, p, c_lower), None),
    ]
    cor = bd.cor12_bounds(B, p, c_lower)
    reports += [(cor[k], None) for k in ("i", "ii", "iii", "eps")]
    reports.append((bd.alpha_threshold(n, p, c_lower, s.Hnorm), s.B2))
    if ricmin is None:
        reports.append((bd._na("thm15", {"n": n, "p": p}, "requires ric_min"), None))
    else:
        reports.append((bd.thm15_bound(n, p, c_lower, c_upper, ricmin, s.Hnorm2), None))
    thresholds = bd.sphere_theorem_thresholds(n, p, c_lower, c_upper, s.Hnorm2)
    targets = {"ejiri": ricmin, "sharpric": ricmin, "gu_xu_p1": ricmin, "gclaim": weak,
               "bring2": s.Bring2, "b2": s.B2}
    reports += [(thresholds[k], targets[k]) for k in ("ejiri", "sharpric", "gclaim", "gu_xu_p1", "bring2", "b2")]

    rows = []
    for report, target in reports:
        if target is not None:
            report = report.compare(target, tol)
        elif not report.applicable:
            report = report.compare(0.0, tol)
        row = report.as_dict()
        row.update(p=p, target=target)
        rows.append(row)
    return rows


def cmd_bounds(args, out) -> int:
    if args.input is None:
        raise UsageError("bounds needs --input <path>")
    parsed = _load_input(args.input)
    n, B = parsed["n"], parsed["B"]
    lo, hi, constant = _resolve_ambient(parsed, args)
    ricmin = args.ric_min if args.ric_min is not None else parsed["ric_min"]
    if args.p is not None and not 1 <= args.p <= n - 1:
        raise UsageError(f"--p must lie in 1..{n - 1}")
    degrees = [args.p] if args.p is not None else list(range(1, n))
    rows = []
    for p in degrees:
        rows += bound_rows(B, p, lo, hi, constant, ricmin, args.tol)
    s = summarize(B)
    params = {"n": n, "m": parsed["m"], "p": args.p, "c_lower": lo, "c_upper": hi,
              "constant_ambient": constant, "ric_min": ricmin,
              "Hnorm2": s.Hnorm2, "B2": s.B2, "Bring2": s.Bring2}
    # rows that fail a hypothesis are reported, not treated as failures
    records = [CheckRecord(f"{r['name']}[p={r['p']}]", {"p": r["p"]}, r["value"],
                           PASS if r["value"] is not None else NOT_APPLICABLE) for r in rows]
    _emit(_document("bounds", params, rows, records), args.format, BOUND_COLUMNS, out)
    return EXIT_OK


# ---------------------------------------------------------------- clifford

CLIFFORD_COLUMNS = (
    "n", "p", "mu", "mu_star", "H", "B2", "Bring2", "gamma_p", "beta_p", "ric_min",
    "thm11", "cor12_i", "cor12_ii", "cor12_iii", "thm15", "alpha", "ejiri",
    "einstein", "residual_closed_forms", "residual_alpha", "residual_ejiri", "status",
)


def parse_sweep(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"--sweep must be lo:hi:steps, got {text!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"--sweep must be lo:hi:steps, got {text!r}") from None
    if not (math.isfinite(lo) and math.isfinite(hi)) or not 0 < lo <= hi or steps < 1:
        raise UsageError("--sweep needs 0 < lo <= hi and steps >= 1")
    if steps == 1 and lo != hi:
        raise UsageError("--sweep with one step needs lo == hi")
    return lo, hi, steps


def sweep_values(lo: float, hi: float, steps: int, star: float | None) -> list[tuple[float, bool]]:
    """Log-uniform grid, with mu* inserted (and flagged) when it lies in range."""
    grid = [lo] if steps == 1 else list(np.exp(np.linspace(np.log(lo), np.log(hi), steps)))
    grid = [float(g) for g in grid]
    if star is not None and lo <= star <= hi:
        grid = [g for g in grid if abs(g - star) > 1e-12 * star] + [star]
    return [(mu, star is not None and mu == star) for mu in sorted(grid)]


def clifford_row(n: int, p: int, mu: float, tol: float) -> tuple[dict, list[CheckRecord]]:
    model = clifford_torus(n, p, mu)
    s = summarize(model.B)
    records = sharpness_checks(n, p, mu, tol)
    by_name = {r.name: r for r in records}
    cor = bd.cor12_bounds(model.B, p, 1.0)
    ricmin = ric_min(model.R)
    star = mu_star(n, p)
    einstein = by_name.get("einstein_mu_star")
    ejiri_rec = by_name.get("ejiri_identity_p1") or by_name.get("ejiri_equality_mu_star")
    row = {
        "n": n, "p": p, "mu": mu,
        "mu_star": star is not None and mu == star,
        "H": model.closed_form["H"], "B2": s.B2, "Bring2": s.Bring2,
        "gamma_p": gamma_p(model.B, p), "beta_p": p_curvature_beta(s.principal[0], p),
        "ric_min": ricmin,
        "thm11": bd.thm11_bound(model.B, p, 1.0).value,
        "cor12_i": cor["i"].value, "cor12_ii": cor["ii"].value, "cor12_iii": cor["iii"].value,
        "thm15": bd.thm15_bound(n, p, 1.0, 1.0, ricmin, s.Hnorm2).value,
        "alpha": bd.alpha_threshold(n, p, 1.0, s.Hnorm).value,
        "ejiri": bd.ejiri_threshold(n, p, 1.0, 1.0, s.Hnorm2).value,
        "einstein": einstein is not None and einstein.status == PASS,
        "residual_closed_forms": by_name["closed_forms"].residual,
        "residual_alpha": by_name["alpha_equality"].residual,
        "residual_ejiri": ejiri_rec.residual if ejiri_rec is not None else None,
        "status": FAIL if any(r.status == FAIL for r in records) else PASS,
    }
    return row, records


def cmd_clifford(args, out) -> int:
    n, p = args.n, args.p
    if n is None or p is None:
        raise UsageError("clifford needs --n and --p")
    if n < 2 or not 1 <= p <= n - 1:
        raise UsageError("clifford needs n >= 2 and 1 <= p <= n-1")
    if (args.mu is None) == (args.sweep is None):
        raise UsageError("give exactly one of --mu or --sweep")
    if args.sweep is not None:
        points = sweep_values(*parse_sweep(args.sweep), mu_star(n, p))
    else:
        if not (math.isfinite(args.mu) and args.mu > 0):
            raise UsageError("--mu must be positive")
        points = [(args.mu, False)]
    rows, records = [], []
    for mu, _ in points:
        row, recs = clifford_row(n, p, mu, args.tol)
        rows.append(row)
        records += [CheckRecord(r.name, r.inputs, r.value, r.status, r.residual) for r in recs]
    params = {"n": n, "p": p, "mu": args.mu, "sweep": args.sweep, "tol": args.tol}
    _emit(_document("clifford", params, rows, records), args.format, CLIFFORD_COLUMNS, out)
    return _exit_code(records)


# ---------------------------------------------------------------- sphere

SPHERE_COLUMNS = ("n", "p", "kappa", "lambda_e", "lambda_ce", "lambda", "thm11", "dual", "residual", "status")


def cmd_sphere(args, out) -> int:
    n = args.n
    if n is None or n < 2:
        raise UsageError("sphere needs --n >= 2")
    m = 1 if args.m is None else args.m
    c = 0.0 if args.c is None else args.c
    hnorm = 1.0 if args.hnorm is None else args.hnorm
    if m < 1:
        raise UsageError("--m must be positive")
    try:
        model = geodesic_sphere(n, m, c, hnorm)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.p is not None and not 1 <= args.p <= n - 1:
        raise UsageError(f"--p must lie in 1..{n - 1}")
    degrees = [args.p] if args.p is not None else list(range(1, n))
    rows, records = [], []
    table = model.spectrum
    for p in degrees:
        bound = bd.thm11_bound(model.B, p, c)
        lam = table["lambda"][p]
        rec = check("sphere_thm11_equals_lambda", bound.value - lam, args.tol, {"n": n, "p": p}, bound.value)
        records.append(rec)
        rows.append({"n": n, "p": p, "kappa": c + hnorm**2, "lambda_e": table["lambda_e"][p],
                     "lambda_ce": table["lambda_ce"][p], "lambda": lam, "thm11": bound.value,
                     "dual": bound.dual, "residual": rec.residual, "status": rec.status})
    params = {"n": n, "m": m, "c": c, "Hnorm": hnorm, "p": args.p, "tol": args.tol}
    _emit(_document("sphere", params, rows, records), args.format, SPHERE_COLUMNS, out)
    return _exit_code(records)


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=TOOL, description="Eigenvalue bounds and identities for p-forms on submanifolds.",
                     epilog=f"{TOL_ENV} overrides the check tolerance. Exit codes: 0 pass, 1 check failure, 2 usage error.")
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(p, default="text"):
        p.add_argument("--format", choices=("json", "csv", "text"), default=default)

    v = sub.add_parser("verify", help="run the property suites")
    v.add_argument("--suite", choices=("all",) + SUITES, default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=200)
    fmt(v)

    b = sub.add_parser("bounds", help="evaluate every bound for an input document")
    b.add_argument("--input", metavar="PATH", help="JSON input document, '-' for stdin")
    b.add_argument("--p", type=int)
    b.add_argument("--c", type=float, help="constant ambient curvature")
    b.add_argument("--c-lower", type=float)
    b.add_argument("--c-upper", type=float)
    b.add_argument("--ric-min", type=float)
    fmt(b)

    c = sub.add_parser("clifford", help="Clifford torus table")
    c.add_argument("--n", type=int)
    c.add_argument("--p", type=int)
    c.add_argument("--mu", type=float)
    c.add_argument("--sweep", metavar="LO:HI:STEPS")
    fmt(c, "csv")

    s = sub.add_parser("sphere", help="geodesic sphere table")
    s.add_argument("--n", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--p", type=int)
    s.add_argument("--c", type=float, help="ambient space-form curvature")
    s.add_argument("--hnorm", type=float, help="|H| of the umbilical sphere")
    fmt(s)
    return parser


COMMANDS = {"verify": cmd_verify, "bounds": cmd_bounds, "clifford": cmd_clifford, "sphere": cmd_sphere}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        args.tol = default_tol()
        if getattr(args, "trials", 1) < 1:
            raise UsageError("--trials must be positive")
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"{TOOL}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # invalid numeric input surfaced by the library (symmetry, ranges, env tolerance)
        print(f"{TOOL}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
