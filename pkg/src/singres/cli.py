"""``singres`` command line.

Exit codes: 0 success, 1 domain failure (invalid data, not separating,
degenerate polynomial, ...), 2 usage, syntax or I/O failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import homalg
from .errors import (
    MissingData,
    NotSeparating,
    ParseError,
    SingresError,
    ValidationFailed,
)
from .invariants import lct, lefschetz, md, multiplicity, s_m
from .model import INF, format_extended, format_rational, parse_resolution, serialize_resolution, validate
from .newton import curve_cover_data, parse_poly, resolution_from_curve
from .separating import is_separating, separate
from .spectral import HF_VANISHES, degeneration_check, e1_euler_check, e1_page, mu, nu

DASH = "—"


class CliError(Exception):
    def __init__(self, message, code):
        self.code = code
        super().__init__(message)


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _read(path) -> bytes:
    try:
        if path == "-":
            return sys.stdin.buffer.read()
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", 2) from None


def _write(path, data: bytes):
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}", 2) from None


def _load(args):
    try:
        return parse_resolution(_read(args.path), allow_any_discrepancy=args.allow_any_discrepancy)
    except ParseError as exc:
        raise CliError(f"{args.path}: syntax error: {exc}", 2) from None


def _table(header, rows) -> str:
    cells = [header] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


# -- commands ----------------------------------------------------------------


def cmd_validate(args, out):
    try:
        resolution = parse_resolution(_read(args.path), allow_any_discrepancy=True)
    except ParseError as exc:
        raise CliError(f"{args.path}: syntax error: {exc}", 2) from None
    except ValidationFailed as exc:
        report = exc.report
    else:
        report = validate(resolution, allow_any_discrepancy=args.allow_any_discrepancy)
    if report:
        for v in report:
            print(f"{v.code}: {v.message}", file=sys.stderr)
        return 1
    print(f"{args.path}: valid", file=out)
    return 0


def _invariant_rows(resolution, m_max):
    rows = []
    separated = {}
    for m in range(1, m_max + 1):
        row = {"m": m, "S_m": sorted(s_m(resolution, m))}
        try:
            row["lambda"] = lefschetz(resolution, m)
        except MissingData:
            row["lambda"] = None
        row["md"] = md(resolution, m)[0]
        if is_separating(resolution, m):
            target = resolution
        elif resolution.n == 1:
            target, trace = separate(resolution, m)
            separated[m] = len(trace.steps)
        else:
            target = None
        if target is None:
            row["mu"] = row["nu"] = "requires-separating"
        else:
            row["mu"] = mu(target, m)
            row["nu"] = nu(target, m)
        rows.append(row)
    return rows, separated


def cmd_invariants(args, out):
    resolution = _load(args)
    m_max = args.m_max or max(d.ord for d in resolution.exceptional)
    rows, separated = _invariant_rows(resolution, m_max)
    if args.format == "json":
        def ext(v):
            return format_extended(v) if v == INF else v

        payload = {
            "multiplicity": multiplicity(resolution),
            "lct": format_rational(lct(resolution)),
            "auto_separated": {str(m): steps for m, steps in separated.items()},
            "rows": [
                {
                    "m": r["m"],
                    "S_m": r["S_m"],
                    "lambda": r["lambda"],
                    "md": ext(r["md"]),
                    "mu": ext(r["mu"]),
                    "nu": r["nu"],
                }
                for r in rows
            ],
        }
        print(_dump(payload), file=out)
        return 0
    print(f"multiplicity  {multiplicity(resolution)}", file=out)
    print(f"lct           {format_rational(lct(resolution))}", file=out)
    if separated:
        ms = ",".join(str(m) for m in separated)
        print(f"mu/nu for m in {{{ms}}} computed after an internal separate()", file=out)
    table_rows = []
    missing = False
    for r in rows:
        if r["lambda"] is None:
            missing = True
        nu_cell = r["nu"]
        table_rows.append([
            r["m"],
            ",".join(r["S_m"]) or "-",
            DASH if r["lambda"] is None else r["lambda"],
            format_extended(r["md"]),
            r["mu"] if isinstance(r["mu"], str) else format_extended(r["mu"]),
            "HF=0" if nu_cell == HF_VANISHES else nu_cell,
        ])
    print(_table(["m", "S_m", "Lambda", "md", "mu", "nu"], table_rows), file=out)
    if missing:
        print(f"{DASH}: euler_open missing on a divisor of S_m", file=out)
    return 0


def cmd_from_poly(args, out):
    text = sys.stdin.read() if args.polynomial == "-" else args.polynomial
    try:
        f = parse_poly(text.strip())
    except ParseError as exc:
        raise CliError(f"syntax error: {exc}", 2) from None
    resolution = resolution_from_curve(f)
    data = serialize_resolution(resolution)
    ords = sorted(d.ord for d in resolution.exceptional)
    summary = f"{len(resolution.exceptional)} exceptional divisors, ords {ords}"
    if args.output:
        _write(args.output, data)
        print(summary, file=out)
    else:
        out.write(data.decode("utf-8"))
        print(summary, file=sys.stderr)
    return 0


def cmd_separate(args, out):
    resolution = _load(args)
    result, trace = separate(resolution, args.m)
    data = serialize_resolution(result)
    trace_text = _dump(trace.to_json())
    if args.output:
        _write(args.output, data)
        if args.trace:
            print(trace_text, file=out)
    else:
        out.write(data.decode("utf-8"))
        if args.trace:
            print(trace_text, file=sys.stderr)
    return 0


def _parse_weights(text):
    weights = {}
    if not text:
        return weights
    for item in text.split(","):
        key, sep, value = item.partition("=")
        if not sep:
            raise CliError(f"bad weight {item!r}; expected id=int", 2)
        try:
            weights[key.strip()] = _positive_int(value)
        except argparse.ArgumentTypeError as exc:
            raise CliError(f"bad weight {item!r}: {exc}", 2) from None
    return weights


def cmd_e1(args, out):
    resolution = _load(args)
    weights = _parse_weights(args.weights)
    if resolution.n == 1 and any(d.cover_betti is None for d in resolution.exceptional):
        try:
            resolution = curve_cover_data(resolution)
        except MissingData:
            pass
    try:
        page = e1_page(resolution, args.m, weights)
    except MissingData as exc:
        raise CliError(f"{exc}; remedy: regenerate with from-poly or add cover data", 1) from None
    except NotSeparating:
        raise CliError(
            f"not a multiplicity-{args.m} separating resolution; remedy: run separate -m {args.m}", 1
        ) from None
    report = degeneration_check(page)
    try:
        euler, ok = e1_euler_check(page, resolution)
        lam = lefschetz(resolution, args.m)
    except MissingData:
        euler, ok, lam = None, None, None
    if args.format == "json":
        payload = {
            "page": page.to_json(),
            "degeneration": report.to_json(),
            "euler": {"page": euler, "lambda": lam, "sign": (-1) ** page.n, "agrees": ok},
        }
        print(_dump(payload), file=out)
        return 0
    print(f"E1 page for m={page.m}, n={page.n}", file=out)
    if page.weights_defaulted:
        print("weights: defaulted to 1 where unset (ampleness not certified)", file=out)
    rows = [[e.p, e.q, e.divisor, e.homology_degree, e.rank] for e in page.entries]
    if rows:
        print(_table(["p", "q", "divisor", "degree", "rank"], rows), file=out)
    else:
        print("(empty page)", file=out)
    if report.conclusion == "vanishes":
        print("conclusion: HF vanishes", file=out)
    else:
        print(f"top total degree {report.top_total_degree}; conclusion {report.conclusion}", file=out)
    if euler is not None:
        mark = "ok" if ok else "MISMATCH"
        print(f"Euler {euler} = (-1)^{page.n}*Lambda = {(-1) ** page.n * lam} {mark}", file=out)
    return 0


def cmd_homalg(args, out):
    raw = _read(args.path)
    try:
        obj = homalg.complex_from_json(raw.decode("utf-8"))
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(f"{args.path}: malformed complex: {exc}", 2) from None
    filtered = obj if isinstance(obj, homalg.FilteredComplex) else None
    cx = filtered.complex if filtered else obj
    result = {"homology": homalg.homology(cx).to_json()}
    if filtered is not None and args.pages is not None:
        result["pages"] = [p.to_json() for p in homalg.filtration_pages(filtered, args.pages)]
    if args.format == "json":
        print(_dump(result), file=out)
        return 0
    rows = [[d, v["betti"], ",".join(map(str, v["torsion"])) or "-"] for d, v in result["homology"].items()]
    print(_table(["degree", "betti", "torsion"], rows), file=out)
    for page in result.get("pages", []):
        print(f"E_{page['r']}:", file=out)
        print(_table(["p", "q", "rank", "torsion"],
                     [[e["p"], e["q"], e["rank"], ",".join(map(str, e["torsion"])) or "-"]
                      for e in page["entries"]]), file=out)
    return 0


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="singres", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def resolution_cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("path", help="resolution file (JSON), or - for stdin")
        p.add_argument("--allow-any-discrepancy", action="store_true",
                       help="accept exceptional divisors with discrepancy 0")
        return p

    p = resolution_cmd("validate", "check a resolution file")
    p.set_defaults(func=cmd_validate)

    p = resolution_cmd("invariants", "multiplicity, lct and the per-m table")
    p.add_argument("--m-max", type=_positive_int, default=None)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("from-poly", help="resolution data of a plane curve from its polynomial")
    p.add_argument("polynomial", help="e.g. 'x^2+y^3', or - for stdin")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_from_poly)

    p = resolution_cmd("separate", "blow up until multiplicity-m separating")
    p.add_argument("-m", type=_positive_int, required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--trace", action="store_true", help="also print the blowup trace as JSON")
    p.set_defaults(func=cmd_separate)

    p = resolution_cmd("e1", "E1 page, degeneration report and Euler cross-check")
    p.add_argument("-m", type=_positive_int, required=True)
    p.add_argument("--weights", help="id=int[,id=int...]")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_e1)

    p = sub.add_parser("homalg", help="homology and spectral-sequence pages of a complex file")
    p.add_argument("path")
    p.add_argument("--pages", type=int, default=None, help="print pages E_0..E_r")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_homalg)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except CliError as exc:
        print(f"singres: {exc}", file=sys.stderr)
        return exc.code
    except ValidationFailed as exc:
        for v in exc.report:
            print(f"{v.code}: {v.message}", file=sys.stderr)
        return 1
    except SingresError as exc:
        print(f"singres: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
