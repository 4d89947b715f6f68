"""Command-line front end: ``ghostclass {table,classify,sweep,check}``.

Exit codes: 0 success, 1 check failure, 2 usage or validation error,
3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from collections import Counter

from . import tables
from .errors import ConsistencyError, DomainError
from .ghostfilter import PROVEN_CASES, GhostRecord, classify
from .rootsys import build_root_system, validate_highest_weight
from .weyl import render_cycles

SCHEMA_VERSION = 1
EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from None


def parse_box(text: str) -> dict[str, tuple[int, int]]:
    """``a1=0..3,a2=-1..1`` -> ``{"a1": (0, 3), "a2": (-1, 1)}``."""
    box = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        name, sep, rng = part.partition("=")
        lo, dots, hi = rng.partition("..")
        if not sep or not dots:
            raise UsageError(f"bad box entry {part!r}, expected var=lo..hi")
        try:
            box[name.strip()] = (int(lo), int(hi))
        except ValueError:
            raise UsageError(f"bad bounds in box entry {part!r}") from None
    return box


# ---------------------------------------------------------------------------
# record rendering


def _offset_text(rec: GhostRecord) -> str:
    if rec.survives and not isinstance(rec.survival, bool):
        return " or ".join(o.render() for o in rec.offsets())
    return rec.offset.render()


def _trace_text(rec: GhostRecord) -> list[str]:
    return [("pass" if t else "fail") if isinstance(t, bool) else t.render() for t in rec.filter_trace]


def record_dict(rec: GhostRecord) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "n": rec.n,
        "label": rec.display_label,
        "sigma": render_cycles(rec.element.sigma),
        "f": "{" + ",".join(str(m) for m in rec.element.flips) + "}",
        "length": rec.length,
        "degree": rec.degree,
        "weight": rec.weight.render(const_first=True),
        "offset": _offset_text(rec),
        "survival": rec.survival_text(),
        "survives": rec.survives,
        "filter_trace": _trace_text(rec),
        "extrapolated": rec.extrapolated,
    }


REPORT_COLUMNS = ("label", "sigma", "f", "degree", "weight", "offset", "survival", "filter_trace")


def _ordered(records):
    return [r for r in records if r.survives] + [r for r in records if not r.survives]


def render_records(records, fmt: str) -> str:
    rows = [record_dict(r) for r in _ordered(records)]
    if fmt == "json-lines":
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)
    cells = [[r[k] if k != "filter_trace" else " ; ".join(r[k]) for k in REPORT_COLUMNS] for r in rows]
    cells = [[str(x) for x in row] for row in cells]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        w.writerows(cells)
        return buf.getvalue()
    out = ["| " + " | ".join(REPORT_COLUMNS) + " |", "|" + "---|" * len(REPORT_COLUMNS)]
    out += ["| " + " | ".join(row) + " |" for row in cells]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# commands


def _root_system(n: int):
    try:
        return build_root_system(n)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def cmd_table(args) -> tuple[int, str]:
    rs = _root_system(args.n)
    rows = tables.build_table(rs)
    if args.format == "csv":
        return EXIT_OK, tables.render_csv(rows)
    if args.format == "json-lines":
        return EXIT_OK, tables.render_json_lines(rows, rs.n, SCHEMA_VERSION)
    return EXIT_OK, tables.render_markdown(rows)


def _weight_arg(rs, args):
    if args.lambda_ is None:
        if args.c is not None:
            raise UsageError("--c needs --lambda")
        return None
    a = _ints(args.lambda_, "--lambda")
    if len(a) != rs.l:
        raise UsageError(f"--lambda needs {rs.l} coefficients for n={rs.n}, got {len(a)}")
    c = args.c if args.c is not None else sum(a) % 2
    verdict = validate_highest_weight(a, c, rs.n)
    if not verdict:
        raise UsageError(f"invalid highest weight: {verdict.violation}")
    return a, c


def cmd_classify(args) -> tuple[int, str]:
    rs = _root_system(args.n)
    if rs.n not in PROVEN_CASES and not args.extrapolate:
        print(f"warning: n={rs.n} is outside the proven cases {PROVEN_CASES}; "
              "records are marked extrapolated (pass --extrapolate to silence)", file=sys.stderr)
    lam = _weight_arg(rs, args)
    return EXIT_OK, render_records(classify(rs, lam), args.format)


def _box_points(rs, box):
    names = [f"a{i}" for i in range(1, rs.l + 1)]
    unknown = sorted(set(box) - set(names) - {"c"})
    if unknown:
        raise UsageError(f"unknown box variable(s) {', '.join(unknown)} for n={rs.n}")
    missing = [v for v in names if v not in box]
    if missing:
        raise UsageError(f"box must bound every coefficient; missing {', '.join(missing)}")
    for v, (lo, hi) in box.items():
        if lo > hi:
            raise UsageError(f"empty range for {v}: {lo}..{hi}")
    ranges = [range(box[v][0], box[v][1] + 1) for v in names]
    for a in itertools.product(*ranges):
        cs = range(box["c"][0], box["c"][1] + 1) if "c" in box else (sum(a) % 2,)
        for c in cs:
            if validate_highest_weight(list(a), c, rs.n):
                yield list(a), c


def cmd_sweep(args) -> tuple[int, str]:
    rs = _root_system(args.n)
    if not args.box:
        raise UsageError("sweep needs --box")
    points = list(_box_points(rs, parse_box(args.box)))
    counts: Counter = Counter()
    weights: dict = {}
    for a, c in points:
        for rec in classify(rs, (a, c)):
            if rec.survives:
                key = (int(rec.label[1:]), rec.display_label, rec.degree, rec.offset.render())
                counts[key] += 1
                weights.setdefault(key, []).append(",".join(map(str, a)) + f";c={c}")
    keys = sorted(counts)
    if args.format == "json-lines":
        body = "".join(json.dumps({"schema_version": SCHEMA_VERSION, "n": rs.n, "label": k[1], "degree": k[2],
                                   "offset": k[3], "count": counts[k], "weights": weights[k],
                                   "extrapolated": rs.n not in PROVEN_CASES}, sort_keys=True) + "\n"
                       for k in keys)
        summary = json.dumps({"schema_version": SCHEMA_VERSION, "n": rs.n, "points": len(points),
                              "summary": True}, sort_keys=True) + "\n"
        return EXIT_OK, summary + body
    head = ("label", "degree", "offset", "count", "weights")
    rows = [(k[1], str(k[2]), k[3], str(counts[k]), " ".join(weights[k])) for k in keys]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(head)
        w.writerows(rows)
        return EXIT_OK, buf.getvalue()
    out = [f"n={rs.n}: {len(points)} valid weights in box", "",
           "| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
    out += ["| " + " | ".join(r) + " |" for r in rows]
    return EXIT_OK, "\n".join(out) + "\n"


def cmd_check(args) -> tuple[int, str]:
    from .checks import FAMILIES, run_checks

    if args.max_n < 3:
        raise UsageError("--max-n must be at least 3")
    override = {}
    for spec in args.fixture or ():
        n, _, path = spec.partition("=")
        try:
            with open(path) as fh:
                override[int(n)] = fh.read()
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot use fixture {spec!r}: {exc}") from None
    results = run_checks(args.max_n, override)
    lines = []
    first = None
    for r in results:
        lines.append(f"{'PASS' if r.ok else 'FAIL'} {r.name}")
        if not r.ok:
            first = first or r
            lines.extend(f"  {msg}" for msg in r.failures[:5])
    passed = sum(r.ok for r in results)
    lines.append(f"{passed}/{len(FAMILIES)} invariant families passed for 3 <= n <= {args.max_n}")
    if first is not None:
        lines.append(f"first failure: {first.name}: {first.failures[0]}")
        return EXIT_CHECK, "\n".join(lines) + "\n"
    return EXIT_OK, "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ghostclass", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, need_n=True):
        if need_n:
            sp.add_argument("--n", type=int, required=True, help="the n in GO(2, n), at least 3")
        sp.add_argument("--format", choices=("md", "csv", "json-lines"), default="md")

    sp = sub.add_parser("table", help="the W^P0 table with weights and factorisations")
    common(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("classify", help="run the three filters, symbolic unless --lambda is given")
    common(sp)
    sp.add_argument("--lambda", dest="lambda_", metavar="A1,...,AL", help="highest weight coefficients")
    sp.add_argument("--c", type=int, help="central coefficient (default: smallest valid parity)")
    sp.add_argument("--extrapolate", action="store_true", help="accept n outside {4, 5} silently")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("sweep", help="classify every valid weight in a box and aggregate survivors")
    common(sp)
    sp.add_argument("--box", required=True, help="var=lo..hi,... over a1..al (and optionally c)")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("check", help="run the invariant self-checks")
    sp.add_argument("--max-n", type=int, default=8)
    sp.add_argument("--fixture", action="append", metavar="N=PATH",
                    help="compare the table against PATH instead of the packaged fixture")
    sp.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, text = args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
