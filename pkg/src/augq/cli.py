"""Command-line front end.

Six subcommands: validate, qn, stabilize, classify, marks, corpus.  Ring
inputs come either from a ring-spec JSON file or from a group spec plus a
family flag; outputs go to stdout (or --out) as an aligned table, JSON, or
CSV.  Table output is for humans and not a stable interface; JSON and CSV
are.  Identical invocations produce byte-identical output.

Exit codes: 0 success, 1 failed validation or a failed mathematical check,
2 parse/usage failure, 3 no stable window detected by ``stabilize``.
"""

import argparse
import csv
import io
import json
import os
import sys

from .abgroup import (
    FinAbGroup,
    InconsistentProfileError,
    NotPrimeError,
    ParseError,
    ValuationProfile,
)
from .augring import AugmentedRing, RankDropError, RingSpecError
from .constructors import (
    BadParameterError,
    CayleyGroup,
    CayleyTableError,
    NonIntegralStructureError,
    TooLargeError,
    burnside_ring,
    cayley_from_abelian,
    group_ring,
    parse_group_spec,
    rep_ring_abelian,
    rep_ring_dihedral,
    table_of_marks,
)
from .stabilize import (
    CSV_HEADER,
    DEFAULT_MAX_N,
    DEFAULT_MIN_WINDOW,
    ReportInconsistencyError,
    build_report,
    quotient_sequence,
    report_csv_rows,
    report_to_dict,
)

__all__ = ["main", "build_parser"]

FAMILIES = ("group-ring", "burnside", "rep")


class CliError(Exception):
    """Error with a designated process exit code."""

    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _positive_int(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _window_int(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 2:
        raise argparse.ArgumentTypeError("window must be at least 2")
    return n


def _add_common(sp, ring_source=True):
    if ring_source:
        sp.add_argument(
            "--ring",
            help="ring-spec JSON file, or a group spec built under --family",
        )
        sp.add_argument("--group", help="group spec (e.g. 1, C2xC4, D4, S3)")
        sp.add_argument(
            "--family",
            choices=FAMILIES,
            default="group-ring",
            help="ring family for group specs (default: group-ring)",
        )
    sp.add_argument(
        "--format",
        choices=("table", "json", "csv"),
        default="table",
        help="output format (default: table; only JSON and CSV are stable)",
    )
    sp.add_argument("--out", help="write output to this file instead of stdout")
    sp.add_argument(
        "--seed",
        type=int,
        default=0,
        help="seed for sampling subcommands (reserved; none ship today)",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="augq",
        description="Exact augmentation-ideal quotients of commutative "
        "augmented rings: validation, quotient scans, stabilization reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check the ring axioms")
    _add_common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("qn", help="list the quotients Q_1..Q_max_n")
    _add_common(sp)
    sp.add_argument("--max-n", type=_positive_int, default=DEFAULT_MAX_N)
    sp.set_defaults(func=cmd_qn)

    sp = sub.add_parser("stabilize", help="scan for a stable quotient tail")
    _add_common(sp)
    sp.add_argument("--max-n", type=_positive_int, default=DEFAULT_MAX_N)
    sp.add_argument(
        "--window",
        type=_window_int,
        default=DEFAULT_MIN_WINDOW,
        help="minimum constant-tail length to report a candidate (default 5)",
    )
    sp.set_defaults(func=cmd_stabilize)

    sp = sub.add_parser(
        "classify", help="rebuild a group from a valuation profile"
    )
    _add_common(sp, ring_source=False)
    sp.add_argument(
        "--profile",
        required=True,
        help='profile as inline JSON {"p,s": value, ...} or a path to one',
    )
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser(
        "marks", help="subgroup classes and the table of marks"
    )
    _add_common(sp, ring_source=False)
    sp.add_argument(
        "--group",
        required=True,
        help="group spec or Cayley-table JSON file",
    )
    sp.set_defaults(func=cmd_marks)

    sp = sub.add_parser(
        "corpus", help="stabilization sweep over a corpus file, as CSV"
    )
    sp.add_argument("corpus_file", help="one ring per line: '<family> <spec>' or 'ring <path.json>'")
    sp.add_argument("--max-n", type=_positive_int, default=DEFAULT_MAX_N)
    sp.add_argument("--window", type=_window_int, default=DEFAULT_MIN_WINDOW)
    sp.add_argument("--out", help="write output to this file instead of stdout")
    sp.add_argument("--seed", type=int, default=0, help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_corpus)

    return parser


# -- input plumbing ----------------------------------------------------------


def _load_json_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", 2)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: malformed JSON: {exc}", 2)


def _construct_family_ring(family, spec):
    if family == "rep":
        if spec.startswith("D") and spec[1:].isdigit():
            return rep_ring_dihedral(int(spec[1:]))
        g = parse_group_spec(spec)
        if isinstance(g, FinAbGroup):
            return rep_ring_abelian(g)
        raise CliError(
            "the rep family accepts abelian specs and D<m> (for S3 use D3)", 2
        )
    g = parse_group_spec(spec)
    if family == "group-ring":
        if not isinstance(g, FinAbGroup):
            raise CliError(
                "group rings are implemented for abelian groups only", 2
            )
        return group_ring(g)
    if family == "burnside":
        cay = g if isinstance(g, CayleyGroup) else cayley_from_abelian(g)
        return burnside_ring(cay)
    raise CliError(f"unknown family {family!r}", 2)


def _resolve_ring(args):
    """Returns (ring_id, ring) from --ring / --group / --family."""
    if args.ring and args.group:
        raise CliError("--ring and --group are mutually exclusive", 2)
    if args.ring:
        if os.path.isfile(args.ring) or args.ring.endswith(".json"):
            ring = AugmentedRing.from_dict(_load_json_file(args.ring))
            stem = os.path.splitext(os.path.basename(args.ring))[0]
            return f"ring:{stem}", ring
        return (
            f"{args.family}:{args.ring}",
            _construct_family_ring(args.family, args.ring),
        )
    if args.group:
        return (
            f"{args.family}:{args.group}",
            _construct_family_ring(args.family, args.group),
        )
    raise CliError("one of --ring or --group is required", 2)


def _emit(text, out_path):
    if not text.endswith("\n"):
        text += "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _format_table(headers, rows):
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def _format_csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _invariants_cell(group):
    return "|".join(str(f) for f in group.invariant_factors)


# -- commands ----------------------------------------------------------------


def cmd_validate(args):
    ring_id, ring = _resolve_ring(args)
    report = ring.validate()
    if args.format == "json":
        text = json.dumps(
            {
                "ring_id": ring_id,
                "checks": report.checks,
                "failures": report.failures,
                "passed": report.passed,
            },
            indent=2,
        )
    elif args.format == "csv":
        rows = [[k, "true" if v else "false"] for k, v in report.checks.items()]
        text = _format_csv(["check", "passed"], rows)
    else:
        lines = [f"ring: {ring_id}"]
        for k, v in report.checks.items():
            lines.append(f"{k}: {'pass' if v else 'FAIL'}")
        for f in report.failures:
            lines.append(f"  {f}")
        lines.append("result: " + ("valid" if report.passed else "INVALID"))
        text = "\n".join(lines)
    _emit(text, args.out)
    return 0 if report.passed else 1


def _require_valid(ring_id, ring):
    report = ring.validate()
    if not report.passed:
        for f in report.failures:
            print(f"augq: {ring_id}: {f}", file=sys.stderr)
        raise CliError(f"{ring_id} failed validation", 1)


def cmd_qn(args):
    ring_id, ring = _resolve_ring(args)
    _require_valid(ring_id, ring)
    quotients = quotient_sequence(ring, args.max_n)
    if args.format == "json":
        text = json.dumps(
            {
                "ring_id": ring_id,
                "max_n": args.max_n,
                "quotients": [
                    {
                        "n": q.n,
                        "group": list(q.group.invariant_factors),
                        "order": q.order if q.order < 2**63 else str(q.order),
                        "ideal_rank": q.ideal_rank,
                    }
                    for q in quotients
                ],
            },
            indent=2,
        )
    elif args.format == "csv":
        rows = [
            [ring_id, str(q.n), _invariants_cell(q.group), str(q.order)]
            for q in quotients
        ]
        text = _format_csv(["ring_id", "n", "invariants", "order"], rows)
    else:
        rows = [
            [str(q.n), "[" + _invariants_cell(q.group).replace("|", ", ") + "]", str(q.order)]
            for q in quotients
        ]
        text = f"ring: {ring_id}\n" + _format_table(["n", "invariants", "order"], rows)
    _emit(text, args.out)
    return 0


def cmd_stabilize(args):
    if args.window > args.max_n:
        raise CliError("--window cannot exceed --max-n", 2)
    ring_id, ring = _resolve_ring(args)
    _require_valid(ring_id, ring)
    report = build_report(ring, ring_id, max_n=args.max_n, min_window=args.window)
    if args.format == "json":
        text = json.dumps(report_to_dict(report), indent=2)
    elif args.format == "csv":
        text = _format_csv(CSV_HEADER, report_csv_rows(report))
    else:
        lines = [
            f"ring: {ring_id}",
            f"torsion exponent d: {report.d}   free rank r: {report.r}   "
            f"bound d^r: {report.d ** report.r}",
        ]
        if report.n0_candidate is None:
            lines.append(
                f"no stable tail of length >= {args.window} within n <= {args.max_n}"
            )
        else:
            lines.append(
                f"stable from n0 = {report.n0_candidate} "
                f"(window {report.window}, certified: no)"
            )
        rows = [
            [
                str(q.n),
                "[" + _invariants_cell(q.group).replace("|", ", ") + "]",
                str(q.order),
                "yes" if ok else "NO",
            ]
            for q, ok in zip(report.quotients, report.bound_ok)
        ]
        lines.append(_format_table(["n", "invariants", "order", "bound"], rows))
        nonzero = [
            (key, row) for key, row in sorted(report.lambda_table.items()) if any(row)
        ]
        if nonzero:
            lines.append("valuation rows v_p(|p^s Q_n|), n = 1..N:")
            for (p, s), row in nonzero:
                lines.append(f"  p={p} s={s}: " + " ".join(str(x) for x in row))
        text = "\n".join(lines)
    _emit(text, args.out)
    return 0 if report.n0_candidate is not None else 3


def cmd_classify(args):
    raw = args.profile
    if raw.lstrip().startswith("{"):
        try:
            mapping = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise CliError(f"malformed profile JSON: {exc}", 2)
    else:
        mapping = _load_json_file(raw)
    if not isinstance(mapping, dict):
        raise CliError("profile must be a JSON object", 2)
    try:
        profile = ValuationProfile.from_json_mapping(mapping)
    except (NotPrimeError, InconsistentProfileError):
        raise
    except ValueError as exc:
        raise CliError(str(exc), 2)
    group = FinAbGroup.from_valuation_profile(profile)
    factors = list(group.invariant_factors)
    if args.format == "json":
        text = json.dumps({"invariant_factors": factors}, indent=2)
    elif args.format == "csv":
        text = _format_csv(
            ["invariants"], [["|".join(str(f) for f in factors)]]
        )
    else:
        text = json.dumps(factors, separators=(",", ":"))
    _emit(text, args.out)
    return 0


def cmd_marks(args):
    value = args.group
    if os.path.isfile(value) or value.endswith(".json"):
        stem = os.path.splitext(os.path.basename(value))[0]
        try:
            group = CayleyGroup.from_dict(_load_json_file(value), name=stem)
        except CayleyTableError as exc:
            raise CliError(f"{value}: {exc}", 2)
    else:
        parsed = parse_group_spec(value)
        group = (
            parsed
            if isinstance(parsed, CayleyGroup)
            else cayley_from_abelian(parsed)
        )
    marks = table_of_marks(group)
    classes = marks.classes
    labels = [f"H{i}" for i in range(len(classes))]
    orders = classes.orders()
    if args.format == "json":
        text = json.dumps(
            {
                "group_order": group.order,
                "labels": labels,
                "subgroup_orders": orders,
                "marks": marks.values,
            },
            indent=2,
        )
    elif args.format == "csv":
        rows = [
            [labels[i], str(orders[i]), "|".join(str(x) for x in marks.values[i])]
            for i in range(len(labels))
        ]
        text = _format_csv(["class", "order", "marks"], rows)
    else:
        rows = [
            [labels[i], str(orders[i])] + [str(x) for x in marks.values[i]]
            for i in range(len(labels))
        ]
        text = _format_table(["class", "|H|"] + labels, rows)
    _emit(text, args.out)
    return 0


CORPUS_HEADER = [
    "ring_id",
    "status",
    "d",
    "r",
    "n0_candidate",
    "window",
    "bound_ok",
    "tail",
    "error",
]


def _corpus_entries(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", 2)
    base = os.path.dirname(os.path.abspath(path))
    entries = []
    for lineno, line in enumerate(lines, 1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        parts = text.split()
        if len(parts) != 2:
            raise CliError(
                f"{path}:{lineno}: expected '<family> <spec>' or 'ring <path>'", 2
            )
        kind, spec = parts
        if kind == "ring":
            spec = os.path.join(base, spec) if not os.path.isabs(spec) else spec
        elif kind not in FAMILIES:
            raise CliError(
                f"{path}:{lineno}: unknown family {kind!r} "
                f"(expected one of {', '.join(FAMILIES)} or 'ring')",
                2,
            )
        entries.append((kind, spec))
    return entries


def cmd_corpus(args):
    if args.window > args.max_n:
        raise CliError("--window cannot exceed --max-n", 2)
    entries = _corpus_entries(args.corpus_file)
    rows = []
    all_ok = True
    for kind, spec in entries:
        if kind == "ring":
            stem = os.path.splitext(os.path.basename(spec))[0]
            ring_id = f"ring:{stem}"
        else:
            ring_id = f"{kind}:{spec}"
        row = {key: "" for key in CORPUS_HEADER}
        row["ring_id"] = ring_id
        try:
            if kind == "ring":
                ring = AugmentedRing.from_dict(_load_json_file(spec))
            else:
                ring = _construct_family_ring(kind, spec)
            report = ring.validate()
            if not report.passed:
                row["status"] = "invalid"
                row["error"] = "; ".join(report.failures)
                all_ok = False
            else:
                rep = build_report(
                    ring, ring_id, max_n=args.max_n, min_window=args.window
                )
                row["d"] = str(rep.d)
                row["r"] = str(rep.r)
                row["bound_ok"] = "true" if all(rep.bound_ok) else "false"
                if rep.n0_candidate is None:
                    row["status"] = "inconclusive"
                    all_ok = False
                else:
                    row["status"] = "ok"
                    row["n0_candidate"] = str(rep.n0_candidate)
                    row["window"] = str(rep.window)
                    tail_group = rep.quotients[-1].group
                    row["tail"] = _invariants_cell(tail_group)
        except (CliError, ReportInconsistencyError) as exc:
            row["status"] = "error"
            row["error"] = str(exc)
            all_ok = False
        except (
            ParseError,
            RingSpecError,
            CayleyTableError,
            TooLargeError,
            NonIntegralStructureError,
            BadParameterError,
            RankDropError,
        ) as exc:
            row["status"] = "error"
            row["error"] = str(exc)
            all_ok = False
        rows.append([row[key] for key in CORPUS_HEADER])
    text = _format_csv(CORPUS_HEADER, rows)
    _emit(text, args.out)
    return 0 if all_ok else 1


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"augq: {exc}", file=sys.stderr)
        return exc.code
    except ReportInconsistencyError as exc:
        print(f"augq: INTERNAL INVARIANT VIOLATION: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"augq: group spec: {exc}", file=sys.stderr)
        return 2
    except (RingSpecError, CayleyTableError, BadParameterError) as exc:
        print(f"augq: {exc}", file=sys.stderr)
        return 2
    except (
        TooLargeError,
        NonIntegralStructureError,
        RankDropError,
        InconsistentProfileError,
        NotPrimeError,
    ) as exc:
        print(f"augq: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
