"""Scan consecutive augmentation-ideal quotients for a stable tail.

The scan computes Q_1 .. Q_N once from a shared ideal-power chain, finds
the earliest index past which all the groups are pairwise isomorphic, and
cross-checks two exact facts along the way: the order bound |Q_n| <= d^r
(d the torsion exponent of Q_1, r the ideal rank) and the constancy of
every prime-power valuation row on the detected tail.  Either failing is
an implementation bug, not a property of the input, so it aborts loudly.

A detected tail is only ever a candidate: ``certified`` is always False
because no finite window proves the sequence stays put afterwards.
"""

import json
from dataclasses import dataclass

from .abgroup import FinAbGroup
from .augring import QuotientResult, decode_int, encode_int
from .intlinalg import quotient_invariants

__all__ = [
    "ReportInconsistencyError",
    "StabilizationReport",
    "build_report",
    "detect_stabilization",
    "lambda_diagnostics",
    "quotient_sequence",
    "report_csv_rows",
    "report_from_dict",
    "report_from_json",
    "report_to_dict",
    "report_to_json",
    "verify_bound",
]

DEFAULT_MAX_N = 20
DEFAULT_MIN_WINDOW = 5


class ReportInconsistencyError(AssertionError):
    """An exact invariant failed while assembling a report (a bug)."""


@dataclass
class StabilizationReport:
    """Everything observed in one scan; field names match the wire format."""

    ring_id: str
    max_n: int
    d: int
    r: int
    quotients: list
    n0_candidate: int | None
    window: int | None
    certified: bool
    bound_ok: list
    lambda_table: dict


def quotient_sequence(ring, max_n=DEFAULT_MAX_N):
    """Q_1 .. Q_{max_n} from a single ideal-power run."""
    powers = ring.ideal_powers(max_n)
    out = []
    for n in range(1, max_n + 1):
        inv = quotient_invariants(powers[n - 1], powers[n])
        group = FinAbGroup(inv.factors)
        out.append(
            QuotientResult(
                n=n, group=group, order=group.order(), ideal_rank=powers[n - 1].rank
            )
        )
    return out


def detect_stabilization(groups, min_window=DEFAULT_MIN_WINDOW):
    """Earliest index whose tail is constant, if the tail is long enough.

    Returns ``(n0, window)`` with 1-based n0 and window the tail length, or
    None when the constant tail is shorter than ``min_window``.
    """
    if min_window < 2:
        raise ValueError("min_window must be at least 2")
    groups = list(groups)
    n = len(groups)
    if n == 0:
        return None
    tail = 1
    while tail < n and groups[n - tail - 1] == groups[n - 1]:
        tail += 1
    if tail < min_window:
        return None
    return n - tail + 1, tail


def verify_bound(quotients, d, r):
    """Per-n check of |Q_n| <= d^r."""
    bound = d**r
    return [q.order <= bound for q in quotients]


def lambda_diagnostics(quotients, d, r, tail_start=None):
    """Valuation table of the prime-power multiples of every quotient.

    One row per prime p dividing d and shift s with p^s <= d^r (any other
    row is identically zero and omitted); each row is the sequence of
    valuations v_p(|p^s Q_n|) for n = 1..N.  When ``tail_start`` is given,
    the second return value flags whether each row is constant from that
    index on; otherwise it is None.
    """
    bound = d**r
    primes = []
    f = 2
    dd = d
    while f * f <= dd:
        if dd % f == 0:
            primes.append(f)
            while dd % f == 0:
                dd //= f
        f += 1 if f == 2 else 2
    if dd > 1:
        primes.append(dd)
    table = {}
    for p in primes:
        s = 0
        power = 1
        while power <= bound:
            row = tuple(
                q.group.p_power_multiply(p, s).p_valuation(p) for q in quotients
            )
            table[(p, s)] = row
            s += 1
            power *= p
    if tail_start is None:
        return table, None
    flags = {
        key: len(set(row[tail_start - 1 :])) <= 1 for key, row in table.items()
    }
    return table, flags


def build_report(ring, ring_id, max_n=DEFAULT_MAX_N, min_window=DEFAULT_MIN_WINDOW):
    """Run the full scan on a validated ring and assemble the report.

    Raises ReportInconsistencyError if the order bound fails anywhere or a
    valuation row wobbles inside the detected tail; both facts are provable
    for any ring that passed validation, so a failure means the code is
    wrong, not the input.
    """
    quotients = quotient_sequence(ring, max_n)
    first = quotients[0].group.invariant_factors
    d = first[-1] if first else 1
    r = ring.free_rank()
    detected = detect_stabilization([q.group for q in quotients], min_window)
    n0, window = detected if detected else (None, None)
    bound_ok = verify_bound(quotients, d, r)
    table, flags = lambda_diagnostics(quotients, d, r, tail_start=n0)
    report = StabilizationReport(
        ring_id=ring_id,
        max_n=max_n,
        d=d,
        r=r,
        quotients=quotients,
        n0_candidate=n0,
        window=window,
        certified=False,
        bound_ok=bound_ok,
        lambda_table=table,
    )
    if not all(bound_ok):
        bad = [q.n for q, ok in zip(quotients, bound_ok) if not ok]
        raise ReportInconsistencyError(
            f"{ring_id}: order bound |Q_n| <= d^r fails at n={bad}; "
            "this is an implementation bug"
        )
    if flags is not None and not all(flags.values()):
        bad = sorted(k for k, ok in flags.items() if not ok)
        raise ReportInconsistencyError(
            f"{ring_id}: valuation rows {bad} are not constant on the "
            "detected tail; this is an implementation bug"
        )
    return report


# -- serialization ----------------------------------------------------------


def report_to_dict(report):
    return {
        "ring_id": report.ring_id,
        "max_n": report.max_n,
        "d": encode_int(report.d),
        "r": report.r,
        "quotients": [
            {
                "n": q.n,
                "group": [encode_int(f) for f in q.group.invariant_factors],
                "order": encode_int(q.order),
                "ideal_rank": q.ideal_rank,
            }
            for q in report.quotients
        ],
        "n0_candidate": report.n0_candidate,
        "window": report.window,
        "certified": report.certified,
        "bound_ok": list(report.bound_ok),
        "lambda_table": {
            f"{p},{s}": list(row)
            for (p, s), row in sorted(report.lambda_table.items())
        },
    }


def report_from_dict(d):
    quotients = [
        QuotientResult(
            n=q["n"],
            group=FinAbGroup([decode_int(f) for f in q["group"]]),
            order=decode_int(q["order"]),
            ideal_rank=q["ideal_rank"],
        )
        for q in d["quotients"]
    ]
    table = {}
    for key, row in d["lambda_table"].items():
        p, s = key.split(",")
        table[(int(p), int(s))] = tuple(row)
    return StabilizationReport(
        ring_id=d["ring_id"],
        max_n=d["max_n"],
        d=decode_int(d["d"]),
        r=d["r"],
        quotients=quotients,
        n0_candidate=d["n0_candidate"],
        window=d["window"],
        certified=d["certified"],
        bound_ok=list(d["bound_ok"]),
        lambda_table=table,
    )


def report_to_json(report, indent=2):
    return json.dumps(report_to_dict(report), indent=indent)


def report_from_json(text):
    return report_from_dict(json.loads(text))


CSV_HEADER = ["ring_id", "n", "invariants", "order", "bound_ok"]


def report_csv_rows(report):
    """Flat per-n view; invariant factors pipe-joined, all numbers decimal."""
    rows = []
    for q, ok in zip(report.quotients, report.bound_ok):
        rows.append(
            [
                report.ring_id,
                str(q.n),
                "|".join(str(f) for f in q.group.invariant_factors),
                str(q.order),
                "true" if ok else "false",
            ]
        )
    return rows
