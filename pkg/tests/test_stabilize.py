import json

import pytest

from augq.abgroup import FinAbGroup
from augq.augring import AugmentedRing
from augq.constructors import burnside_ring, cayley_from_abelian, group_ring
from augq.stabilize import (
    CSV_HEADER,
    build_report,
    detect_stabilization,
    lambda_diagnostics,
    quotient_sequence,
    report_csv_rows,
    report_from_dict,
    report_from_json,
    report_to_dict,
    report_to_json,
    verify_bound,
)


def G(*orders):
    return FinAbGroup(orders)


def test_quotient_sequence_frozen():
    seq = quotient_sequence(group_ring(G(2)), 5)
    assert [q.group.invariant_factors for q in seq] == [(2,)] * 5
    assert [q.n for q in seq] == [1, 2, 3, 4, 5]
    seq = quotient_sequence(group_ring(G()), 5)
    assert all(q.group.is_trivial() for q in seq)
    seq = quotient_sequence(burnside_ring(cayley_from_abelian(G(2))), 5)
    assert [q.group.invariant_factors for q in seq] == [(2,)] * 5


def test_detect_stabilization_frozen():
    assert detect_stabilization([G(2)] * 5, 3) == (1, 5)
    assert detect_stabilization([G(4), G(2), G(2), G(2), G(2)], 3) == (2, 4)
    assert detect_stabilization([G(4), G(2)], 3) is None
    assert detect_stabilization([], 3) is None
    assert detect_stabilization([G(2), G(2)], 2) == (1, 2)
    # isomorphism, not identity, decides the tail
    assert detect_stabilization([G(2, 3), G(6), G(6)], 2) == (1, 3)
    with pytest.raises(ValueError):
        detect_stabilization([G(2)] * 5, 1)


def test_verify_bound_frozen():
    seq = quotient_sequence(group_ring(G(2)), 10)
    assert verify_bound(seq, 2, 1) == [True] * 10
    seq = quotient_sequence(group_ring(G()), 5)
    assert verify_bound(seq, 1, 0) == [True] * 5
    seq = quotient_sequence(group_ring(G(3)), 6)
    assert [q.order for q in seq] == [3] * 6
    assert verify_bound(seq, 3, 2) == [True] * 6


def test_lambda_diagnostics_rows():
    # Q1 = [2,2] but the tail is [2,2,2], so constancy starts at n = 2
    seq = quotient_sequence(group_ring(G(2, 2)), 6)
    table, flags = lambda_diagnostics(seq, 2, 3, tail_start=2)
    assert set(table) == {(2, 0), (2, 1), (2, 2), (2, 3)}
    assert flags == {k: True for k in table}
    assert table[(2, 0)] == (2, 3, 3, 3, 3, 3)
    assert table[(2, 1)] == (0,) * 6  # exponent-2 groups die under doubling
    _, flags = lambda_diagnostics(seq, 2, 3, tail_start=1)
    assert flags[(2, 0)] is False
    table, flags = lambda_diagnostics(seq, 2, 3)
    assert flags is None


def test_build_report_zc2():
    report = build_report(group_ring(G(2)), "group-ring:C2", max_n=10, min_window=5)
    assert report.ring_id == "group-ring:C2"
    assert report.d == 2 and report.r == 1
    assert report.n0_candidate == 1 and report.window == 10
    assert report.certified is False
    assert report.bound_ok == [True] * 10
    assert report.lambda_table[(2, 0)] == (1,) * 10
    assert len(report.quotients) == 10


def test_build_report_inconclusive_tail():
    report = build_report(group_ring(G(2, 4)), "t", max_n=3, min_window=3)
    # Q1 = [2,4] differs from the later [2,2,2,4]; tail of length 2 < 3
    assert report.n0_candidate is None
    assert report.window is None


def test_report_json_roundtrip():
    for ring, rid in (
        (group_ring(G(2)), "group-ring:C2"),
        (group_ring(G(2, 4)), "group-ring:C2xC4"),
        (burnside_ring(cayley_from_abelian(G(4))), "burnside:C4"),
    ):
        report = build_report(ring, rid, max_n=8, min_window=4)
        text = report_to_json(report)
        assert report_from_json(text) == report
        # stable key layout for the wire format
        d = json.loads(text)
        assert set(d) == {
            "ring_id",
            "max_n",
            "d",
            "r",
            "quotients",
            "n0_candidate",
            "window",
            "certified",
            "bound_ok",
            "lambda_table",
        }
        assert d["certified"] is False
        assert report_to_json(report_from_json(text)) == text


def test_report_dict_lambda_keys_are_strings():
    report = build_report(group_ring(G(6)), "group-ring:C6", max_n=6, min_window=3)
    d = report_to_dict(report)
    # rows exist for every p | d and shift with p^s <= d^r, zero rows included
    assert "2,0" in d["lambda_table"] and "3,0" in d["lambda_table"]
    assert all("," in k for k in d["lambda_table"])
    assert report_from_dict(d) == report


def test_report_csv_rows():
    report = build_report(group_ring(G(2)), "group-ring:C2", max_n=3, min_window=2)
    assert CSV_HEADER == ["ring_id", "n", "invariants", "order", "bound_ok"]
    assert report_csv_rows(report) == [
        ["group-ring:C2", "1", "2", "2", "true"],
        ["group-ring:C2", "2", "2", "2", "true"],
        ["group-ring:C2", "3", "2", "2", "true"],
    ]


def test_report_determinism():
    a = build_report(group_ring(G(2, 4)), "x", max_n=8, min_window=4)
    b = build_report(group_ring(G(2, 4)), "x", max_n=8, min_window=4)
    assert report_to_json(a) == report_to_json(b)
    assert report_csv_rows(a) == report_csv_rows(b)
