import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from augq import (
    FinAbGroup,
    build_report,
    burnside_ring,
    cayley_from_abelian,
    group_ring,
    parse_group_spec,
    rep_ring_dihedral,
)


def _partitions(n):
    if n == 0:
        yield ()
        return
    for first in range(n, 0, -1):
        for rest in _partitions(n - first):
            if not rest or first >= rest[0]:
                yield (first,) + rest


def abelian_groups_of_order(n):
    """All isomorphism classes of abelian groups of order n."""
    factor = {}
    m, p = n, 2
    while m > 1:
        while m % p == 0:
            factor[p] = factor.get(p, 0) + 1
            m //= p
        p += 1
    groups = [[]]
    for p, e in sorted(factor.items()):
        groups = [
            g + [p**k for k in part]
            for g in groups
            for part in _partitions(e)
        ]
    return [FinAbGroup(g) for g in groups]


def abelian_groups_upto(n):
    out = []
    for k in range(1, n + 1):
        out.extend(abelian_groups_of_order(k))
    return out


def corpus_ring_specs():
    """The stabilization corpus: (family, spec) pairs.

    Group rings of all abelian groups up to order 16, Burnside rings of
    every constructible group up to order 12, and the dihedral
    representation rings for m = 3..8.
    """
    specs = []
    for g in abelian_groups_upto(16):
        specs.append(("group-ring", g.spec_string()))
    for g in abelian_groups_upto(12):
        specs.append(("burnside", g.spec_string()))
    for name in ("D3", "D4", "D5", "D6", "S3"):
        specs.append(("burnside", name))
    for m in range(3, 9):
        specs.append(("rep", f"D{m}"))
    return specs


def build_corpus_ring(family, spec):
    if family == "group-ring":
        return group_ring(FinAbGroup.from_spec(spec))
    if family == "burnside":
        g = parse_group_spec(spec)
        if isinstance(g, FinAbGroup):
            g = cayley_from_abelian(g)
        return burnside_ring(g)
    assert family == "rep"
    return rep_ring_dihedral(int(spec[1:]))


@pytest.fixture(scope="session")
def corpus_reports():
    """One StabilizationReport per corpus ring, computed once per run."""
    reports = {}
    for family, spec in corpus_ring_specs():
        ring_id = f"{family}:{spec}"
        ring = build_corpus_ring(family, spec)
        assert ring.validate().passed, ring_id
        reports[ring_id] = build_report(ring, ring_id, max_n=20, min_window=5)
    return reports


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # Replay the acceptance-gate lines after capture is torn down, so
    # they are visible in a default (captured) pytest run.
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
