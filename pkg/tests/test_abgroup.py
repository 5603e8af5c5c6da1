import random

import pytest

from augq.abgroup import (
    FinAbGroup,
    InconsistentProfileError,
    NotPrimeError,
    ParseError,
    ValuationProfile,
    random_group,
    random_subgroup_quotient,
)
from oracles import valuation_from_factors


def test_canonicalization():
    assert FinAbGroup([2, 3]).invariant_factors == (6,)
    assert FinAbGroup([4, 2, 6]).invariant_factors == (2, 2, 12)
    assert FinAbGroup([12, 18]).invariant_factors == (6, 36)
    assert FinAbGroup([]).invariant_factors == ()
    assert FinAbGroup([1, 1]).invariant_factors == ()
    with pytest.raises(ValueError):
        FinAbGroup([0])
    with pytest.raises(ValueError):
        FinAbGroup([-2])


def test_order_and_triviality():
    assert FinAbGroup([]).order() == 1
    assert FinAbGroup([]).is_trivial()
    assert FinAbGroup([2, 4]).order() == 8
    assert not FinAbGroup([2]).is_trivial()


def test_equality_is_isomorphism():
    assert FinAbGroup([2, 3]) == FinAbGroup([6])
    assert FinAbGroup([2, 2]) != FinAbGroup([4])
    assert FinAbGroup([8, 3]).is_isomorphic(FinAbGroup([24]))
    assert hash(FinAbGroup([2, 3])) == hash(FinAbGroup([6]))


def test_p_valuation_frozen_examples():
    g = FinAbGroup([2, 8])
    assert g.p_valuation(2) == 4
    assert g.p_valuation(3) == 0
    assert FinAbGroup([12]).p_valuation(2) == 2
    with pytest.raises(NotPrimeError):
        g.p_valuation(4)
    with pytest.raises(NotPrimeError):
        g.p_valuation(1)


def test_sylow():
    g = FinAbGroup([12, 18])  # = (6, 36) = 2^3 * 3^3 ... orders
    assert g.sylow(2) == FinAbGroup([2, 4])
    assert g.sylow(3) == FinAbGroup([3, 9])
    assert g.sylow(5) == FinAbGroup([])
    assert FinAbGroup([]).sylow(2) == FinAbGroup([])


def test_p_power_multiply_frozen_examples():
    # multiplication by 2 is a unit on the 3-part: 2*Z12 = 2*(Z4 + Z3) = Z6
    assert FinAbGroup([12]).p_power_multiply(2, 1) == FinAbGroup([6])
    assert FinAbGroup([2, 4]).p_power_multiply(2, 1) == FinAbGroup([2])
    assert FinAbGroup([2, 4]).p_power_multiply(2, 0) == FinAbGroup([2, 4])
    assert FinAbGroup([2, 4]).p_power_multiply(2, 5) == FinAbGroup([])
    assert FinAbGroup([6]).p_power_multiply(3, 1) == FinAbGroup([2])


def test_p_power_multiply_matches_closed_form():
    for seed in range(120):
        g = random_group(seed)
        factors = g.invariant_factors
        for p in (2, 3, 5, 7):
            for s in range(5):
                expect = valuation_from_factors(factors, p, s)
                assert g.p_power_multiply(p, s).p_valuation(p) == expect


def test_valuation_profile_frozen_examples():
    prof = FinAbGroup([2, 4]).valuation_profile()
    assert prof.value(2, 0) == 3
    assert prof.value(2, 1) == 1
    assert prof.value(2, 2) == 0
    assert dict(prof.items()) == {(2, 0): 3, (2, 1): 1}
    assert dict(FinAbGroup([6]).valuation_profile().items()) == {(2, 0): 1, (3, 0): 1}
    assert dict(FinAbGroup([]).valuation_profile().items()) == {}


def test_profile_roundtrip_frozen():
    for orders in ([], [2], [2, 4], [6], [2, 2, 12], [8, 3, 25]):
        g = FinAbGroup(orders)
        assert FinAbGroup.from_valuation_profile(g.valuation_profile()) == g


def test_profile_inconsistent():
    # one element of order 4 but claimed valuation profile of order-2 group
    bad = ValuationProfile({(2, 0): 1, (2, 1): 1})
    # (2,1) entry says 2G has order 2, so G needs an element of order 4,
    # forcing lambda(2,0) >= 2; reject
    with pytest.raises(InconsistentProfileError):
        FinAbGroup.from_valuation_profile(bad)


def test_profile_validation():
    with pytest.raises(NotPrimeError):
        ValuationProfile({(4, 0): 1})
    with pytest.raises(InconsistentProfileError):
        ValuationProfile({(2, 0): -1})
    prof = ValuationProfile({(2, 0): 0})
    assert dict(prof.items()) == {}


def test_profile_json_mapping():
    prof = FinAbGroup([2, 4]).valuation_profile()
    j = prof.to_json_mapping()
    assert j == {"2,0": 3, "2,1": 1}
    assert ValuationProfile.from_json_mapping(j) == prof
    with pytest.raises(ValueError):
        ValuationProfile.from_json_mapping({"2;0": 1})


def test_spec_string_roundtrip():
    assert FinAbGroup([]).spec_string() == "1"
    assert FinAbGroup([2, 4]).spec_string() == "C2xC4"
    assert FinAbGroup.from_spec("C2xC4") == FinAbGroup([2, 4])
    assert FinAbGroup.from_spec("1") == FinAbGroup([])
    assert FinAbGroup.from_spec("C6") == FinAbGroup([2, 3])
    for seed in range(40):
        g = random_group(seed)
        assert FinAbGroup.from_spec(g.spec_string()) == g


def test_from_spec_errors():
    for bad in ("", "C1", "C0", "Cx", "C2x", "xC2", "C2 x C4", "D4"):
        with pytest.raises(ParseError):
            FinAbGroup.from_spec(bad)
    try:
        FinAbGroup.from_spec("C2xC1")
    except ParseError as exc:
        assert exc.position > 0


def test_sylow_reduction_and_commutation():
    for seed in range(60):
        g = random_group(seed)
        for p in (2, 3, 5, 7, 11):
            assert g.p_valuation(p) == g.sylow(p).p_valuation(p)
            for s in range(3):
                assert g.p_power_multiply(p, s).sylow(p) == g.sylow(p).p_power_multiply(p, s)


def test_valuation_monotone_in_shift():
    for seed in range(60):
        g = random_group(seed)
        for p in (2, 3, 5):
            vals = [g.p_power_multiply(p, s).p_valuation(p) for s in range(g.p_valuation(p) + 1)]
            assert all(a >= b for a, b in zip(vals, vals[1:]))
            assert vals[-1] == 0


def test_random_group_determinism():
    assert random_group(7) == random_group(7)
    groups = {random_group(s).invariant_factors for s in range(30)}
    assert len(groups) > 5


def test_random_subgroup_quotient_orders_multiply():
    for seed in range(80):
        g = random_group(seed, max_rank=3, max_prime_power=32)
        h, q = random_subgroup_quotient(seed * 31 + 7, g)
        assert h.order() * q.order() == g.order()
