import random

import pytest

from augq.augring import (
    AugmentedRing,
    DimensionMismatchError,
    RankDropError,
    RingSpecError,
    decode_int,
    encode_int,
)
from oracles import det_laplace


def zc2():
    """Group ring of C2 on the basis (e, g), built by hand."""
    return AugmentedRing(
        labels=["1", "g"],
        structure={(0, 0): [1, 0], (0, 1): [0, 1], (1, 1): [1, 0]},
        augmentation=[1, 1],
        identity_index=0,
    )


def burnside_c2():
    """Burnside ring of C2 on the basis ([C2/1], [C2/C2]), by hand."""
    return AugmentedRing(
        labels=["[C2/1]", "[C2/C2]"],
        structure={(0, 0): [2, 0], (0, 1): [1, 0], (1, 1): [0, 1]},
        augmentation=[2, 1],
        identity_index=1,
    )


def zc3():
    return AugmentedRing(
        labels=["1", "g", "g2"],
        structure={
            (0, 0): [1, 0, 0],
            (0, 1): [0, 1, 0],
            (0, 2): [0, 0, 1],
            (1, 1): [0, 0, 1],
            (1, 2): [1, 0, 0],
            (2, 2): [0, 1, 0],
        },
        augmentation=[1, 1, 1],
        identity_index=0,
    )


def ring_z():
    return AugmentedRing(
        labels=["1"], structure={(0, 0): [1]}, augmentation=[1], identity_index=0
    )


def dual_numbers():
    # Z[x]/(x^2): fails the torsion axiom, I/I^2 is infinite cyclic
    return AugmentedRing(
        labels=["1", "x"],
        structure={(0, 0): [1, 0], (0, 1): [0, 1], (1, 1): [0, 0]},
        augmentation=[1, 0],
        identity_index=0,
    )


def test_validate_passes_on_good_rings():
    for ring in (zc2(), burnside_c2(), zc3(), ring_z()):
        report = ring.validate()
        assert report.passed, report.failures
        assert report.failures == []
        assert set(report.checks) == {
            "commutativity",
            "associativity",
            "identity",
            "augmentation_multiplicative",
            "augmentation_unit",
            "torsion",
        }


def test_validate_flags_torsion_violation():
    report = dual_numbers().validate()
    assert not report.passed
    assert report.checks["torsion"] is False
    assert all(report.checks[k] for k in report.checks if k != "torsion")


def test_validate_flags_noncommutative_table():
    ring = AugmentedRing(
        labels=["1", "a"],
        structure={(0, 0): [1, 0], (0, 1): [0, 1], (1, 0): [1, 0], (1, 1): [1, 0]},
        augmentation=[1, 1],
        identity_index=0,
    )
    report = ring.validate()
    assert report.checks["commutativity"] is False


def test_multiply_frozen_examples():
    ring = zc2()
    assert ring.multiply([-1, 1], [-1, 1]) == [2, -2]
    assert ring.multiply([3, 4], [1, 0]) == [3, 4]
    assert ring.multiply([3, 4], [0, 0]) == [0, 0]
    with pytest.raises(DimensionMismatchError):
        ring.multiply([1, 2, 3], [1, 0])


def test_multiply_burnside_hand_identity():
    ring = burnside_c2()
    x = [1, -2]
    assert ring.augment(x) == 0
    assert ring.multiply(x, x) == [-2, 4]  # x^2 = -2x


def test_augment_is_multiplicative_on_random_vectors():
    rng = random.Random(29)
    for ring in (zc2(), burnside_c2(), zc3()):
        m = len(ring.labels)
        for _ in range(1000):
            x = [rng.randint(-9, 9) for _ in range(m)]
            y = [rng.randint(-9, 9) for _ in range(m)]
            assert ring.augment(ring.multiply(x, y)) == ring.augment(x) * ring.augment(y)


def test_augmentation_ideal_frozen():
    assert zc2().augmentation_ideal().basis.tolist() == [[1, -1]]
    assert ring_z().augmentation_ideal().rank == 0
    assert zc3().augmentation_ideal().rank == 2


def test_ideal_powers_zc2():
    powers = zc2().ideal_powers(2)
    assert [p.basis.tolist() for p in powers] == [[[1, -1]], [[2, -2]], [[4, -4]]]


def test_ideal_powers_trivial_ring():
    powers = ring_z().ideal_powers(4)
    assert len(powers) == 5
    assert all(p.rank == 0 for p in powers)


def test_ideal_powers_chain_and_rank():
    for ring in (zc2(), burnside_c2(), zc3()):
        powers = ring.ideal_powers(6)
        r = powers[0].rank
        for big, small in zip(powers, powers[1:]):
            assert big.contains_lattice(small)
            assert small.rank == r


def test_ideal_powers_rank_drop():
    with pytest.raises(RankDropError):
        dual_numbers().ideal_powers(3)


def test_quotient_group_frozen():
    ring = zc2()
    q1 = ring.quotient_group(1)
    assert q1.group.invariant_factors == (2,)
    assert q1.order == 2 and q1.ideal_rank == 1 and q1.n == 1
    q7 = ring.quotient_group(7)
    assert q7.group.invariant_factors == (2,)
    assert ring_z().quotient_group(3).group.is_trivial()


def test_torsion_exponent_and_free_rank():
    assert zc2().torsion_exponent() == 2
    assert ring_z().torsion_exponent() == 1
    assert zc2().free_rank() == 1
    assert zc3().free_rank() == 2
    assert ring_z().free_rank() == 0
    # Z(C2xC2): Q1 = G, exponent 2
    k4 = {(0, 0): [1, 0, 0, 0], (0, 1): [0, 1, 0, 0], (0, 2): [0, 0, 1, 0],
          (0, 3): [0, 0, 0, 1], (1, 1): [1, 0, 0, 0], (1, 2): [0, 0, 0, 1],
          (1, 3): [0, 0, 1, 0], (2, 2): [1, 0, 0, 0], (2, 3): [0, 1, 0, 0],
          (3, 3): [1, 0, 0, 0]}
    ring = AugmentedRing(labels=list("egab"), structure=k4,
                         augmentation=[1, 1, 1, 1], identity_index=0)
    assert ring.validate().passed
    assert ring.torsion_exponent() == 2
    assert ring.quotient_group(1).group.invariant_factors == (2, 2)


def test_quotient_order_matches_determinant_index():
    # index [I^n : I^n+1] from basis determinants in the I^n frame
    for ring in (zc2(), burnside_c2(), zc3()):
        powers = ring.ideal_powers(5)
        for n in range(1, 5):
            big, small = powers[n - 1], powers[n]
            coords = [big.coordinates(row) for row in small.basis.data]
            assert all(c is not None for c in coords)
            q = ring.quotient_group(n)
            assert q.order == abs(det_laplace(coords))


# -- serialization -----------------------------------------------------------


def test_int_codec():
    assert encode_int(5) == 5
    assert encode_int(-(2**63)) == -(2**63)
    assert encode_int(2**63) == str(2**63)
    assert decode_int(5) == 5
    assert decode_int(str(2**100)) == 2**100
    with pytest.raises(RingSpecError):
        decode_int(True)
    with pytest.raises(RingSpecError):
        decode_int("junk")
    with pytest.raises(RingSpecError):
        decode_int(2.5)


def test_ring_dict_roundtrip():
    for ring in (zc2(), burnside_c2(), zc3()):
        d = ring.to_dict()
        back = AugmentedRing.from_dict(d)
        assert back.labels == ring.labels
        assert back.augmentation == ring.augmentation
        assert back.identity_index == ring.identity_index
        for i in range(len(ring.labels)):
            for j in range(len(ring.labels)):
                assert back.basis_product(i, j) == ring.basis_product(i, j)


def test_from_dict_sparse_accumulation_and_symmetry():
    d = {
        "basis": ["1", "t"],
        "identity": 0,
        "structure": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 1, 0, 2], [1, 1, 0, 3]],
        "augmentation": [1, 1],
    }
    ring = AugmentedRing.from_dict(d)
    assert ring.basis_product(1, 1) == [5, 0]  # quadruples accumulate
    assert ring.basis_product(1, 0) == [0, 1]  # symmetric completion


def test_from_dict_rejects_conflicting_symmetric_entries():
    d = {
        "basis": ["1", "t"],
        "identity": 0,
        "structure": [[0, 1, 1, 1], [1, 0, 1, 2], [0, 0, 0, 1], [1, 1, 0, 1]],
        "augmentation": [1, 1],
    }
    with pytest.raises(RingSpecError):
        AugmentedRing.from_dict(d)


def test_from_dict_big_integer_strings():
    big = 2**80
    d = {
        "basis": ["1", "t"],
        "identity": 0,
        "structure": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 1, 0, str(big)]],
        "augmentation": [1, 0],
    }
    ring = AugmentedRing.from_dict(d)
    assert ring.basis_product(1, 1) == [big, 0]
    out = ring.to_dict()
    assert [0, 0, 0, 1] in out["structure"]
    assert [1, 1, 0, str(big)] in out["structure"]


def test_from_dict_malformed():
    good = zc2().to_dict()
    for mutate in (
        lambda d: d.pop("basis"),
        lambda d: d.update(identity=9),
        lambda d: d.update(augmentation=[1]),
        lambda d: d["structure"].append([0, 0, 9, 1]),
        lambda d: d["structure"].append([0, 0, 0]),
    ):
        d = {k: (list(v) if isinstance(v, list) else v) for k, v in good.items()}
        d["structure"] = [list(q) for q in d["structure"]]
        mutate(d)
        with pytest.raises(RingSpecError):
            AugmentedRing.from_dict(d)
