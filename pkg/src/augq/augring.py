"""Commutative rings with an integer augmentation, given by structure
constants on a finite free basis, plus the exact machinery for powers of
the augmentation ideal and their consecutive quotients.

The ring is Z^m with a bilinear product; the augmentation is a linear map
to Z that is expected (and checked, not assumed) to be a unital ring
homomorphism.  Its kernel I and the chain I >= I^2 >= ... are plain
integer lattices, so every quotient I^n / I^{n+1} is computed exactly.
"""

from dataclasses import dataclass, field

from .abgroup import FinAbGroup
from .intlinalg import kernel_basis, lattice_from_generators, quotient_invariants
from .intlinalg import IntMatrix

__all__ = [
    "AugmentedRing",
    "DimensionMismatchError",
    "QuotientResult",
    "RankDropError",
    "RingSpecError",
    "ValidationReport",
    "decode_int",
    "encode_int",
]

_I64_MIN = -(2**63)
_I64_MAX = 2**63 - 1


def encode_int(x):
    """Ints stay ints inside the 64-bit range; beyond it, decimal strings."""
    return x if _I64_MIN <= x <= _I64_MAX else str(x)


def decode_int(x):
    if isinstance(x, bool):
        raise RingSpecError("expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x, 10)
        except ValueError:
            raise RingSpecError(f"not a decimal integer: {x!r}")
    raise RingSpecError(f"expected an integer, got {type(x).__name__}")


class DimensionMismatchError(ValueError):
    """Operand vector length does not match the ring dimension."""


class RankDropError(ArithmeticError):
    """An ideal power lost rank; the ring violates the torsion axiom."""


class RingSpecError(ValueError):
    """Malformed or self-contradictory ring-spec input."""


@dataclass
class ValidationReport:
    """Outcome of the axiom checks, one named flag per axiom.

    ``failures`` holds one human-readable line per failed check (first
    counterexample only); nothing here raises, so a report can describe a
    thoroughly broken ring.
    """

    checks: dict
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return all(self.checks.values())


@dataclass
class QuotientResult:
    """One consecutive quotient I^n / I^{n+1}."""

    n: int
    group: FinAbGroup
    order: int
    ideal_rank: int


class AugmentedRing:
    """A commutative ring on basis b_0..b_{m-1} with augmentation to Z.

    ``structure`` maps an ordered pair (i, j) to the integer vector of
    b_i * b_j; a missing (j, i) is filled in from (i, j), but an explicitly
    supplied asymmetric pair is kept as given so that validation can report
    the commutativity failure instead of masking it.
    """

    __slots__ = ("labels", "dim", "augmentation", "identity_index", "_table")

    def __init__(self, labels, structure, augmentation, identity_index):
        self.labels = tuple(str(x) for x in labels)
        m = len(self.labels)
        if m == 0:
            raise ValueError("a ring needs at least one basis element")
        self.dim = m
        self.augmentation = tuple(int(x) for x in augmentation)
        if len(self.augmentation) != m:
            raise ValueError("augmentation vector length does not match basis")
        if not isinstance(identity_index, int) or not 0 <= identity_index < m:
            raise ValueError("identity index out of range")
        self.identity_index = identity_index

        vecs = {}
        for (i, j), vec in dict(structure).items():
            if not (0 <= i < m and 0 <= j < m):
                raise ValueError(f"structure key ({i}, {j}) out of range")
            v = [int(x) for x in vec]
            if len(v) != m:
                raise ValueError(f"structure vector for ({i}, {j}) has wrong length")
            vecs[(i, j)] = v
        table = []
        zero = [0] * m
        for i in range(m):
            row = []
            for j in range(m):
                v = vecs.get((i, j))
                if v is None:
                    v = vecs.get((j, i), zero)
                row.append(tuple((k, c) for k, c in enumerate(v) if c))
            table.append(row)
        self._table = table

    # -- products ---------------------------------------------------------

    def basis_product(self, i, j):
        """b_i * b_j as a dense coefficient vector."""
        out = [0] * self.dim
        for k, c in self._table[i][j]:
            out[k] = c
        return out

    def multiply(self, x, y):
        """Bilinear product of two coefficient vectors."""
        m = self.dim
        if len(x) != m or len(y) != m:
            raise DimensionMismatchError(
                f"operands must have length {m}, got {len(x)} and {len(y)}"
            )
        out = [0] * m
        table = self._table
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = table[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                f = xi * yj
                for k, c in row[j]:
                    out[k] += f * c
        return out

    def augment(self, x):
        if len(x) != self.dim:
            raise DimensionMismatchError(
                f"operand must have length {self.dim}, got {len(x)}"
            )
        return sum(a * b for a, b in zip(self.augmentation, x))

    def basis_vector(self, i):
        v = [0] * self.dim
        v[i] = 1
        return v

    # -- validation --------------------------------------------------------

    def validate(self):
        """Check every ring axiom and report, without raising.

        Associativity is exhaustive over all m^3 basis triples; the torsion
        axiom asks that I / I^2 be finite, i.e. that I^2 spans the same
        rank as I.
        """
        m = self.dim
        checks = {}
        failures = []

        commutative = True
        for i in range(m):
            for j in range(i + 1, m):
                if self._table[i][j] != self._table[j][i]:
                    commutative = False
                    failures.append(
                        f"commutativity: b{i}*b{j} != b{j}*b{i} "
                        f"({self.labels[i]}, {self.labels[j]})"
                    )
                    break
            if not commutative:
                break
        checks["commutativity"] = commutative

        dense = [[self.basis_product(i, j) for j in range(m)] for i in range(m)]
        associative = True
        for i in range(m):
            if not associative:
                break
            for j in range(m):
                if not associative:
                    break
                pij = self._table[i][j]
                for k in range(m):
                    lhs = [0] * m
                    for t, c in pij:
                        dk = dense[t][k]
                        for idx in range(m):
                            lhs[idx] += c * dk[idx]
                    rhs = [0] * m
                    for t, c in self._table[j][k]:
                        di = dense[i][t]
                        for idx in range(m):
                            rhs[idx] += c * di[idx]
                    if lhs != rhs:
                        associative = False
                        failures.append(
                            f"associativity: (b{i}*b{j})*b{k} != b{i}*(b{j}*b{k})"
                        )
                        break
        checks["associativity"] = associative

        e = self.identity_index
        identity_ok = True
        for j in range(m):
            ej = self.basis_vector(j)
            if self.basis_product(e, j) != ej or self.basis_product(j, e) != ej:
                identity_ok = False
                failures.append(f"identity: b{e} does not fix b{j}")
                break
        checks["identity"] = identity_ok

        aug_mult = True
        for i in range(m):
            for j in range(m):
                want = self.augmentation[i] * self.augmentation[j]
                if self.augment(dense[i][j]) != want:
                    aug_mult = False
                    failures.append(
                        f"augmentation: eps(b{i}*b{j}) != eps(b{i})*eps(b{j})"
                    )
                    break
            if not aug_mult:
                break
        checks["augmentation_multiplicative"] = aug_mult

        unit_ok = self.augmentation[e] == 1
        if not unit_ok:
            failures.append(
                f"augmentation: eps(identity) == {self.augmentation[e]}, want 1"
            )
        checks["augmentation_unit"] = unit_ok

        ideal = self.augmentation_ideal()
        square = self._ideal_product(ideal, ideal)
        torsion_ok = square.rank == ideal.rank
        if not torsion_ok:
            failures.append(
                "torsion: I/I^2 has free rank "
                f"{ideal.rank - square.rank}, so it is not finite"
            )
        checks["torsion"] = torsion_ok

        return ValidationReport(checks=checks, failures=failures)

    # -- ideal powers -------------------------------------------------------

    def augmentation_ideal(self):
        """The kernel of the augmentation as a lattice in Z^dim."""
        return kernel_basis(IntMatrix([list(self.augmentation)]))

    def _ideal_product(self, a, b):
        """Lattice spanned by all products of the two ideals' elements.

        Bilinearity reduces the span to products of basis pairs; duplicates
        are dropped (deterministically, preserving first-seen order) before
        echelon insertion.
        """
        gens = {}
        for x in a.basis.data:
            for y in b.basis.data:
                gens[tuple(self.multiply(x, y))] = None
        return lattice_from_generators(self.dim, list(gens))

    def ideal_powers(self, max_n):
        """Lattices for I^1, I^2, ..., I^{max_n+1}, in that order.

        Raises RankDropError the moment some power spans less than I does;
        past that point the consecutive quotients stop being finite and the
        chain is no longer the object of interest.
        """
        if not isinstance(max_n, int) or max_n < 1:
            raise ValueError("max_n must be a positive integer")
        ideal = self.augmentation_ideal()
        powers = [ideal]
        for n in range(1, max_n + 1):
            prev = powers[-1]
            if len(powers) > 1 and prev == powers[-2]:
                # the chain went stationary; no new spans can appear
                powers.append(prev)
                continue
            nxt = self._ideal_product(ideal, prev)
            if nxt.rank < ideal.rank:
                raise RankDropError(
                    f"rank of I^{n + 1} dropped to {nxt.rank} "
                    f"(rank of I is {ideal.rank}); torsion axiom violated"
                )
            powers.append(nxt)
        return powers

    def quotient_group(self, n):
        """The finite abelian group I^n / I^{n+1}."""
        if not isinstance(n, int) or n < 1:
            raise ValueError("n must be a positive integer")
        powers = self.ideal_powers(n)
        inv = quotient_invariants(powers[n - 1], powers[n])
        if inv.free_rank:
            raise RankDropError(f"I^{n}/I^{n + 1} is infinite")
        group = FinAbGroup(inv.factors)
        return QuotientResult(
            n=n, group=group, order=group.order(), ideal_rank=powers[n - 1].rank
        )

    def torsion_exponent(self):
        """Largest invariant factor of I/I^2 (1 when that quotient is trivial)."""
        group = self.quotient_group(1).group
        factors = group.invariant_factors
        return factors[-1] if factors else 1

    def free_rank(self):
        """Rank of the augmentation ideal: always dim - 1 for a surjective
        augmentation."""
        return self.dim - 1

    # -- wire format ---------------------------------------------------------

    def to_dict(self):
        """Serialize to the ring-spec mapping (sparse structure quadruples).

        A commutative table is emitted as its upper triangle only since
        loading applies symmetric completion; an asymmetric one keeps every
        ordered pair so nothing is silently repaired.
        """
        m = self.dim
        symmetric = all(
            self._table[i][j] == self._table[j][i]
            for i in range(m)
            for j in range(i + 1, m)
        )
        quads = []
        for i in range(m):
            for j in range(m):
                if symmetric and j < i:
                    continue
                for k, c in self._table[i][j]:
                    quads.append([i, j, k, encode_int(c)])
        return {
            "basis": list(self.labels),
            "identity": self.identity_index,
            "structure": quads,
            "augmentation": [encode_int(x) for x in self.augmentation],
        }

    @classmethod
    def from_dict(cls, d):
        """Load a ring from the sparse quadruple format.

        Unlisted coefficients are zero; quadruples accumulate; a pair
        listed in only one order is mirrored, while a pair listed in both
        orders must agree entry for entry.
        """
        if not isinstance(d, dict):
            raise RingSpecError("ring spec must be a JSON object")
        try:
            basis = d["basis"]
            identity = d["identity"]
            structure = d["structure"]
            augmentation = d["augmentation"]
        except KeyError as exc:
            raise RingSpecError(f"ring spec is missing the {exc.args[0]!r} field")
        if not isinstance(basis, list) or not basis:
            raise RingSpecError("'basis' must be a nonempty list of labels")
        m = len(basis)
        if not isinstance(identity, int) or isinstance(identity, bool):
            raise RingSpecError("'identity' must be an integer index")
        if not 0 <= identity < m:
            raise RingSpecError("'identity' index out of range")
        if not isinstance(augmentation, list) or len(augmentation) != m:
            raise RingSpecError(f"'augmentation' must be a list of {m} integers")
        aug = [decode_int(x) for x in augmentation]
        if not isinstance(structure, list):
            raise RingSpecError("'structure' must be a list of [i, j, k, c] rows")
        vecs = {}
        for row in structure:
            if not isinstance(row, list) or len(row) != 4:
                raise RingSpecError(f"structure row {row!r} is not [i, j, k, c]")
            i, j, k = row[0], row[1], row[2]
            for idx in (i, j, k):
                if not isinstance(idx, int) or isinstance(idx, bool):
                    raise RingSpecError(f"structure row {row!r} has a non-int index")
                if not 0 <= idx < m:
                    raise RingSpecError(f"structure row {row!r} index out of range")
            c = decode_int(row[3])
            vec = vecs.setdefault((i, j), [0] * m)
            vec[k] += c
        for (i, j) in list(vecs):
            if i == j:
                continue
            mirror = vecs.get((j, i))
            if mirror is not None and j > i and mirror != vecs[(i, j)]:
                raise RingSpecError(
                    f"conflicting symmetric entries for basis pair ({i}, {j})"
                )
        return cls(basis, vecs, aug, identity)
