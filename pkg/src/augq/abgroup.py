"""Finite abelian groups in canonical invariant-factor form.

The canonical form turns isomorphism testing into structural equality: the
constructor accepts any multiset of cyclic orders and rewrites it, through
the primary decomposition, as the unique ascending divisibility chain.

Beyond classification the module carries the small calculus used by the
quotient diagnostics: the p-adic valuation of the group order, Sylow
pieces, multiplication by p^s, and the profile of valuations of all the
p^s-multiples, together with its exact inverse.
"""

import random

from .intlinalg import Lattice, lattice_from_generators, quotient_invariants

__all__ = [
    "FinAbGroup",
    "InconsistentProfileError",
    "NotPrimeError",
    "ParseError",
    "ValuationProfile",
    "random_group",
    "random_subgroup_quotient",
]


class NotPrimeError(ValueError):
    """Raised when an argument that must be prime is not."""


class InconsistentProfileError(ValueError):
    """Raised when a valuation profile is realized by no finite abelian group."""


class ParseError(ValueError):
    """Group-spec syntax error; ``position`` is the offending character index."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _is_prime(p):
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _factorint(n):
    """Prime factorization by trial division, as a dict prime -> exponent."""
    out = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class FinAbGroup:
    """A finite abelian group, canonicalized to invariant factors.

    >>> FinAbGroup([2, 3]).invariant_factors
    (6,)
    >>> FinAbGroup([4, 2, 6]).invariant_factors
    (2, 2, 12)
    >>> FinAbGroup([6, 15]) == FinAbGroup([3, 30])
    True
    """

    __slots__ = ("_factors", "_primary")

    def __init__(self, orders=()):
        primary = {}
        for o in orders:
            o = int(o)
            if o < 1:
                raise ValueError("cyclic orders must be positive")
            if o == 1:
                continue
            for p, e in _factorint(o).items():
                primary.setdefault(p, []).append(e)
        for p in primary:
            primary[p].sort(reverse=True)
        depth = max((len(v) for v in primary.values()), default=0)
        factors = []
        for t in range(depth):
            f = 1
            for p in primary:
                exps = primary[p]
                if t < len(exps):
                    f *= p ** exps[t]
            factors.append(f)
        factors.reverse()
        self._factors = tuple(factors)
        self._primary = {p: tuple(v) for p, v in sorted(primary.items())}

    @property
    def invariant_factors(self):
        return self._factors

    def order(self):
        n = 1
        for f in self._factors:
            n *= f
        return n

    def is_trivial(self):
        return not self._factors

    def p_valuation(self, p):
        """Exponent of the prime p in the group order."""
        if not _is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        exps = self._primary.get(p)
        return sum(exps) if exps else 0

    def sylow(self, p):
        """The p-part: the subgroup of elements of p-power order."""
        if not _is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        exps = self._primary.get(p, ())
        return FinAbGroup([p**e for e in exps])

    def p_power_multiply(self, p, s):
        """The subgroup p^s * G.

        Multiplication by p^s is invertible away from p and divides each
        cyclic p-power piece down by p^s, so Z_{p^a u} maps onto
        Z_{p^{max(a-s,0)} u}.
        """
        if not _is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        if not isinstance(s, int) or s < 0:
            raise ValueError("shift must be a nonnegative integer")
        if s == 0:
            return self
        orders = []
        for f in self._factors:
            e = 0
            while f % p == 0:
                f //= p
                e += 1
            orders.append(p ** max(e - s, 0) * f)
        return FinAbGroup(orders)

    def valuation_profile(self):
        """Profile {(p, s): v_p(|p^s G|)} over all entries that are nonzero."""
        entries = {}
        for p in self._primary:
            s = 0
            while True:
                val = self.p_power_multiply(p, s).p_valuation(p)
                if val == 0:
                    break
                entries[(p, s)] = val
                s += 1
        return ValuationProfile(entries)

    @classmethod
    def from_valuation_profile(cls, profile):
        """Invert ``valuation_profile``.

        Writing sigma_s for the valuation of |p^s G|, the difference
        sigma_s - sigma_{s+1} counts the cyclic p-power factors of exponent
        at least s+1; a second difference therefore recovers the exact
        multiplicity of each exponent.  Any negative count along the way
        means no group realizes the profile.
        """
        orders = []
        by_prime = {}
        for (p, s), val in profile.items():
            by_prime.setdefault(p, {})[s] = val
        for p in sorted(by_prime):
            sigma = by_prime[p]
            smax = max(sigma)
            atleast = []
            for k in range(1, smax + 2):
                c = sigma.get(k - 1, 0) - sigma.get(k, 0)
                if c < 0:
                    raise InconsistentProfileError(
                        f"profile is not non-increasing at p={p}, s={k}"
                    )
                atleast.append(c)
            atleast.append(0)
            for k in range(1, smax + 2):
                mult = atleast[k - 1] - atleast[k]
                if mult < 0:
                    raise InconsistentProfileError(
                        f"profile forces a negative multiplicity at p={p}, exponent {k}"
                    )
                orders.extend([p**k] * mult)
        return cls(orders)

    def is_isomorphic(self, other):
        return self._factors == other._factors

    def spec_string(self):
        """Round-trips through ``from_spec``."""
        if not self._factors:
            return "1"
        return "x".join(f"C{f}" for f in self._factors)

    @classmethod
    def from_spec(cls, text):
        """Parse the abelian group grammar: "1", "C<n>" with n >= 2, or
        products of the latter joined by "x" (e.g. "C2xC4")."""
        if text == "1":
            return cls()
        orders = []
        pos = 0
        for token in text.split("x"):
            if not token.startswith("C"):
                raise ParseError(f"expected C<n>, got {token!r}", pos)
            digits = token[1:]
            if not digits.isdigit():
                raise ParseError(f"expected C<n>, got {token!r}", pos)
            n = int(digits)
            if n < 2:
                raise ParseError(f"cyclic order must be >= 2, got {token!r}", pos)
            orders.append(n)
            pos += len(token) + 1
        return cls(orders)

    def __eq__(self, other):
        if not isinstance(other, FinAbGroup):
            return NotImplemented
        return self._factors == other._factors

    def __hash__(self):
        return hash(self._factors)

    def __repr__(self):
        return f"FinAbGroup({list(self._factors)!r})"

    def __str__(self):
        return self.spec_string()


class ValuationProfile:
    """A finitely supported map (prime p, shift s) -> valuation, zeros dropped."""

    __slots__ = ("_entries",)

    def __init__(self, entries):
        clean = {}
        for key, val in dict(entries).items():
            p, s = key
            if not _is_prime(p):
                raise NotPrimeError(f"profile key has non-prime {p}")
            if not isinstance(s, int) or s < 0:
                raise ValueError("profile shift must be a nonnegative integer")
            if not isinstance(val, int) or val < 0:
                raise InconsistentProfileError("profile values must be nonnegative")
            if val:
                clean[(p, s)] = val
        self._entries = dict(sorted(clean.items()))

    def value(self, p, s):
        return self._entries.get((p, s), 0)

    def items(self):
        return self._entries.items()

    def keys(self):
        return self._entries.keys()

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        if not isinstance(other, ValuationProfile):
            return NotImplemented
        return self._entries == other._entries

    def __repr__(self):
        return f"ValuationProfile({self._entries!r})"

    def to_json_mapping(self):
        """Keys flatten to "p,s" strings for the CLI wire format."""
        return {f"{p},{s}": v for (p, s), v in self._entries.items()}

    @classmethod
    def from_json_mapping(cls, mapping):
        entries = {}
        for key, val in mapping.items():
            parts = str(key).split(",")
            if len(parts) != 2:
                raise ValueError(f"profile key {key!r} is not of the form 'p,s'")
            try:
                p, s = int(parts[0]), int(parts[1])
            except ValueError:
                raise ValueError(f"profile key {key!r} is not a pair of integers")
            entries[(p, s)] = int(val)
        return cls(entries)


def random_group(seed, max_rank=4, max_prime_power=64):
    """Deterministic pseudo-random finite abelian group for a given seed."""
    rng = random.Random(seed)
    count = rng.randint(0, max_rank)
    return FinAbGroup([rng.randint(2, max_prime_power) for _ in range(count)])


def random_subgroup_quotient(seed, g):
    """A deterministic pair (h, q) with h a subgroup of g and q = g/h.

    Present g as Z^k modulo the diagonal relations lattice; an intermediate
    lattice sampled between the two realizes a subgroup and its quotient at
    once, and the orders multiply up to |g| by index multiplicativity.
    """
    rng = random.Random(seed)
    factors = g.invariant_factors
    k = len(factors)
    if k == 0:
        return FinAbGroup(), FinAbGroup()
    relations = [[factors[i] if j == i else 0 for j in range(k)] for i in range(k)]
    extra = rng.randint(0, k)
    gens = list(relations)
    for _ in range(extra):
        gens.append([rng.randrange(f) for f in factors])
    mid = lattice_from_generators(k, gens)
    rel = lattice_from_generators(k, relations)
    sub = quotient_invariants(mid, rel)
    quo = quotient_invariants(Lattice.standard(k), mid)
    return FinAbGroup(sub.factors), FinAbGroup(quo.factors)
