"""Exact integer linear algebra on arbitrary-precision integers.

Everything here is pure and deterministic.  Two normal-form conventions are
fixed once so that canonical equality does real work:

* Hermite normal form (HNF) is row-style: pivot entries positive, entries
  above a pivot reduced into ``[0, pivot)``, pivot columns strictly
  increasing, no zero rows.  Two generating sets span the same lattice iff
  their canonical bases are literally equal.
* Smith normal form (SNF) has a nonnegative diagonal with ``d1 | d2 | ...``
  and zeros trailing.  Unit entries stay in the matrix; they are stripped
  only when invariant factors are extracted.

Sizes are desk scale (dimensions up to about a hundred), so the
implementations favour exactness and clarity over asymptotics.
"""

import bisect
from dataclasses import dataclass
from math import gcd

__all__ = [
    "IntMatrix",
    "InvariantFactors",
    "Lattice",
    "NotASublatticeError",
    "hnf",
    "kernel_basis",
    "lattice_from_generators",
    "quotient_invariants",
    "snf",
]


class NotASublatticeError(ValueError):
    """Raised when a claimed sublattice is not contained in its enclosure."""


def _xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and g == x*a + y*b."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        return -old_r, -old_x, -old_y
    return old_r, old_x, old_y


class IntMatrix:
    """A dense matrix of Python ints, stored as a list of row lists.

    Instances are treated as immutable by convention; operations return new
    matrices.  ``ncols`` must be passed explicitly for a matrix with no rows
    (the shape still matters there: it is the ambient dimension of an empty
    basis).
    """

    __slots__ = ("nrows", "ncols", "data")

    def __init__(self, data, ncols=None):
        rows = [list(r) for r in data]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError("ncols does not match row length")
            ncols = width
        elif ncols is None:
            raise ValueError("ncols is required for a matrix with no rows")
        self.data = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    def transpose(self):
        return IntMatrix(
            [[self.data[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def __matmul__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        bt = other.transpose().data
        out = [
            [sum(x * y for x, y in zip(row, col)) for col in bt]
            for row in self.data
        ]
        return IntMatrix(out, ncols=other.ncols)

    def det(self):
        """Exact determinant via fraction-free (Bareiss) elimination."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        a = [list(r) for r in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            pk = a[k][k]
            rk = a[k]
            for i in range(k + 1, n):
                ri = a[i]
                aik = ri[k]
                for j in range(k + 1, n):
                    ri[j] = (ri[j] * pk - aik * rk[j]) // prev
                ri[k] = 0
            prev = pk
        return sign * a[n - 1][n - 1]

    def tolist(self):
        return [list(r) for r in self.data]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        if self.nrows == 0:
            return f"IntMatrix([], ncols={self.ncols})"
        return f"IntMatrix({self.data!r})"


@dataclass(frozen=True)
class InvariantFactors:
    """Invariant factors of a lattice quotient: cyclic orders plus free rank.

    ``factors`` is the ascending divisibility chain with unit factors
    dropped, so the trivial quotient is ``()`` with ``free_rank`` 0.
    """

    factors: tuple
    free_rank: int

    def __post_init__(self):
        fs = tuple(int(f) for f in self.factors)
        object.__setattr__(self, "factors", fs)
        for f in fs:
            if f < 2:
                raise ValueError("invariant factors must be >= 2")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")
        if self.free_rank < 0:
            raise ValueError("free_rank must be nonnegative")


class _Echelon:
    """Row-echelon accumulator over the integers.

    Rows are kept with strictly increasing pivot columns.  ``insert`` applies
    invertible integer row operations only, so the accumulated rows always
    span exactly the lattice generated by everything inserted so far.  An
    optional companion row is dragged through every operation; that is how
    ``hnf`` obtains its unimodular transform and ``kernel_basis`` its kernel
    vectors.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.pivots = []
        self.rows = []
        self.trows = []

    def insert(self, row, trow=None):
        """Reduce ``row`` against the basis, growing it when independent.

        Returns ``(absorbed, companion)``: ``absorbed`` is True when the row
        reduced to zero, in which case ``companion`` is its accumulated
        companion row (None when untracked).
        """
        v = list(row)
        tv = list(trow) if trow is not None else None
        n = self.ncols
        pivots = self.pivots
        rows = self.rows
        c = 0
        while True:
            while c < n and not v[c]:
                c += 1
            if c == n:
                return True, tv
            idx = bisect.bisect_left(pivots, c)
            if idx < len(pivots) and pivots[idx] == c:
                h = rows[idx]
                a = h[c]
                b = v[c]
                if b % a == 0:
                    q = b // a
                    v = [x - q * y for x, y in zip(v, h)]
                    if tv is not None:
                        th = self.trows[idx]
                        tv = [x - q * y for x, y in zip(tv, th)]
                else:
                    g, x, y = _xgcd(a, b)
                    af = a // g
                    bf = b // g
                    rows[idx] = [x * p + y * q2 for p, q2 in zip(h, v)]
                    v = [af * q2 - bf * p for p, q2 in zip(h, v)]
                    if tv is not None:
                        th = self.trows[idx]
                        self.trows[idx] = [x * p + y * q2 for p, q2 in zip(th, tv)]
                        tv = [af * q2 - bf * p for p, q2 in zip(th, tv)]
                c += 1
            else:
                pivots.insert(idx, c)
                rows.insert(idx, v)
                if tv is not None:
                    self.trows.insert(idx, tv)
                return False, None

    def canonicalize(self):
        """Normalize in place: positive pivots, entries above reduced."""
        track = bool(self.trows)
        for i, c in enumerate(self.pivots):
            if self.rows[i][c] < 0:
                self.rows[i] = [-x for x in self.rows[i]]
                if track:
                    self.trows[i] = [-x for x in self.trows[i]]
        # Ascending pivot order keeps earlier reductions intact: reducing
        # against pivot j only touches columns >= pivot(j).
        for j in range(len(self.rows)):
            c = self.pivots[j]
            hj = self.rows[j]
            p = hj[c]
            for i in range(j):
                q = self.rows[i][c] // p
                if q:
                    self.rows[i] = [x - q * y for x, y in zip(self.rows[i], hj)]
                    if track:
                        tj = self.trows[j]
                        self.trows[i] = [
                            x - q * y for x, y in zip(self.trows[i], tj)
                        ]


class Lattice:
    """A sublattice of Z^ambient_dim held by its canonical HNF row basis.

    The zero lattice is a basis with no rows and an explicit ambient
    dimension.  Because the basis is canonical, ``==`` decides equality of
    lattices, not just of generating sets.
    """

    __slots__ = ("ambient_dim", "basis", "_pivots")

    def __init__(self, ambient_dim, basis):
        if basis.ncols != ambient_dim:
            raise ValueError("basis width does not match ambient dimension")
        pivots = []
        for row in basis.data:
            c = next((j for j, x in enumerate(row) if x), None)
            if c is None:
                raise ValueError("zero row in lattice basis")
            if pivots and c <= pivots[-1]:
                raise ValueError("pivot columns must strictly increase")
            if row[c] < 0:
                raise ValueError("pivot entries must be positive")
            pivots.append(c)
        for j, c in enumerate(pivots):
            p = basis.data[j][c]
            for i in range(j):
                if not 0 <= basis.data[i][c] < p:
                    raise ValueError("entries above a pivot must lie in [0, pivot)")
        self.ambient_dim = ambient_dim
        self.basis = basis
        self._pivots = pivots

    @classmethod
    def standard(cls, n):
        """The full lattice Z^n."""
        return cls(n, IntMatrix.identity(n))

    @classmethod
    def zero(cls, n):
        return cls(n, IntMatrix([], ncols=n))

    @property
    def rank(self):
        return self.basis.nrows

    def coordinates(self, vec):
        """Integer coordinates of ``vec`` in this basis, or None if outside.

        Back-substitution against the HNF basis: walk the pivot columns in
        order; each coefficient is forced by exact divisibility at its pivot.
        """
        if len(vec) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        v = list(vec)
        coeffs = []
        for row, c in zip(self.basis.data, self._pivots):
            q, rem = divmod(v[c], row[c])
            if rem:
                return None
            if q:
                v = [x - q * y for x, y in zip(v, row)]
            coeffs.append(q)
        if any(v):
            return None
        return coeffs

    def contains(self, vec):
        return self.coordinates(vec) is not None

    def contains_lattice(self, other):
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimensions differ")
        return all(self.contains(row) for row in other.basis.data)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Lattice({self.ambient_dim}, {self.basis.data!r})"


def lattice_from_generators(ambient_dim, generators):
    """Canonical lattice spanned by the given integer vectors.

    An empty generator list (or all-zero generators) yields the zero lattice.
    """
    ech = _Echelon(ambient_dim)
    for g in generators:
        if len(g) != ambient_dim:
            raise ValueError("generator length does not match ambient dimension")
        ech.insert(g)
    ech.canonicalize()
    return Lattice(ambient_dim, IntMatrix(ech.rows, ncols=ambient_dim))


def hnf(m):
    """Hermite normal form of the rows of ``m``.

    Returns ``(h, u)`` where ``h`` is the canonical lattice spanned by the
    rows and ``u`` is unimodular with ``u @ m`` equal to the basis rows of
    ``h`` followed by zero rows.
    """
    ech = _Echelon(m.ncols)
    zero_trows = []
    for i in range(m.nrows):
        trow = [0] * m.nrows
        trow[i] = 1
        absorbed, tv = ech.insert(m.data[i], trow)
        if absorbed:
            zero_trows.append(tv)
    ech.canonicalize()
    h = Lattice(m.ncols, IntMatrix(ech.rows, ncols=m.ncols))
    u = IntMatrix(list(ech.trows) + zero_trows, ncols=m.nrows)
    return h, u


def kernel_basis(m):
    """Canonical basis of the integer kernel {x : m @ x^T == 0}.

    The columns of ``m`` are fed through a tracked echelon; a companion row
    that survives a column's collapse to zero is precisely an integer
    dependency among the columns, i.e. a kernel vector.  The companions of a
    unimodular tracking matrix span the whole kernel, not a finite-index
    piece of it.
    """
    ech = _Echelon(m.nrows)
    kern = _Echelon(m.ncols)
    for j in range(m.ncols):
        col = [m.data[i][j] for i in range(m.nrows)]
        trow = [0] * m.ncols
        trow[j] = 1
        absorbed, tv = ech.insert(col, trow)
        if absorbed:
            kern.insert(tv)
    kern.canonicalize()
    return Lattice(m.ncols, IntMatrix(kern.rows, ncols=m.ncols))


def _snf_core(data, nrows, ncols, track):
    a = [list(r) for r in data]
    if track:
        u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
        v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    else:
        u = v = None
    limit = min(nrows, ncols)
    t = 0
    while t < limit:
        # smallest nonzero entry of the trailing block becomes the pivot
        bi = bj = -1
        best = 0
        for i in range(t, nrows):
            ai = a[i]
            for j in range(t, ncols):
                x = ai[j]
                if x:
                    if x < 0:
                        x = -x
                    if bi < 0 or x < best:
                        best = x
                        bi, bj = i, j
                        if best == 1:
                            break
            if best == 1:
                break
        if bi < 0:
            break
        if bi != t:
            a[t], a[bi] = a[bi], a[t]
            if track:
                u[t], u[bi] = u[bi], u[t]
        if bj != t:
            for row in a:
                row[t], row[bj] = row[bj], row[t]
            if track:
                for row in v:
                    row[t], row[bj] = row[bj], row[t]
        while True:
            for i in range(t + 1, nrows):
                b = a[i][t]
                if not b:
                    continue
                p = a[t][t]
                if b % p == 0:
                    q = b // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if track:
                        u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                else:
                    g, x, y = _xgcd(p, b)
                    pf = p // g
                    bf = b // g
                    rt, ri = a[t], a[i]
                    a[t] = [x * p2 + y * q2 for p2, q2 in zip(rt, ri)]
                    a[i] = [pf * q2 - bf * p2 for p2, q2 in zip(rt, ri)]
                    if track:
                        st, si = u[t], u[i]
                        u[t] = [x * p2 + y * q2 for p2, q2 in zip(st, si)]
                        u[i] = [pf * q2 - bf * p2 for p2, q2 in zip(st, si)]
            dirty = False
            for j in range(t + 1, ncols):
                b = a[t][j]
                if not b:
                    continue
                p = a[t][t]
                if b % p == 0:
                    q = b // p
                    for i in range(t, nrows):
                        if a[i][t]:
                            a[i][j] -= q * a[i][t]
                    if track:
                        for row in v:
                            row[j] -= q * row[t]
                else:
                    g, x, y = _xgcd(p, b)
                    pf = p // g
                    bf = b // g
                    for i in range(nrows):
                        ci, cj = a[i][t], a[i][j]
                        a[i][t] = x * ci + y * cj
                        a[i][j] = pf * cj - bf * ci
                    if track:
                        for row in v:
                            ci, cj = row[t], row[j]
                            row[t] = x * ci + y * cj
                            row[j] = pf * cj - bf * ci
                    # the column mix can reintroduce entries below the pivot
                    dirty = True
            if not dirty:
                break
        t += 1
    nz = t
    for i in range(nz):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            if track:
                u[i] = [-x for x in u[i]]
    # enforce the divisibility chain on the (all nonzero) leading diagonal
    for i in range(nz):
        for j in range(i + 1, nz):
            di = a[i][i]
            dj = a[j][j]
            if dj % di == 0:
                continue
            if not track:
                g = gcd(di, dj)
                a[i][i] = g
                a[j][j] = di // g * dj
                continue
            a[i] = [x + y for x, y in zip(a[i], a[j])]
            u[i] = [x + y for x, y in zip(u[i], u[j])]
            g, x, y = _xgcd(di, dj)
            dif = di // g
            djf = dj // g
            for rr in range(nrows):
                ci, cj = a[rr][i], a[rr][j]
                a[rr][i] = x * ci + y * cj
                a[rr][j] = dif * cj - djf * ci
            for row in v:
                ci, cj = row[i], row[j]
                row[i] = x * ci + y * cj
                row[j] = dif * cj - djf * ci
            q = y * dj // g
            if q:
                a[j] = [xx - q * yy for xx, yy in zip(a[j], a[i])]
                u[j] = [xx - q * yy for xx, yy in zip(u[j], u[i])]
    return a, u, v


def snf(m):
    """Smith normal form: returns (s, u, v) with s == u @ m @ v diagonal,
    nonnegative, divisibility-chained, zeros last; u and v unimodular."""
    a, u, v = _snf_core(m.data, m.nrows, m.ncols, track=True)
    return (
        IntMatrix(a, ncols=m.ncols),
        IntMatrix(u, ncols=m.nrows),
        IntMatrix(v, ncols=m.ncols),
    )


def _snf_diagonal(rows, nrows, ncols):
    a, _, _ = _snf_core(rows, nrows, ncols, track=False)
    return [a[i][i] for i in range(min(nrows, ncols))]


def quotient_invariants(sup, sub):
    """Invariant factors of the abelian group sup/sub.

    Each basis row of ``sub`` is written in the coordinates of ``sup`` (a
    NotASublatticeError if any row falls outside); the SNF diagonal of that
    coefficient matrix gives the torsion, and the rank gap gives the free
    part.
    """
    if sup.ambient_dim != sub.ambient_dim:
        raise ValueError("ambient dimensions differ")
    coords = []
    for k, row in enumerate(sub.basis.data):
        c = sup.coordinates(row)
        if c is None:
            raise NotASublatticeError(
                f"basis row {k} of the claimed sublattice is outside the enclosure"
            )
        coords.append(c)
    diag = _snf_diagonal(coords, sub.rank, sup.rank)
    if any(d == 0 for d in diag):
        raise ArithmeticError("sublattice basis is not independent")
    return InvariantFactors(tuple(d for d in diag if d > 1), sup.rank - sub.rank)
