"""Exact arithmetic in UT(n, Z), the group of upper unitriangular integer matrices.

Elements are immutable n x n matrices with 1 on the diagonal, 0 below it and
arbitrary-precision integers above it.  The module also fixes the coordinate
system used everywhere else: every element factors uniquely as an ordered
product of elementary matrices e_ij(k), taken superdiagonal by superdiagonal
((i, i+1) for all i first, then (i, i+2), and so on, i ascending within each
band).  The exponent vector of that factorization is the element's coordinate
vector; the all-zero vector is the identity.

The band-by-band order matters: the set of elements whose first k coordinates
vanish is a normal subgroup, and the k-th coordinate is additive on it.  The
subgroup sieve in `presentation` relies on exactly that.
"""

from __future__ import annotations

from dataclasses import dataclass


class DimensionMismatch(ValueError):
    """Operands live in different UT(n, Z) groups."""


class NotUnitriangular(ValueError):
    """Raised when entries do not describe a unitriangular matrix."""


class MatrixUT:
    """An element of UT(n, Z).  Immutable and hashable."""

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise NotUnitriangular(f"row {i} has length {len(row)}, expected {n}")
            if row[i] != 1:
                raise NotUnitriangular(f"diagonal entry ({i}, {i}) is {row[i]}, expected 1")
            for j in range(i):
                if row[j] != 0:
                    raise NotUnitriangular(f"entry ({i}, {j}) below the diagonal is {row[j]}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _from_rows(cls, n, rows):
        # Internal fast path: rows already a validated tuple-of-tuples.
        self = object.__new__(cls)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_hash", None)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("MatrixUT is immutable")

    def __eq__(self, other):
        if not isinstance(other, MatrixUT):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(self.rows)
            object.__setattr__(self, "_hash", h)
        return h

    def __mul__(self, other):
        if not isinstance(other, MatrixUT):
            return NotImplemented
        return mul(self, other)

    def __pow__(self, exponent):
        return power(self, exponent)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def is_identity(self):
        n = self.n
        rows = self.rows
        return all(rows[i][j] == 0 for i in range(n) for j in range(i + 1, n))

    def inverse(self):
        return inverse(self)

    def __repr__(self):
        body = ", ".join(repr(list(row)) for row in self.rows)
        return f"MatrixUT([{body}])"


@dataclass(frozen=True)
class MalcevVector:
    """Exponent vector of a MatrixUT over the elementary-matrix basis.

    coords has length n(n-1)/2 and follows the superdiagonal-major position
    order of `malcev_positions`.
    """

    n: int
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.n * (self.n - 1) // 2:
            raise ValueError(
                f"expected {self.n * (self.n - 1) // 2} coordinates, got {len(self.coords)}"
            )


def malcev_positions(n):
    """Matrix positions (i, j), 1-based, in superdiagonal-major order."""
    return [(i, i + d) for d in range(1, n) for i in range(1, n - d + 1)]


def identity(n):
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    rows = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return MatrixUT._from_rows(n, rows)


def elementary(n, i, j, k):
    """The matrix e_ij(k): identity with entry (i, j) = k, indices 1-based."""
    if not (1 <= i < j <= n):
        raise ValueError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    rows = tuple(
        tuple(k if (r, c) == (i - 1, j - 1) else (1 if r == c else 0) for c in range(n))
        for r in range(n)
    )
    return MatrixUT._from_rows(n, rows)


def mul(a, b):
    """Exact product in UT(n, Z)."""
    if a.n != b.n:
        raise DimensionMismatch(f"cannot multiply UT({a.n}) by UT({b.n})")
    n = a.n
    ar = a.rows
    br = b.rows
    out = []
    for i in range(n):
        ai = ar[i]
        row = [0] * i + [1]
        for j in range(i + 1, n):
            # Only k in (i, j] contributes: ai[i] = 1 and entries vanish below
            # the diagonal.
            s = br[i][j]
            for k in range(i + 1, j + 1):
                aik = ai[k]
                if aik:
                    s += aik * br[k][j]
            row.append(s)
        out.append(tuple(row))
    return MatrixUT._from_rows(n, tuple(out))


def inverse(a):
    """Exact inverse; integral because the matrix is unitriangular."""
    n = a.n
    ar = a.rows
    inv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    # Back substitution band by band: entry (i, j) only needs rows below i.
    for d in range(1, n):
        for i in range(n - d):
            j = i + d
            s = 0
            for k in range(i + 1, j + 1):
                aik = ar[i][k]
                if aik:
                    s += aik * inv[k][j]
            inv[i][j] = -s
    return MatrixUT._from_rows(n, tuple(tuple(row) for row in inv))


def power(a, exponent):
    """a**exponent by repeated squaring; negative exponents invert first."""
    exponent = int(exponent)
    if exponent < 0:
        a = inverse(a)
        exponent = -exponent
    result = identity(a.n)
    base = a
    while exponent:
        if exponent & 1:
            result = mul(result, base)
        base_needed = exponent >> 1
        if base_needed:
            base = mul(base, base)
        exponent = base_needed
    return result


def commutator(a, b):
    """[a, b] = a^-1 b^-1 a b."""
    if a.n != b.n:
        raise DimensionMismatch(f"cannot commute UT({a.n}) with UT({b.n})")
    return mul(mul(mul(inverse(a), inverse(b)), a), b)


def malcev_coordinates(a):
    """Peel off elementary factors in position order; returns the exponent vector.

    Peeling at (i, j) subtracts coeff * row_j from row_i, which clears entry
    (i, j) without disturbing any earlier position, so each coordinate is read
    straight off the residual.
    """
    n = a.n
    work = [list(row) for row in a.rows]
    coords = []
    for i, j in malcev_positions(n):
        r, c = i - 1, j - 1
        coeff = work[r][c]
        coords.append(coeff)
        if coeff:
            row_j = work[c]
            row_i = work[r]
            for col in range(c, n):
                row_i[col] -= coeff * row_j[col]
    return MalcevVector(n, tuple(coords))


def from_malcev(vec):
    """Ordered product of elementary matrices; inverse of malcev_coordinates."""
    n = vec.n
    work = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    # Right multiplication by e_ij(k) adds k * column_i to column_j.
    for (i, j), coeff in zip(malcev_positions(n), vec.coords):
        if coeff:
            r, c = i - 1, j - 1
            for row in range(r + 1):
                work[row][c] += coeff * work[row][r]
    return MatrixUT._from_rows(n, tuple(tuple(row) for row in work))
