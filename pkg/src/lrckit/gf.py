"""Exact arithmetic in prime fields F_q and dense linear algebra over them.

Everything here is exact integer arithmetic modulo a prime; there is no
floating point anywhere.  Field elements carry a reference to their field
and refuse to mix with elements of a different field.  Matrices are
immutable and store canonical residues.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import (
    DimensionMismatch,
    DivisionByZero,
    FieldMismatch,
    NoSolution,
    Singular,
    ZeroVector,
)

MAX_MODULUS = 2**31  # keeps products inside 64-bit intermediates


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The prime field F_q.  Calling the field coerces an integer into it."""

    __slots__ = ("q",)

    def __init__(self, q: int):
        if not isinstance(q, int):
            raise TypeError("modulus must be an integer")
        if q > MAX_MODULUS:
            raise ValueError(f"modulus {q} exceeds the supported bound 2^31")
        if not _is_prime(q):
            raise ValueError(f"modulus {q} is not prime")
        self.q = q

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"element of F_{value.field.q} given to F_{self.q}")
            return value
        return FieldElement(int(value) % self.q, self)

    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    def one(self) -> FieldElement:
        return FieldElement(1, self)

    def elements(self) -> Iterator[FieldElement]:
        for v in range(self.q):
            yield FieldElement(v, self)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("PrimeField", self.q))

    def __repr__(self) -> str:
        return f"PrimeField({self.q})"


class FieldElement:
    """Canonical residue in a prime field, with operator arithmetic.

    Mixing elements of different fields raises FieldMismatch; plain ints
    are accepted and reduced into the element's own field.
    """

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        self.value = value % field.q
        self.field = field

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field.q != self.field.q:
                raise FieldMismatch(
                    f"cannot combine F_{self.field.q} with F_{other.field.q}"
                )
            return other
        if isinstance(other, int):
            return FieldElement(other, self.field)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.value + o.value, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.value - o.value, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(o.value - self.value, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.value * o.value, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FieldElement(pow(self.value, exponent, self.field.q), self.field)

    def __neg__(self):
        return FieldElement(-self.value, self.field)

    def inverse(self) -> "FieldElement":
        """Multiplicative inverse via Fermat exponentiation."""
        if self.value == 0:
            raise DivisionByZero(f"0 is not invertible in F_{self.field.q}")
        return FieldElement(pow(self.value, self.field.q - 2, self.field.q), self.field)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field.q == other.field.q and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.q
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self.value))

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"F{self.field.q}({self.value})"


def _as_int_vector(field: PrimeField, vec) -> tuple[int, ...]:
    return tuple(int(x) % field.q for x in vec)


def _rref(q: int, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F_q with first-nonzero pivoting.

    Returns the reduced rows and the pivot column indices.  Deterministic;
    exact fields need no pivot-magnitude games.
    """
    rows = [[x % q for x in row] for row in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], q - 2, q)
        rows[r] = [(x * inv) % q for x in rows[r]]
        lead = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % q for a, b in zip(rows[i], lead)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


class Matrix:
    """Immutable matrix over a prime field; entries stored as residues."""

    __slots__ = ("field", "rows")

    def __init__(self, field: PrimeField, rows: Iterable[Sequence]):
        self.field = field
        mat = tuple(_as_int_vector(field, row) for row in rows)
        if mat and any(len(r) != len(mat[0]) for r in mat):
            raise DimensionMismatch("ragged rows")
        self.rows = mat

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.rows[i][j], self.field)

    def entries(self) -> tuple[FieldElement, ...]:
        """Row-major field elements."""
        return tuple(
            FieldElement(v, self.field) for row in self.rows for v in row
        )

    def row(self, i: int) -> tuple[int, ...]:
        return self.rows[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, zip(*self.rows)) if self.rows else self

    def rank(self) -> int:
        _, pivots = _rref(self.field.q, [list(r) for r in self.rows])
        return len(pivots)

    def __matmul__(self, other):
        q = self.field.q
        if isinstance(other, Matrix):
            if other.field != self.field:
                raise FieldMismatch("matrix product across different fields")
            if self.ncols != other.nrows:
                raise DimensionMismatch("inner dimensions differ")
            cols = other.transpose().rows
            return Matrix(
                self.field,
                [[sum(a * b for a, b in zip(row, col)) % q for col in cols]
                 for row in self.rows],
            )
        vec = _as_int_vector(self.field, other)
        if len(vec) != self.ncols:
            raise DimensionMismatch("vector length differs from column count")
        return tuple(sum(a * b for a, b in zip(row, vec)) % q for row in self.rows)

    def solve(self, y) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
        """Solve self @ x = y exactly.

        Returns one particular solution (free variables set to zero) and a
        basis of the nullspace; raises NoSolution when inconsistent.
        """
        q = self.field.q
        y = _as_int_vector(self.field, y)
        if len(y) != self.nrows:
            raise DimensionMismatch("right-hand side length differs from row count")
        aug = [list(row) + [val] for row, val in zip(self.rows, y)]
        red, pivots = _rref(q, aug)
        n = self.ncols
        if n in pivots:
            raise NoSolution("inconsistent system")
        x = [0] * n
        for r, c in enumerate(pivots):
            x[c] = red[r][n]
        free = [c for c in range(n) if c not in pivots]
        basis = []
        for f in free:
            v = [0] * n
            v[f] = 1
            for r, c in enumerate(pivots):
                v[c] = (-red[r][f]) % q
            basis.append(tuple(v))
        return tuple(x), tuple(basis)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise Singular("only square matrices can be inverted")
        n = self.nrows
        aug = [list(row) + [1 if i == j else 0 for j in range(n)]
               for i, row in enumerate(self.rows)]
        red, pivots = _rref(self.field.q, aug)
        if len(pivots) < n or any(p >= n for p in pivots):
            raise Singular("matrix is rank deficient")
        return Matrix(self.field, [row[n:] for row in red])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and other.rows == self.rows
        )

    def __hash__(self) -> int:
        return hash((self.field.q, self.rows))

    def __repr__(self) -> str:
        return f"Matrix(F_{self.field.q}, {list(map(list, self.rows))})"


def complete_to_basis(field: PrimeField, v, position: int | None = None) -> Matrix:
    """Build an invertible matrix whose given column equals v.

    The remaining columns are filled greedily with standard basis vectors in
    index order, skipping any that would break independence, so the result
    is deterministic.  ``position`` is the column index for v (default:
    last column).
    """
    vec = _as_int_vector(field, v)
    m = len(vec)
    if all(x == 0 for x in vec):
        raise ZeroVector("cannot extend the zero vector to a basis")
    if position is None:
        position = m - 1
    if not 0 <= position < m:
        raise DimensionMismatch(f"column index {position} outside 0..{m - 1}")
    chosen: list[tuple[int, ...]] = [vec]
    for i in range(m):
        if len(chosen) == m:
            break
        e = tuple(1 if j == i else 0 for j in range(m))
        trial = chosen + [e]
        _, pivots = _rref(field.q, [list(r) for r in trial])
        if len(pivots) == len(trial):
            chosen.append(e)
    # Standard basis always completes a nonzero vector, so len(chosen) == m.
    columns = chosen[1:]
    columns.insert(position, vec)
    return Matrix(field, zip(*columns))
