"""Dense exact matrices over the rationals.

Vectors are plain tuples of :class:`fractions.Fraction`.  Matrices are
immutable; every operation returns a new object.  Elimination is delegated
to an integer kernel (compiled when available) after clearing denominators
row by row, which leaves row spaces and kernels unchanged.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from ..errors import DimensionMismatch, NoSolution, Singular
from . import _backend

Vector = tuple

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction, int or 'p/q' string")
    return Fraction(x)


def vector(xs: Iterable) -> Vector:
    return tuple(as_fraction(x) for x in xs)


def zero_vector(n: int) -> Vector:
    return (_ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [_ZERO] * n
    v[i] = _ONE
    return tuple(v)


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def vcombo(coeffs: Sequence, vectors: Sequence[Vector], n: int) -> Vector:
    """Linear combination ``sum(c_i * v_i)`` of length-``n`` vectors."""
    out = [_ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


def is_zero_vector(v: Vector) -> bool:
    return not any(v)


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    den = lcm(*(x.denominator for x in row)) if row else 1
    if den == 1:
        return [x.numerator for x in row]
    return [x.numerator * (den // x.denominator) for x in row]


def rref_rows(rows: Sequence[Sequence[Fraction]], ncols: int):
    """Reduced row echelon form of rational rows as ``(rows, pivots)``.

    Returned rows are normalized so each pivot entry is exactly 1.
    """
    reduced, pivots = _backend.rref_int([_integer_row(r) for r in rows], ncols)
    out = []
    for row, c in zip(reduced, pivots):
        p = row[c]
        out.append(tuple(Fraction(x, p) if x else _ZERO for x in row))
    return out, pivots


class Matrix:
    """Immutable dense ``nrows x ncols`` matrix of Fractions.

    Column ``j`` of a linear endomorphism's matrix is the image of basis
    vector ``j``, so ``m @ v`` applies the map to coordinates ``v``.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(vector(r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionMismatch("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def _raw(cls, rows: tuple, ncols: int) -> "Matrix":
        m = cls.__new__(cls)
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "Matrix":
        if ncols is None:
            ncols = nrows
        return cls._raw(((_ZERO,) * ncols,) * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(unit_vector(n, i) for i in range(n)), n)

    @classmethod
    def from_columns(cls, cols: Sequence[Vector], nrows: int | None = None) -> "Matrix":
        cols = [vector(c) for c in cols]
        if nrows is None:
            if not cols:
                raise DimensionMismatch("nrows is required for a matrix with no columns")
            nrows = len(cols[0])
        if any(len(c) != nrows for c in cols):
            raise DimensionMismatch("ragged columns")
        return cls._raw(tuple(tuple(c[i] for c in cols) for i in range(nrows)), len(cols))

    @classmethod
    def from_flat(cls, entries: Sequence, nrows: int, ncols: int) -> "Matrix":
        if len(entries) != nrows * ncols:
            raise DimensionMismatch(f"expected {nrows * ncols} entries, got {len(entries)}")
        e = vector(entries)
        return cls._raw(tuple(e[i * ncols:(i + 1) * ncols] for i in range(nrows)), ncols)

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        n = sum(b.nrows for b in blocks)
        c = sum(b.ncols for b in blocks)
        rows = []
        off = 0
        for b in blocks:
            for r in b.rows:
                rows.append((_ZERO,) * off + r + (_ZERO,) * (c - off - b.ncols))
            off += b.ncols
        return cls._raw(tuple(rows), c)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def entries(self) -> tuple:
        """Row-major flat tuple of entries."""
        return tuple(x for r in self.rows for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> Vector:
        return self.rows[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        if not self.nrows:
            return Matrix.zeros(self.ncols, 0)
        return Matrix._raw(tuple(zip(*self.rows)), self.nrows)

    def submatrix(self, rows: range, cols: range) -> "Matrix":
        return Matrix._raw(tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))

    def _check_same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(tuple(vadd(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(tuple(vsub(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-x for x in r) for r in self.rows), self.ncols)

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        c = as_fraction(c)
        return Matrix._raw(tuple(vscale(c, r) for r in self.rows), self.ncols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            cols = [other.col(j) for j in range(other.ncols)]
            return Matrix._raw(tuple(
                tuple(sum((a * b for a, b in zip(r, c) if a and b), _ZERO) for c in cols)
                for r in self.rows), other.ncols)
        v = other
        if len(v) != self.ncols:
            raise DimensionMismatch(f"cannot apply {self.shape} matrix to length-{len(v)} vector")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), _ZERO) for r in self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"Matrix([{body}], ncols={self.ncols})"

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise DimensionMismatch("hstack needs equal row counts")
        return Matrix._raw(tuple(a + b for a, b in zip(self.rows, other.rows)),
                           self.ncols + other.ncols)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise DimensionMismatch("vstack needs equal column counts")
        return Matrix._raw(self.rows + other.rows, self.ncols)

    def rref(self):
        return rref_rows(self.rows, self.ncols)

    def rank(self) -> int:
        return rank(self)

    def kernel(self) -> list[Vector]:
        return kernel(self)

    def solve(self, v: Vector) -> Vector:
        return solve(self, v)

    def inverse(self) -> "Matrix":
        return inverse(self)

    def is_invertible(self) -> bool:
        return self.is_square and rank(self) == self.nrows


def rank(m: Matrix) -> int:
    return len(_backend.rref_int([_integer_row(r) for r in m.rows], m.ncols)[1])


def kernel(m: Matrix) -> list[Vector]:
    """Basis of the right nullspace in reduced column-echelon form.

    One vector per free column (ascending); each has a 1 at its free column
    and zeros at every other free column.
    """
    rows, pivots = rref_rows(m.rows, m.ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        v = [_ZERO] * m.ncols
        v[f] = _ONE
        for row, c in zip(rows, pivots):
            if row[f]:
                v[c] = -row[f]
        basis.append(tuple(v))
    return basis


def kernel_of_rows(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Kernel of a system given as raw rational rows (no Matrix wrapper)."""
    return kernel(Matrix._raw(tuple(tuple(r) for r in rows), ncols))


def solve(m: Matrix, v: Vector) -> Vector:
    """One exact solution of ``m @ x == v``, free variables set to zero.

    Raises :class:`NoSolution` when ``v`` is outside the column space.
    """
    v = vector(v)
    if len(v) != m.nrows:
        raise DimensionMismatch(f"right-hand side has length {len(v)}, expected {m.nrows}")
    rows, pivots = rref_rows([r + (b,) for r, b in zip(m.rows, v)], m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        raise NoSolution("right-hand side is not in the column space")
    x = [_ZERO] * m.ncols
    for row, c in zip(rows, pivots):
        x[c] = row[-1]
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square:
        raise DimensionMismatch(f"cannot invert a {m.shape} matrix")
    n = m.nrows
    if n == 0:
        return m
    eye = Matrix.identity(n)
    rows, pivots = rref_rows([a + b for a, b in zip(m.rows, eye.rows)], 2 * n)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise Singular(f"matrix has rank {sum(1 for c in pivots if c < n)} < {n}")
    return Matrix._raw(tuple(r[n:] for r in rows), n)


class RowSpace:
    """Span of a list of vectors, with an exact membership test."""

    def __init__(self, vectors: Sequence[Vector], n: int):
        self.n = n
        self._rows, self._pivots = rref_rows([vector(v) for v in vectors], n)

    @property
    def dim(self) -> int:
        return len(self._pivots)

    def reduce(self, v: Vector) -> Vector:
        w = list(vector(v))
        for row, c in zip(self._rows, self._pivots):
            a = w[c]
            if a:
                for j, x in enumerate(row):
                    if x:
                        w[j] -= a * x
        return tuple(w)

    def __contains__(self, v: Vector) -> bool:
        if len(v) != self.n:
            raise DimensionMismatch(f"vector of length {len(v)} in a space of length {self.n}")
        return not any(self.reduce(v))

    def basis(self) -> list[Vector]:
        return list(self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RowSpace):
            return NotImplemented
        return self.n == other.n and self._rows == other._rows

    def __hash__(self):
        return hash((self.n, tuple(self._rows)))
