"""Finite-dimensional unital associative algebras over the rationals.

An algebra is given by structure constants: ``table[i][j]`` is the
coordinate vector of ``e_i * e_j``.  Elements are coordinate tuples of
Fractions.  Matrices of linear maps act on column coordinate vectors, so
``left_op(a, x) @ y == mul(a, x, y)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import DimensionMismatch, InvalidAlgebra, NoSolution, NotInvertible
from .linalg import (
    Matrix,
    Vector,
    kernel_of_rows,
    solve,
    unit_vector,
    vector,
    zero_vector,
)

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Algebra:
    table: tuple
    unit: Vector
    basis: tuple = ()
    name: str = field(default="", compare=False)
    # first coordinate of the epsilon part, for algebras built by dual_extension
    eps_start: int | None = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.table)
        table = tuple(tuple(vector(v) for v in row) for row in self.table)
        if any(len(row) != n or any(len(v) != n for v in row) for row in table):
            raise InvalidAlgebra(f"structure table must be {n}x{n}x{n}")
        unit = vector(self.unit)
        if len(unit) != n:
            raise InvalidAlgebra(f"unit has length {len(unit)}, expected {n}")
        basis = tuple(self.basis) if self.basis else tuple(f"e{i}" for i in range(n))
        if len(basis) != n:
            raise InvalidAlgebra(f"{len(basis)} basis names for dimension {n}")
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self) -> int:
        return len(self.table)

    @cached_property
    def left_basis_ops(self) -> tuple:
        n = self.dim
        t = self.table
        return tuple(Matrix._raw(tuple(tuple(t[i][j][k] for j in range(n)) for k in range(n)), n)
                     for i in range(n))

    @cached_property
    def right_basis_ops(self) -> tuple:
        n = self.dim
        t = self.table
        return tuple(Matrix._raw(tuple(tuple(t[i][j][k] for i in range(n)) for k in range(n)), n)
                     for j in range(n))

    def element(self, coords: Sequence) -> Vector:
        v = vector(coords)
        if len(v) != self.dim:
            raise DimensionMismatch(f"element of length {len(v)} in an algebra of dimension {self.dim}")
        return v

    def basis_element(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def zero(self) -> Vector:
        return zero_vector(self.dim)

    def one(self) -> Vector:
        return self.unit

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Algebra{label} dim={self.dim}>"


def _check(a: Algebra, *elems: Vector):
    for x in elems:
        if len(x) != a.dim:
            raise DimensionMismatch(f"element of length {len(x)} in an algebra of dimension {a.dim}")


def mul(a: Algebra, x: Vector, y: Vector) -> Vector:
    _check(a, x, y)
    n = a.dim
    out = [_ZERO] * n
    t = a.table
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = t[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            c = xi * yj
            for k, v in enumerate(row[j]):
                if v:
                    out[k] += c * v
    return tuple(out)


def _combo_ops(ops: Sequence[Matrix], coeffs: Vector, n: int) -> Matrix:
    rows = [[_ZERO] * n for _ in range(n)]
    for c, op in zip(coeffs, ops):
        if not c:
            continue
        for k, r in enumerate(op.rows):
            out = rows[k]
            for j, v in enumerate(r):
                if v:
                    out[j] += c * v
    return Matrix._raw(tuple(tuple(r) for r in rows), n)


def left_op(a: Algebra, x: Vector) -> Matrix:
    """Matrix of ``L_x: y -> x*y``."""
    _check(a, x)
    return _combo_ops(a.left_basis_ops, x, a.dim)


def right_op(a: Algebra, y: Vector) -> Matrix:
    """Matrix of ``R_y: x -> x*y``."""
    _check(a, y)
    return _combo_ops(a.right_basis_ops, y, a.dim)


def ad(a: Algebra, z: Vector) -> Matrix:
    """The inner derivation ``x -> z*x - x*z``."""
    return left_op(a, z) - right_op(a, z)


def validate(a: Algebra) -> list[str]:
    """Violations of associativity and the unit law; empty when valid.

    Associativity is checked as ``L_{e_i} R_{e_k} == R_{e_k} L_{e_i}``.
    Only the first failing index triple is reported.
    """
    problems = []
    n = a.dim
    if n == 0:
        return ["algebra has dimension 0"]
    one = a.unit
    for i in range(n):
        e = a.basis_element(i)
        if mul(a, one, e) != e:
            problems.append(f"unit law fails on the left for basis element {i} ({a.basis[i]})")
            break
        if mul(a, e, one) != e:
            problems.append(f"unit law fails on the right for basis element {i} ({a.basis[i]})")
            break
    t = a.table
    for i in range(n):
        for j in range(n):
            eij = t[i][j]
            for k in range(n):
                lhs = mul(a, eij, a.basis_element(k))
                rhs = mul(a, a.basis_element(i), t[j][k])
                if lhs != rhs:
                    problems.append(f"associativity fails at ({i}, {j}, {k}): "
                                    f"({a.basis[i]}*{a.basis[j]})*{a.basis[k]} != "
                                    f"{a.basis[i]}*({a.basis[j]}*{a.basis[k]})")
                    return problems
    return problems


def check_valid(a: Algebra) -> Algebra:
    problems = validate(a)
    if problems:
        raise InvalidAlgebra(problems[0])
    return a


def invert_element(a: Algebra, x: Vector) -> Vector:
    """Two-sided inverse of ``x``; raises :class:`NotInvertible`."""
    _check(a, x)
    try:
        z = solve(left_op(a, x), a.unit)
    except NoSolution:
        raise NotInvertible("element has no right inverse") from None
    if mul(a, z, x) != a.unit or mul(a, x, z) != a.unit:
        raise NotInvertible("right inverse is not a two-sided inverse")
    return z


def is_invertible_element(a: Algebra, x: Vector) -> bool:
    try:
        invert_element(a, x)
    except NotInvertible:
        return False
    return True


def inner_automorphism(a: Algebra, w: Vector) -> Matrix:
    """Matrix of ``In(w): x -> w x w^{-1}``."""
    winv = invert_element(a, w)
    return left_op(a, w) @ right_op(a, winv)


def center(a: Algebra) -> list[Vector]:
    """Basis of the center, as the kernel of the stacked ``R_{e_i} - L_{e_i}``."""
    rows = []
    for L, R in zip(a.left_basis_ops, a.right_basis_ops):
        rows.extend((R - L).rows)
    return kernel_of_rows(rows, a.dim)


def is_central(a: Algebra, z: Vector) -> bool:
    return left_op(a, z) == right_op(a, z)


def is_derivation(a: Algebra, d: Matrix) -> bool:
    n = a.dim
    if d.shape != (n, n):
        return False
    images = d.columns()
    t = a.table
    for i in range(n):
        ei = a.basis_element(i)
        for j in range(n):
            lhs = d @ t[i][j]
            rhs = tuple(u + v for u, v in zip(mul(a, images[i], a.basis_element(j)),
                                              mul(a, ei, images[j])))
            if lhs != rhs:
                return False
    return True


def is_automorphism(a: Algebra, s: Matrix) -> bool:
    """Invertible, unital and multiplicative on all basis pairs."""
    n = a.dim
    if s.shape != (n, n) or not s.is_invertible():
        return False
    if s @ a.unit != a.unit:
        return False
    images = s.columns()
    t = a.table
    for i in range(n):
        for j in range(n):
            if s @ t[i][j] != mul(a, images[i], images[j]):
                return False
    return True


def opposite(a: Algebra) -> Algebra:
    n = a.dim
    table = tuple(tuple(a.table[j][i] for j in range(n)) for i in range(n))
    return Algebra(table, a.unit, a.basis, name=f"{a.name}^op" if a.name else "")


def direct_product(a: Algebra, b: Algebra) -> Algebra:
    n, m = a.dim, b.dim
    N = n + m
    zero = zero_vector(N)
    table = []
    for i in range(N):
        row = []
        for j in range(N):
            if i < n and j < n:
                row.append(a.table[i][j] + zero_vector(m))
            elif i >= n and j >= n:
                row.append(zero_vector(n) + b.table[i - n][j - n])
            else:
                row.append(zero)
        table.append(tuple(row))
    basis = tuple(f"({x},0)" for x in a.basis) + tuple(f"(0,{y})" for y in b.basis)
    name = f"{a.name}x{b.name}" if a.name and b.name else ""
    return Algebra(tuple(table), a.unit + b.unit, basis, name=name)


def dual_extension(a: Algebra) -> Algebra:
    """``A + eps*A`` with ``eps^2 = 0``; coordinates are ``[x | y]`` for ``x + eps*y``."""
    n = a.dim
    z = zero_vector(n)
    zz = zero_vector(2 * n)
    table = []
    for i in range(2 * n):
        row = []
        for j in range(2 * n):
            if i < n and j < n:
                row.append(a.table[i][j] + z)
            elif i >= n and j >= n:
                row.append(zz)
            else:
                row.append(z + a.table[i % n][j % n])
        table.append(tuple(row))
    basis = a.basis + tuple(f"eps*{x}" for x in a.basis)
    name = f"{a.name}[eps]" if a.name else ""
    return Algebra(tuple(table), a.unit + z, basis, name=name, eps_start=n)


def dual_lift(a: Algebra, d: Matrix) -> Matrix:
    """Matrix of ``Id + eps*d`` on ``dual_extension(a)``: blocks ``[[I, 0], [d, I]]``."""
    n = a.dim
    if d.shape != (n, n):
        raise DimensionMismatch(f"expected a {n}x{n} matrix")
    eye = Matrix.identity(n)
    top = eye.hstack(Matrix.zeros(n))
    return top.vstack(d.hstack(eye))


# presets ------------------------------------------------------------------

def _matrix_unit_algebra(units: list[tuple[int, int]], n: int, name: str) -> Algebra:
    index = {u: k for k, u in enumerate(units)}
    dim = len(units)
    table = []
    for (i, j) in units:
        row = []
        for (k, l) in units:
            v = [0] * dim
            if j == k:
                v[index[(i, l)]] = 1
            row.append(v)
        table.append(row)
    unit = [0] * dim
    for i in range(n):
        unit[index[(i, i)]] = 1
    basis = tuple(f"e{i + 1}{j + 1}" for (i, j) in units)
    return Algebra(table, unit, basis, name=name)


def upper_triangular(n: int) -> Algebra:
    """``T_n``: upper triangular ``n x n`` matrices, basis ``e_ij`` (i <= j) row-major."""
    if n < 1:
        raise InvalidAlgebra("n must be at least 1")
    units = [(i, j) for i in range(n) for j in range(i, n)]
    return _matrix_unit_algebra(units, n, f"T{n}")


def full_matrix(n: int) -> Algebra:
    """``M_n``: all ``n x n`` matrices, basis ``e_ij`` row-major."""
    if n < 1:
        raise InvalidAlgebra("n must be at least 1")
    units = [(i, j) for i in range(n) for j in range(n)]
    return _matrix_unit_algebra(units, n, f"M{n}")


def truncated_polynomial(n: int) -> Algebra:
    """``Q[x]/(x^n)`` with basis ``1, x, ..., x^(n-1)``."""
    if n < 1:
        raise InvalidAlgebra("n must be at least 1")
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            v = [0] * n
            if i + j < n:
                v[i + j] = 1
            row.append(v)
        table.append(row)
    basis = tuple("1" if i == 0 else ("x" if i == 1 else f"x^{i}") for i in range(n))
    name = "Q" if n == 1 else ("Dual1" if n == 2 else f"Trunc{n}")
    return Algebra(table, unit_vector(n, 0), basis, name=name)


def rationals() -> Algebra:
    return truncated_polynomial(1)


def preset(name: str) -> Algebra:
    """Resolve a preset name: ``Q``, ``QxQ``, ``Dual1``, ``T<n>``, ``M<n>``, ``Trunc<n>``."""
    if name == "Q":
        return rationals()
    if name == "QxQ":
        return direct_product(rationals(), rationals())
    if name == "Dual1":
        return truncated_polynomial(2)
    for prefix, build in (("Trunc", truncated_polynomial), ("T", upper_triangular),
                          ("M", full_matrix)):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return build(int(name[len(prefix):]))
    raise KeyError(f"unknown algebra preset {name!r}")


ALGEBRA_PRESETS = ("Q", "QxQ", "Dual1", "T2", "M2")
