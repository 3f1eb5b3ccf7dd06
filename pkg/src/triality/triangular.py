"""Triangular algebras ``Trian(A, M, B)`` as concrete structure-constant algebras.

Coordinates are laid out as ``[A-block | M-block | B-block]``.  The element
``(a, m, b)`` stands for the matrix ``[[a, m], [0, b]]`` and

    (a, m, b)(a', m', b') = (a a', a m' + m b', b b').
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra, center, check_valid, mul
from .bimodule import Bimodule, check_bimodule, is_faithful, regular_bimodule
from .errors import DimensionMismatch
from .linalg import Matrix, Vector, kernel_of_rows, vector, zero_vector

_ZERO = Fraction(0)


@dataclass(frozen=True, eq=False)
class TriangularAlgebra:
    algebra: Algebra
    A: Algebra
    B: Algebra
    M: Bimodule

    @property
    def a_range(self) -> range:
        return range(0, self.A.dim)

    @property
    def m_range(self) -> range:
        return range(self.A.dim, self.A.dim + self.M.dim)

    @property
    def b_range(self) -> range:
        n = self.A.dim + self.M.dim
        return range(n, n + self.B.dim)

    @property
    def block_ranges(self) -> dict:
        return {"A": self.a_range, "M": self.m_range, "B": self.b_range}

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def p(self) -> Vector:
        return embed(self, self.A.unit, zero_vector(self.M.dim), zero_vector(self.B.dim))

    @property
    def q(self) -> Vector:
        return embed(self, zero_vector(self.A.dim), zero_vector(self.M.dim), self.B.unit)

    def faithful(self) -> tuple[bool, bool]:
        return is_faithful(self.A, self.B, self.M)

    def __repr__(self) -> str:
        return f"<TriangularAlgebra {self.algebra.name or ''} dims=({self.A.dim}, {self.M.dim}, {self.B.dim})>"


def build_triangular(A: Algebra, B: Algebra, M: Bimodule | None = None, name: str = "") -> TriangularAlgebra:
    """Assemble ``Trian(A, M, B)``; ``M`` defaults to the regular bimodule when ``A == B``."""
    check_valid(A)
    check_valid(B)
    if M is None:
        if A != B:
            raise DimensionMismatch("a bimodule is required when A and B differ")
        M = regular_bimodule(A)
    check_bimodule(A, B, M)
    na, nm, nb = A.dim, M.dim, B.dim
    N = na + nm + nb

    def pad(a=None, m=None, b=None):
        return ((a if a is not None else zero_vector(na))
                + (m if m is not None else zero_vector(nm))
                + (b if b is not None else zero_vector(nb)))

    zero = zero_vector(N)
    table = [[zero] * N for _ in range(N)]
    for i in range(na):
        for j in range(na):
            table[i][j] = pad(a=A.table[i][j])
        for k in range(nm):
            table[i][na + k] = pad(m=M.left[i].col(k))
    for k in range(nm):
        for j in range(nb):
            table[na + k][na + nm + j] = pad(m=M.right[j].col(k))
    for i in range(nb):
        for j in range(nb):
            table[na + nm + i][na + nm + j] = pad(b=B.table[i][j])
    basis = (tuple(f"A:{x}" for x in A.basis) + tuple(f"M:m{k}" for k in range(nm))
             + tuple(f"B:{x}" for x in B.basis))
    if not name and A.name and B.name:
        name = f"Trian({A.name},{B.name})"
    alg = Algebra(tuple(tuple(r) for r in table), pad(a=A.unit, b=B.unit), basis, name=name)
    return TriangularAlgebra(alg, A, B, M)


def extract(t: TriangularAlgebra, x: Vector) -> tuple[Vector, Vector, Vector]:
    """Split ``x`` into its ``(a, m, b)`` blocks."""
    if len(x) != t.dim:
        raise DimensionMismatch(f"element of length {len(x)} in an algebra of dimension {t.dim}")
    x = vector(x)
    return (x[t.a_range.start:t.a_range.stop], x[t.m_range.start:t.m_range.stop],
            x[t.b_range.start:t.b_range.stop])


def embed(t: TriangularAlgebra, a: Vector, m: Vector, b: Vector) -> Vector:
    if (len(a), len(m), len(b)) != (t.A.dim, t.M.dim, t.B.dim):
        raise DimensionMismatch("block lengths do not match the triangular algebra")
    return vector(a) + vector(m) + vector(b)


def block_of(t: TriangularAlgebra, x: Vector) -> set[str]:
    """Names of the blocks where ``x`` has nonzero coordinates."""
    return {name for name, part in zip("AMB", extract(t, x)) if any(part)}


def maps_block_into(t: TriangularAlgebra, f: Matrix, source: str, target: str) -> bool:
    """Whether ``f`` maps the ``source`` block into the ``target`` block."""
    src = t.block_ranges[source]
    tgt = t.block_ranges[target]
    for j in src:
        col = f.col(j)
        if any(v for k, v in enumerate(col) if k not in tgt):
            return False
    return True


def preserves_blocks(t: TriangularAlgebra, f: Matrix) -> bool:
    """``f(A) = A``, ``f(M) = M`` and ``f(B) = B`` for an invertible ``f``."""
    return f.is_invertible() and all(maps_block_into(t, f, s, s) for s in "AMB")


def center_pullback(t: TriangularAlgebra) -> list[Vector]:
    """Basis of ``{(a, 0, b) : a in Z(A), b in Z(B), a m = m b for all m}``.

    Unknowns are the coordinates of ``a`` followed by those of ``b``.
    """
    A, B, M = t.A, t.B, t.M
    na, nb = A.dim, B.dim
    rows = []
    zb = (_ZERO,) * nb
    za = (_ZERO,) * na
    # a in Z(A): (L_{e_i} - R_{e_i}) applied to a vanishes, written in a's coordinates
    for L, R in zip(A.left_basis_ops, A.right_basis_ops):
        for r in (R - L).rows:
            rows.append(r + zb)
    for L, R in zip(B.left_basis_ops, B.right_basis_ops):
        for r in (R - L).rows:
            rows.append(za + r)
    # lambda(a) - rho(b) = 0, one equation per operator entry
    for u in range(M.dim):
        for v in range(M.dim):
            rows.append(tuple(M.left[i][u, v] for i in range(na))
                        + tuple(-M.right[j][u, v] for j in range(nb)))
    basis = kernel_of_rows(rows, na + nb)
    return [embed(t, z[:na], zero_vector(M.dim), z[na:]) for z in basis]


def center_direct(t: TriangularAlgebra) -> list[Vector]:
    return center(t.algebra)


def peirce_parts(t: TriangularAlgebra, x: Vector) -> tuple[Vector, Vector, Vector]:
    """``(p x p, p x q, q x q)`` computed by multiplication."""
    alg = t.algebra
    p, q = t.p, t.q
    return (mul(alg, mul(alg, p, x), p), mul(alg, mul(alg, p, x), q), mul(alg, mul(alg, q, x), q))

