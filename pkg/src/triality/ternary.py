"""Derivations, ternary derivations and ternary automorphisms of an algebra.

A ternary derivation is a triple ``(d1, d2, d3)`` of linear maps with
``d1(xy) = d2(x) y + x d3(y)``; a ternary automorphism is a triple of
invertible maps with ``s1(xy) = s2(x) s3(y)``.  Spaces of derivations are
computed as exact nullspaces of the Leibniz system in the matrix entries.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

from .algebra import (
    Algebra,
    center,
    dual_lift,
    inner_automorphism,
    invert_element,
    is_automorphism,
    is_central,
    is_derivation,
    left_op,
    mul,
    right_op,
)
from .errors import (
    ComponentNotInvertible,
    DimensionMismatch,
    GeneralizedLeibnizViolated,
    NoSolution,
    NotADerivation,
    NotATernaryAutomorphism,
    NotATernaryDerivation,
    NotInvertible,
)
from .linalg import Matrix, RowSpace, Vector, kernel_of_rows, solve, vadd, vsub

_ZERO = Fraction(0)


class TernaryTriple(NamedTuple):
    first: Matrix
    second: Matrix
    third: Matrix

    def __add__(self, other):
        return TernaryTriple(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other):
        return TernaryTriple(*(a - b for a, b in zip(self, other)))

    def scale(self, c) -> "TernaryTriple":
        return TernaryTriple(*(c * a for a in self))

    def flat(self) -> Vector:
        """Unknown vector in the order (d1 entries, d2 entries, d3 entries), row-major."""
        return self.first.entries() + self.second.entries() + self.third.entries()

    @classmethod
    def from_flat(cls, v: Sequence, n: int) -> "TernaryTriple":
        k = n * n
        return cls(*(Matrix.from_flat(v[i * k:(i + 1) * k], n, n) for i in range(3)))

    @classmethod
    def diagonal(cls, d: Matrix) -> "TernaryTriple":
        return cls(d, d, d)

    @property
    def n(self) -> int:
        return self.first.nrows


class TerDerDecomposition(NamedTuple):
    d: Matrix
    x: Vector
    y: Vector


class TerAutDecomposition(NamedTuple):
    sigma: Matrix
    x: Vector
    y: Vector


def _check_triple(a: Algebra, t: TernaryTriple):
    n = a.dim
    for m in t:
        if m.shape != (n, n):
            raise DimensionMismatch(f"component of shape {m.shape} on an algebra of dimension {n}")


# linear systems -------------------------------------------------------------

def leibniz_rows(a: Algebra, components=(1, 2, 3)) -> list[list[Fraction]]:
    """Rows of the system ``d1(e_i e_j) - d2(e_i) e_j - e_i d3(e_j) = 0``.

    Unknowns are the row-major entries of the listed components, in order;
    a component left out is fixed to zero.  With ``components=(0,)`` the
    single unknown matrix plays all three roles (ordinary derivations).
    """
    n = a.dim
    t = a.table
    nn = n * n
    if components == (0,):
        offsets = {1: 0, 2: 0, 3: 0}
        width = nn
    else:
        offsets = {c: k * nn for k, c in enumerate(components)}
        width = nn * len(components)
    rows = []
    for i in range(n):
        for j in range(n):
            eij = t[i][j]
            for k in range(n):
                row = [_ZERO] * width
                if 1 in offsets:
                    o = offsets[1]
                    for l in range(n):
                        c = eij[l]
                        if c:
                            row[o + k * n + l] += c
                if 2 in offsets:
                    # d2(e_i) e_j, coefficient of D2[l][i]
                    o = offsets[2]
                    for l in range(n):
                        c = t[l][j][k]
                        if c:
                            row[o + l * n + i] -= c
                if 3 in offsets:
                    # e_i d3(e_j), coefficient of D3[l][j]
                    o = offsets[3]
                    for l in range(n):
                        c = t[i][l][k]
                        if c:
                            row[o + l * n + j] -= c
                rows.append(row)
    return rows


def derivation_space(a: Algebra) -> list[Matrix]:
    """Basis of ``Der(a)`` as matrices, in reduced echelon order of the entries."""
    n = a.dim
    return [Matrix.from_flat(v, n, n) for v in kernel_of_rows(leibniz_rows(a, (0,)), n * n)]


def terder_space(a: Algebra) -> list[TernaryTriple]:
    """Basis of ``TerDer(a)``; unknowns ordered (d1, d2, d3), each row-major."""
    n = a.dim
    return [TernaryTriple.from_flat(v, n) for v in kernel_of_rows(leibniz_rows(a), 3 * n * n)]


def terders_with_zero_component(a: Algebra, position: int) -> list[TernaryTriple]:
    """Basis of the ternary derivations whose ``position``-th component is zero."""
    n = a.dim
    nn = n * n
    comps = tuple(c for c in (1, 2, 3) if c != position)
    out = []
    for v in kernel_of_rows(leibniz_rows(a, comps), 2 * nn):
        parts = {comps[0]: v[:nn], comps[1]: v[nn:]}
        parts[position] = (_ZERO,) * nn
        out.append(TernaryTriple(*(Matrix.from_flat(parts[c], n, n) for c in (1, 2, 3))))
    return out


# predicates ---------------------------------------------------------------

def is_terder(a: Algebra, t: TernaryTriple) -> bool:
    _check_triple(a, t)
    d1, d2, d3 = t
    n = a.dim
    im2 = d2.columns()
    im3 = d3.columns()
    tab = a.table
    for i in range(n):
        ei = a.basis_element(i)
        for j in range(n):
            lhs = d1 @ tab[i][j]
            rhs = vadd(mul(a, im2[i], a.basis_element(j)), mul(a, ei, im3[j]))
            if lhs != rhs:
                return False
    return True


def is_terauto(a: Algebra, t: TernaryTriple) -> bool:
    _check_triple(a, t)
    if not all(m.is_invertible() for m in t):
        return False
    s1, s2, s3 = t
    n = a.dim
    im2 = s2.columns()
    im3 = s3.columns()
    tab = a.table
    for i in range(n):
        for j in range(n):
            if s1 @ tab[i][j] != mul(a, im2[i], im3[j]):
                return False
    return True


def bracket(f: Matrix, g: Matrix) -> Matrix:
    return f @ g - g @ f


def lie_bracket(t: TernaryTriple, u: TernaryTriple) -> TernaryTriple:
    """Componentwise commutator of two triples."""
    return TernaryTriple(*(bracket(f, g) for f, g in zip(t, u)))


def terder_span(a: Algebra, basis: Sequence[TernaryTriple] | None = None) -> RowSpace:
    if basis is None:
        basis = terder_space(a)
    return RowSpace([t.flat() for t in basis], 3 * a.dim * a.dim)


# decompositions -------------------------------------------------------------

def compose_terder(a: Algebra, d: Matrix, x: Vector, y: Vector) -> TernaryTriple:
    """``(d + L_x + R_y, d + L_x, d + R_y)`` for a derivation ``d``."""
    if not is_derivation(a, d):
        raise NotADerivation("first argument is not a derivation")
    Lx, Ry = left_op(a, x), right_op(a, y)
    return TernaryTriple(d + Lx + Ry, d + Lx, d + Ry)


def decompose_terder(a: Algebra, t: TernaryTriple) -> TerDerDecomposition:
    """Unique ``(d, x, y)`` with ``t = (d + L_x + R_y, d + L_x, d + R_y)``."""
    _check_triple(a, t)
    if not is_terder(a, t):
        raise NotATernaryDerivation("triple does not satisfy d1(xy) = d2(x)y + x d3(y)")
    x = t.second @ a.unit
    y = t.third @ a.unit
    d = t.second - left_op(a, x)
    if not is_derivation(a, d):
        raise NotATernaryDerivation("d2 - L_{d2(1)} is not a derivation")
    if compose_terder(a, d, x, y) != t:
        raise NotATernaryDerivation("recomposition does not reproduce the triple")
    return TerDerDecomposition(d, x, y)


def compose_terauto(a: Algebra, sigma: Matrix, x: Vector, y: Vector) -> TernaryTriple:
    """``(R_y L_x sigma, L_x sigma, R_y sigma)``."""
    Lxs = left_op(a, x) @ sigma
    Ry = right_op(a, y)
    return TernaryTriple(Ry @ Lxs, Lxs, Ry @ sigma)


def decompose_terauto(a: Algebra, t: TernaryTriple) -> TerAutDecomposition:
    """Unique ``(sigma, x, y)`` with ``t = (R_y L_x sigma, L_x sigma, R_y sigma)``."""
    _check_triple(a, t)
    if not is_terauto(a, t):
        raise NotATernaryAutomorphism("triple does not satisfy s1(xy) = s2(x)s3(y) with invertible s_i")
    x = t.second @ a.unit
    y = t.third @ a.unit
    try:
        xinv = invert_element(a, x)
        yinv = invert_element(a, y)
    except NotInvertible as exc:
        raise ComponentNotInvertible(str(exc)) from None
    sigma = left_op(a, xinv) @ right_op(a, yinv) @ t.first
    if not is_automorphism(a, sigma):
        raise NotATernaryAutomorphism("L_{x^-1} R_{y^-1} s1 is not an automorphism")
    if compose_terauto(a, sigma, x, y) != t:
        raise NotATernaryAutomorphism("recomposition does not reproduce the triple")
    return TerAutDecomposition(sigma, x, y)


# inner maps -----------------------------------------------------------------

def is_inner_derivation(a: Algebra, d: Matrix) -> Vector | None:
    """Some ``z`` with ``d = R_z - L_z``, or None when ``d`` is outer."""
    if not is_derivation(a, d):
        raise NotADerivation("map is not a derivation")
    cols = [(R - L).entries() for L, R in zip(a.left_basis_ops, a.right_basis_ops)]
    system = Matrix.from_columns(cols, a.dim * a.dim)
    try:
        return solve(system, d.entries())
    except NoSolution:
        return None


def inner_terder(a: Algebra, x: Vector, y: Vector, z: Vector) -> TernaryTriple:
    """``(L_x + R_y, L_x + R_z, -L_z + R_y)``."""
    Lx, Ry, Rz, Lz = left_op(a, x), right_op(a, y), right_op(a, z), left_op(a, z)
    return TernaryTriple(Lx + Ry, Lx + Rz, Ry - Lz)


def is_inner_terder(a: Algebra, t: TernaryTriple) -> tuple[Vector, Vector, Vector] | None:
    """Witness ``(a, b, c)`` with ``t = (L_a + R_b, L_a + R_c, -L_c + R_b)``, or None."""
    d, x, y = decompose_terder(a, t)
    c = is_inner_derivation(a, d)
    if c is None:
        return None
    wa, wb = vsub(x, c), vadd(c, y)
    if inner_terder(a, wa, wb, c) != t:
        raise AssertionError("inner witness failed substitution")
    return wa, wb, c


def make_inner_terauto(a: Algebra, w: Vector, x: Vector, y: Vector) -> TernaryTriple:
    """``(R_y L_x In(w), L_x In(w), R_y In(w))`` for invertible ``w, x, y``."""
    try:
        for e in (w, x, y):
            invert_element(a, e)
        sigma = inner_automorphism(a, w)
    except NotInvertible as exc:
        raise ComponentNotInvertible(str(exc)) from None
    return compose_terauto(a, sigma, x, y)


# T_{a,b} families ---------------------------------------------------------

def tab_operator(a: Algebra, u: Vector, v: Vector) -> Matrix:
    """``T_{u,v} = L_u - R_v``."""
    return left_op(a, u) - right_op(a, v)


def check_tab_family(a: Algebra, elems: Sequence[Vector], variant: str = "derivation") -> tuple[bool, bool]:
    """Compare the element conditions with direct membership for six elements ``a..f``.

    ``variant="derivation"``: the triple ``(T_{a,b}, T_{c,d}, T_{e,f})`` against
    ``a-c, b-f, e-d`` central and ``a+f+d = c+b+e``.
    ``variant="automorphism"``: ``(L_a R_b, L_c R_d, L_e R_f)`` against
    ``c^-1 a, b f^-1, d e`` central and ``ab = cdef``.
    Returns ``(condition_holds, membership_holds)``.
    """
    ea, eb, ec, ed, ee, ef = elems
    if variant == "derivation":
        cond = (is_central(a, vsub(ea, ec)) and is_central(a, vsub(eb, ef))
                and is_central(a, vsub(ee, ed))
                and vadd(vadd(ea, ef), ed) == vadd(vadd(ec, eb), ee))
        t = TernaryTriple(tab_operator(a, ea, eb), tab_operator(a, ec, ed), tab_operator(a, ee, ef))
        return cond, is_terder(a, t)
    if variant == "automorphism":
        try:
            cinv = invert_element(a, ec)
            finv = invert_element(a, ef)
            for e in (ea, eb, ed, ee):
                invert_element(a, e)
        except NotInvertible as exc:
            raise ComponentNotInvertible(str(exc)) from None
        m = lambda x, y: mul(a, x, y)  # noqa: E731
        cond = (is_central(a, m(cinv, ea)) and is_central(a, m(eb, finv))
                and is_central(a, m(ed, ee))
                and m(ea, eb) == m(m(m(ec, ed), ee), ef))
        t = TernaryTriple(left_op(a, ea) @ right_op(a, eb), left_op(a, ec) @ right_op(a, ed),
                          left_op(a, ee) @ right_op(a, ef))
        return cond, is_terauto(a, t)
    raise ValueError(f"unknown variant {variant!r}")


# generalized Leibniz rule and component extension -------------------------

def leibniz_defect(a: Algebra, d: Matrix) -> list[list[Vector]]:
    """``D[i][j] = d(e_i e_j) - d(e_i) e_j - e_i d(e_j) + e_i d(1) e_j``."""
    n = a.dim
    if d.shape != (n, n):
        raise DimensionMismatch(f"expected a {n}x{n} matrix")
    im = d.columns()
    d1 = d @ a.unit
    out = []
    for i in range(n):
        ei = a.basis_element(i)
        row = []
        for j in range(n):
            ej = a.basis_element(j)
            v = d @ a.table[i][j]
            v = vsub(v, mul(a, im[i], ej))
            v = vsub(v, mul(a, ei, im[j]))
            v = vadd(v, mul(a, mul(a, ei, d1), ej))
            row.append(v)
        out.append(row)
    return out


def satisfies_generalized_leibniz(a: Algebra, d: Matrix) -> bool:
    """``d(xy) - d(x)y - x d(y) = -x d(1) y`` on all basis pairs."""
    return not any(any(v) for row in leibniz_defect(a, d) for v in row)


def satisfies_generalized_multiplicativity(a: Algebra, s: Matrix) -> bool:
    """``s(xy) = s(x) s(1)^-1 s(y)`` on all basis pairs, for invertible ``s(1)``."""
    try:
        u = invert_element(a, s @ a.unit)
    except NotInvertible:
        return False
    im = s.columns()
    n = a.dim
    return all(s @ a.table[i][j] == mul(a, mul(a, im[i], u), im[j])
               for i in range(n) for j in range(n))


def extend_component(a: Algebra, d: Matrix, position: int, shift: Vector) -> TernaryTriple:
    """Complete a map obeying the generalized Leibniz rule to a ternary derivation.

    position 1: ``(d, d - R_s, d - L_{d(1) - s})``
    position 2: ``(d + R_s, d, d + R_s - L_{d(1)})``
    position 3: ``(d + L_s, d + L_s - R_{d(1)}, d)``
    """
    if not satisfies_generalized_leibniz(a, d):
        raise GeneralizedLeibnizViolated("map does not satisfy d(xy) - d(x)y - x d(y) = -x d(1) y")
    d1 = d @ a.unit
    if position == 1:
        out = TernaryTriple(d, d - right_op(a, shift), d - left_op(a, vsub(d1, shift)))
    elif position == 2:
        Rs = right_op(a, shift)
        out = TernaryTriple(d + Rs, d, d + Rs - left_op(a, d1))
    elif position == 3:
        Ls = left_op(a, shift)
        out = TernaryTriple(d + Ls, d + Ls - right_op(a, d1), d)
    else:
        raise ValueError("position must be 1, 2 or 3")
    if not is_terder(a, out):
        raise AssertionError("extended triple is not a ternary derivation")
    return out


# shared components --------------------------------------------------------

def shared_component_witness(a: Algebra, t: TernaryTriple, u: TernaryTriple, shared: int) -> Vector | None:
    """For ternary derivations sharing component ``shared`` (2 or 3), solve for the offset.

    Shared second component: ``t1 - u1 = t3 - u3 = R_b``; returns ``b``.
    Shared third component: ``t1 - u1 = t2 - u2 = L_b``; returns ``b``.
    """
    if shared == 2:
        other, ops = 2, a.right_basis_ops
    elif shared == 3:
        other, ops = 1, a.left_basis_ops
    else:
        raise ValueError("shared must be 2 or 3")
    diff1 = t.first - u.first
    diff_other = t[other] - u[other]
    if diff1 != diff_other:
        return None
    system = Matrix.from_columns([op.entries() for op in ops], a.dim * a.dim)
    try:
        return solve(system, diff1.entries())
    except NoSolution:
        return None


def dual_lift_triple(a: Algebra, t: TernaryTriple) -> TernaryTriple:
    """``(Id + eps*t1, Id + eps*t2, Id + eps*t3)`` on the dual-number extension."""
    return TernaryTriple(*(dual_lift(a, m) for m in t))


def center_dim(a: Algebra) -> int:
    return len(center(a))
