"""Ternary derivations and automorphisms specific to triangular algebras.

Every ternary derivation of ``T = Trian(A, M, B)`` has the block shape

    d1(a, m, b) = (delta1(a), a n1 + tau1(m) + n1' b, mu1(b))
    d2(a, m, b) = (delta2(a), a n2 + tau2(m) + n1' b, mu2(b))
    d3(a, m, b) = (delta3(a), a n1 + tau3(m) - n2 b, mu3(b))

subject to four conditions: the delta triple and the mu triple are ternary
derivations of A and B, ``tau1(am) = delta2(a) m + a tau3(m)`` and
``tau1(mb) = m mu3(b) + tau2(m) b``.  This module extracts and assembles
that data, repairs a triple satisfying only the last two conditions,
tests inner-ness through the M-component, and handles derivations and
automorphisms that fix the idempotent ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from fractions import Fraction
from typing import NamedTuple

from .algebra import ad, inner_automorphism, invert_element, is_automorphism, is_derivation, left_op, right_op
from .errors import (
    InputNotAutomorphism,
    NoSolution,
    NotAnAutomorphism,
    NotADerivation,
    NotATernaryDerivation,
    NotFaithful,
    NotInPullback,
    NotInvertible,
    NotMPreserving,
    TdConditionsViolated,
    TdFormMismatch,
)
from .linalg import Matrix, RowSpace, Vector, kernel_of_rows, solve, vadd, vscale, vsub, zero_vector
from .ternary import (
    TernaryTriple,
    decompose_terder,
    inner_terder,
    is_inner_derivation,
    is_terder,
    leibniz_rows,
)
from .triangular import TriangularAlgebra, embed, extract, maps_block_into

_ZERO = Fraction(0)

CONDITION_NAMES = ("i", "ii", "iii", "iv")


@dataclass(frozen=True)
class TdComponents:
    delta1: Matrix
    delta2: Matrix
    delta3: Matrix
    tau1: Matrix
    tau2: Matrix
    tau3: Matrix
    mu1: Matrix
    mu2: Matrix
    mu3: Matrix
    n1: Vector
    n1p: Vector
    n2: Vector

    @property
    def deltas(self) -> TernaryTriple:
        return TernaryTriple(self.delta1, self.delta2, self.delta3)

    @property
    def taus(self) -> TernaryTriple:
        return TernaryTriple(self.tau1, self.tau2, self.tau3)

    @property
    def mus(self) -> TernaryTriple:
        return TernaryTriple(self.mu1, self.mu2, self.mu3)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


class TdConditions(NamedTuple):
    i: bool
    ii: bool
    iii: bool
    iv: bool

    def failing(self) -> list[str]:
        return [name for name, ok in zip(CONDITION_NAMES, self) if not ok]


class DerivationBlocks(NamedTuple):
    delta: Matrix
    tau: Matrix
    mu: Matrix
    n: Vector


def _block_map(t: TriangularAlgebra, alpha: Matrix, from_a: Matrix, tau: Matrix,
               from_b: Matrix, beta: Matrix) -> Matrix:
    """Assemble the map ``(a, m, b) -> (alpha a, from_a a + tau m + from_b b, beta b)``."""
    na, nm, nb = t.A.dim, t.M.dim, t.B.dim
    za_m = Matrix.zeros(na, nm)
    za_b = Matrix.zeros(na, nb)
    zb_a = Matrix.zeros(nb, na)
    zb_m = Matrix.zeros(nb, nm)
    top = alpha.hstack(za_m).hstack(za_b)
    mid = from_a.hstack(tau).hstack(from_b)
    bot = zb_a.hstack(zb_m).hstack(beta)
    return top.vstack(mid).vstack(bot)


def _left_by(t: TriangularAlgebra, n: Vector) -> Matrix:
    """``A -> M, a -> a n``."""
    return Matrix.from_columns([t.M.left[i] @ n for i in range(t.A.dim)], t.M.dim)


def _right_by(t: TriangularAlgebra, n: Vector) -> Matrix:
    """``B -> M, b -> n b``."""
    return Matrix.from_columns([t.M.right[j] @ n for j in range(t.B.dim)], t.M.dim)


def _blocks(t: TriangularAlgebra, f: Matrix, row: str, col: str) -> Matrix:
    r = t.block_ranges
    return f.submatrix(r[row], r[col])


def _m_part(t: TriangularAlgebra, x: Vector) -> Vector:
    return extract(t, x)[1]


def assemble_td(t: TriangularAlgebra, comps: TdComponents, check: bool = True) -> TernaryTriple:
    """Build the triple of block form from its components.

    With ``check`` the four conditions must hold, which makes the output a
    ternary derivation.
    """
    if check:
        conds = check_td_conditions(t, comps)
        if not all(conds):
            raise TdConditionsViolated(conds.failing())
    c = comps
    neg_n2 = vscale(-1, c.n2)
    d1 = _block_map(t, c.delta1, _left_by(t, c.n1), c.tau1, _right_by(t, c.n1p), c.mu1)
    d2 = _block_map(t, c.delta2, _left_by(t, c.n2), c.tau2, _right_by(t, c.n1p), c.mu2)
    d3 = _block_map(t, c.delta3, _left_by(t, c.n1), c.tau3, _right_by(t, neg_n2), c.mu3)
    out = TernaryTriple(d1, d2, d3)
    if check and not is_terder(t.algebra, out):
        raise AssertionError("assembled triple is not a ternary derivation")
    return out


def extract_td(t: TriangularAlgebra, triple: TernaryTriple, check: bool = True) -> TdComponents:
    """Read the block-form components of ``triple``.

    ``n1`` is the M-part of ``d3(p)``, ``n1'`` the M-part of ``d1(q)`` and
    ``n2`` minus the M-part of ``d3(q)``; the result is cross-checked by
    reassembling.  With ``check=False`` the triple need not be a ternary
    derivation, but it must still have the block shape.
    """
    alg = t.algebra
    if check and not is_terder(alg, triple):
        raise NotATernaryDerivation("triple is not a ternary derivation of the triangular algebra")
    d1, d2, d3 = triple
    p, q = t.p, t.q
    comps = TdComponents(
        delta1=_blocks(t, d1, "A", "A"), delta2=_blocks(t, d2, "A", "A"), delta3=_blocks(t, d3, "A", "A"),
        tau1=_blocks(t, d1, "M", "M"), tau2=_blocks(t, d2, "M", "M"), tau3=_blocks(t, d3, "M", "M"),
        mu1=_blocks(t, d1, "B", "B"), mu2=_blocks(t, d2, "B", "B"), mu3=_blocks(t, d3, "B", "B"),
        n1=_m_part(t, d3 @ p), n1p=_m_part(t, d1 @ q), n2=vscale(-1, _m_part(t, d3 @ q)),
    )
    if assemble_td(t, comps, check=False) != triple:
        raise TdFormMismatch("triple does not have the triangular block form")
    return comps


def check_td_conditions(t: TriangularAlgebra, comps: TdComponents) -> TdConditions:
    A, B, M = t.A, t.B, t.M
    c = comps
    cond_i = is_terder(A, c.deltas)
    cond_ii = is_terder(B, c.mus)
    # tau1 lambda(a) = lambda(delta2 a) + lambda(a) tau3
    cond_iii = all(c.tau1 @ M.left[i] == M.act_left(c.delta2.col(i)) + M.left[i] @ c.tau3
                   for i in range(A.dim))
    # tau1 rho(b) = rho(mu3 b) + rho(b) tau2
    cond_iv = all(c.tau1 @ M.right[j] == M.act_right(c.mu3.col(j)) + M.right[j] @ c.tau2
                  for j in range(B.dim))
    return TdConditions(cond_i, cond_ii, cond_iii, cond_iv)


def _require_faithful(t: TriangularAlgebra):
    left, right = t.faithful()
    if not (left and right):
        raise NotFaithful(f"bimodule is not faithful (left={left}, right={right})")


def repair_td(t: TriangularAlgebra, comps: TdComponents) -> TernaryTriple:
    """Replace delta1, delta3, mu1, mu2 so the block data becomes a ternary derivation.

    Uses ``delta1' = delta2``, ``delta3' = delta2 - L_{delta2(1)}``,
    ``mu1' = mu3`` and ``mu2' = mu3 - R_{mu3(1)}``; everything else is kept.
    Needs a faithful bimodule and the two M-conditions.
    """
    _require_faithful(t)
    conds = check_td_conditions(t, comps)
    if not (conds.iii and conds.iv):
        raise TdConditionsViolated([n for n in ("iii", "iv") if not getattr(conds, n)])
    A, B = t.A, t.B
    d2 = comps.delta2
    m3 = comps.mu3
    fixed = replace(
        comps,
        delta1=d2,
        delta3=d2 - left_op(A, d2 @ A.unit),
        mu1=m3,
        mu2=m3 - right_op(B, m3 @ B.unit),
    )
    return assemble_td(t, fixed, check=True)


def derivation_blocks(t: TriangularAlgebra, d: Matrix) -> DerivationBlocks:
    """Blocks ``(delta, tau, mu, n)`` of a derivation, ``d(a, m, b) = (delta a, a n + tau m - n b, mu b)``."""
    comps = extract_td(t, TernaryTriple(d, d, d))
    return DerivationBlocks(comps.delta2, comps.tau2, comps.mu2, comps.n2)


def is_inner_terder_triangular(t: TriangularAlgebra, triple: TernaryTriple) -> tuple[Vector, Vector] | None:
    """``(a1, b1)`` with ``tau1(m) = a1 m + m b1`` for all m, or None."""
    _require_faithful(t)
    comps = extract_td(t, triple)
    M = t.M
    cols = [op.entries() for op in M.left] + [op.entries() for op in M.right]
    system = Matrix.from_columns(cols, M.dim * M.dim)
    try:
        z = solve(system, comps.tau1.entries())
    except NoSolution:
        return None
    return z[:t.A.dim], z[t.A.dim:]


def maps_m_into_m(t: TriangularAlgebra, f: Matrix) -> bool:
    return maps_block_into(t, f, "M", "M")


def terauto_block_criterion(t: TriangularAlgebra, triple: TernaryTriple, sigma: Matrix) -> tuple[bool, bool]:
    """Compare ``sigma`` preserving A, M, B with ``s2(A) = A, s1(M) = M, s3(B) = B``.

    ``sigma`` is the automorphism in the factorization of the ternary
    automorphism ``triple``; the two booleans should agree.
    """
    s1, s2, s3 = triple
    sigma_ok = all(maps_block_into(t, sigma, b, b) for b in "AMB")
    comp_ok = (maps_block_into(t, s2, "A", "A") and maps_block_into(t, s1, "M", "M")
               and maps_block_into(t, s3, "B", "B"))
    return sigma_ok, comp_ok


# automorphisms and derivations fixing p -----------------------------------

def factor_automorphism(t: TriangularAlgebra, sigma: Matrix) -> tuple[Vector, Matrix]:
    """Write ``sigma = In(c) tau`` with ``tau(p) = p``; returns ``(c, tau)``.

    ``sigma`` must map M onto M; then ``sigma(p) = (1_A, m_p, 0)`` and
    ``c = (1_A, -m_p, 1_B)``.
    """
    alg = t.algebra
    if not is_automorphism(alg, sigma):
        raise NotAnAutomorphism("map is not an automorphism of the triangular algebra")
    if not maps_block_into(t, sigma, "M", "M"):
        raise NotMPreserving("automorphism does not map M onto M")
    a_p, m_p, b_p = extract(t, sigma @ t.p)
    if a_p != t.A.unit or any(b_p):
        raise NotMPreserving("image of p is not of the form (1_A, m, 0)")
    conj = embed(t, t.A.unit, vscale(-1, m_p), t.B.unit)
    conj_inv = invert_element(alg, conj)
    tau = inner_automorphism(alg, conj_inv) @ sigma
    if tau @ t.p != t.p:
        raise AssertionError("factor does not fix p")
    if inner_automorphism(alg, conj) @ tau != sigma:
        raise AssertionError("factorization does not recompose")
    return conj, tau


def split_derivation(t: TriangularAlgebra, d: Matrix) -> tuple[Matrix, Matrix]:
    """``d = inner + d0`` with ``inner = ad(-d(p))`` and ``d0 = d + ad(d(p))``, ``d0(p) = 0``."""
    alg = t.algebra
    if not is_derivation(alg, d):
        raise NotADerivation("map is not a derivation of the triangular algebra")
    s = d @ t.p
    d0 = d + ad(alg, s)
    inner = ad(alg, vscale(-1, s))
    if any(d0 @ t.p):
        raise AssertionError("d0(p) != 0")
    return inner, d0


def split_terder(t: TriangularAlgebra, triple: TernaryTriple):
    """Split a ternary derivation as an inner one plus ``(d0, d0, d0)`` with ``d0(p) = 0``.

    Returns ``((a, b, c), d0)`` where the inner part is
    ``(L_a + R_b, L_a + R_c, -L_c + R_b)``.
    """
    alg = t.algebra
    d, x, y = decompose_terder(alg, triple)
    s = d @ t.p
    _, d0 = split_derivation(t, d)
    wa, wb, wc = vsub(x, s), vadd(y, s), s
    if inner_terder(alg, wa, wb, wc) + TernaryTriple(d0, d0, d0) != triple:
        raise AssertionError("split does not recompose")
    return (wa, wb, wc), d0


def der0_space(t: TriangularAlgebra) -> list[Matrix]:
    """Basis of the derivations vanishing at ``p``."""
    alg = t.algebra
    n = alg.dim
    rows = leibniz_rows(alg, (0,))
    p = t.p
    for k in range(n):
        row = [_ZERO] * (n * n)
        for l in range(n):
            if p[l]:
                row[k * n + l] = p[l]
        rows.append(row)
    return [Matrix.from_flat(v, n, n) for v in kernel_of_rows(rows, n * n)]


def der0_pullback_space(t: TriangularAlgebra) -> list[Matrix]:
    """Pairs ``(phi, (delta, mu))`` with ``phi(amb) = delta(a) m b + a phi(m) b + a m mu(b)``.

    ``delta`` and ``mu`` range over derivations of A and B, ``phi`` over all of
    ``End(M)``.  Each solution is returned as the block-diagonal map
    ``(delta, phi, mu)`` on the triangular algebra.
    """
    A, B, M = t.A, t.B, t.M
    na, nm, nb = A.dim, M.dim, B.dim
    nphi, ndel, nmu = nm * nm, na * na, nb * nb
    width = nphi + ndel + nmu
    rows = []
    for r in leibniz_rows(A, (0,)):
        rows.append([_ZERO] * nphi + list(r) + [_ZERO] * nmu)
    for r in leibniz_rows(B, (0,)):
        rows.append([_ZERO] * (nphi + ndel) + list(r))
    # residual of the compatibility condition, linear in the unknowns
    ops = [[M.left[i] @ M.right[j] for j in range(nb)] for i in range(na)]
    for i in range(na):
        for j in range(nb):
            lr = ops[i][j]
            for k in range(nm):
                for u in range(nm):
                    # coordinate u of phi(e_i m_k f_j) - e_i phi(m_k) f_j - delta(e_i) m_k f_j - e_i m_k mu(f_j)
                    row = [_ZERO] * width
                    for v in range(nm):
                        c = lr[v, k]
                        if c:
                            row[u * nm + v] += c
                    for v in range(nm):
                        c = lr[u, v]
                        if c:
                            row[v * nm + k] -= c
                    for l in range(na):
                        c = (M.left[l] @ M.right[j])[u, k]
                        if c:
                            row[nphi + l * na + i] -= c
                    for l in range(nb):
                        c = (M.left[i] @ M.right[l])[u, k]
                        if c:
                            row[nphi + ndel + l * nb + j] -= c
                    rows.append(row)
    out = []
    for v in kernel_of_rows(rows, width):
        phi = Matrix.from_flat(v[:nphi], nm, nm)
        delta = Matrix.from_flat(v[nphi:nphi + ndel], na, na)
        mu = Matrix.from_flat(v[nphi + ndel:], nb, nb)
        out.append(Matrix.block_diag(delta, phi, mu))
    return out


def innder0_space(t: TriangularAlgebra) -> list[Matrix]:
    """Basis of ``ad((a, 0, b))`` over a in A, b in B."""
    alg = t.algebra
    spans = [ad(alg, alg.basis_element(i)) for i in list(t.a_range) + list(t.b_range)]
    n = alg.dim
    space = RowSpace([m.entries() for m in spans], n * n)
    return [Matrix.from_flat(v, n, n) for v in space.basis()]


def inner_derivation_space(t_or_alg) -> list[Matrix]:
    alg = getattr(t_or_alg, "algebra", t_or_alg)
    n = alg.dim
    space = RowSpace([ad(alg, alg.basis_element(i)).entries() for i in range(n)], n * n)
    return [Matrix.from_flat(v, n, n) for v in space.basis()]


def aut0_pullback_check(t: TriangularAlgebra, tmap: Matrix, alpha: Matrix, beta: Matrix) -> bool:
    """Whether ``T(a m b) = alpha(a) T(m) beta(b)`` on all basis triples."""
    A, B, M = t.A, t.B, t.M
    if not is_automorphism(A, alpha):
        raise InputNotAutomorphism("alpha is not an automorphism of A")
    if not is_automorphism(B, beta):
        raise InputNotAutomorphism("beta is not an automorphism of B")
    if tmap.shape != (M.dim, M.dim) or not tmap.is_invertible():
        raise InputNotAutomorphism("T is not an invertible map of M")
    for i in range(A.dim):
        la = M.act_left(alpha.col(i))
        for j in range(B.dim):
            rb = M.act_right(beta.col(j))
            if tmap @ M.left[i] @ M.right[j] != la @ rb @ tmap:
                return False
    return True


def build_aut0(t: TriangularAlgebra, tmap: Matrix, alpha: Matrix, beta: Matrix) -> Matrix:
    """The automorphism ``(a, m, b) -> (alpha a, T m, beta b)``."""
    if not aut0_pullback_check(t, tmap, alpha, beta):
        raise NotInPullback("T(amb) != alpha(a) T(m) beta(b) for some basis triple")
    sigma = Matrix.block_diag(alpha, tmap, beta)
    if not is_automorphism(t.algebra, sigma) or sigma @ t.p != t.p:
        raise AssertionError("pullback element is not an automorphism fixing p")
    return sigma


def inner_element_automorphism(t: TriangularAlgebra, m: Vector) -> Matrix:
    """``In((1_A, m, 1_B))``."""
    try:
        return inner_automorphism(t.algebra, embed(t, t.A.unit, m, t.B.unit))
    except NotInvertible:  # pragma: no cover  (always invertible)
        raise


def zero_components(t: TriangularAlgebra) -> TdComponents:
    na, nm, nb = t.A.dim, t.M.dim, t.B.dim
    za, zm, zb = Matrix.zeros(na), Matrix.zeros(nm), Matrix.zeros(nb)
    z = zero_vector(nm)
    return TdComponents(za, za, za, zm, zm, zm, zb, zb, zb, z, z, z)


def counterexample_triple(t: TriangularAlgebra, d: Matrix) -> TernaryTriple:
    """For ``Trian(A, A, A)`` and a derivation ``d`` of A, the triple

    ``d1(a, m, b) = (0, d m, 0)``, ``d2 = (d a, d m, 0)``, ``d3 = (0, d m, d b)``.

    It satisfies the two M-conditions while ``(0, d, 0)`` and ``(0, 0, d)``
    are not ternary derivations of A.
    """
    if t.A != t.B or t.M.dim != t.A.dim:
        raise ValueError("needs Trian(A, A, A)")
    comps = replace(zero_components(t), delta2=d, mu3=d, tau1=d, tau2=d, tau3=d)
    return assemble_td(t, comps, check=False)
