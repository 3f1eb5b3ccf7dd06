from dataclasses import replace
from fractions import Fraction

import pytest

from triality import ternary as tn
from triality import tri_ternary as tt
from triality.algebra import ad, direct_product, inner_automorphism, rationals
from triality.bimodule import Bimodule
from triality.catalog import block_mixing_sigma
from triality.errors import (
    InputNotAutomorphism,
    NotAnAutomorphism,
    NotADerivation,
    NotATernaryDerivation,
    NotFaithful,
    NotInPullback,
    NotMPreserving,
    TdConditionsViolated,
)
from triality.linalg import Matrix, RowSpace, unit_vector, zero_vector
from triality.ternary import TernaryTriple
from triality.triangular import build_triangular, embed


def zero_triple(n):
    z = Matrix.zeros(n)
    return TernaryTriple(z, z, z)


def diag3(d):
    return Matrix.block_diag(d, d, d)


def test_extract_zero_triple(trian_t2):
    assert tt.extract_td(trian_t2, zero_triple(9)) == tt.zero_components(trian_t2)


def test_extract_diagonal_derivation(trian_t2):
    d = tn.derivation_space(trian_t2.A)[1]
    D = diag3(d)
    c = tt.extract_td(trian_t2, TernaryTriple.diagonal(D))
    assert c.deltas == c.taus == c.mus == TernaryTriple.diagonal(d)
    assert not any(c.n1 + c.n1p + c.n2)


def test_roundtrip_on_basis(trian_t2, trian_dual):
    for t in (trian_t2, trian_dual):
        for tri in tn.terder_space(t.algebra):
            comps = tt.extract_td(t, tri)
            assert all(tt.check_td_conditions(t, comps))
            assert tt.assemble_td(t, comps) == tri
            assert tt.extract_td(t, tt.assemble_td(t, comps)) == comps


def test_extract_rejects_non_terder(trian_t2):
    with pytest.raises(NotATernaryDerivation):
        tt.extract_td(trian_t2, TernaryTriple.diagonal(Matrix.identity(9)))


def test_counterexample_conditions(trian_t2):
    d = tn.derivation_space(trian_t2.A)[0]
    tri = tt.counterexample_triple(trian_t2, d)
    comps = tt.extract_td(trian_t2, tri, check=False)
    assert tuple(tt.check_td_conditions(trian_t2, comps)) == (False, False, True, True)
    with pytest.raises(TdConditionsViolated) as info:
        tt.assemble_td(trian_t2, comps)
    assert info.value.conditions == ("i", "ii")
    fixed = tt.repair_td(trian_t2, comps)
    assert fixed == TernaryTriple.diagonal(diag3(d))
    assert tn.is_terder(trian_t2.algebra, fixed)


def test_perturbed_tau_breaks_m_conditions(trian_t2):
    comps = tt.extract_td(trian_t2, tn.terder_space(trian_t2.algebra)[3])
    e = Matrix([[0, 1, 0], [0, 0, 0], [2, 0, 0]])
    conds = tt.check_td_conditions(trian_t2, replace(comps, tau1=comps.tau1 + e))
    assert not (conds.iii and conds.iv)


def test_repair_complete_and_zero(trian_t2):
    for tri in tn.terder_space(trian_t2.algebra)[:6]:
        comps = tt.extract_td(trian_t2, tri)
        assert tn.is_terder(trian_t2.algebra, tt.repair_td(trian_t2, comps))
    assert tt.repair_td(trian_t2, tt.zero_components(trian_t2)) == zero_triple(9)


def _unfaithful():
    QxQ = direct_product(rationals(), rationals())
    one, zero = Matrix.identity(1), Matrix.zeros(1)
    return build_triangular(QxQ, rationals(), Bimodule(1, (one, zero), (one,)))


def test_repair_needs_faithful():
    t = _unfaithful()
    assert t.faithful() == (False, True)
    with pytest.raises(NotFaithful):
        tt.repair_td(t, tt.zero_components(t))
    with pytest.raises(NotFaithful):
        tt.is_inner_terder_triangular(t, zero_triple(t.dim))


def test_repair_needs_m_conditions(trian_t2):
    comps = replace(tt.zero_components(trian_t2), tau1=Matrix.identity(3))
    with pytest.raises(TdConditionsViolated):
        tt.repair_td(trian_t2, comps)


def test_inner_criterion_examples(trian_t2, trian_dual):
    z = tuple(Fraction(k % 3 - 1) for k in range(9))
    D = ad(trian_t2.algebra, z)
    assert tt.is_inner_terder_triangular(trian_t2, TernaryTriple.diagonal(D)) is not None
    outer = Matrix([[0, 0], [0, 1]])
    tri = TernaryTriple.diagonal(diag3(outer))
    assert tn.is_terder(trian_dual.algebra, tri)
    assert tt.is_inner_terder_triangular(trian_dual, tri) is None
    assert tn.is_inner_terder(trian_dual.algebra, tri) is None
    a1, b1 = tt.is_inner_terder_triangular(trian_t2, zero_triple(9))
    assert not any(a1) and not any(b1)


def test_inner_routes_agree(trian_t2, trian_dual):
    for t in (trian_t2, trian_dual):
        for tri in tn.terder_space(t.algebra):
            a = tt.is_inner_terder_triangular(t, tri)
            b = tn.is_inner_terder(t.algebra, tri)
            assert (a is None) == (b is None)


def test_factor_examples(trian_t2):
    t = trian_t2
    eye = Matrix.identity(9)
    assert tt.factor_automorphism(t, eye) == (t.algebra.unit, eye)
    m = (Fraction(1), Fraction(-2), Fraction(3))
    conj, tau = tt.factor_automorphism(t, tt.inner_element_automorphism(t, m))
    assert conj == embed(t, t.A.unit, m, t.B.unit) and tau == eye
    with pytest.raises(NotMPreserving):
        tt.factor_automorphism(t, block_mixing_sigma())
    with pytest.raises(NotAnAutomorphism):
        tt.factor_automorphism(t, eye * 2)


def test_block_mixing_sigma_is_automorphism(trian_t2):
    from triality.algebra import is_automorphism
    s = block_mixing_sigma()
    assert is_automorphism(trian_t2.algebra, s)
    assert s @ s == Matrix.identity(9)
    assert s @ trian_t2.p != trian_t2.p


def test_factor_general_m_preserving(trian_t2):
    # an inner automorphism by a block-diagonal unit preserves M, and In((1, m, 1)) composes with it
    t = trian_t2
    w = embed(t, (Fraction(1), Fraction(1), Fraction(2)), zero_vector(3), (Fraction(3), Fraction(0), Fraction(1)))
    sigma = tt.inner_element_automorphism(t, unit_vector(3, 1)) @ inner_automorphism(t.algebra, w)
    conj, tau = tt.factor_automorphism(t, sigma)
    assert tau @ t.p == t.p
    assert inner_automorphism(t.algebra, conj) @ tau == sigma


def test_split_examples(trian_t2):
    t = trian_t2
    d0_basis = tt.der0_space(t)
    d = d0_basis[0]
    inner, d0 = tt.split_derivation(t, d)
    assert inner.is_zero() and d0 == d
    n = embed(t, zero_vector(3), (Fraction(1), Fraction(0), Fraction(2)), zero_vector(3))
    dn = ad(t.algebra, n)
    inner, d0 = tt.split_derivation(t, dn)
    assert inner == dn and d0.is_zero()
    for d in tn.derivation_space(t.algebra):
        inner, d0 = tt.split_derivation(t, d)
        assert inner + d0 == d and not any(d0 @ t.p) and not any(d0 @ t.q)
    with pytest.raises(NotADerivation):
        tt.split_derivation(t, Matrix.identity(9))


def test_der0_dimensions(trian_q, trian_t2, trian_dual):
    assert len(tt.der0_space(trian_q)) == 1
    for t in (trian_q, trian_t2, trian_dual):
        n2 = t.dim * t.dim
        d0 = tt.der0_space(t)
        assert all(not any(d @ t.p) and not any(d @ t.q) for d in d0)
        assert RowSpace([m.entries() for m in d0], n2) == RowSpace(
            [m.entries() for m in tt.der0_pullback_space(t)], n2)
        i0 = tt.innder0_space(t)
        s0 = RowSpace([m.entries() for m in d0], n2)
        assert all(m.entries() in s0 for m in i0)


def test_innder0_examples(trian_q, trian_t2):
    assert len(tt.innder0_space(trian_q)) == 1
    assert len(tt.innder0_space(trian_t2)) == 5
    one_one = embed(trian_t2, trian_t2.A.unit, zero_vector(3), trian_t2.B.unit)
    assert ad(trian_t2.algebra, one_one).is_zero()


def test_aut0_examples(trian_q, trian_t2):
    for t in (trian_q, trian_t2):
        ida, idm, idb = Matrix.identity(t.A.dim), Matrix.identity(t.M.dim), Matrix.identity(t.B.dim)
        assert tt.aut0_pullback_check(t, idm, ida, idb)
        assert tt.build_aut0(t, idm, ida, idb) == Matrix.identity(t.dim)
    one = Matrix.identity(1)
    assert tt.aut0_pullback_check(trian_q, one * 2, one, one)
    t = trian_t2
    u = (Fraction(1), Fraction(1), Fraction(2))  # invertible, not central in T2
    Lu = t.M.act_left(u)
    ida = Matrix.identity(3)
    assert not tt.aut0_pullback_check(t, Lu, ida, ida)
    alpha = inner_automorphism(t.A, u)
    assert tt.aut0_pullback_check(t, Lu, alpha, ida)
    sigma = tt.build_aut0(t, Lu, alpha, ida)
    assert sigma @ t.p == t.p
    with pytest.raises(NotInPullback):
        tt.build_aut0(t, Lu, ida, ida)
    with pytest.raises(InputNotAutomorphism):
        tt.aut0_pullback_check(t, Lu, ida * 2, ida)
    with pytest.raises(InputNotAutomorphism):
        tt.aut0_pullback_check(t, Matrix.zeros(3), ida, ida)


def test_derivation_blocks(trian_t2):
    t = trian_t2
    for d in tn.derivation_space(t.algebra):
        blk = tt.derivation_blocks(t, d)
        for i in range(3):
            lam = t.M.left[i]
            assert blk.tau @ lam == t.M.act_left(blk.delta.col(i)) + lam @ blk.tau
            rho = t.M.right[i]
            assert blk.tau @ rho == t.M.act_right(blk.mu.col(i)) + rho @ blk.tau


def test_split_terder(trian_t2):
    t = trian_t2
    for tri in tn.terder_space(t.algebra)[:8]:
        (a, b, c), d0 = tt.split_terder(t, tri)
        assert not any(d0 @ t.p)
        assert tn.inner_terder(t.algebra, a, b, c) + TernaryTriple.diagonal(d0) == tri


def test_terauto_block_criterion(trian_t2):
    t = trian_t2
    alg = t.algebra
    x = embed(t, (Fraction(1), Fraction(1), Fraction(1)), (Fraction(2),) * 3, t.B.unit)
    y = alg.unit
    for sigma, expected in ((Matrix.identity(9), True), (block_mixing_sigma(), False),
                            (tt.inner_element_automorphism(t, unit_vector(3, 0)), False)):
        tri = tn.compose_terauto(alg, sigma, x, y)
        assert tt.terauto_block_criterion(t, tri, sigma) == (expected, expected)
