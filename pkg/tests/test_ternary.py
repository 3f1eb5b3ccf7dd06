from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triality import ternary as tn
from triality.algebra import (
    ad,
    dual_extension,
    full_matrix,
    inner_automorphism,
    left_op,
    right_op,
    upper_triangular,
)
from triality.errors import (
    ComponentNotInvertible,
    GeneralizedLeibnizViolated,
    NotADerivation,
    NotATernaryDerivation,
)
from triality.linalg import Matrix
from triality.ternary import TernaryTriple

from oracles import der_dim, terder_dim


def F(*xs):
    return tuple(Fraction(x) for x in xs)


def identity_triple(n):
    eye = Matrix.identity(n)
    return TernaryTriple(eye, eye, eye)


@pytest.mark.parametrize("name,der,terder", [("T2", 2, 8), ("M2", 3, 11), ("Dual1", 1, 5)])
def test_dimensions_against_sympy(name, der, terder):
    from triality.algebra import preset
    alg = preset(name)
    assert len(tn.derivation_space(alg)) == der == der_dim(alg)
    assert len(tn.terder_space(alg)) == terder == terder_dim(alg)


def test_predicates(T2, trian_t2):
    assert tn.is_terauto(T2, identity_triple(3))
    for d in tn.derivation_space(T2):
        assert tn.is_terder(T2, TernaryTriple.diagonal(d))
    d = tn.derivation_space(trian_t2.A)[0]
    z = Matrix.zeros(3)
    block = Matrix.block_diag(d, z, z)
    zero9 = Matrix.zeros(9)
    assert not tn.is_terder(trian_t2.algebra, TernaryTriple(zero9, block, zero9))


def test_decompose_examples(T2):
    d = tn.derivation_space(T2)[0]
    zero = F(0, 0, 0)
    assert tuple(tn.decompose_terder(T2, TernaryTriple.diagonal(d))) == (d, zero, zero)
    a = F(1, 2, -1)
    La, Ra = left_op(T2, a), right_op(T2, a)
    z = Matrix.zeros(3)
    assert tuple(tn.decompose_terder(T2, TernaryTriple(La, La, z))) == (z, a, zero)
    assert tuple(tn.decompose_terder(T2, TernaryTriple(Ra, z, Ra))) == (z, zero, a)


def test_decompose_rejects_non_terder(T2):
    eye = Matrix.identity(3)
    with pytest.raises(NotATernaryDerivation):
        tn.decompose_terder(T2, TernaryTriple(eye * 2, eye, eye * 3))


def test_compose_rejects_non_derivation(T2):
    with pytest.raises(NotADerivation):
        tn.compose_terder(T2, Matrix.identity(3), F(0, 0, 0), F(0, 0, 0))


def test_decompose_terauto_examples(T2):
    eye = Matrix.identity(3)
    assert tuple(tn.decompose_terauto(T2, identity_triple(3))) == (eye, T2.unit, T2.unit)
    x = F(2, 1, 1)
    Lx = left_op(T2, x)
    assert tuple(tn.decompose_terauto(T2, TernaryTriple(Lx, Lx, eye))) == (eye, x, T2.unit)
    s = inner_automorphism(T2, x)
    assert tuple(tn.decompose_terauto(T2, TernaryTriple(s, s, s))) == (s, T2.unit, T2.unit)


def test_inner_derivation(T2, M2, Dual1):
    e11 = T2.basis_element(0)
    assert tn.is_inner_derivation(T2, right_op(T2, e11) - left_op(T2, e11)) is not None
    for d in tn.derivation_space(M2):
        z = tn.is_inner_derivation(M2, d)
        assert z is not None and right_op(M2, z) - left_op(M2, z) == d
    outer = Matrix([[0, 0], [0, 1]])  # x -> x on Q[x]/(x^2)
    assert tn.is_inner_derivation(Dual1, outer) is None
    assert tn.is_inner_terder(Dual1, TernaryTriple.diagonal(outer)) is None


def test_inner_terder_examples(M2):
    a, b, c = F(1, 0, 2, -1), F(0, 3, 1, 1), F(2, 2, 0, 1)
    t = tn.inner_terder(M2, a, b, c)
    w = tn.is_inner_terder(M2, t)
    assert w is not None and tn.inner_terder(M2, *w) == t
    for t in tn.terder_space(M2):
        assert tn.is_inner_terder(M2, t) is not None


def test_make_inner_terauto(T2):
    one = T2.unit
    assert tn.make_inner_terauto(T2, one, one, one) == identity_triple(3)
    w = F(1, 3, 2)
    s = inner_automorphism(T2, w)
    assert tn.make_inner_terauto(T2, w, one, one) == TernaryTriple(s, s, s)
    t = tn.make_inner_terauto(T2, w, F(1, 1, 1), F(-1, 2, 1))
    assert tn.is_terauto(T2, t)
    with pytest.raises(ComponentNotInvertible):
        tn.make_inner_terauto(T2, T2.basis_element(1), one, one)


def test_tab_family_examples(T2):
    a, b, d = F(1, 2, 0), F(0, 1, 1), F(3, 0, -1)
    assert tn.check_tab_family(T2, [a, b, a, d, d, b]) == (True, True)
    zero = F(0, 0, 0)
    assert tn.check_tab_family(T2, [T2.basis_element(0)] + [zero] * 5) == (False, False)
    assert tn.check_tab_family(T2, [zero] * 6) == (True, True)
    with pytest.raises(ComponentNotInvertible):
        tn.check_tab_family(T2, [zero] * 6, "automorphism")


def test_generalized_leibniz_examples(M2):
    for d in tn.derivation_space(M2):
        assert tn.satisfies_generalized_leibniz(M2, d)
    u = F(1, 2, 0, 3)
    assert tn.satisfies_generalized_leibniz(M2, left_op(M2, u))
    rand = Matrix([[1, 2, 0, 0], [0, 1, 0, 3], [1, 0, 0, 0], [0, 0, 0, 2]])
    assert not tn.satisfies_generalized_leibniz(M2, rand)
    with pytest.raises(GeneralizedLeibnizViolated):
        tn.extend_component(M2, rand, 2, F(0, 0, 0, 0))


def test_extend_component_examples(T2):
    d = tn.derivation_space(T2)[0]
    zero = F(0, 0, 0)
    assert tn.extend_component(T2, d, 2, zero) == TernaryTriple.diagonal(d)
    u, a = F(1, 1, 0), F(0, 2, 1)
    Lu, Ra = left_op(T2, u), right_op(T2, a)
    assert tn.extend_component(T2, Lu, 2, a) == TernaryTriple(Lu + Ra, Lu, Ra)
    assert tn.is_terder(T2, tn.extend_component(T2, right_op(T2, u), 3, a))


def test_zero_components(T2):
    assert len(tn.terders_with_zero_component(T2, 2)) == 3
    for t in tn.terders_with_zero_component(T2, 3):
        z = t.first @ T2.unit
        assert t.first == t.second == left_op(T2, z) and t.third.is_zero()


def test_dual_lift_correspondence(Dual1):
    ext = dual_extension(Dual1)
    for t in tn.terder_space(Dual1):
        assert tn.is_terauto(ext, tn.dual_lift_triple(Dual1, t))
    eye = Matrix.identity(2)
    assert not tn.is_terauto(ext, tn.dual_lift_triple(Dual1, TernaryTriple(eye, eye, eye)))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_roundtrip_property(coords):
    T2 = upper_triangular(2)
    d = tn.derivation_space(T2)[coords[0] % 2] * coords[1]
    x, y = F(*coords[3:6]), F(*coords[6:9])
    t = tn.compose_terder(T2, d, x, y)
    assert tn.is_terder(T2, t)
    assert tuple(tn.decompose_terder(T2, t)) == (d, x, y)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=12, max_size=12))
def test_inner_terder_property(coords):
    M2 = full_matrix(2)
    a, b, c = F(*coords[:4]), F(*coords[4:8]), F(*coords[8:])
    t = tn.inner_terder(M2, a, b, c)
    assert tn.is_terder(M2, t)
    assert tn.is_inner_terder(M2, t) is not None


def test_ad_convention(T2):
    z = T2.basis_element(1)
    assert ad(T2, z) == left_op(T2, z) - right_op(T2, z)


def test_shared_component_witness(T2):
    t = tn.terder_space(T2)[0]
    b = F(1, -1, 2)
    Rb = right_op(T2, b)
    u = TernaryTriple(t.first + Rb, t.second, t.third + Rb)
    w = tn.shared_component_witness(T2, u, t, 2)
    assert w is not None and right_op(T2, w) == Rb
