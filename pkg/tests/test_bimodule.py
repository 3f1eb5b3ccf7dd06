from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from triality.algebra import direct_product, rationals
from triality.bimodule import Bimodule, is_faithful, regular_bimodule, validate_bimodule
from triality.linalg import Matrix


def test_regular_bimodule_valid_and_faithful(T2, M2):
    for alg in (T2, M2):
        m = regular_bimodule(alg)
        assert validate_bimodule(alg, alg, m) == []
        assert is_faithful(alg, alg, m) == (True, True)


def test_left_unit_not_identity(T2):
    m = regular_bimodule(T2)
    bad = Bimodule(3, (Matrix.zeros(3),) + m.left[1:], m.right)
    problems = validate_bimodule(T2, T2, bad)
    assert problems and "1_A" in problems[0]


def test_first_coordinate_action_not_left_faithful():
    QxQ = direct_product(rationals(), rationals())
    Q = rationals()
    one, zero = Matrix.identity(1), Matrix.zeros(1)
    m = Bimodule(1, (one, zero), (one,))
    assert validate_bimodule(QxQ, Q, m) == []
    assert is_faithful(QxQ, Q, m)[0] is False


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_action_compatibility(coords):
    from triality.algebra import upper_triangular
    T2 = upper_triangular(2)
    m = regular_bimodule(T2)
    a = tuple(Fraction(x) for x in coords[:3])
    v = tuple(Fraction(x) for x in coords[3:6])
    b = tuple(Fraction(x) for x in coords[6:])
    assert m.act_right(b) @ (m.act_left(a) @ v) == m.act_left(a) @ (m.act_right(b) @ v)
