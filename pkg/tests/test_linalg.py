from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from triality.errors import NoSolution, Singular
from triality.linalg import Matrix, RowSpace, inverse, kernel, rank, solve, vector
from triality.linalg import _rref_py
from triality.linalg._backend import BACKEND

from oracles import to_sympy

small = st.integers(min_value=-5, max_value=5)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return Matrix([[draw(small) for _ in range(c)] for _ in range(r)], c)


def F(*xs):
    return tuple(Fraction(x) for x in xs)


def test_kernel_rank_one():
    assert kernel(Matrix([[1, 2], [2, 4]])) == [F(-2, 1)]


def test_kernel_identity_empty():
    assert kernel(Matrix.identity(3)) == []


def test_kernel_zero_matrix_standard_basis():
    assert kernel(Matrix.zeros(2, 3)) == [F(1, 0, 0), F(0, 1, 0), F(0, 0, 1)]


def test_solve_identity():
    v = F(3, -1, 2)
    assert solve(Matrix.identity(3), v) == v


def test_solve_free_variable_zeroed():
    assert solve(Matrix([[1, 1]]), F(3)) == F(3, 0)


def test_solve_inconsistent():
    with pytest.raises(NoSolution):
        solve(Matrix([[1], [1]]), F(1, 2))


def test_inverse_examples():
    assert inverse(Matrix.identity(3)) == Matrix.identity(3)
    assert inverse(Matrix([[2]])) == Matrix([[Fraction(1, 2)]])
    with pytest.raises(Singular):
        inverse(Matrix([[1, 1], [2, 2]]))


def test_floats_rejected():
    with pytest.raises(TypeError):
        vector([0.5])


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_kernel_vectors_annihilated(m):
    ker = kernel(m)
    assert all(not any(m @ v) for v in ker)
    assert rank(m) + len(ker) == m.ncols


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == to_sympy(m).rank()


@settings(max_examples=80, deadline=None)
@given(matrices(), st.data())
def test_solve_consistent_rhs(m, data):
    x = tuple(Fraction(data.draw(small)) for _ in range(m.ncols))
    b = m @ x
    assert m @ solve(m, b) == b


@settings(max_examples=60, deadline=None)
@given(matrices(4, 4))
def test_inverse_roundtrip(m):
    if m.nrows != m.ncols or rank(m) < m.nrows:
        return
    inv = inverse(m)
    assert m @ inv == Matrix.identity(m.nrows) == inv @ m
    assert inverse(inv) == m
    assert to_sympy(inv) == to_sympy(m).inv()


def test_kernel_is_reduced_column_echelon():
    m = Matrix([[1, 2, 0, 3], [0, 0, 1, 4]])
    ker = kernel(m)
    # one vector per free column (1 and 3), with a unit in its own free slot
    assert [v[1] for v in ker] == [1, 0] and [v[3] for v in ker] == [0, 1]


def test_rowspace_equality_ignores_generators():
    a = RowSpace([F(1, 1, 0), F(0, 1, 1)], 3)
    b = RowSpace([F(1, 0, -1), F(2, 3, 1)], 3)
    assert a == b and a.dim == 2
    assert F(1, 2, 1) in a and F(1, 0, 0) not in a


# backends --------------------------------------------------------------

@settings(max_examples=120, deadline=None)
@given(st.lists(st.lists(st.integers(-10**6, 10**6), min_size=4, max_size=4), min_size=1, max_size=6))
def test_backends_agree(rows):
    from triality.linalg import _backend
    expected = _rref_py.rref_int([list(r) for r in rows], 4)
    assert _backend.rref_int([list(r) for r in rows], 4) == expected


def test_compiled_backend_handles_overflow():
    if BACKEND != "cython":
        pytest.skip("compiled extension not built")
    from triality.linalg import _rref_c
    big = 2 ** 61
    rows = [[big, 3, 1], [5, big + 1, 7], [11, 13, big - 1]]
    assert _rref_c.rref_int([list(r) for r in rows], 3) == _rref_py.rref_int([list(r) for r in rows], 3)


def test_rref_matches_sympy_on_wide_entries():
    rows = [[3 ** 30, 2, 5, 7], [1, 2 ** 40, 0, 1], [4, 4, 4, 4]]
    m = Matrix(rows, 4)
    assert rank(m) == sympy.Matrix(rows).rank()
    assert all(not any(m @ v) for v in kernel(m))


def test_pure_python_fallback_selected_by_env():
    import os
    import subprocess
    import sys
    env = dict(os.environ, TRIALITY_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from triality.linalg import BACKEND; print(BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
