"""(A, B)-bimodules given by action matrices.

``left[i]`` is the matrix of ``m -> e_i m`` for the i-th basis element of A
and ``right[j]`` the matrix of ``m -> m f_j`` for the j-th basis element of
B.  Because matrices act on the left, ``right`` is an antihomomorphism:
``right(b b') = right(b') right(b)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra, _combo_ops
from .errors import DimensionMismatch, InvalidBimodule
from .linalg import Matrix, Vector, rank

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Bimodule:
    dim: int
    left: tuple
    right: tuple

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        for m in self.left + self.right:
            if m.shape != (self.dim, self.dim):
                raise InvalidBimodule(f"action matrix of shape {m.shape}, expected "
                                      f"{(self.dim, self.dim)}")

    def act_left(self, a: Vector) -> Matrix:
        """Matrix of ``m -> a m``."""
        if len(a) != len(self.left):
            raise DimensionMismatch("left acting element has the wrong length")
        return _combo_ops(self.left, a, self.dim)

    def act_right(self, b: Vector) -> Matrix:
        """Matrix of ``m -> m b``."""
        if len(b) != len(self.right):
            raise DimensionMismatch("right acting element has the wrong length")
        return _combo_ops(self.right, b, self.dim)


def regular_bimodule(a: Algebra) -> Bimodule:
    """``A`` as an (A, A)-bimodule under multiplication."""
    return Bimodule(a.dim, a.left_basis_ops, a.right_basis_ops)


def validate_bimodule(A: Algebra, B: Algebra, m: Bimodule) -> list[str]:
    """Violated bimodule axioms on basis tuples; empty when valid."""
    if m.dim < 1:
        return ["bimodule must be nonzero"]
    if len(m.left) != A.dim:
        return [f"{len(m.left)} left action matrices for an algebra of dimension {A.dim}"]
    if len(m.right) != B.dim:
        return [f"{len(m.right)} right action matrices for an algebra of dimension {B.dim}"]
    eye = Matrix.identity(m.dim)
    if m.act_left(A.unit) != eye:
        return ["left action of 1_A is not the identity"]
    if m.act_right(B.unit) != eye:
        return ["right action of 1_B is not the identity"]
    for i in range(A.dim):
        for j in range(A.dim):
            if m.act_left(A.table[i][j]) != m.left[i] @ m.left[j]:
                return [f"left action is not multiplicative at ({i}, {j})"]
    for i in range(B.dim):
        for j in range(B.dim):
            if m.act_right(B.table[i][j]) != m.right[j] @ m.right[i]:
                return [f"right action is not multiplicative at ({i}, {j})"]
    for i in range(A.dim):
        for j in range(B.dim):
            if m.left[i] @ m.right[j] != m.right[j] @ m.left[i]:
                return [f"left and right actions do not commute at ({i}, {j})"]
    return []


def check_bimodule(A: Algebra, B: Algebra, m: Bimodule) -> Bimodule:
    problems = validate_bimodule(A, B, m)
    if problems:
        raise InvalidBimodule(problems[0])
    return m


def _stacked_rank(ops) -> int:
    # columns = acting basis elements, rows = flattened operator entries
    cols = [op.entries() for op in ops]
    if not cols:
        return 0
    return rank(Matrix.from_columns(cols))


def is_faithful(A: Algebra, B: Algebra, m: Bimodule) -> tuple[bool, bool]:
    """(left faithful, right faithful), by injectivity of ``a -> left(a)`` and ``b -> right(b)``."""
    return _stacked_rank(m.left) == A.dim, _stacked_rank(m.right) == B.dim
