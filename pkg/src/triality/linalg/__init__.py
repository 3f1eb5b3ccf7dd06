"""Exact rational linear algebra: vectors, dense matrices, kernels, solves."""

from ._backend import BACKEND
from .matrix import (
    Matrix,
    RowSpace,
    Vector,
    as_fraction,
    inverse,
    is_zero_vector,
    kernel,
    kernel_of_rows,
    rank,
    rref_rows,
    solve,
    unit_vector,
    vadd,
    vcombo,
    vector,
    vscale,
    vsub,
    zero_vector,
)

__all__ = [
    "BACKEND",
    "Matrix",
    "RowSpace",
    "Vector",
    "as_fraction",
    "inverse",
    "is_zero_vector",
    "kernel",
    "kernel_of_rows",
    "rank",
    "rref_rows",
    "solve",
    "unit_vector",
    "vadd",
    "vcombo",
    "vector",
    "vscale",
    "vsub",
    "zero_vector",
]
