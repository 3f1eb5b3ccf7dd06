"""JSON encoding of rationals, matrices, algebras, bimodules and triples.

Rationals are written as strings ``"p/q"`` (``"p"`` when ``q = 1``); floats
are rejected on input so that no rounding can slip in.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Algebra, check_valid
from .bimodule import Bimodule
from .errors import ParseError
from .linalg import Matrix, Vector
from .ternary import TernaryTriple
from .tri_ternary import TdComponents


def rational_to_json(x: Fraction) -> str:
    return str(Fraction(x))


def rational_from_json(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(f"expected an exact rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {x!r}") from exc
    raise ParseError(f"expected a rational, got {type(x).__name__}")


def vector_to_json(v: Vector) -> list[str]:
    return [rational_to_json(x) for x in v]


def vector_from_json(data, length: int | None = None) -> Vector:
    if not isinstance(data, list):
        raise ParseError("expected a list of rationals")
    v = tuple(rational_from_json(x) for x in data)
    if length is not None and len(v) != length:
        raise ParseError(f"expected a vector of length {length}, got {len(v)}")
    return v


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [vector_to_json(r) for r in m.rows]


def matrix_from_json(data, shape: tuple[int, int] | None = None) -> Matrix:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ParseError("expected a matrix as a list of rows")
    rows = [vector_from_json(r) for r in data]
    ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise ParseError("matrix rows have different lengths")
    m = Matrix(rows, ncols)
    if shape is not None and m.shape != tuple(shape):
        raise ParseError(f"expected a {shape[0]}x{shape[1]} matrix, got {m.shape[0]}x{m.shape[1]}")
    return m


def _require(data: dict, *keys):
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise ParseError(f"missing keys: {', '.join(missing)}")


def algebra_to_json(a: Algebra) -> dict:
    out = {
        "dim": a.dim,
        "basis": list(a.basis),
        "unit": vector_to_json(a.unit),
        "table": [[vector_to_json(v) for v in row] for row in a.table],
    }
    if a.name:
        out["name"] = a.name
    return out


def algebra_from_json(data) -> Algebra:
    """Accept a preset name or an object with ``dim``, ``unit`` and ``table``."""
    if isinstance(data, str):
        from .catalog import algebra_preset
        return algebra_preset(data)
    _require(data, "dim", "unit", "table")
    n = data["dim"]
    if not isinstance(n, int) or n < 1:
        raise ParseError("dim must be a positive integer")
    table = data["table"]
    if not isinstance(table, list) or len(table) != n or any(
            not isinstance(r, list) or len(r) != n for r in table):
        raise ParseError(f"table must be {n}x{n} lists of structure vectors")
    table = tuple(tuple(vector_from_json(v, n) for v in row) for row in table)
    basis = tuple(data.get("basis") or (f"e{i}" for i in range(n)))
    if len(basis) != n:
        raise ParseError("basis has the wrong length")
    alg = Algebra(table, vector_from_json(data["unit"], n), basis, name=data.get("name", ""))
    return check_valid(alg)


def bimodule_to_json(m: Bimodule) -> dict:
    return {"dim": m.dim, "left": [matrix_to_json(x) for x in m.left],
            "right": [matrix_to_json(x) for x in m.right]}


def bimodule_from_json(data) -> Bimodule:
    _require(data, "dim", "left", "right")
    n = data["dim"]
    if not isinstance(n, int) or n < 1:
        raise ParseError("bimodule dim must be a positive integer")
    left = [matrix_from_json(x, (n, n)) for x in data["left"]]
    right = [matrix_from_json(x, (n, n)) for x in data["right"]]
    return Bimodule(n, tuple(left), tuple(right))


_TRIPLE_KEYS = {"derivation": ("d1", "d2", "d3"), "automorphism": ("s1", "s2", "s3")}


def triple_to_json(t: TernaryTriple, kind: str = "derivation") -> dict:
    return {k: matrix_to_json(m) for k, m in zip(_TRIPLE_KEYS[kind], t)}


def triple_from_json(data, n: int | None = None) -> tuple[TernaryTriple, str]:
    """Parse a triple; returns it together with its kind (``derivation`` or ``automorphism``)."""
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object holding a triple")
    for kind, keys in _TRIPLE_KEYS.items():
        if all(k in data for k in keys):
            shape = (n, n) if n is not None else None
            mats = [matrix_from_json(data[k], shape) for k in keys]
            size = mats[0].nrows
            if any(m.shape != (size, size) for m in mats):
                raise ParseError("triple components must be square of equal size")
            return TernaryTriple(*mats), kind
    raise ParseError("a triple needs keys d1, d2, d3 or s1, s2, s3")


_MATRIX_COMPONENTS = ("delta1", "delta2", "delta3", "tau1", "tau2", "tau3", "mu1", "mu2", "mu3")
_VECTOR_COMPONENTS = ("n1", "n1p", "n2")


def components_to_json(c: TdComponents) -> dict:
    out = {k: matrix_to_json(getattr(c, k)) for k in _MATRIX_COMPONENTS}
    out.update({k: vector_to_json(getattr(c, k)) for k in _VECTOR_COMPONENTS})
    return out


def components_from_json(data, na: int, nm: int, nb: int) -> TdComponents:
    _require(data, *_MATRIX_COMPONENTS, *_VECTOR_COMPONENTS)
    sizes = {"delta": na, "tau": nm, "mu": nb}
    kw = {}
    for k in _MATRIX_COMPONENTS:
        s = sizes[k.rstrip("123")]
        kw[k] = matrix_from_json(data[k], (s, s))
    for k in _VECTOR_COMPONENTS:
        kw[k] = vector_from_json(data[k], nm)
    return TdComponents(**kw)
