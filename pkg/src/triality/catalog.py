"""Named presets: algebras, triangular algebras, maps and triples.

Every preset is built in code; the JSON files under ``triality/presets`` are
exported from these builders (``export_presets``) and a test keeps them in
sync.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .algebra import Algebra, preset
from .errors import ParseError, UnknownPreset
from .linalg import Matrix
from .ternary import TernaryTriple, derivation_space
from .triangular import TriangularAlgebra, build_triangular

PRESET_DIR = Path(__file__).with_name("presets")


@dataclass
class AutomorphismProbe:
    """A map to feed to ``factor_automorphism`` with the outcome it should produce."""
    name: str
    sigma: Matrix
    expect: str = "ok"


@dataclass
class TrianEntry:
    algebra: TriangularAlgebra
    description: dict
    probes: list = field(default_factory=list)
    name: str = ""


def algebra_preset(name: str) -> Algebra:
    try:
        return preset(name)
    except KeyError:
        raise UnknownPreset(f"unknown algebra preset {name!r}") from None


def block_mixing_sigma() -> Matrix:
    """The block-mixing automorphism of ``Trian(T2, T2, T2)``.

    In coordinates ``[a, c, b | d, f, e | g, i, h]`` (each block being
    ``e11, e12, e22``) it sends the matrix with diagonal blocks
    ``[[a, c], [0, b]]``, ``[[g, i], [0, h]]`` and corner ``[[d, f], [0, e]]`` to
    diagonal blocks ``[[a, d], [0, g]]``, ``[[b, e], [0, h]]`` and corner
    ``[[c, f], [0, i]]``.
    """
    perm = list(range(9))
    for i, j in ((1, 3), (2, 6), (5, 7)):
        perm[i], perm[j] = perm[j], perm[i]
    # column k holds the image of basis vector k
    cols = [[1 if r == perm[k] else 0 for r in range(9)] for k in range(9)]
    return Matrix.from_columns(cols, 9)


def counterexample_preset_triple(t: TriangularAlgebra) -> TernaryTriple:
    from .tri_ternary import counterexample_triple
    return counterexample_triple(t, derivation_space(t.A)[0])


_TRIAN_DESCRIPTIONS = {
    "trian-T2T2T2": {"A": "T2", "B": "T2", "M": "regular"},
    "trian-QQQ": {"A": "Q", "B": "Q", "M": "regular"},
    "trian-Dual1": {"A": "Dual1", "B": "Dual1", "M": "regular"},
}

_TRIAN_PROBES = {
    "jondrup": ("trian-T2T2T2", [("jondrup-sigma", "NotMPreserving")]),
}

MAP_PRESETS = {"jondrup-sigma": ("trian-T2T2T2", block_mixing_sigma)}
TRIPLE_PRESETS = {"example-4-2": ("trian-T2T2T2", counterexample_preset_triple)}
TRIAN_PRESETS = tuple(_TRIAN_DESCRIPTIONS) + tuple(_TRIAN_PROBES)
ALGEBRA_FILES = ("T2", "M2", "Dual1")


def trian_from_json(data, name: str = "") -> TrianEntry:
    """Build a triangular algebra from ``{"A": ..., "B": ..., "M": ...}``.

    ``A`` and ``B`` are algebra objects or preset names; ``M`` is a bimodule
    object or ``"regular"``.  Optional ``"automorphisms"`` lists probes
    ``{"name", "sigma" | "preset", "expect"}``.
    """
    from .serialize import algebra_from_json, bimodule_from_json, matrix_from_json

    if isinstance(data, str):
        return trian_preset(data)
    if not isinstance(data, dict) or "A" not in data or "B" not in data:
        raise ParseError("a triangular algebra needs keys A and B")
    A = algebra_from_json(data["A"])
    B = algebra_from_json(data["B"])
    m = data.get("M", "regular")
    M = None if m == "regular" else bimodule_from_json(m)
    t = build_triangular(A, B, M, name=data.get("name", ""))
    probes = []
    for item in data.get("automorphisms", []):
        if not isinstance(item, dict) or "name" not in item:
            raise ParseError("automorphism probes need a name")
        if "sigma" in item:
            sigma = matrix_from_json(item["sigma"], (t.dim, t.dim))
        else:
            sigma = map_preset(item.get("preset", item["name"]))[1]
        probes.append(AutomorphismProbe(item["name"], sigma, item.get("expect", "ok")))
    return TrianEntry(t, data, probes, name)


def trian_preset(name: str) -> TrianEntry:
    if name in _TRIAN_DESCRIPTIONS:
        return trian_from_json(_TRIAN_DESCRIPTIONS[name], name)
    if name in _TRIAN_PROBES:
        base, probes = _TRIAN_PROBES[name]
        desc = dict(_TRIAN_DESCRIPTIONS[base])
        desc["automorphisms"] = [{"name": n, "preset": n, "expect": e} for n, e in probes]
        return trian_from_json(desc, name)
    raise UnknownPreset(f"unknown triangular preset {name!r}")


def map_preset(name: str) -> tuple[TrianEntry, Matrix]:
    if name not in MAP_PRESETS:
        raise UnknownPreset(f"unknown map preset {name!r}")
    base, build = MAP_PRESETS[name]
    return trian_preset(base), build()


def triple_preset(name: str) -> tuple[TrianEntry, TernaryTriple]:
    if name not in TRIPLE_PRESETS:
        raise UnknownPreset(f"unknown triple preset {name!r}")
    base, build = TRIPLE_PRESETS[name]
    entry = trian_preset(base)
    return entry, build(entry.algebra)


def preset_documents() -> dict[str, dict]:
    """JSON documents for every shipped preset file, keyed by file stem."""
    from .serialize import algebra_to_json, matrix_to_json, triple_to_json

    docs = {name: algebra_to_json(algebra_preset(name)) for name in ALGEBRA_FILES}
    for name, desc in _TRIAN_DESCRIPTIONS.items():
        docs[name] = dict(desc, name=name)
    for name, (base, probes) in _TRIAN_PROBES.items():
        desc = dict(_TRIAN_DESCRIPTIONS[base], name=name)
        desc["automorphisms"] = [
            {"name": n, "sigma": matrix_to_json(map_preset(n)[1]), "expect": e} for n, e in probes
        ]
        docs[name] = desc
    for name, (base, _) in MAP_PRESETS.items():
        docs[name] = {"trian": base, "sigma": matrix_to_json(map_preset(name)[1])}
    for name, (base, _) in TRIPLE_PRESETS.items():
        docs[name] = dict(triple_to_json(triple_preset(name)[1]), trian=base)
    return docs


def dump_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def export_presets(directory: Path | str = PRESET_DIR) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, doc in preset_documents().items():
        path = directory / f"{name}.json"
        path.write_text(dump_json(doc))
        written.append(path)
    return written
