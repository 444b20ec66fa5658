"""JSON file formats: polytope files and map files."""

from __future__ import annotations

import json
import sys
from typing import Any

from .polytope import LatticePolytope, UnimodularMap

INT64_MIN, INT64_MAX = -(2**63), 2**63 - 1


class InputError(ValueError):
    """Malformed input file; the CLI turns this into exit code 2."""


def _load(source) -> Any:
    try:
        if source in (None, "-"):
            return json.load(sys.stdin)
        with open(source, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {source}: {exc.msg} (line {exc.lineno})") from None


def _int(x, where: str) -> int:
    # bool is an int subclass, floats are rejected even when integral
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{where}: expected an integer, got {x!r}")
    if not INT64_MIN <= x <= INT64_MAX:
        raise InputError(f"{where}: {x} is outside the signed 64-bit range")
    return x


def polytope_from_dict(data: Any) -> LatticePolytope:
    if not isinstance(data, dict):
        raise InputError("polytope file must hold a JSON object")
    if "dim" not in data or "vertices" not in data:
        raise InputError("polytope file needs 'dim' and 'vertices'")
    dim = _int(data["dim"], "dim")
    if dim < 0:
        raise InputError("dim must be non-negative")
    verts = data["vertices"]
    if not isinstance(verts, list) or not verts:
        raise InputError("'vertices' must be a non-empty array")
    rows = []
    for i, v in enumerate(verts):
        if not isinstance(v, list):
            raise InputError(f"vertices[{i}] is not an array")
        if len(v) != dim:
            raise InputError(f"vertices[{i}] has length {len(v)}, expected dim = {dim}")
        rows.append(tuple(_int(x, f"vertices[{i}][{j}]") for j, x in enumerate(v)))
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise InputError("'name' must be a string")
    return LatticePolytope(rows, dim, name)


def polytope_to_dict(P: LatticePolytope) -> dict:
    out = {"dim": P.ambient_dim, "vertices": [list(v) for v in P.vertices]}
    if P.name:
        out = {"name": P.name, **out}
    return out


def read_polytope(source) -> LatticePolytope:
    return polytope_from_dict(_load(source))


def dumps(data: Any) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2)


def write_polytope(P: LatticePolytope, fh=None) -> None:
    (fh or sys.stdout).write(dumps(polytope_to_dict(P)) + "\n")


def map_from_dict(data: Any) -> Any:
    """A bare unimodular map, a witness chain, or a classify result holding one."""
    from .classify import WitnessChain

    if not isinstance(data, dict):
        raise InputError("map file must hold a JSON object")
    if "witness" in data:
        data = data["witness"]
        if data is None:
            raise InputError("result carries no witness")
    try:
        if "normalize" in data:
            return WitnessChain.from_dict(data)
        if "map" in data and isinstance(data["map"], dict):
            data = data["map"]
        if "matrix" in data and "translation" in data:
            mat = data["matrix"]
            if not isinstance(mat, list) or not all(isinstance(r, list) for r in mat):
                raise InputError("'matrix' must be an array of arrays")
            M = [[_int(x, f"matrix[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(mat)]
            if not isinstance(data["translation"], list):
                raise InputError("'translation' must be an array")
            w = [_int(x, f"translation[{i}]") for i, x in enumerate(data["translation"])]
            return UnimodularMap(M, w)
    except InputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad map: {exc}") from None
    raise InputError("map file needs 'matrix' and 'translation', or a witness chain")


def read_map(source):
    return map_from_dict(_load(source))


def apply_any(T, P: LatticePolytope) -> LatticePolytope:
    from .classify import WitnessChain
    from .polytope import apply_map

    if isinstance(T, WitnessChain):
        return T.replay(P)
    if T.dim != P.ambient_dim:
        raise InputError(f"map acts on dimension {T.dim}, polytope has dim {P.ambient_dim}")
    return apply_map(T, P)

