"""Generators for the classified families and the structural tests used to match them."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import linalg
from .ehrhart import DeltaVector
from .groups import InvalidParameters, group_params_from_exponents, group_from_case
from .polytope import LatticePolytope, UnimodularMap, apply_map, pyramid, sweep_points

__all__ = [
    "SIMPLEX_FAMILIES", "TABLE2_IDS", "TABLE3_IDS", "CatalogEntry", "make_simplex",
    "make_table2", "make_table3", "pyramid", "strip_pyramids", "spans_lattice",
    "feasible_delta", "half_sum_invariant", "table1_instances", "table3_instances",
    "canonical_family", "table2_claimed_delta", "table3_claimed_delta", "table3_dimension",
    "simplex_dimension", "check_simplex_params", "parse_vector", "find_apex", "replay_strip",
    "PyramidStrip",
]


# -- vector helpers --------------------------------------------------------------

def _unit(d: int, i: int) -> List[int]:
    v = [0] * d
    v[i - 1] = 1
    return v


def _range_sum(d: int, lo: int, hi: int, coeff: int = 1, skip_d: bool = False) -> List[int]:
    """``coeff * sum_{i=lo}^{hi} e_i`` with empty ranges contributing nothing.

    ``skip_d`` drops the index ``d`` when it falls inside the range.
    """
    v = [0] * d
    for i in range(lo, hi + 1):
        if skip_d and i == d:
            continue
        if not 1 <= i <= d:
            raise InvalidParameters(f"summation index {i} outside 1..{d}")
        v[i - 1] += coeff
    return v


def _add(*vs: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sum(x) for x in zip(*vs))


def _base(d: int, upto: int) -> List[Tuple[int, ...]]:
    return [tuple([0] * d)] + [tuple(_unit(d, i)) for i in range(1, upto + 1)]


# -- simplices ----------------------------------------------------------------------

SIMPLEX_FAMILIES = ("Δ2", "Δ3", "Δ41", "Δ42", "Δ43")
_ALIASES = {"D2": "Δ2", "D3": "Δ3", "D41": "Δ41", "D42": "Δ42", "D43": "Δ43"}

# family -> (volume, group case)
_SIMPLEX_INFO = {
    "Δ2": (2, "V2"), "Δ3": (3, "V3"), "Δ41": (4, "V4-1'"), "Δ42": (4, "V4-2'"), "Δ43": (4, "V4-L2"),
}


def canonical_family(name: str) -> str:
    return _ALIASES.get(name, name)


def simplex_dimension(family: str, exps: Sequence[int]) -> int:
    family = canonical_family(family)
    if family == "Δ2":
        return 2 * exps[0] - 1
    if family == "Δ3":
        return exps[0] + exps[1] - 1
    if family == "Δ41":
        return exps[0] + exps[2] - 1
    if family == "Δ42":
        return exps[1] + exps[2] - 1
    if family == "Δ43":
        return sum(exps) - 1
    raise KeyError(family)


def check_simplex_params(family: str, exps: Sequence[int]) -> None:
    """Raise ``InvalidParameters`` naming the violated condition."""
    family = canonical_family(family)
    if family not in _SIMPLEX_INFO:
        raise InvalidParameters(f"unknown simplex family {family!r}")
    V, case = _SIMPLEX_INFO[family]
    if len(exps) != V - 1:
        raise InvalidParameters(f"{family} takes {V - 1} exponent(s)")
    if exps[0] < 1 or list(exps) != sorted(exps):
        raise InvalidParameters("need 1 <= i1 <= i2 <= ...")
    if family == "Δ41":
        i1, i2, i3 = exps
        if not i1 < i2 < i3:
            raise InvalidParameters("Δ41 needs i1 < i2 < i3")
        if i1 + i3 < 2 * i2:
            raise InvalidParameters("Δ41 needs i1 + i3 >= 2 i2")
    params = group_params_from_exponents(V, exps, case)
    group_from_case(case, params)  # raises on degenerate or non-integral groups


def make_simplex(family: str, *exps: int) -> LatticePolytope:
    family = canonical_family(family)
    check_simplex_params(family, exps)
    d = simplex_dimension(family, exps)
    name = f"{family}{tuple(exps)}"
    if family == "Δ2":
        last = _add(_range_sum(d, 1, d - 1), [2 * x for x in _unit(d, d)])
        verts = _base(d, d - 1) + [last]
    elif family == "Δ3":
        i1, i2 = exps
        m = -i1 + 2 * i2
        last = _add(_range_sum(d, 1, m - 1, 2, skip_d=True), _range_sum(d, m, d - 1),
                    [3 * x for x in _unit(d, d)])
        verts = _base(d, d - 1) + [last]
    elif family == "Δ41":
        i1, i2, i3 = exps
        p, r = i1 - 2 * i2 + i3, 2 * i1 - i2
        last = _add(_range_sum(d, 1, p, 2), _range_sum(d, p + 1, r, 1, skip_d=True),
                    _range_sum(d, r + 1, d - 1, 3), [4 * x for x in _unit(d, d)])
        verts = _base(d, d - 1) + [last]
    elif family == "Δ42":
        i1, i2, i3 = exps
        p, r = -2 * i1 + i2 + i3, -i1 + 2 * i2
        last = _add(_range_sum(d, 1, p, 2), _range_sum(d, p + 1, r, 1, skip_d=True),
                    _range_sum(d, r + 1, d - 1, 3), [4 * x for x in _unit(d, d)])
        verts = _base(d, d - 1) + [last]
    else:
        i1, i2, i3 = exps
        m = -i1 + i2 + i3
        u = _add(_range_sum(d, m, d - 2), [2 * x for x in _unit(d, d - 1)])
        w = _add(_range_sum(d, 1, m - 1), _range_sum(d, 2 * i3 - 1, d - 2),
                 [2 * x for x in _unit(d, d)])
        verts = _base(d, d - 2) + [u, w]
    return LatticePolytope(verts, d, name, _trusted=True)


def table1_instances(dmax: int, dmin: int = 1) -> Iterator[Tuple[str, Tuple[int, ...]]]:
    """Every ``(family, exponents)`` passing the family conditions with ``dmin <= d <= dmax``."""
    for family in SIMPLEX_FAMILIES:
        V = _SIMPLEX_INFO[family][0]
        for exps in combinations_with_replacement(range(1, dmax + 2), V - 1):
            try:
                check_simplex_params(family, exps)
            except InvalidParameters:
                continue
            if dmin <= simplex_dimension(family, exps) <= dmax:
                yield family, exps


# -- spanning polytopes ------------------------------------------------------------------

_TABLE2_ROWS = {
    "P2": (2, "0, e1, e2, e1+e2"),
    "P3_1": (2, "0, 2e1, e2, e1+e2"),
    "P3_2": (3, "0, e1, e2, e3, e1+e3, e2+e3"),
    "Q3_1": (3, "0, e1, e2, e3, e1+e2-2e3"),
    "Q3_2": (4, "0, e1, e2, e3, e4, -e1-e2+e3+e4"),
    "P4_1": (2, "0, 2e1, e2, 2e1+e2"),
    "P4_2": (2, "0, 3e1, e1+e2, 2e1+e2"),
    "P4_3": (3, "0, e1, e2, e1+e3, e2+e3, 2e3"),
    "P4_4": (4, "0, e1, e2, e3, e4, e1+e2, e1+e3, e1+e4"),
    "Q4_1": (2, "e1, -e2, e1-e2, -e1+e2"),
    "Q4_2": (2, "e1, e2, -e1, -e2"),
    "Q4_3": (3, "e1, e2, e3, e1+e2, -e3"),
    "Q4_4": (3, "0, e1, e2, e1+e2, 2e3"),
    "Q4_5": (3, "0, e1, e2, e3, e1+e2, e1+e2+e3"),
    "Q4_6": (3, "0, e1, e2, e3, e1+e2, e1+e2-e3"),
    "Q4_7": (4, "0, 2e1, e4, e2+e4, e3+e4, e2+e3+e4"),
    "Q4_8": (4, "0, e1, e2, e1+e2, e3, e4, e3+e4"),
    "Q4_9": (5, "0, e1, e2, e1+e2, e5, e3+e5, e4+e5, e3+e4+e5"),
    "R4_1": (3, "0, e1, e2, e3, e1+e2-3e3"),
    "R4_2": (4, "0, e1, e2, e3, e4, -2e1-e2+e3+e4"),
    "S4_1": (4, "0, e1, e2, e3, e4, -e1-e2-e3+e4"),
    "S4_2": (4, "0, e1, e2, e3, e4, -e1-e2-e3+2e4"),
    "S4_3": (5, "0, e1, e2, e3, e4, e5, -2e1-e2+e3+e4+e5"),
    "S4_4": (6, "0, e1, e2, e3, e4, e5, e6, -e1-e2-e3+e4+e5+e6"),
}
TABLE2_IDS = tuple(_TABLE2_ROWS)

_TABLE2_DELTA = {"P2": (1, 1), "P3": (1, 2), "Q3": (1, 1, 1), "P4": (1, 3),
                 "Q4": (1, 2, 1), "R4": (1, 1, 2), "S4": (1, 1, 1, 1)}

_TERM = re.compile(r"([+-]?)(\d*)e(\d+)")


def parse_vector(text: str, d: int) -> Tuple[int, ...]:
    """Parse ``"-2e1+e3"``-style sums of unit vectors; ``"0"`` is the origin."""
    text = text.replace(" ", "")
    v = [0] * d
    if text == "0":
        return tuple(v)
    pos = 0
    for m in _TERM.finditer(text):
        if m.start() != pos:
            raise ValueError(f"cannot parse {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        v[int(m.group(3)) - 1] += sign * coeff
        pos = m.end()
    if pos != len(text):
        raise ValueError(f"cannot parse {text!r}")
    return tuple(v)


def make_table2(ident: str) -> LatticePolytope:
    if ident not in _TABLE2_ROWS:
        raise InvalidParameters(f"unknown spanning polytope {ident!r}")
    d, row = _TABLE2_ROWS[ident]
    return LatticePolytope([parse_vector(t, d) for t in row.split(",")], d, ident)


def table2_claimed_delta(ident: str) -> DeltaVector:
    d = _TABLE2_ROWS[ident][0]
    return DeltaVector(_TABLE2_DELTA[ident.split("_")[0]]).padded(d)


# -- non-spanning families ------------------------------------------------------------------

TABLE3_IDS = ("A4_1", "A4_2", "A4_3", "B4")


def table3_dimension(ident: str, k: int) -> int:
    return {"A4_1": 2 * k, "A4_2": 2 * k + 1, "A4_3": 2 * k + 2, "B4": 2 * k}[ident]


def make_table3(ident: str, k: int) -> LatticePolytope:
    if ident not in TABLE3_IDS:
        raise InvalidParameters(f"unknown non-spanning family {ident!r}")
    if k < 2:
        raise InvalidParameters("need k >= 2")
    d = table3_dimension(ident, k)
    two_ed = [2 * x for x in _unit(d, d)]
    if ident == "A4_1":
        extra = [_add(_range_sum(d, 1, d - 2), two_ed), _add(_unit(d, 1), _range_sum(d, d - 1, d - 1, -1))]
    elif ident == "A4_2":
        extra = [_add(_range_sum(d, 1, d - 3), two_ed), _add(_unit(d, d - 2), _unit(d, d - 1))]
    elif ident == "A4_3":
        extra = [_add(_range_sum(d, 1, d - 4), two_ed),
                 _add(_range_sum(d, d - 3, d - 3, -1), _unit(d, d - 2), _unit(d, d - 1))]
    else:
        extra = [_add(_range_sum(d, 1, d - 2), two_ed), _add(_range_sum(d, 1, 1, -1), _unit(d, d - 1))]
    return LatticePolytope(_base(d, d - 1) + extra, d, f"{ident}(k={k})", _trusted=True)


def table3_claimed_delta(ident: str, k: int) -> DeltaVector:
    d = table3_dimension(ident, k)
    if ident == "B4":
        return DeltaVector.from_exponents((1, k, k), d)
    return DeltaVector.from_exponents((1, k, k + 1), d)


def table3_instances(kmax: int, kmin: int = 2) -> Iterator[Tuple[str, int]]:
    for k in range(kmin, kmax + 1):
        for ident in TABLE3_IDS:
            yield ident, k


# -- catalog entries ------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    family: str
    params: Tuple[int, ...] = ()
    pyramids: int = 0

    @property
    def kind(self) -> str:
        if self.family in SIMPLEX_FAMILIES:
            return "simplex"
        if self.family in _TABLE2_ROWS:
            return "spanning"
        if self.family in TABLE3_IDS:
            return "non-spanning"
        if self.family == "Δ1":
            return "unimodular"
        raise KeyError(self.family)

    def core(self) -> LatticePolytope:
        kind = self.kind
        if kind == "simplex":
            return make_simplex(self.family, *self.params)
        if kind == "spanning":
            return make_table2(self.family)
        if kind == "non-spanning":
            return make_table3(self.family, self.params[0])
        return LatticePolytope([()], 0, "Δ1", _trusted=True)

    def polytope(self) -> LatticePolytope:
        P = self.core()
        for _ in range(self.pyramids):
            P = pyramid(P)
        return P

    def claimed_delta(self) -> DeltaVector:
        kind = self.kind
        if kind == "simplex":
            exps = self.params
            d = simplex_dimension(self.family, exps)
            base = DeltaVector.from_exponents(exps, d)
        elif kind == "spanning":
            base = table2_claimed_delta(self.family)
        elif kind == "non-spanning":
            base = table3_claimed_delta(self.family, self.params[0])
        else:
            base = DeltaVector((1,))
        return base.padded(base.d + self.pyramids)

    def param_dict(self) -> Dict[str, int]:
        if self.kind == "simplex":
            return {f"i{j + 1}": x for j, x in enumerate(self.params)}
        if self.kind == "non-spanning":
            return {"k": self.params[0]}
        return {}

    def label(self) -> str:
        pd = self.param_dict()
        inner = ",".join(f"{k}={v}" for k, v in pd.items())
        return f"{self.family} ({inner})" if inner else self.family

    def to_dict(self) -> dict:
        return {"family": self.family, "params": self.param_dict(), "pyramids": self.pyramids}


# -- structure -----------------------------------------------------------------

def spans_lattice(P: LatticePolytope) -> bool:
    """Whether the lattice points of ``P`` at height one generate ``Z^{d+1}``."""
    if not P.is_full_dimensional:
        raise ValueError("spans_lattice needs a full-dimensional polytope")
    rows = [list(p) + [1] for p in sweep_points(P)]
    divisors = linalg.elementary_divisors(rows)
    return len(divisors) == P.ambient_dim + 1 and all(s == 1 for s in divisors)


@dataclass(frozen=True)
class PyramidStrip:
    core: LatticePolytope
    layers: int
    maps: Tuple[UnimodularMap, ...] = field(default=())


def find_apex(P: LatticePolytope) -> Optional[Tuple[int, UnimodularMap]]:
    """A vertex over which ``P`` is a lattice pyramid, with the map that
    sends ``P`` onto ``Pyr(base)`` (apex to ``e_d``, base into ``x_d = 0``)."""
    d = P.ambient_dim
    if d == 0 or P.n_vertices < 2:
        return None
    for idx, v in enumerate(P.vertices):
        rest = [u for j, u in enumerate(P.vertices) if j != idx]
        r0 = rest[0]
        diffs = [[a - b for a, b in zip(u, r0)] for u in rest[1:]]
        if (linalg.rank(diffs) if diffs else 0) != d - 1:
            continue
        B = linalg.saturated_basis(diffs, d) if d > 1 else []
        normal = linalg.primitive(linalg.cofactor_normal(B)) if d > 1 else [1]
        dist = sum(a * (x - y) for a, x, y in zip(normal, v, r0))
        if abs(dist) != 1:
            continue
        full = linalg.complete_to_unimodular(B, d)
        inv = linalg.integer_inverse(full)
        y = linalg.vecmat([x - r for x, r in zip(v, r0)], inv)
        flip = linalg.identity(d)
        if y[-1] < 0:
            flip[-1][-1] = -1
            y[-1] = -y[-1]
        shear = linalg.identity(d)
        for j in range(d - 1):
            shear[d - 1][j] = -y[j]
        M = linalg.matmul(linalg.matmul(inv, flip), shear)
        w = [-x for x in linalg.vecmat(r0, M)]
        T = UnimodularMap(M, w)
        assert T(v) == tuple(_unit(d, d))
        return idx, T
    return None


def strip_pyramids(P: LatticePolytope) -> PyramidStrip:
    """Peel lattice-pyramid layers until none is left.

    Each map ``T_i`` sends the current polytope onto ``Pyr(next)``; the next
    polytope is the image with the apex removed and the last coordinate
    dropped.
    """
    if not P.is_full_dimensional:
        raise ValueError("strip_pyramids needs a full-dimensional polytope")
    maps = []
    cur = P
    while True:
        found = find_apex(cur)
        if found is None:
            break
        idx, T = found
        image = [T(u) for j, u in enumerate(cur.vertices) if j != idx]
        cur = LatticePolytope([u[:-1] for u in image], cur.ambient_dim - 1, P.name, _trusted=True)
        maps.append(T)
    return PyramidStrip(cur, len(maps), tuple(maps))


def replay_strip(P: LatticePolytope, maps: Sequence[UnimodularMap]) -> LatticePolytope:
    """Apply stripping maps and check each step really is a pyramid."""
    cur = P
    for T in maps:
        img = apply_map(T, cur)
        apex = tuple(_unit(img.ambient_dim, img.ambient_dim))
        base = [u for u in img.vertices if u != apex]
        if len(base) != img.n_vertices - 1 or any(u[-1] != 0 for u in base):
            raise ValueError("map does not expose a lattice pyramid")
        cur = LatticePolytope([u[:-1] for u in base], img.ambient_dim - 1, P.name, _trusted=True)
    return cur


def half_sum_invariant(P: LatticePolytope) -> int:
    """Largest even-size vertex subset whose coordinate sum is divisible by 2."""
    best = {0: 0}  # parity mask (vertex parity + size parity) -> largest size
    for v in P.vertices:
        mask = sum(1 << i for i, x in enumerate(v) if x % 2) | (1 << P.ambient_dim)
        new = dict(best)
        for m, size in best.items():
            key = m ^ mask
            if new.get(key, -1) < size + 1:
                new[key] = size + 1
        best = new
    return best[0]


# -- delta feasibility -------------------------------------------------------------

def feasible_delta(V: int, exponents: Sequence[int], d: int, as_printed: bool = False) -> bool:
    """Whether ``1 + t^{i_1} + ... + t^{i_{V-1}}`` is the delta-polynomial of some d-polytope.

    ``as_printed`` swaps in the literal V = 3 condition ``i2 <= floor((d+1)/2)``,
    which is known to reject realisable cases such as (1, 2) at d = 2.
    """
    e = list(exponents)
    if len(e) != V - 1 or e != sorted(e) or (e and (e[0] < 1 or e[-1] > d)):
        raise ValueError("exponents must satisfy 1 <= i_1 <= ... <= i_{V-1} <= d")
    if V == 1:
        return True
    if V == 2:
        return 2 * e[0] <= d + 1
    if V == 3:
        i1, i2 = e
        if as_printed:
            return i2 <= 2 * i1 and i2 <= (d + 1) // 2
        return i2 <= 2 * i1 and i1 + i2 <= d + 1
    if V == 4:
        i1, i2, i3 = e
        return (i3 <= i1 + i2 and i1 + i3 <= d + 1 and i2 <= (d + 1) // 2
                and (2 * i2 <= i1 + i3 or i2 + i3 <= d + 1))
    raise ValueError("V must be between 1 and 4")
