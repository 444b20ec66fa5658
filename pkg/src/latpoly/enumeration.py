"""Brute-force re-derivation of the small-volume simplices, two ways.

The geometric route lists every Hermite-form simplex of each determinant;
the algebraic route lists the admissible groups directly.  Both end in
group canonical forms, so their class sets can be compared one to one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from . import linalg
from .catalog import feasible_delta, make_simplex, table1_instances
from .ehrhart import DeltaVector
from .groups import (canonical_form, delta_from_group, generate_group, is_pyramid_simplex,
                     lambda_group_of_simplex)

DMAX = 6
VMAX = 4


class BoundExceeded(ValueError):
    pass


def _check_bounds(d: int, vmax: int, dmax: int = DMAX) -> None:
    if d < 1 or d > dmax:
        raise BoundExceeded(f"d must lie in 1..{dmax}")
    if vmax < 1 or vmax > VMAX:
        raise BoundExceeded(f"volume bound must lie in 1..{VMAX}")


@dataclass(frozen=True)
class SimplexClass:
    dim: int
    volume: int
    key: Tuple  # group canonical form
    delta: DeltaVector
    vertices: Optional[Tuple[Tuple[int, ...], ...]] = None  # a representative, when geometric

    def to_dict(self) -> dict:
        out = {"dim": self.dim, "volume": self.volume, "delta": list(self.delta.entries),
               "delta_polynomial": self.delta.polynomial()}
        if self.vertices is not None:
            out["vertices"] = [list(v) for v in self.vertices]
        return out


# -- Hermite sweep ------------------------------------------------------------------

def _diagonals(d: int, det: int) -> Iterator[Tuple[int, ...]]:
    if d == 1:
        yield (det,)
        return
    for a in range(1, det + 1):
        if det % a == 0:
            for rest in _diagonals(d - 1, det // a):
                yield (a,) + rest


def hermite_simplices(d: int, det: int) -> Iterator[List[List[int]]]:
    """Every upper-triangular Hermite matrix of the given determinant.

    Entries above a pivot are reduced into ``[0, pivot)`` column by column.
    Row operations are what the reduction allows, so the simplex of ``H``
    is ``conv(0, columns of H)``.
    """
    for diag in _diagonals(d, det):
        slots = [(i, j) for j in range(d) for i in range(j)]
        for vals in product(*(range(diag[j]) for _, j in slots)):
            H = [[0] * d for _ in range(d)]
            for i in range(d):
                H[i][i] = diag[i]
            for (i, j), x in zip(slots, vals):
                H[i][j] = x
            yield H


def _columns(H: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    return [tuple(r) for r in linalg.transpose(H)]


def _reroot_key(verts: Sequence[Sequence[int]]) -> Tuple:
    """Smallest Hermite form over the choice of vertex placed at the origin.

    Equal keys mean equivalent simplices; the converse is left to the group
    canonical form.
    """
    best = None
    for root in range(len(verts)):
        diffs = [[a - b for a, b in zip(v, verts[root])] for j, v in enumerate(verts) if j != root]
        H, _ = linalg.hermite_normal_form(linalg.transpose(diffs))
        key = tuple(map(tuple, H))
        if best is None or key < best:
            best = key
    return best


def enumerate_simplices(d: int, vmax: int, *, keep_pyramids: bool = False,
                        dmax: int = DMAX) -> List[SimplexClass]:
    """Equivalence classes of d-simplices with volume 2..vmax, found geometrically."""
    _check_bounds(d, vmax, dmax)
    found: Dict[Tuple, SimplexClass] = {}
    for det in range(2, vmax + 1):
        seen = set()
        total = 0
        for H in hermite_simplices(d, det):
            total += 1
            verts = [tuple([0] * d)] + _columns(H)
            rk = _reroot_key(verts)
            if rk in seen:
                continue
            seen.add(rk)
            G = lambda_group_of_simplex(verts)
            if not keep_pyramids and is_pyramid_simplex(G)[0]:
                continue
            key = canonical_form(G).key
            if key not in found:
                found[key] = SimplexClass(d, det, key, delta_from_group(G), tuple(verts))
        if total != linalg.count_sublattices(det, d):
            raise AssertionError(f"Hermite sweep missed matrices at d={d}, det={det}")
    return sorted(found.values(), key=lambda c: (c.volume, c.delta.entries, repr(c.key)))


# -- group sweep --------------------------------------------------------------------

def _column_multisets(types: Sequence[Tuple[int, ...]], n: int) -> Iterator[List[Tuple[int, ...]]]:
    for combo in combinations_with_replacement(range(len(types)), n):
        yield [types[i] for i in combo]


def _group_shapes(order: int) -> List[Tuple[int, List[Tuple[int, ...]]]]:
    """(denominator, nonzero column types) for each abstract group of the order.

    A column type lists the coordinate of each generator; columns that are
    zero in every generator are left out because they make a pyramid.
    """
    shapes = []
    if order in (2, 3, 4):
        shapes.append((order, [(r,) for r in range(1, order)]))
    if order == 4:
        shapes.append((2, [(1, 0), (0, 1), (1, 1)]))
    return shapes


def enumerate_groups(d: int, vmax: int, dmax: int = DMAX) -> List[SimplexClass]:
    """Admissible groups of order 2..vmax with no vanishing coordinate, up to symmetry."""
    _check_bounds(d, vmax, dmax)
    found: Dict[Tuple, SimplexClass] = {}
    for order in range(2, vmax + 1):
        for q, types in _group_shapes(order):
            ngen = len(types[0])
            for cols in _column_multisets(types, d + 1):
                gens = [[c[g] for c in cols] for g in range(ngen)]
                if any(sum(g) % q for g in gens):
                    continue
                G = generate_group(d, q, gens)
                if G.order != order or is_pyramid_simplex(G)[0]:
                    continue
                if any(sum(x) % G.denominator for x in G.elements):
                    continue
                key = canonical_form(G).key
                if key not in found:
                    found[key] = SimplexClass(d, order, key, delta_from_group(G))
    return sorted(found.values(), key=lambda c: (c.volume, c.delta.entries, repr(c.key)))


# -- cross validation -----------------------------------------------------------------

@dataclass
class CrossReport:
    checks: List[dict]

    @property
    def ok(self) -> bool:
        return all(c["status"] != "fail" for c in self.checks)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": self.checks}


def achieved_deltas(classes: Iterable[SimplexClass]) -> Dict[int, set]:
    """Exponent tuples realised by a non-pyramid simplex, keyed by dimension."""
    out: Dict[int, set] = {}
    for c in classes:
        out.setdefault(c.dim, set()).add(c.delta.exponents())
    return out


def exponent_tuples(V: int, d: int) -> Iterator[Tuple[int, ...]]:
    yield from combinations_with_replacement(range(1, d + 1), V - 1)


def cross_validate(d_range: Sequence[int], vmax: int, dmax: int = DMAX,
                   as_printed: bool = False) -> CrossReport:
    """Compare the two sweeps with each other, with the simplex catalog and with the feasibility rule."""
    checks: List[dict] = []
    d_range = list(d_range)
    by_dim: Dict[int, List[SimplexClass]] = {}
    for d in d_range:
        geo = enumerate_simplices(d, vmax, dmax=dmax)
        alg = enumerate_groups(d, vmax, dmax=dmax)
        by_dim[d] = geo
        gk, ak = {c.key for c in geo}, {c.key for c in alg}
        checks.append({"id": f"sweeps-agree/d={d}", "status": "pass" if gk == ak else "fail",
                       "details": {"hermite": len(gk), "groups": len(ak),
                                   "only_hermite": [_describe(c) for c in geo if c.key not in ak],
                                   "only_groups": [_describe(c) for c in alg if c.key not in gk]}})
        table = {}
        for fam, exps in table1_instances(d, d):
            if sum(1 for _ in exps) + 1 <= vmax:
                S = make_simplex(fam, *exps)
                table[canonical_form(lambda_group_of_simplex(S.vertices)).key] = (fam, exps)
        missing = [f"{f}{e}" for k, (f, e) in table.items() if k not in gk]
        extra = [_describe(c) for c in geo if c.key not in table]
        checks.append({"id": f"table-match/d={d}", "status": "pass" if not missing and not extra else "fail",
                       "details": {"classes": len(gk), "table_instances": len(table),
                                   "unmatched_enumerated": extra, "missing_from_enumeration": missing}})
    # feasibility: delta padded up by pyramids, so anything realised at d' <= d counts at d
    realised: Dict[int, set] = {}
    acc: set = set()
    for d in sorted(by_dim):
        acc = acc | achieved_deltas(by_dim[d]).get(d, set())
        realised[d] = set(acc)
    contiguous = d_range == list(range(1, max(d_range) + 1)) if d_range else False
    if contiguous:
        for d in sorted(by_dim):
            bad = []
            for V in range(2, vmax + 1):
                for exps in exponent_tuples(V, d):
                    claim = feasible_delta(V, exps, d, as_printed=as_printed)
                    truth = exps in realised[d]
                    if claim != truth:
                        bad.append({"V": V, "exponents": list(exps), "d": d,
                                    "predicate": claim, "enumeration": truth})
            checks.append({"id": f"feasibility/d={d}", "status": "pass" if not bad else "fail",
                           "details": {"mismatches": bad}})
    return CrossReport(checks)


def _describe(c: SimplexClass) -> dict:
    return c.to_dict()
