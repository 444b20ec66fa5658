"""Lattice polytopes, unimodular maps and the geometric primitives on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from . import linalg
from .lp import convex_coefficients

Point = Tuple[int, ...]


class DimensionMismatch(ValueError):
    pass


def _as_point(p: Iterable[int]) -> Point:
    out = []
    for x in p:
        if isinstance(x, bool) or int(x) != x:
            raise TypeError(f"non-integer coordinate {x!r}")
        out.append(linalg.check_int64(int(x)))
    return tuple(out)


def _probe_functionals(dim: int) -> List[List[int]]:
    funcs = []
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        funcs.append(e)
        funcs.append([-x for x in e])
    generic = [3**i for i in range(dim)]
    funcs.append(generic)
    funcs.append([-x for x in generic])
    funcs.append([(-2) ** i + i for i in range(dim)])
    return funcs


def reduce_to_vertices(points: Sequence[Point]) -> List[Point]:
    """Drop every point lying in the convex hull of the others."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    dim = len(pts[0])
    confirmed = set()
    for f in _probe_functionals(dim):
        vals = [sum(a * b for a, b in zip(f, p)) for p in pts]
        best = max(vals)
        if vals.count(best) == 1:
            confirmed.add(vals.index(best))
    keep = []
    for i, p in enumerate(pts):
        if i in confirmed:
            keep.append(p)
            continue
        others = pts[:i] + pts[i + 1:]
        if convex_coefficients(others, p) is None:
            keep.append(p)
    return keep


class LatticePolytope:
    """Convex hull of finitely many lattice points, stored by its vertices.

    Vertices are kept sorted so that equality, hashing and every derived
    quantity are independent of the input order.
    """

    def __init__(self, points: Iterable[Iterable[int]], ambient_dim: Optional[int] = None,
                 name: Optional[str] = None, *, _trusted: bool = False):
        pts = [_as_point(p) for p in points]
        if not pts:
            raise ValueError("a lattice polytope needs at least one point")
        if ambient_dim is None:
            ambient_dim = len(pts[0])
        if any(len(p) != ambient_dim for p in pts):
            raise DimensionMismatch("all points must have length ambient_dim")
        if _trusted:
            verts = sorted(set(pts))
            if len(verts) != len(pts):
                raise ValueError("duplicate vertices")
        else:
            verts = reduce_to_vertices(pts)
        self.ambient_dim = ambient_dim
        self.vertices: Tuple[Point, ...] = tuple(verts)
        self.name = name

    def __eq__(self, other):
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"LatticePolytope({label}dim={self.ambient_dim}, vertices={list(self.vertices)})"

    def __len__(self):
        return len(self.vertices)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @cached_property
    def dim(self) -> int:
        v0 = self.vertices[0]
        diffs = [[a - b for a, b in zip(v, v0)] for v in self.vertices[1:]]
        return linalg.rank(diffs) if diffs else 0

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def is_simplex(self) -> bool:
        return self.n_vertices == self.dim + 1

    def renamed(self, name: Optional[str]) -> "LatticePolytope":
        return LatticePolytope(self.vertices, self.ambient_dim, name, _trusted=True)

    @cached_property
    def facets(self) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
        """Facet inequalities ``a . x <= b`` with primitive integer ``a``."""
        if not self.is_full_dimensional:
            raise ValueError("facets are only defined for full-dimensional polytopes")
        return tuple(_facet_inequalities(self.vertices, self.ambient_dim))

    def facet_vertex_sets(self) -> List[Tuple[int, ...]]:
        out = []
        for a, b in self.facets:
            out.append(tuple(i for i, v in enumerate(self.vertices)
                             if sum(x * y for x, y in zip(a, v)) == b))
        return out

    def contains(self, x: Sequence, strict: bool = False) -> bool:
        """Membership through the facet description (full-dimensional only)."""
        for a, b in self.facets:
            val = sum(Fraction(p) * q for p, q in zip(x, a))
            if val > b or (strict and val == b):
                return False
        return True

    def edges(self) -> List[Tuple[int, int]]:
        """Vertex index pairs spanning one-dimensional faces."""
        d = self.ambient_dim
        sets = [set(s) for s in self.facet_vertex_sets()]
        normals = [a for a, _ in self.facets]
        out = []
        for i, j in combinations(range(self.n_vertices), 2):
            rows = [normals[f] for f, s in enumerate(sets) if i in s and j in s]
            if linalg.rank(rows) == d - 1 if rows else d == 1:
                out.append((i, j))
        return out


def _facet_inequalities(vertices: Sequence[Point], dim: int) -> List[Tuple[Tuple[int, ...], int]]:
    if dim == 0:
        return []
    found = {}
    for subset in combinations(range(len(vertices)), dim):
        base = vertices[subset[0]]
        rows = [[a - b for a, b in zip(vertices[i], base)] for i in subset[1:]]
        normal = linalg.primitive(linalg.cofactor_normal(rows))
        if not any(normal):
            continue
        b = sum(x * y for x, y in zip(normal, base))
        vals = [sum(x * y for x, y in zip(normal, v)) for v in vertices]
        if all(v <= b for v in vals):
            key = (tuple(normal), b)
        elif all(v >= b for v in vals):
            key = (tuple(-x for x in normal), -b)
        else:
            continue
        found[key] = True
    return sorted(found)


# -- maps -------------------------------------------------------------------

@dataclass(frozen=True)
class UnimodularMap:
    """Affine lattice automorphism ``x -> x @ matrix + translation``.

    Points are row vectors and the matrix acts from the right.
    """

    matrix: Tuple[Tuple[int, ...], ...]
    translation: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(tuple(int(x) for x in r) for r in self.matrix))
        object.__setattr__(self, "translation", tuple(int(x) for x in self.translation))
        n = len(self.translation)
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise DimensionMismatch("matrix must be square and match the translation")
        if abs(linalg.det(self.matrix)) != 1:
            raise ValueError("matrix is not unimodular")

    @property
    def dim(self) -> int:
        return len(self.translation)

    @classmethod
    def identity(cls, dim: int) -> "UnimodularMap":
        return cls(linalg.identity(dim), (0,) * dim)

    @classmethod
    def translation_by(cls, w: Sequence[int]) -> "UnimodularMap":
        return cls(linalg.identity(len(w)), tuple(w))

    def __call__(self, x: Sequence[int]) -> Point:
        y = linalg.vecmat(x, self.matrix) if self.dim else []
        return tuple(a + b for a, b in zip(y, self.translation))

    def then(self, other: "UnimodularMap") -> "UnimodularMap":
        """The map ``x -> other(self(x))``."""
        M = linalg.matmul(self.matrix, other.matrix)
        w = other(self.translation)
        return UnimodularMap(M, w)

    def inverse(self) -> "UnimodularMap":
        Minv = linalg.integer_inverse(self.matrix)
        w = linalg.vecmat([-x for x in self.translation], Minv)
        return UnimodularMap(Minv, w)

    def to_dict(self) -> dict:
        return {"matrix": [list(r) for r in self.matrix], "translation": list(self.translation)}

    @classmethod
    def from_dict(cls, data: dict) -> "UnimodularMap":
        return cls(data["matrix"], data["translation"])


def random_unimodular_map(dim: int, rng, steps: Optional[int] = None, spread: int = 5) -> UnimodularMap:
    """Product of random elementary operations and sign flips, plus a random shift.

    ``rng`` is a ``random.Random``; entries stay small for small ``steps``.
    """
    M = linalg.identity(dim)
    for _ in range(steps if steps is not None else 2 * dim):
        if dim < 2:
            break
        i, j = rng.sample(range(dim), 2)
        c = rng.choice((-1, 1))
        for r in range(dim):
            M[r][j] += c * M[r][i]
    for i in range(dim):
        if rng.random() < 0.5:
            for r in range(dim):
                M[r][i] = -M[r][i]
    perm = list(range(dim))
    rng.shuffle(perm)
    M = [[row[p] for p in perm] for row in M]
    return UnimodularMap(M, [rng.randint(-spread, spread) for _ in range(dim)])


def apply_map(T: UnimodularMap, P: LatticePolytope) -> LatticePolytope:
    if T.dim != P.ambient_dim:
        raise DimensionMismatch(f"map acts on Z^{T.dim}, polytope lives in Z^{P.ambient_dim}")
    image = [T(v) for v in P.vertices]
    # an affine bijection sends the vertex set onto the vertex set
    assert len(set(image)) == len(image)
    return LatticePolytope(image, P.ambient_dim, P.name, _trusted=True)


@dataclass(frozen=True)
class AffineLatticeMap:
    """Lattice isomorphism ``Z^r -> Z^D ∩ aff``: ``y -> origin + y @ basis``."""

    origin: Tuple[int, ...]
    basis: Tuple[Tuple[int, ...], ...]

    @property
    def source_dim(self) -> int:
        return len(self.basis)

    def to_ambient(self, y: Sequence[int]) -> Point:
        out = list(self.origin)
        for c, row in zip(y, self.basis):
            for j, x in enumerate(row):
                out[j] += c * x
        return tuple(out)

    def from_ambient(self, x: Sequence[int]) -> Point:
        diff = [a - b for a, b in zip(x, self.origin)]
        if not self.basis:
            if any(diff):
                raise ValueError("point not in the affine hull")
            return ()
        y = linalg.coordinates_in_basis(self.basis, diff)
        if any(c.denominator != 1 for c in y) or self.to_ambient([int(c) for c in y]) != tuple(x):
            raise ValueError("point is not a lattice point of the affine hull")
        return tuple(int(c) for c in y)

    def to_dict(self) -> dict:
        return {"origin": list(self.origin), "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_dict(cls, data: dict) -> "AffineLatticeMap":
        return cls(tuple(data["origin"]), tuple(tuple(r) for r in data["basis"]))


def affine_lattice_normalize(P: LatticePolytope) -> Tuple[LatticePolytope, AffineLatticeMap]:
    """Full-dimensional copy of ``P`` inside ``Z^dim(P)`` plus the isomorphism used."""
    D = P.ambient_dim
    if P.is_full_dimensional:
        return P, AffineLatticeMap((0,) * D, tuple(map(tuple, linalg.identity(D))))
    v0 = P.vertices[0]
    diffs = [[a - b for a, b in zip(v, v0)] for v in P.vertices[1:]]
    B = linalg.saturated_basis(diffs, D)
    phi = AffineLatticeMap(v0, tuple(map(tuple, B)))
    Q = LatticePolytope([phi.from_ambient(v) for v in P.vertices], len(B), P.name, _trusted=True)
    return Q, phi


def point_in_polytope(P: LatticePolytope, x: Sequence) -> bool:
    """Exact LP test of ``x in conv(vertices)``."""
    if len(x) != P.ambient_dim:
        raise DimensionMismatch("point and polytope dimensions differ")
    return convex_coefficients(P.vertices, x) is not None


def pyramid(P: LatticePolytope) -> LatticePolytope:
    """Lattice pyramid ``conv(P x {0}, e_{d+1})``."""
    verts = [v + (0,) for v in P.vertices] + [(0,) * P.ambient_dim + (1,)]
    name = f"Pyr({P.name})" if P.name else None
    return LatticePolytope(verts, P.ambient_dim + 1, name, _trusted=True)


def normalized_volume_of_simplex(vertices: Sequence[Point]) -> int:
    v0 = vertices[0]
    return abs(linalg.det([[a - b for a, b in zip(v, v0)] for v in vertices[1:]]))


# -- bounding-box sweep ---------------------------------------------------------

class _Sweep:
    """Enumerate lattice points of ``n P`` coordinate by coordinate.

    Level ``j`` bounds its coordinate with the facets of the projection of
    ``P`` onto the first ``j+1`` (reordered) coordinates, so every prefix
    that is visited extends to a real point of ``nP``.  Only integrality
    can cut a branch short.
    """

    _cache: dict = {}

    def __init__(self, P: LatticePolytope, n: int, strict: bool = False):
        d = P.ambient_dim
        self.d = d
        self.order, self.levels = self._projections(P)
        shift = 1 if strict else 0
        self.bounds = []
        for facets in self.levels:
            self.bounds.append([(a[:-1], a[-1], n * b - shift) for a, b in facets])

    @classmethod
    def _projections(cls, P):
        key = (P.ambient_dim, P.vertices)
        hit = cls._cache.get(key)
        if hit is not None:
            return hit
        d = P.ambient_dim
        lo = [min(v[i] for v in P.vertices) for i in range(d)]
        hi = [max(v[i] for v in P.vertices) for i in range(d)]
        order = sorted(range(d), key=lambda i: (hi[i] - lo[i], i))
        verts = [tuple(v[i] for i in order) for v in P.vertices]
        levels = []
        for j in range(d):
            proj = reduce_to_vertices([v[: j + 1] for v in verts]) if j < d - 1 else sorted(verts)
            levels.append(_facet_inequalities(proj, j + 1))
        if len(cls._cache) > 4096:
            cls._cache.clear()
        cls._cache[key] = (order, levels)
        return order, levels

    def _interval(self, j: int, prefix: List[int]) -> Tuple[int, int]:
        lo, hi = None, None
        for head, a, rhs in self.bounds[j]:
            R = rhs - sum(x * y for x, y in zip(head, prefix))
            if a > 0:
                t = R // a
                hi = t if hi is None or t < hi else hi
            elif a < 0:
                t = -((-R) // a)
                lo = t if lo is None or t > lo else lo
            elif R < 0:
                return 1, 0
        return lo, hi

    def count(self) -> int:
        if self.d == 0:
            return 1
        d = self.d
        last = d - 1
        # residuals of every deeper level are carried down and updated one
        # coordinate at a time instead of re-evaluating whole dot products
        coef = [[a for _, a, _ in lvl] for lvl in self.bounds]
        cols = [[[head[j] for head, _, _ in self.bounds[l]] if l > j else [] for l in range(d)]
                for j in range(d)]

        def interval(a_list, res):
            lo, hi = None, None
            for a, R in zip(a_list, res):
                if a > 0:
                    t = R // a
                    if hi is None or t < hi:
                        hi = t
                elif a < 0:
                    t = -((-R) // a)
                    if lo is None or t > lo:
                        lo = t
                elif R < 0:
                    return 1, 0
            return lo, hi

        def rec(j, res):
            lo, hi = interval(coef[j], res[j])
            if lo > hi:
                return 0
            if j == last:
                return hi - lo + 1
            total = 0
            col = cols[j]
            if j == last - 1:
                # fused final level: no residual lists are built
                rows = list(zip(coef[last], res[last], col[last]))
                for x in range(lo, hi + 1):
                    lo2, hi2 = None, None
                    for a, R, c in rows:
                        R -= c * x
                        if a > 0:
                            t = R // a
                            if hi2 is None or t < hi2:
                                hi2 = t
                        elif a < 0:
                            t = -((-R) // a)
                            if lo2 is None or t > lo2:
                                lo2 = t
                        elif R < 0:
                            lo2, hi2 = 1, 0
                            break
                    if hi2 >= lo2:
                        total += hi2 - lo2 + 1
                return total
            for x in range(lo, hi + 1):
                nxt = list(res)
                for l in range(j + 1, d):
                    nxt[l] = [r - c * x for r, c in zip(res[l], col[l])]
                total += rec(j + 1, nxt)
            return total

        return rec(0, [[rhs for _, _, rhs in lvl] for lvl in self.bounds])

    def points(self) -> Iterator[Point]:
        if self.d == 0:
            yield ()
            return
        last = self.d - 1
        inv = [0] * self.d
        for pos, i in enumerate(self.order):
            inv[i] = pos

        def rec(j, prefix):
            lo, hi = self._interval(j, prefix)
            for x in range(lo, hi + 1):
                prefix.append(x)
                if j == last:
                    yield tuple(prefix[inv[i]] for i in range(self.d))
                else:
                    yield from rec(j + 1, prefix)
                prefix.pop()

        yield from rec(0, [])


def sweep_count(P: LatticePolytope, n: int, strict: bool = False) -> int:
    if n == 0:
        return 0 if strict and P.ambient_dim > 0 else 1
    return _Sweep(P, n, strict).count()


def sweep_points(P: LatticePolytope, n: int = 1, strict: bool = False) -> List[Point]:
    if n == 0:
        return [] if strict and P.ambient_dim > 0 else [(0,) * P.ambient_dim]
    return list(_Sweep(P, n, strict).points())


# -- triangulations -----------------------------------------------------------

def _config_facets(pts: dict, e: int) -> List[frozenset]:
    idx = sorted(pts)
    coords = [pts[i] for i in idx]
    return [frozenset(idx[k] for k, v in enumerate(coords)
                      if sum(x * y for x, y in zip(a, v)) == b)
            for a, b in _facet_inequalities(coords, e)]


def _pull(pts: dict, e: int) -> List[Tuple[int, ...]]:
    idx = sorted(pts)
    if len(idx) == e + 1:
        return [tuple(idx)]
    apex = idx[0]
    cells = []
    for F in _config_facets(pts, e):
        if apex in F:
            continue
        fidx = sorted(F)
        base = pts[fidx[0]]
        diffs = [[a - b for a, b in zip(pts[i], base)] for i in fidx]
        B = linalg.saturated_basis(diffs, e)
        sub = {}
        for i, row in zip(fidx, diffs):
            sub[i] = tuple(int(c) for c in linalg.coordinates_in_basis(B, row)) if B else ()
        for cell in _pull(sub, e - 1):
            cells.append(tuple(sorted(cell + (apex,))))
    return sorted(cells)


def pulling_triangulation(P: LatticePolytope) -> List[Tuple[int, ...]]:
    """Pulling triangulation of a full-dimensional ``P`` using only its vertices.

    Cells are sorted tuples of vertex indices.
    """
    if not P.is_full_dimensional:
        raise ValueError("triangulation needs a full-dimensional polytope")
    return _pull(dict(enumerate(P.vertices)), P.ambient_dim)


def normalized_volume(P: LatticePolytope) -> int:
    """Normalized volume of a full-dimensional polytope (sum over a triangulation)."""
    if P.ambient_dim == 0:
        return 1
    return sum(normalized_volume_of_simplex([P.vertices[i] for i in cell])
               for cell in pulling_triangulation(P))


@dataclass(frozen=True)
class RadonSplit:
    """Cells of the circuit-induced triangulation of a ``(d+2)``-vertex polytope."""

    cells: Tuple[LatticePolytope, ...]
    common_face: Optional[LatticePolytope]
    circuit: Tuple[int, ...]
    two_cell: bool


def affine_circuit(points: Sequence[Point]) -> List[int]:
    """Primitive integer ``alpha`` with ``sum alpha_i (p_i, 1) = 0``."""
    rows = [[p[k] for p in points] for k in range(len(points[0]))]
    rows.append([1] * len(points))
    alpha = linalg.primitive(linalg.cofactor_normal(rows))
    first = next((a for a in alpha if a), 0)
    return [-a for a in alpha] if first < 0 else alpha


def radon_triangulate(P: LatticePolytope) -> RadonSplit:
    d = P.ambient_dim
    if not P.is_full_dimensional or P.n_vertices != d + 2:
        raise ValueError("need a full-dimensional polytope with d+2 vertices")
    V = P.vertices
    alpha = affine_circuit(V)
    pos = [i for i, a in enumerate(alpha) if a > 0]
    neg = [i for i, a in enumerate(alpha) if a < 0]
    side = pos if len(pos) == 2 else neg if len(neg) == 2 else min(pos, neg, key=len)

    def drop(*skip):
        return LatticePolytope([v for i, v in enumerate(V) if i not in skip], d, _trusted=True)

    cells = tuple(drop(j) for j in side)
    if len(side) == 2:
        return RadonSplit(cells, drop(*side), tuple(alpha), True)
    return RadonSplit(cells, None, tuple(alpha), False)
