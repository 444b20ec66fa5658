"""Unimodular equivalence of lattice polytopes, with explicit witnesses."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Dict, List, Optional, Tuple

from . import linalg
from .catalog import half_sum_invariant, spans_lattice
from .ehrhart import count_points, delta_from_counts
from .groups import canonical_form, lambda_group_of_simplex
from .identities import ClaimedIdentity
from .polytope import LatticePolytope, UnimodularMap, apply_map, normalized_volume


class SearchBudgetExceeded(RuntimeError):
    """The search hit its node limit; equivalence is undecided."""


@dataclass(frozen=True)
class EquivalenceWitness:
    map: UnimodularMap
    correspondence: Tuple[int, ...]  # vertex i of the source -> vertex correspondence[i] of the target

    def check(self, P: LatticePolytope, Q: LatticePolytope) -> bool:
        return apply_map(self.map, P) == Q

    def to_dict(self) -> dict:
        return {"map": self.map.to_dict(), "correspondence": list(self.correspondence)}


# -- invariants -----------------------------------------------------------------

def _facet_point_counts(P: LatticePolytope) -> Tuple[int, ...]:
    out = []
    for idx in P.facet_vertex_sets():
        F = LatticePolytope([P.vertices[i] for i in idx], P.ambient_dim, _trusted=True)
        out.append(count_points(F, 1))
    return tuple(sorted(out))


def global_invariants(P: LatticePolytope, with_delta: bool = True) -> Tuple:
    cheap = (P.ambient_dim, P.n_vertices, len(P.facets), half_sum_invariant(P), normalized_volume(P))
    if not with_delta:
        return cheap
    return cheap + (delta_from_counts(P).entries, spans_lattice(P), _facet_point_counts(P))


def _lattice_length(u, v) -> int:
    g = 0
    for a, b in zip(u, v):
        g = gcd(g, a - b)
    return g


def vertex_invariants(P: LatticePolytope) -> List[Tuple]:
    """Per-vertex data preserved by any unimodular map."""
    d = P.ambient_dim
    V = P.vertices
    n = len(V)
    edges = P.edges()
    degree = Counter()
    edge_len: Dict[int, List[int]] = {i: [] for i in range(n)}
    for i, j in edges:
        degree[i] += 1
        degree[j] += 1
        L = _lattice_length(V[i], V[j])
        edge_len[i].append(L)
        edge_len[j].append(L)
    in_facets = Counter(i for s in P.facet_vertex_sets() for i in s)
    volumes: Dict[int, List[int]] = {i: [] for i in range(n)}
    if n <= d + 4:
        for sub in combinations(range(n), d + 1):
            base = V[sub[0]]
            vol = abs(linalg.det([[a - b for a, b in zip(V[i], base)] for i in sub[1:]]))
            for i in sub:
                volumes[i].append(vol)
    return [(degree[i], in_facets[i], tuple(sorted(edge_len[i])), tuple(sorted(volumes[i])))
            for i in range(n)]


# -- search ---------------------------------------------------------------------

def _is_gl_integral(M) -> bool:
    for row in M:
        for x in row:
            if Fraction(x).denominator != 1:
                return False
    return abs(linalg.det([[int(x) for x in row] for row in M])) == 1


def pair_invariants(P: LatticePolytope) -> List[List[Tuple]]:
    """Data attached to each ordered vertex pair that a unimodular map preserves."""
    d = P.ambient_dim
    V = P.vertices
    n = len(V)
    sets = [set(s) for s in P.facet_vertex_sets()]
    vols: Dict[Tuple[int, int], List[int]] = {}
    if n <= d + 4:
        for sub in combinations(range(n), d + 1):
            base = V[sub[0]]
            vol = abs(linalg.det([[a - b for a, b in zip(V[i], base)] for i in sub[1:]]))
            for i, j in combinations(sub, 2):
                vols.setdefault((i, j), []).append(vol)
    out = [[()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            key = (min(i, j), max(i, j))
            out[i][j] = (_lattice_length(V[i], V[j]), sum(1 for s in sets if i in s and j in s),
                         tuple(sorted(vols.get(key, ()))))
    return out


def _anchor_order(P: LatticePolytope, inv: List[Tuple], rarity: Counter) -> List[int]:
    """Affinely independent vertex sequence, rarest invariant class first."""
    d = P.ambient_dim
    V = P.vertices
    order = sorted(range(len(V)), key=lambda i: (rarity[inv[i]], inv[i], i))
    chosen = [order[0]]
    diffs: List[List[int]] = []
    for i in order[1:]:
        if len(chosen) == d + 1:
            break
        cand = diffs + [[a - b for a, b in zip(V[i], V[chosen[0]])]]
        if linalg.rank(cand) == len(cand):
            chosen.append(i)
            diffs = cand
    return chosen


def _anchor_constraints(VP, anchors):
    """Conditions on anchor images that can be checked before all anchors are placed.

    Each is ``(support, kind, data)``: a group element of the anchor simplex
    whose image combination must be a lattice point, or the affine
    coordinates of a non-anchor vertex whose image must be a vertex.
    """
    G = lambda_group_of_simplex([VP[a] for a in anchors])
    out = []
    for nums in G.elements:
        supp = frozenset(a for a, x in zip(anchors, nums) if x)
        if supp:
            out.append((supp, "group", ({a: x for a, x in zip(anchors, nums) if x}, G.denominator)))
    a0 = VP[anchors[0]]
    DS = [[x - y for x, y in zip(VP[i], a0)] for i in anchors[1:]]
    inv = linalg.inverse(DS)
    for x in range(len(VP)):
        if x in anchors:
            continue
        c = linalg.vecmat([Fraction(p - q) for p, q in zip(VP[x], a0)], inv)
        mu = {anchors[0]: 1 - sum(c)}
        mu.update(zip(anchors[1:], c))
        mu = {a: m for a, m in mu.items() if m}
        out.append((frozenset(mu), "vertex", (x, mu)))
    return out


def are_equivalent(P: LatticePolytope, Q: LatticePolytope, budget: int = 10**6,
                   prefilter: bool = True) -> Optional[EquivalenceWitness]:
    """A unimodular map sending ``P`` onto ``Q``, or ``None`` when none exists.

    Raises ``SearchBudgetExceeded`` when the node limit is reached, which
    means the question is undecided, not that the answer is no.
    """
    if not (P.is_full_dimensional and Q.is_full_dimensional):
        raise ValueError("both polytopes must be full-dimensional")
    if P.ambient_dim != Q.ambient_dim or P.n_vertices != Q.n_vertices:
        return None
    d = P.ambient_dim
    if d == 0:
        return EquivalenceWitness(UnimodularMap.identity(0), (0,))
    if prefilter:
        if global_invariants(P, False) != global_invariants(Q, False):
            return None
        if global_invariants(P) != global_invariants(Q):
            return None
    invP, invQ = vertex_invariants(P), vertex_invariants(Q)
    if Counter(invP) != Counter(invQ):
        return None
    rarity = Counter(invP)
    anchors = _anchor_order(P, invP, rarity)
    VP, VQ = P.vertices, Q.vertices
    where = {v: j for j, v in enumerate(VQ)}
    pairP, pairQ = pair_invariants(P), pair_invariants(Q)

    # place constrained anchors first so dead branches die early
    constraints = _anchor_constraints(VP, anchors)
    touched = set().union(*(c[0] for c in constraints)) if constraints else set()
    anchors = [a for a in anchors if a in touched] + [a for a in anchors if a not in touched]
    due: Dict[int, List] = {a: [] for a in anchors}
    for supp, kind, data in constraints:
        last = max(supp, key=anchors.index)
        due[last].append((kind, data))

    a0 = VP[anchors[0]]
    DS = [[x - y for x, y in zip(VP[i], a0)] for i in anchors[1:]]
    det = linalg.det(DS)
    adj = [[int(x * det) for x in row] for row in linalg.inverse(DS)]
    target = set(VQ)
    nodes = 0

    def consistent(image: Dict[int, int], checks) -> bool:
        for kind, data in checks:
            if kind == "group":
                nums, q = data
                for c in range(d):
                    if sum(x * VQ[image[a]][c] for a, x in nums.items()) % q:
                        return False
            else:
                x, mu = data
                pt = [sum(m * VQ[image[a]][c] for a, m in mu.items()) for c in range(d)]
                if any(Fraction(t).denominator != 1 for t in pt):
                    return False
                j = where.get(tuple(int(t) for t in pt))
                if j is None or invQ[j] != invP[x] or j in image.values():
                    return False
        return True

    def finish(image: Dict[int, int]) -> Optional[EquivalenceWitness]:
        b0 = VQ[image[anchors[0]]]
        DQ = [[x - y for x, y in zip(VQ[image[a]], b0)] for a in anchors[1:]]
        U = []
        for row in adj:
            out = []
            for c in range(d):
                x = sum(r * q[c] for r, q in zip(row, DQ))
                if x % det:
                    return None
                out.append(x // det)
            U.append(out)
        if abs(linalg.det(U)) != 1:
            return None
        t = [b - c for b, c in zip(b0, linalg.vecmat(a0, U))]
        T = UnimodularMap(U, t)
        mapped = [T(v) for v in VP]
        if set(mapped) != target:
            return None
        return EquivalenceWitness(T, tuple(where[v] for v in mapped))

    def extend(image: Dict[int, int]) -> Optional[EquivalenceWitness]:
        nonlocal nodes
        level = len(image)
        if level == len(anchors):
            return finish(image)
        src = anchors[level]
        want = invP[src]
        used = set(image.values())
        for j in range(len(VQ)):
            if j in used or invQ[j] != want:
                continue
            if any(pairP[src][a] != pairQ[j][b] for a, b in image.items()):
                continue
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"more than {budget} search nodes")
            image[src] = j
            if consistent(image, due[src]):
                found = extend(image)
                if found is not None:
                    return found
            del image[src]
        return None

    return extend({})


# -- simplices -----------------------------------------------------------------

def simplex_form(S: LatticePolytope):
    if not (S.is_simplex and S.is_full_dimensional):
        raise ValueError("need a full-dimensional simplex")
    return canonical_form(lambda_group_of_simplex(S.vertices))


def simplex_equivalent(S1: LatticePolytope, S2: LatticePolytope) -> bool:
    """Equivalence of simplices through the canonical form of their groups."""
    if S1.ambient_dim != S2.ambient_dim:
        return False
    return simplex_form(S1).key == simplex_form(S2).key


def simplex_witness(S1: LatticePolytope, S2: LatticePolytope) -> Optional[EquivalenceWitness]:
    """Map ``S1`` onto ``S2`` read off the group canonical forms."""
    if S1.ambient_dim != S2.ambient_dim:
        return None
    f1, f2 = simplex_form(S1), simplex_form(S2)
    if f1.key != f2.key:
        return None
    corr = [0] * len(S1.vertices)
    for a, b in zip(f1.permutation, f2.permutation):
        corr[a] = b
    V1, V2 = S1.vertices, S2.vertices
    a0, b0 = V1[0], V2[corr[0]]
    D1 = [[x - y for x, y in zip(V1[i], a0)] for i in range(1, len(V1))]
    D2 = [[x - y for x, y in zip(V2[corr[i]], b0)] for i in range(1, len(V1))]
    if not D1:
        return EquivalenceWitness(UnimodularMap.identity(0), (0,))
    U = linalg.matmul(linalg.inverse(D1), D2)
    if not _is_gl_integral(U):
        raise AssertionError("equal group forms but no lattice map")  # would contradict the theory
    U = [[int(x) for x in row] for row in U]
    t = [b - c for b, c in zip(b0, linalg.vecmat(a0, U))]
    return EquivalenceWitness(UnimodularMap(U, t), tuple(corr))


# -- claimed identities ------------------------------------------------------------

@dataclass(frozen=True)
class IdentityCheck:
    claim: str
    k: int
    status: str  # "verified", "det-fail" or "map-fail"
    det: int
    equivalent: Optional[bool] = None  # fallback verdict after a map-fail; None if undecided
    witness: Optional[EquivalenceWitness] = None

    def to_dict(self) -> dict:
        out = {"claim": self.claim, "k": self.k, "status": self.status, "det": self.det,
               "equivalent": self.equivalent}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        return out


def verify_claimed_identity(c: ClaimedIdentity, k: int, budget: int = 10**6) -> IdentityCheck:
    """Check ``target = f_U(source) + w`` exactly at ``k``.

    On a map failure the equivalence itself is retried with a search, so a
    wrong matrix is told apart from a wrong claim.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    U, w, src, dst = c.instantiate(k)
    det = linalg.det(U)
    if abs(det) != 1:
        return IdentityCheck(c.name, k, "det-fail", det)
    if apply_map(UnimodularMap(U, w), src) == dst:
        return IdentityCheck(c.name, k, "verified", det, True)
    try:
        found = are_equivalent(src, dst, budget=budget)
    except SearchBudgetExceeded:
        return IdentityCheck(c.name, k, "map-fail", det, None)
    return IdentityCheck(c.name, k, "map-fail", det, found is not None, found)
