"""The finite abelian group attached to a lattice simplex.

For a simplex with vertices v_0..v_d the group consists of the
``lambda in (Q/Z)^{d+1}`` with ``sum lambda_i (v_i, 1)`` integral.  Elements
are stored as integer numerators over a common denominator, the exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .ehrhart import DeltaVector

Numerators = Tuple[int, ...]


class InvalidParameters(ValueError):
    pass


@dataclass(frozen=True)
class GroupElement:
    numerators: Numerators
    denominator: int

    @property
    def residues(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(x, self.denominator) for x in self.numerators)

    @property
    def height(self) -> int:
        total = sum(self.numerators)
        if total % self.denominator:
            raise ValueError("coordinate sum is not an integer")
        return total // self.denominator

    @property
    def order(self) -> int:
        g = self.denominator
        for x in self.numerators:
            g = gcd(g, x)
        return self.denominator // g


@dataclass(frozen=True)
class LambdaGroup:
    dim: int
    denominator: int
    elements: FrozenSet[Numerators]

    def __post_init__(self):
        zero = (0,) * (self.dim + 1)
        if zero not in self.elements:
            raise ValueError("group must contain zero")
        q = self.denominator
        for x in self.elements:
            if len(x) != self.dim + 1 or any(not 0 <= c < q for c in x):
                raise ValueError("malformed element")
            if sum(x) % q:
                raise ValueError("element with non-integral coordinate sum")

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> List[Numerators]:
        return sorted(self.elements)

    def element(self, x: Numerators) -> GroupElement:
        return GroupElement(x, self.denominator)

    def add(self, x: Numerators, y: Numerators) -> Numerators:
        q = self.denominator
        return tuple((a + b) % q for a, b in zip(x, y))

    def multiple(self, m: int, x: Numerators) -> Numerators:
        q = self.denominator
        return tuple((m * a) % q for a in x)

    def is_closed(self) -> bool:
        return all(self.add(x, y) in self.elements for x in self.elements for y in self.elements)

    def with_denominator(self, q: int) -> "LambdaGroup":
        if q % self.denominator:
            raise ValueError("new denominator must be a multiple")
        f = q // self.denominator
        return LambdaGroup(self.dim, q, frozenset(tuple(c * f for c in x) for x in self.elements))

    def permuted(self, perm: Sequence[int]) -> "LambdaGroup":
        """Coordinates reordered so that new coordinate ``j`` is old ``perm[j]``."""
        return LambdaGroup(self.dim, self.denominator,
                           frozenset(tuple(x[p] for p in perm) for x in self.elements))

    def reduced(self) -> "LambdaGroup":
        """Same group over the smallest common denominator (the exponent)."""
        e = 1
        for x in self.elements:
            o = self.element(x).order
            e = e * o // gcd(e, o)
        if e == self.denominator:
            return self
        f = self.denominator // e
        return LambdaGroup(self.dim, e, frozenset(tuple(c // f for c in x) for x in self.elements))


def generate_group(dim: int, denominator: int, generators: Iterable[Sequence[int]]) -> LambdaGroup:
    q = denominator
    zero = (0,) * (dim + 1)
    elements = {zero}
    frontier = [zero]
    gens = [tuple(g % q for g in gen) for gen in generators]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % q for a, b in zip(x, g))
                if y not in elements:
                    elements.add(y)
                    nxt.append(y)
        frontier = nxt
    return LambdaGroup(dim, q, frozenset(elements)).reduced()


def lambda_group_of_simplex(vertices: Sequence[Sequence[int]]) -> LambdaGroup:
    """The group of a full-dimensional simplex with the given ordered vertices.

    With ``L M R = S`` the Smith form of the lifted vertex matrix ``M``, the
    solutions of ``lambda M in Z^{d+1}`` are generated by the rows of
    ``S^{-1} L``.
    """
    d = len(vertices) - 1
    if any(len(v) != d for v in vertices):
        raise ValueError("a d-simplex needs d+1 vertices in Z^d")
    M = [list(v) + [1] for v in vertices]
    if linalg.det(M) == 0:
        raise ValueError("vertices are affinely dependent")
    snf = linalg.smith_normal_form(M)
    q = snf.diagonal[-1]
    gens = []
    for row, s in zip(snf.left, snf.diagonal):
        if s > 1:
            gens.append([(c * (q // s)) % q for c in row])
    return generate_group(d, q, gens)


def delta_from_group(G: LambdaGroup) -> DeltaVector:
    hist = [0] * (G.dim + 1)
    for x in G.elements:
        hist[G.element(x).height] += 1
    return DeltaVector(hist)


def is_pyramid_simplex(G: LambdaGroup) -> Tuple[bool, Optional[int]]:
    """Whether some coordinate vanishes on the whole group, and the first such index."""
    for j in range(G.dim + 1):
        if all(x[j] == 0 for x in G.elements):
            return True, j
    return False, None


# -- parametric families -------------------------------------------------------

def _check_heights(G: LambdaGroup):
    for x in G.elements:
        if sum(x) % G.denominator:
            raise InvalidParameters("non-integral height")


def build_lambda_half(n: int) -> LambdaGroup:
    """``<(1/2, ..., 1/2)>`` on ``n`` coordinates (n even)."""
    if n < 2 or n % 2:
        raise InvalidParameters("need an even number of coordinates")
    return generate_group(n - 1, 2, [[1] * n])


def build_lambda_ab(a: int, b: int) -> LambdaGroup:
    """Cyclic group of order 3 generated by ``(1/3)^a (2/3)^b``."""
    if a < 0 or b < 0 or a + b < 1:
        raise InvalidParameters("need a, b >= 0 and a+b >= 1")
    if (a + 2 * b) % 3:
        raise InvalidParameters(f"(a+2b)/3 = {a + 2 * b}/3 is not an integer")
    return generate_group(a + b - 1, 3, [[1] * a + [2] * b])


def build_lambda1_abc(a: int, b: int, c: int) -> LambdaGroup:
    """Cyclic group of order 4 generated by ``(1/4)^a (1/2)^b (3/4)^c``."""
    if min(a, b, c) < 0 or a + b + c < 1:
        raise InvalidParameters("need a, b, c >= 0 and a+b+c >= 1")
    if a + c == 0:
        raise InvalidParameters("a+c = 0 gives a group of order 2")
    for num, den, label in ((a + 2 * b + 3 * c, 4, "(a+2b+3c)/4"), (a + c, 2, "(a+c)/2"),
                            (3 * a + 2 * b + c, 4, "(3a+2b+c)/4")):
        if num % den:
            raise InvalidParameters(f"{label} is not an integer")
    return generate_group(a + b + c - 1, 4, [[1] * a + [2] * b + [3] * c])


def build_lambda2_abc(a: int, b: int, c: int) -> LambdaGroup:
    """Klein four-group generated by ``(1/2)^a (1/2)^b 0^c`` and ``0^a (1/2)^b (1/2)^c``."""
    if min(a, b, c) < 0:
        raise InvalidParameters("need a, b, c >= 0")
    if a + b == 0 or b + c == 0 or a + c == 0:
        raise InvalidParameters("degenerate: the generators do not span a group of order 4")
    for num, label in ((a + b, "(a+b)/2"), (b + c, "(b+c)/2"), (a + c, "(a+c)/2")):
        if num % 2:
            raise InvalidParameters(f"{label} is not an integer")
    g1 = [1] * a + [1] * b + [0] * c
    g2 = [0] * a + [1] * b + [1] * c
    return generate_group(a + b + c - 1, 2, [g1, g2])


GROUP_CASES = ("V2", "V3", "V4-1'", "V4-2'", "V4-L2")


def group_params_from_exponents(V: int, exponents: Sequence[int], case: str) -> Tuple[int, ...]:
    """Family parameters realising the given delta exponents."""
    e = tuple(exponents)
    if list(e) != sorted(e) or len(e) != V - 1:
        raise InvalidParameters("exponents must be ascending with V-1 entries")
    if case == "V2" and V == 2:
        out: Tuple[int, ...] = (2 * e[0],)
    elif case == "V3" and V == 3:
        i1, i2 = e
        out = (-i1 + 2 * i2, 2 * i1 - i2)
    elif V == 4 and case in ("V4-1'", "V4-2'", "V4-L2"):
        i1, i2, i3 = e
        if case == "V4-1'":
            if not i1 < i2 < i3:
                raise InvalidParameters("case 1' needs i1 < i2 < i3")
            out = (-i1 + i2 + i3, i1 - 2 * i2 + i3, i1 + i2 - i3)
        elif case == "V4-2'":
            out = (i1 - i2 + i3, -2 * i1 + i2 + i3, i1 + i2 - i3)
        else:
            out = (-i1 + i2 + i3, i1 - i2 + i3, i1 + i2 - i3)
    else:
        raise InvalidParameters(f"unknown case {case!r} for V={V}")
    if min(out) < 0:
        raise InvalidParameters(f"negative multiplicity in {out}")
    return out


def group_from_case(case: str, params: Sequence[int]) -> LambdaGroup:
    if case == "V2":
        return build_lambda_half(params[0])
    if case == "V3":
        return build_lambda_ab(*params)
    if case in ("V4-1'", "V4-2'"):
        return build_lambda1_abc(*params)
    if case == "V4-L2":
        return build_lambda2_abc(*params)
    raise InvalidParameters(f"unknown case {case!r}")


# -- canonical form ------------------------------------------------------------

def _divisor_chains(n: int, lower: int = 1) -> List[List[int]]:
    """Chains d_1 | d_2 | ... with d_1 > 1 and product n."""
    if n == 1:
        return [[]]
    out = []
    for d1 in range(max(lower, 2), n + 1):
        if n % d1:
            continue
        for rest in _divisor_chains(n // d1, d1):
            if all(r % d1 == 0 for r in rest):
                out.append([d1] + rest)
    return out


def invariant_factors(G: LambdaGroup) -> Tuple[int, ...]:
    """Invariant factors, matched through ``#{x : m x = 0}`` for every m."""
    n = G.order
    zero = (0,) * (G.dim + 1)
    observed = {m: sum(1 for x in G.elements if G.multiple(m, x) == zero)
                for m in range(1, n + 1) if n % m == 0}
    for chain in _divisor_chains(n):
        ok = True
        for m, cnt in observed.items():
            expect = 1
            for di in chain:
                expect *= gcd(m, di)
            if expect != cnt:
                ok = False
                break
        if ok:
            return tuple(chain)
    raise AssertionError("group order does not factor")  # unreachable for abelian groups


def _bases(G: LambdaGroup, factors: Sequence[int]) -> Iterable[Tuple[Numerators, ...]]:
    by_order = {}
    for x in G.elements:
        by_order.setdefault(G.element(x).order, []).append(x)
    pools = [sorted(by_order.get(f, [])) for f in factors]
    n = G.order
    for combo in product(*pools):
        seen = {(0,) * (G.dim + 1)}
        for g, f in zip(combo, factors):
            new = set()
            for x in seen:
                y = x
                for _ in range(f - 1):
                    y = G.add(y, g)
                    new.add(y)
            seen |= new
        if len(seen) == n:
            yield combo


@dataclass(frozen=True)
class CanonicalForm:
    key: Tuple
    permutation: Tuple[int, ...]

    def encode(self) -> bytes:
        return repr(self.key).encode()


def canonical_form(G: LambdaGroup) -> CanonicalForm:
    """Normal form of ``G`` up to coordinate permutation and automorphism.

    Every basis with the invariant-factor orders is tried; each coordinate
    becomes the column of basis entries, columns are sorted and the
    smallest result wins.  ``permutation[j]`` is the original coordinate
    placed at position ``j``.
    """
    G = G.reduced()
    factors = invariant_factors(G)
    header = (G.dim + 1, factors)
    if not factors:
        return CanonicalForm((header, ()), tuple(range(G.dim + 1)))
    best = None
    for basis in _bases(G, factors):
        cols = [tuple(g[j] for g in basis) for j in range(G.dim + 1)]
        order = sorted(range(G.dim + 1), key=lambda j: (cols[j], j))
        key = tuple(cols[j] for j in order)
        if best is None or key < best[0]:
            best = (key, tuple(order))
    return CanonicalForm((header, (G.denominator,) + best[0]), best[1])


def canonical_group_form(G: LambdaGroup) -> bytes:
    return canonical_form(G).encode()


# -- delta of a general polytope from a triangulation ------------------------------

def _perturbed_sign(a: Sequence[int], b: int, q: Sequence[Fraction]) -> int:
    """Sign of ``a.(q + (eps, eps^2, ...)) - b`` for infinitesimal ``eps``."""
    val = sum(x * y for x, y in zip(a, q)) - b
    if val:
        return 1 if val > 0 else -1
    for x in a:
        if x:
            return 1 if x > 0 else -1
    raise ValueError("zero normal")


def delta_half_open(P) -> DeltaVector:
    """Delta-vector of a full-dimensional polytope from its triangulation.

    The cells are made half-open with respect to a perturbed interior
    point, so they tile ``P`` disjointly.  A box point of a cell gains one
    unit of height for each excluded facet on which its coordinate is zero.
    """
    from .polytope import affine_circuit, pulling_triangulation

    d = P.ambient_dim
    if not P.is_full_dimensional:
        raise ValueError("need a full-dimensional polytope")
    if d == 0:
        return DeltaVector((1,))
    if P.is_simplex:
        return delta_from_group(lambda_group_of_simplex(P.vertices))
    V = P.vertices
    q = [Fraction(sum(v[c] for v in V), len(V)) for c in range(d)]
    hist = [0] * (d + 1)
    if len(V) == d + 2:
        # one side of the unique circuit triangulates: drop one of its points per cell
        alpha = affine_circuit(V)
        side = [i for i, a in enumerate(alpha) if a > 0]
        cells = [tuple(i for i in range(d + 2) if i != j) for j in side]
    else:
        cells = pulling_triangulation(P)
    for cell in cells:
        verts = [V[i] for i in cell]
        excluded = []
        for i in range(d + 1):
            rest = [verts[j] for j in range(d + 1) if j != i]
            diffs = [[x - y for x, y in zip(u, rest[0])] for u in rest[1:]]
            a = linalg.cofactor_normal(diffs) if diffs else [1]
            b = sum(x * y for x, y in zip(a, rest[0]))
            side = sum(x * y for x, y in zip(a, verts[i])) - b
            excluded.append(_perturbed_sign(a, b, q) * side < 0)
        G = lambda_group_of_simplex(verts)
        for x in G.elements:
            h = sum(x) // G.denominator + sum(1 for c, ex in zip(x, excluded) if ex and c == 0)
            hist[h] += 1
    return DeltaVector(hist)
