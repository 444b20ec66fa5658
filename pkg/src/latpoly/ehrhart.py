"""Lattice-point counting, delta-vectors and the classical inequalities on them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, Optional, Sequence, Tuple

from .polytope import (LatticePolytope, affine_lattice_normalize, normalized_volume,
                       point_in_polytope, sweep_count)


class DeltaError(ArithmeticError):
    """A computed delta-vector violates non-negativity or delta_0 = 1."""


@dataclass(frozen=True)
class DeltaVector:
    entries: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if not self.entries:
            raise ValueError("empty delta-vector")

    @property
    def d(self) -> int:
        return len(self.entries) - 1

    @property
    def degree(self) -> int:
        return max(i for i, x in enumerate(self.entries) if x)

    @property
    def volume(self) -> int:
        return sum(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def padded(self, d: int) -> "DeltaVector":
        if d < self.d and any(self.entries[d + 1:]):
            raise ValueError("cannot truncate non-zero entries")
        return DeltaVector((self.entries + (0,) * (d + 1))[: d + 1])

    def exponents(self) -> Tuple[int, ...]:
        """Exponents of the non-constant terms with multiplicity, ascending."""
        out = []
        for i, c in enumerate(self.entries[1:], start=1):
            out.extend([i] * c)
        return tuple(out)

    @classmethod
    def from_exponents(cls, exponents: Sequence[int], d: int) -> "DeltaVector":
        e = [1] + [0] * d
        for i in exponents:
            e[i] += 1
        return cls(e)

    def polynomial(self) -> str:
        terms = []
        for i, c in enumerate(self.entries):
            if not c:
                continue
            mono = "" if i == 0 else "t" if i == 1 else f"t^{i}"
            if i == 0:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else "0"

    def __str__(self):
        return self.polynomial()


def _full(P: LatticePolytope) -> LatticePolytope:
    return P if P.is_full_dimensional else affine_lattice_normalize(P)[0]


def count_points(P: LatticePolytope, n: int = 1) -> int:
    """``|nP ∩ Z^d|`` by the bounding-box sweep.

    Lower-dimensional input is first carried onto its affine lattice, which
    is a bijection on lattice points.
    """
    if n < 0:
        raise ValueError("dilation factor must be non-negative")
    return sweep_count(_full(P), n)


def interior_count(P: LatticePolytope, n: int = 1) -> int:
    """Lattice points in the relative interior of ``nP``."""
    if n < 1:
        raise ValueError("dilation factor must be positive")
    return sweep_count(_full(P), n, strict=True)


def ehrhart_from_delta(delta: Sequence[int], n: int) -> int:
    if n < 0:
        raise ValueError("dilation factor must be non-negative")
    d = len(delta) - 1
    return sum(c * comb(n + d - i, d) for i, c in enumerate(delta) if c)


def interior_from_delta(delta: Sequence[int], n: int) -> int:
    d = len(delta) - 1
    return sum(c * comb(n - 1 + i, d) for i, c in enumerate(delta) if c)


def delta_from_evaluations(counts: Dict[int, int], interior: Dict[int, int], d: int) -> DeltaVector:
    """Solve for delta from ``L(n)`` and ``L_int(n)`` values.

    ``L(n)`` only involves delta_0..delta_n and ``L_int(n)`` only
    delta_{d+1-n}..delta_d, so both systems are triangular.
    """
    delta: Dict[int, int] = {0: 1}
    for n in sorted(counts):
        if n == 0:
            continue
        rest = counts[n] - sum(delta[i] * comb(n + d - i, d) for i in range(n))
        delta[n] = rest
    for n in sorted(interior):
        i = d + 1 - n
        if i in delta:
            continue
        rest = interior[n] - sum(delta[j] * comb(n - 1 + j, d) for j in range(i + 1, d + 1))
        delta[i] = rest
    missing = [i for i in range(d + 1) if i not in delta]
    if missing:
        raise ValueError(f"evaluations do not determine delta_{missing}")
    return DeltaVector([delta[i] for i in range(d + 1)])


def delta_from_counts(P: LatticePolytope, use_interior: bool = True) -> DeltaVector:
    """delta-vector from dilate counts, with respect to the affine lattice of ``P``.

    By default the lower half comes from ``L(n)`` and the upper half from
    interior counts, which keeps the dilates small.  ``use_interior=False``
    uses ``L(1..d)`` only.
    """
    Q = _full(P)
    d = Q.ambient_dim
    if use_interior:
        counts = {n: sweep_count(Q, n) for n in range(1, (d + 1) // 2 + 1)}
        inner = {n: sweep_count(Q, n, strict=True) for n in range(1, d // 2 + 1)}
    else:
        counts = {n: sweep_count(Q, n) for n in range(1, d + 1)}
        inner = {}
    delta = delta_from_evaluations(counts, inner, d)
    if delta[0] != 1 or any(x < 0 for x in delta):
        raise DeltaError(f"invalid delta-vector {delta.entries} for {P!r}")
    return delta


def volume(P: LatticePolytope) -> int:
    """Normalized volume with respect to the affine lattice."""
    return normalized_volume(_full(P))


def check_delta_basics(P: LatticePolytope) -> Dict[str, bool]:
    """Check the elementary facts about delta against direct counts."""
    Q = _full(P)
    d = Q.ambient_dim
    delta = delta_from_counts(Q)
    report = {
        "delta0_is_one": delta[0] == 1,
        "nonnegative": all(x >= 0 for x in delta),
        "delta1_counts_points": d == 0 or delta[1] == count_points(Q, 1) - (d + 1),
        "deltad_counts_interior": d == 0 or delta[d] == interior_count(Q, 1),
        "delta1_ge_deltad": d == 0 or delta[1] >= delta[d],
    }
    if d >= 1 and delta[d] != 0:
        report["deltai_ge_delta1"] = all(delta[i] >= delta[1] for i in range(1, d))
    else:
        report["deltai_ge_delta1"] = True
    return report


def stanley_inequalities(delta: Sequence[int]) -> bool:
    delta = list(delta)
    s = max((i for i, x in enumerate(delta) if x), default=0)
    for i in range(s // 2 + 1):
        if sum(delta[: i + 1]) > sum(delta[s - i: s + 1]):
            return False
    return True


def hibi_inequalities(delta: Sequence[int]) -> bool:
    delta = list(delta)
    d = len(delta) - 1
    for i in range(1, (d - 1) // 2 + 1):
        if sum(delta[d - i: d]) > sum(delta[2: i + 2]):
            return False
    return True


def triangulation_split_check(P: LatticePolytope, T1: LatticePolytope, T2: LatticePolytope,
                              common: LatticePolytope, nmax: Optional[int] = None) -> bool:
    """``L_P(n) = L_T1(n) + L_T2(n) - L_common(n)`` for ``n = 0..nmax``."""
    d = P.ambient_dim
    nmax = d + 2 if nmax is None else nmax
    for n in range(nmax + 1):
        if count_points(P, n) != count_points(T1, n) + count_points(T2, n) - count_points(common, n):
            return False
    return True


def circuit_split_check(P: LatticePolytope, side: Sequence[int], nmax: Optional[int] = None) -> bool:
    """Inclusion-exclusion over the cells ``conv(V - {j})``, ``j`` in one side of the circuit.

    With two cells this is the two-simplex split above; larger sides need
    the alternating sum over every common face.
    """
    d = P.ambient_dim
    nmax = d + 2 if nmax is None else nmax
    V = P.vertices
    faces = []
    for m in range(1, len(side) + 1):
        for J in combinations(side, m):
            F = LatticePolytope([v for i, v in enumerate(V) if i not in J], d, _trusted=True)
            faces.append((1 if m % 2 else -1, F))
    for n in range(nmax + 1):
        if count_points(P, n) != sum(sgn * count_points(F, n) for sgn, F in faces):
            return False
    return True


def monotonicity_check(P: LatticePolytope, Q: LatticePolytope) -> bool:
    """Componentwise ``delta(P) >= delta(Q)``.

    ``delta(Q)`` is taken on the affine lattice of ``Q`` and padded with zeros
    up to the dimension of ``P``.
    """
    if Q.ambient_dim != P.ambient_dim:
        raise ValueError("P and Q must share the ambient space")
    if not all(point_in_polytope(P, v) for v in Q.vertices):
        raise ValueError("Q is not contained in P")
    dP = delta_from_counts(P)
    dQ = delta_from_counts(Q).padded(dP.d)
    return all(a >= b for a, b in zip(dP, dQ))
