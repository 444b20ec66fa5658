"""Top-level classifier: volume, pyramid layers, then a match against the catalog."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

from .catalog import (SIMPLEX_FAMILIES, TABLE2_IDS, TABLE3_IDS, CatalogEntry, check_simplex_params,
                      make_table2, replay_strip, simplex_dimension,
                      strip_pyramids, table1_instances, table2_claimed_delta, table3_claimed_delta,
                      table3_dimension, table3_instances)
from .ehrhart import DeltaVector, delta_from_counts
from .equivalence import EquivalenceWitness, are_equivalent, simplex_witness
from .groups import InvalidParameters, delta_from_group, lambda_group_of_simplex
from .polytope import (AffineLatticeMap, LatticePolytope, UnimodularMap, affine_lattice_normalize,
                       apply_map, normalized_volume)

VOLUME_LIMIT = 4


class ClassificationError(RuntimeError):
    """No catalog entry matched a polytope of volume at most four.

    Every polytope of volume at most four should be in the catalog, so this
    points at a bug or a counterexample and is never swallowed.
    """


@dataclass(frozen=True)
class WitnessChain:
    """Input -> intrinsic lattice -> stripped core -> catalog core."""

    normalize: AffineLatticeMap
    strip: Tuple[UnimodularMap, ...] = ()
    final: Optional[UnimodularMap] = None

    def replay(self, P: LatticePolytope) -> LatticePolytope:
        """Push ``P`` through every stage; each stage is re-checked, not trusted."""
        pts = [self.normalize.from_ambient(v) for v in P.vertices]
        cur = LatticePolytope(pts, self.normalize.source_dim, P.name)
        cur = replay_strip(cur, self.strip)
        if self.final is not None:
            cur = apply_map(self.final, cur)
        return cur

    def to_dict(self) -> dict:
        return {"normalize": self.normalize.to_dict(),
                "strip": [T.to_dict() for T in self.strip],
                "final": self.final.to_dict() if self.final is not None else None}

    @classmethod
    def from_dict(cls, data: dict) -> "WitnessChain":
        final = data.get("final")
        return cls(AffineLatticeMap.from_dict(data["normalize"]),
                   tuple(UnimodularMap.from_dict(T) for T in data.get("strip", ())),
                   UnimodularMap.from_dict(final) if final is not None else None)


@dataclass(frozen=True)
class ClassificationResult:
    entry: Optional[CatalogEntry]  # None means the volume is above the classified range
    volume: int
    delta: DeltaVector
    witness: Optional[WitnessChain] = None
    correspondence: Tuple[int, ...] = field(default=())

    @property
    def in_scope(self) -> bool:
        return self.entry is not None

    def replay(self, P: LatticePolytope) -> LatticePolytope:
        if self.witness is None:
            raise ValueError("no witness for an out-of-scope result")
        return self.witness.replay(P)

    def verify(self, P: LatticePolytope) -> bool:
        return self.in_scope and self.replay(P) == self.entry.core()

    def to_dict(self) -> dict:
        out = {"volume": self.volume, "delta": list(self.delta.entries),
               "delta_polynomial": self.delta.polynomial()}
        if self.entry is None:
            out["result"] = "volume exceeds 4"
            return out
        out.update(self.entry.to_dict())
        out["label"] = self.entry.label()
        out["witness"] = self.witness.to_dict()
        return out


def simplex_candidates(d: int, delta: DeltaVector) -> Iterator[CatalogEntry]:
    exps = delta.exponents()
    for family in SIMPLEX_FAMILIES:
        try:
            check_simplex_params(family, exps)
        except (InvalidParameters, ValueError, KeyError):
            continue
        if simplex_dimension(family, exps) == d:
            yield CatalogEntry(family, tuple(exps))


def polytope_candidates(d: int, delta: DeltaVector) -> Iterator[CatalogEntry]:
    for ident in TABLE2_IDS:
        P = make_table2(ident)
        if P.ambient_dim == d and table2_claimed_delta(ident).padded(d) == delta:
            yield CatalogEntry(ident)
    exps = delta.exponents()
    if len(exps) == 3 and exps[0] == 1:
        k = exps[1]
        if k >= 2:
            for ident in TABLE3_IDS:
                if table3_dimension(ident, k) == d and table3_claimed_delta(ident, k) == delta:
                    yield CatalogEntry(ident, (k,))


def classify(P: LatticePolytope, budget: int = 10**6) -> ClassificationResult:
    """Identify ``P`` with a catalog entry, up to equivalence and pyramids."""
    Pn, phi = affine_lattice_normalize(P)
    vol = normalized_volume(Pn)
    if vol > VOLUME_LIMIT:
        return ClassificationResult(None, vol, delta_from_counts(Pn))
    stripped = strip_pyramids(Pn)
    core = stripped.core
    d = core.ambient_dim
    if vol == 1:
        # a unimodular simplex strips all the way down to a point
        if d != 0:
            raise ClassificationError("volume one but not a stack of pyramids over a point")
        entry = CatalogEntry("Δ1", (), stripped.layers)
        chain = WitnessChain(phi, stripped.maps, UnimodularMap.identity(0))
        return ClassificationResult(entry, vol, DeltaVector((1,)).padded(Pn.ambient_dim), chain, (0,))
    if core.is_simplex:
        delta = delta_from_group(lambda_group_of_simplex(core.vertices))
        for cand in simplex_candidates(d, delta):
            target = cand.core()
            w = simplex_witness(core, target)
            if w is not None:
                return _result(cand, stripped.layers, vol, delta, phi, stripped.maps, w, Pn)
    else:
        delta = delta_from_counts(core)
        for cand in polytope_candidates(d, delta):
            w = are_equivalent(core, cand.core(), budget=budget)
            if w is not None:
                return _result(cand, stripped.layers, vol, delta, phi, stripped.maps, w, Pn)
    raise ClassificationError(f"no catalog match for volume {vol}, d={d}, delta {delta.polynomial()}")


def _result(cand: CatalogEntry, layers: int, vol: int, delta: DeltaVector, phi: AffineLatticeMap,
            maps: Sequence[UnimodularMap], w: EquivalenceWitness, full: LatticePolytope) -> ClassificationResult:
    entry = CatalogEntry(cand.family, cand.params, layers)
    chain = WitnessChain(phi, tuple(maps), w.map)
    return ClassificationResult(entry, vol, delta.padded(full.ambient_dim), chain, w.correspondence)


def catalog_entries(dmax: int = 9, kmax: int = 4) -> List[CatalogEntry]:
    """Every catalog entry with core dimension at most ``dmax`` (non-spanning families up to ``kmax``)."""
    out = [CatalogEntry(f, e) for f, e in table1_instances(dmax)]
    out += [CatalogEntry(i) for i in TABLE2_IDS if make_table2(i).ambient_dim <= dmax]
    out += [CatalogEntry(i, (k,)) for i, k in table3_instances(kmax) if table3_dimension(i, k) <= dmax]
    return out
