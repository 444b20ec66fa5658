from collections import Counter

import pytest

from latpoly.catalog import (TABLE2_IDS, CatalogEntry, feasible_delta, half_sum_invariant, make_simplex,
                             make_table2, make_table3, replay_strip, spans_lattice, strip_pyramids,
                             table1_instances, table2_claimed_delta, table3_claimed_delta)
from latpoly.ehrhart import delta_from_counts
from latpoly.groups import InvalidParameters
from latpoly.polytope import LatticePolytope, normalized_volume, pyramid


def test_make_simplex_examples():
    assert make_simplex("Δ2", 2).vertices == ((0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 2))
    assert make_simplex("Δ3", 1, 2) == LatticePolytope([(0, 0), (1, 0), (2, 3)], 2)
    D = make_simplex("D43", 1, 1, 1)
    assert D == LatticePolytope([(0, 0), (2, 0), (0, 2)], 2)
    assert delta_from_counts(D).polynomial() == "1+3t"


def test_infeasible_parameters_name_the_condition():
    with pytest.raises(InvalidParameters, match="i1 < i2 < i3"):
        make_simplex("Δ41", 1, 1, 2)
    with pytest.raises(InvalidParameters, match="takes 1 exponent"):
        make_simplex("Δ2", 1, 2)
    with pytest.raises(InvalidParameters, match="k >= 2"):
        make_table3("B4", 1)


def test_table1_instance_counts():
    # frozen: Δ2 needs 2 i1 - 1 <= 9, so i1 = 1..5; the rest come from the family conditions
    got = Counter(f for f, _ in table1_instances(9))
    assert got == {"Δ2": 5, "Δ3": 13, "Δ41": 9, "Δ42": 32, "Δ43": 17}


def test_table2_examples():
    assert len(TABLE2_IDS) == 24
    assert make_table2("P2") == LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)], 2)
    assert make_table2("Q4_2") == LatticePolytope([(1, 0), (-1, 0), (0, 1), (0, -1)], 2)
    S = make_table2("S4_4")
    assert S.ambient_dim == 6 and (-1, -1, -1, 1, 1, 1) in S.vertices
    assert table2_claimed_delta("Q4_2").entries == (1, 2, 1)


def test_table3_examples():
    A = make_table3("A4_1", 2)
    assert A.ambient_dim == 4 and A.n_vertices == 6 and (1, 0, -1, 0) in A.vertices
    A3 = make_table3("A4_3", 2)
    assert A3.ambient_dim == 6 and (0, 0, -1, 1, 1, 0) in A3.vertices
    B = make_table3("B4", 3)
    assert B.ambient_dim == 6
    assert delta_from_counts(B) == table3_claimed_delta("B4", 3)
    assert delta_from_counts(B).polynomial() == "1+t+2t^3"


def test_pyramid_examples(unit_square):
    P = pyramid(unit_square)
    assert P.ambient_dim == 3 and delta_from_counts(P).polynomial() == "1+t"
    D = pyramid(make_simplex("Δ2", 2))
    assert D.ambient_dim == 4 and delta_from_counts(D).polynomial() == "1+t^2"


def test_strip_examples(unit_square):
    s = strip_pyramids(pyramid(pyramid(unit_square)))
    assert s.layers == 2 and s.core == unit_square
    assert replay_strip(pyramid(pyramid(unit_square)), s.maps) == unit_square
    D = make_simplex("Δ2", 2)
    assert strip_pyramids(D).layers == 0
    B = make_table3("B4", 2)
    s = strip_pyramids(pyramid(B))
    assert s.layers == 1 and normalized_volume(s.core) == 4 and delta_from_counts(s.core) == delta_from_counts(B)


def test_spans_examples(unit_square):
    assert spans_lattice(unit_square)
    assert not spans_lattice(make_simplex("Δ2", 2))
    assert not any(spans_lattice(make_table3("B4", k)) for k in (2, 3, 4))


def test_feasible_examples():
    assert feasible_delta(2, (2,), 3)
    assert feasible_delta(3, (1, 2), 2)
    assert delta_from_counts(make_simplex("Δ3", 1, 2)).polynomial() == "1+t+t^2"
    assert not feasible_delta(3, (1, 2), 2, as_printed=True)
    assert feasible_delta(4, (1, 2, 3), 5)
    assert not feasible_delta(4, (1, 1, 3), 3)


def test_half_sum_examples():
    for k in (2, 3, 4):
        assert half_sum_invariant(make_table3("A4_1", k)) == 2 * k
        assert half_sum_invariant(make_table3("A4_2", k)) == 2 * k + 2
        assert half_sum_invariant(make_table3("A4_3", k)) == 2 * k + 4
    assert half_sum_invariant(LatticePolytope([(0,), (1,)], 1)) == 0


def test_catalog_entry_round_trip():
    e = CatalogEntry("Δ3", (1, 2), 2)
    assert e.label() == "Δ3 (i1=1,i2=2)"
    assert e.polytope().ambient_dim == 4
    assert e.claimed_delta() == delta_from_counts(e.polytope())
    assert CatalogEntry("B4", (3,)).to_dict() == {"family": "B4", "params": {"k": 3}, "pyramids": 0}
