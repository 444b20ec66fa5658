import pytest

from latpoly import linalg
from latpoly.catalog import feasible_delta, make_simplex, table1_instances
from latpoly.enumeration import (BoundExceeded, cross_validate, enumerate_groups, enumerate_simplices,
                                 exponent_tuples, hermite_simplices)
from latpoly.groups import canonical_form, lambda_group_of_simplex
from latpoly.polytope import LatticePolytope


def table_keys(d, vmax=4):
    out = {}
    for fam, exps in table1_instances(d, d):
        if len(exps) + 1 <= vmax:
            S = make_simplex(fam, *exps)
            out[canonical_form(lambda_group_of_simplex(S.vertices)).key] = (fam, exps)
    return out


def test_segment_of_length_two():
    cls = enumerate_simplices(1, 2)
    assert len(cls) == 1
    assert LatticePolytope(cls[0].vertices, 1) == LatticePolytope([(0,), (2,)], 1)


def test_volume_two_at_d3_is_delta2():
    cls = enumerate_simplices(3, 2)
    assert len(cls) == 1 and cls[0].delta.polynomial() == "1+t^2"
    assert cls[0].key == next(iter(table_keys(3, 2)))


def test_d2_classes_biject_with_table():
    keys = {c.key for c in enumerate_simplices(2, 4)}
    assert keys == set(table_keys(2))
    realised = {c.delta.exponents() for d in (1, 2) for c in enumerate_simplices(d, 4)}
    for V in (2, 3, 4):
        for e in exponent_tuples(V, 2):
            assert feasible_delta(V, e, 2) == (e in realised)


def test_group_sweep_examples():
    one = enumerate_groups(1, 2)
    assert len(one) == 1 and one[0].delta.polynomial() == "1+t"
    order3 = [c for c in enumerate_groups(2, 4) if c.volume == 3]
    assert [c.delta.polynomial() for c in order3] == ["1+t+t^2"]
    klein = [c for c in enumerate_groups(3, 4) if c.key[0][1] == (2, 2)]
    assert len(klein) == 1 and klein[0].delta.polynomial() == "1+2t+t^2"


def test_frozen_class_counts():
    # frozen from the two sweeps; the simplex catalog agrees at every d
    counts = {d: len(enumerate_simplices(d, 4)) for d in range(1, 7)}
    assert counts == {1: 3, 2: 3, 3: 6, 4: 4, 5: 10, 6: 7}


def test_hermite_count_is_sublattice_count():
    for d in (1, 2, 3):
        for det in (2, 3, 4, 6):
            assert sum(1 for _ in hermite_simplices(d, det)) == linalg.count_sublattices(det, d)


def test_cross_validate_small():
    rep = cross_validate(range(1, 5), 4)
    assert rep.ok
    printed = cross_validate(range(1, 3), 4, as_printed=True)
    bad = [m for c in printed.checks if c["id"].startswith("feasibility/") for m in c["details"]["mismatches"]]
    assert {"V": 3, "exponents": [1, 2], "d": 2, "predicate": False, "enumeration": True} in bad


def test_cross_validate_volume_two():
    rep = cross_validate(range(1, 7), 2)
    assert rep.ok
    for d in range(1, 7):
        polys = [c.delta.polynomial() for c in enumerate_simplices(d, 2)]
        assert polys == (["1+t" if d == 1 else f"1+t^{(d + 1) // 2}"] if d % 2 else [])


def test_empty_range():
    assert cross_validate([], 4).checks == []


def test_bounds():
    with pytest.raises(BoundExceeded):
        enumerate_simplices(7, 4)
    with pytest.raises(BoundExceeded):
        enumerate_groups(3, 5)
