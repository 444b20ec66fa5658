import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_count, lp_member, simplices
from latpoly.catalog import make_table2, make_table3
from latpoly.ehrhart import count_points
from latpoly.identities import claim_by_name
from latpoly.polytope import (DimensionMismatch, LatticePolytope, UnimodularMap, affine_lattice_normalize,
                              apply_map, normalized_volume, point_in_polytope, pyramid, radon_triangulate,
                              random_unimodular_map, sweep_points)


def test_vertices_are_reduced_and_sorted():
    P = LatticePolytope([(1, 1), (0, 0), (2, 0), (0, 2), (2, 2), (1, 0)], 2)
    assert P.vertices == ((0, 0), (0, 2), (2, 0), (2, 2))
    assert P.dim == 2 and not P.is_simplex


def test_ragged_input_rejected():
    with pytest.raises(DimensionMismatch):
        LatticePolytope([(0, 0), (1,)], 2)


def test_identity_map_fixes_polytope(unit_square):
    assert apply_map(UnimodularMap.identity(2), unit_square) == unit_square


def test_translation():
    seg = LatticePolytope([(0, 0), (1, 0)], 2)
    img = apply_map(UnimodularMap.translation_by((0, 1)), seg)
    assert img == LatticePolytope([(0, 1), (1, 1)], 2)


def test_u12_identity_at_k2():
    c = claim_by_name("A:U_{1,2}")
    M, w, src, dst = c.instantiate(2)
    assert apply_map(UnimodularMap(M, w), src) == dst


def test_non_unimodular_rejected():
    with pytest.raises(ValueError):
        UnimodularMap([[2, 0], [0, 1]], [0, 0])


def test_normalize_segment():
    Pn, phi = affine_lattice_normalize(LatticePolytope([(0, 0), (0, 2)], 2))
    assert Pn.ambient_dim == 1
    assert sorted(Pn.vertices) in ([(0,), (2,)], [(-2,), (0,)])
    assert all(phi.to_ambient(v) in ((0, 0), (0, 2)) for v in Pn.vertices)


def test_normalize_full_dimensional_is_identity(unit_square):
    Pn, phi = affine_lattice_normalize(unit_square)
    assert Pn == unit_square
    assert all(phi.from_ambient(v) == v for v in unit_square.vertices)


def test_normalize_triangle_in_3d():
    Pn, _ = affine_lattice_normalize(LatticePolytope([(0, 0, 0), (1, 0, 0), (0, 1, 0)], 3))
    assert Pn.ambient_dim == 2 and normalized_volume(Pn) == 1


def test_point_in_polytope():
    tri = LatticePolytope([(0, 0), (1, 0), (2, 3)], 2)
    assert point_in_polytope(tri, (Fraction(1), Fraction(1)))
    assert point_in_polytope(tri, tuple(sum(c) / Fraction(3) for c in zip(*tri.vertices)))
    sq = LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)], 2)
    assert not point_in_polytope(sq, (2, 2))


def test_radon_split_volumes(unit_square):
    s = radon_triangulate(unit_square)
    assert s.two_cell and sorted(normalized_volume(T) for T in s.cells) == [1, 1]
    s = radon_triangulate(make_table3("B4", 2))
    assert s.two_cell and sorted(normalized_volume(T) for T in s.cells) == [2, 2]
    s = radon_triangulate(make_table2("Q4_2"))
    assert s.two_cell and sorted(normalized_volume(T) for T in s.cells) == [2, 2]


def test_pyramid_of_point():
    assert pyramid(LatticePolytope([()], 0)) == LatticePolytope([(0,), (1,)], 1)


@settings(max_examples=40, deadline=None)
@given(simplices(dmax=3, max_vol=6), st.integers(0, 2))
def test_sweep_count_matches_lp_scan(S, n):
    assert count_points(S, n) == brute_count(S, n)


@settings(max_examples=40, deadline=None)
@given(simplices(dmax=3, max_vol=6))
def test_sweep_points_are_members(S):
    pts = sweep_points(S)
    assert len(pts) == len(set(pts)) == count_points(S, 1)
    assert all(lp_member(S.vertices, p) for p in pts)


@settings(max_examples=60, deadline=None)
@given(simplices(dmax=4), st.integers(0, 2**32))
def test_volume_and_counts_invariant_under_maps(S, seed):
    T = random_unimodular_map(S.ambient_dim, random.Random(seed))
    img = apply_map(T, S)
    assert normalized_volume(img) == normalized_volume(S)
    assert count_points(img, 2) == count_points(S, 2)
    assert apply_map(T.inverse(), img) == S


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**32))
def test_map_composition(d, seed):
    rng = random.Random(seed)
    A, B = random_unimodular_map(d, rng), random_unimodular_map(d, rng)
    x = tuple(rng.randint(-5, 5) for _ in range(d))
    assert A.then(B)(x) == B(A(x))
    assert A.inverse()(A(x)) == x


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@settings(max_examples=25, deadline=None)
@given(simplices(dmax=2, max_vol=4))
def test_membership_against_barycentric_grid(S):
    # points with denominator 2 have barycentric weights with denominator 2 * vol,
    # so searching that grid decides membership exactly
    den = 2 * normalized_volume(S)
    inside = set()
    for w in _compositions(den, S.ambient_dim + 1):
        x = tuple(Fraction(sum(wi * v[i] for wi, v in zip(w, S.vertices)), den) for i in range(S.ambient_dim))
        if all((2 * c).denominator == 1 for c in x):
            inside.add(x)
    lo = [min(v[i] for v in S.vertices) for i in range(S.ambient_dim)]
    hi = [max(v[i] for v in S.vertices) for i in range(S.ambient_dim)]
    for x in itertools.product(*(range(2 * a - 1, 2 * b + 2) for a, b in zip(lo, hi))):
        p = tuple(Fraction(c, 2) for c in x)
        assert point_in_polytope(S, p) == (p in inside)
