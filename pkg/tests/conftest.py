import itertools
import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st
from scipy.optimize import linprog

from latpoly.polytope import LatticePolytope


def lp_member(vertices, x) -> bool:
    """Float LP oracle: is x a convex combination of the vertices?"""
    V = np.array(vertices, dtype=float).T
    m = V.shape[1]
    A = np.vstack([V, np.ones((1, m))])
    b = np.concatenate([np.array(x, dtype=float), [1.0]])
    res = linprog(np.zeros(m), A_eq=A, b_eq=b, bounds=[(0, None)] * m, method="highs")
    return res.status == 0


def brute_count(P: LatticePolytope, n: int) -> int:
    """Lattice points of nP by scanning the bounding box with the LP oracle."""
    d = P.ambient_dim
    if d == 0:
        return 1
    verts = [[n * c for c in v] for v in P.vertices]
    lo = [min(v[i] for v in verts) for i in range(d)]
    hi = [max(v[i] for v in verts) for i in range(d)]
    return sum(1 for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
               if lp_member(verts, x))


def det_frac(M):
    M = [[Fraction(x) for x in r] for r in M]
    n = len(M)
    out = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            out = -out
        out *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return int(out)


def random_simplex_vertices(rng, d, lo=-3, hi=3, max_vol=None):
    """A full-dimensional simplex with coordinates in [lo, hi]."""
    while True:
        V = [tuple(rng.randint(lo, hi) for _ in range(d)) for _ in range(d + 1)]
        vol = abs(det_frac([[a - b for a, b in zip(v, V[0])] for v in V[1:]])) if d else 1
        if vol and (max_vol is None or vol <= max_vol):
            return V, vol


small_ints = st.integers(min_value=-3, max_value=3)


@st.composite
def simplices(draw, dmin=1, dmax=3, max_vol=12):
    d = draw(st.integers(min_value=dmin, max_value=dmax))
    V = draw(st.lists(st.tuples(*[small_ints] * d), min_size=d + 1, max_size=d + 1, unique=True))
    vol = abs(det_frac([[a - b for a, b in zip(v, V[0])] for v in V[1:]]))
    from hypothesis import assume
    assume(vol and vol <= max_vol)
    return LatticePolytope(V, d)


@pytest.fixture
def unit_square():
    return LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)], 2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and getattr(mod, "RESULTS", None):
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
