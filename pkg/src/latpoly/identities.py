"""Candidate polytopes of the two non-spanning families and the matrix identities
claimed between them.

Every candidate is ``conv(0, e_1, ..., e_{d-1}, v, v')``.  A claim
``target = f_U(source) + w`` is stored with ``U`` and ``w`` as functions of
``k``; matrices act on row vectors from the right.

Matrix templates, in terms of ``d`` and ``k`` (rows and columns 1-based):

* ``_shear_col2``: identity, row 1 gets -1 in column 2, column 2 is -1 in
  rows 2..d-1, and row d carries k-1 in column 2.
* ``_fold_first``: identity, row 1 gets 1 in columns 2..m and 2 in column
  d, row d gets -1 in columns 2..m and -1 in column d (m is d-2 or d-3).
* ``_complement(m)``: an m x m block with 0 on the diagonal and -1 off it,
  -2 in column d for the block rows, the rows below the block filled with
  -1 across the block columns, identity on columns m+1..d-1 and -2 in
  column d, last row k-2 across the block and 2k-3 in column d.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from .polytope import LatticePolytope

Matrix = List[List[int]]


def _e(d: int, *idx: int, coeff: int = 1) -> List[int]:
    v = [0] * d
    for i in idx:
        v[i - 1] += coeff
    return v


def _span(d: int, lo: int, hi: int, coeff: int = 1) -> List[int]:
    return _e(d, *range(lo, hi + 1), coeff=coeff)


def _plus(*vs) -> List[int]:
    return [sum(x) for x in zip(*vs)]


def _candidate(d: int, v, vp) -> LatticePolytope:
    base = [tuple([0] * d)] + [tuple(_e(d, i)) for i in range(1, d)]
    return LatticePolytope(base + [tuple(v), tuple(vp)], d)


# -- candidates -----------------------------------------------------------------

def a_candidate(i: int, k: int) -> LatticePolytope:
    """Candidate ``(i)``, 1 <= i <= 11, of the ``1+t+t^k+t^{k+1}`` case."""
    if i <= 4:
        d = 2 * k
        v = _plus(_span(d, 1, d - 2), _e(d, d, coeff=2))
        vp = {
            1: _plus(_e(d, 1), _e(d, d - 1, coeff=-1)),
            2: _plus(_e(d, 1, 2), _e(d, d - 1, coeff=-1)),
            3: _plus(_span(d, 1, d - 2), _e(d, d - 1, coeff=-1), _e(d, d, coeff=2)),
            4: _plus(_e(d, 1, coeff=2), _span(d, 2, d - 2), _e(d, d - 1, coeff=-1), _e(d, d, coeff=2)),
        }[i]
    elif i <= 10:
        d = 2 * k + 1
        v = _plus(_span(d, 1, d - 3), _e(d, d, coeff=2))
        vp = {
            5: _plus(_span(d, 1, d - 3, -1), _e(d, d - 2, d - 1), _e(d, d, coeff=-2)),
            6: _e(d, d - 2, d - 1),
            7: _plus(_e(d, 1, coeff=-1), _e(d, d - 2, d - 1)),
            8: _plus(_e(d, d - 2, coeff=-1), _e(d, d - 1)),
            9: _plus(_e(d, 1), _e(d, d - 2, coeff=-1), _e(d, d - 1)),
            10: _plus(_span(d, 1, d - 3), _e(d, d - 2, coeff=-1), _e(d, d - 1), _e(d, d, coeff=2)),
        }[i]
    elif i == 11:
        d = 2 * k + 2
        v = _plus(_span(d, 1, d - 4), _e(d, d, coeff=2))
        vp = _plus(_e(d, d - 3, coeff=-1), _e(d, d - 2, d - 1))
    else:
        raise KeyError(i)
    return _candidate(d, v, vp)


def b_candidate(i: int, k: int, amended: bool = False) -> LatticePolytope:
    """Candidate ``(i)``, 1 <= i <= 7, of the ``1+t+2t^k`` case.

    ``amended`` only affects candidate 7: the first extra vertex sums
    ``e_1..e_{d-2}`` instead of ``e_1..e_{d-3}``.  As listed, candidate 7 has
    normalized volume 6 and cannot belong to the family.
    """
    d = 2 * k
    v = _plus(_span(d, 1, d - 2), _e(d, d, coeff=2))
    if i == 1:
        vp = _plus(_span(d, 1, d - 3, -1), _e(d, d - 1), _e(d, d, coeff=-2))
    elif i == 2:
        vp = _plus(_span(d, 1, d - 2, -1), _e(d, d - 1), _e(d, d, coeff=-2))
    elif i == 3:
        vp = _e(d, 1, d - 1)
    elif i == 4:
        vp = _plus(_span(d, 1, d - 1), _e(d, d, coeff=2))
    elif i == 5:
        vp = _plus(_e(d, 1, coeff=-1), _e(d, d - 1))
    elif i == 6:
        vp = _plus(_e(d, 1, coeff=-1), _e(d, 2, d - 1))
    elif i == 7:
        v = _plus(_span(d, 1, d - 2 if amended else d - 3), _e(d, d, coeff=2))
        vp = _plus(_span(d, 2, d - 1), _e(d, d, coeff=2))
    else:
        raise KeyError(i)
    return _candidate(d, v, vp)


# -- matrix templates -----------------------------------------------------------------

def _identity(d: int) -> Matrix:
    return [[int(i == j) for j in range(d)] for i in range(d)]


def _shear_col2(d: int, k: int) -> Matrix:
    U = _identity(d)
    U[0][1] = -1
    for r in range(1, d - 1):
        U[r][1] = -1
    U[d - 1][1] = k - 1
    return U


def _fold_first(d: int, m: int) -> Matrix:
    U = _identity(d)
    for c in range(1, m):
        U[0][c] = 1
        U[d - 1][c] = -1
    U[0][d - 1] = 2
    U[d - 1][d - 1] = -1
    return U


def _complement(d: int, k: int, m: int) -> Matrix:
    U = [[0] * d for _ in range(d)]
    for r in range(m):
        for c in range(m):
            U[r][c] = 0 if r == c else -1
        U[r][d - 1] = -2
    for r in range(m, d - 1):
        for c in range(m):
            U[r][c] = -1
        U[r][r] = 1
        U[r][d - 1] = -2
    for c in range(m):
        U[d - 1][c] = k - 2
    U[d - 1][d - 1] = 2 * k - 3
    return U


def _u58(d: int, k: int) -> Matrix:
    U = _complement(d, k, d - 3)
    U[d - 2] = [-2] * (d - 3) + [1, 1, -4]
    return U


def _u59(d: int, k: int) -> Matrix:
    U = _fold_first(d, d - 3)
    U[d - 2] = [-1] * (d - 3) + [1, 1, -2]
    return U


def _u5_10(d: int, k: int) -> Matrix:
    U = _identity(d)
    U[d - 2] = [-1] * (d - 3) + [1, 1, -2]
    return U


def _b51(d: int, k: int) -> Matrix:
    U = _identity(d)
    for c in range(1, d - 3):
        U[0][c] = 1
        U[d - 1][c] = -1
    U[0][d - 1] = 2
    for r in range(1, d - 1):
        U[r][d - 3] = -1
    U[d - 1][d - 3] = k - 2
    U[d - 1][d - 1] = -1
    return U


def _b53(d: int, k: int) -> Matrix:
    U = _identity(d)
    U[0][0] = -1
    for r in range(1, d - 1):
        U[r][0] = -1
    U[d - 1][0] = k - 1
    return U


def _b54(d: int, k: int) -> Matrix:
    U = _b53(d, k)
    U[0] = [0] + [1] * (d - 3) + [0, 2]
    U[d - 1] = [k - 2] + [-1] * (d - 3) + [0, -1]
    return U


# -- claims -------------------------------------------------------------------------

@dataclass(frozen=True)
class ClaimedIdentity:
    name: str
    family: str  # "A" or "B"
    source: int
    target: int
    matrix: Callable[[int, int], Matrix]
    translation: Callable[[int, int], List[int]]
    note: str = ""
    substituted_for: Optional[str] = None
    amended: bool = False  # source vertex list read with a corrected summation bound

    def candidate(self, i: int, k: int) -> LatticePolytope:
        if self.family == "A":
            return a_candidate(i, k)
        return b_candidate(i, k, amended=self.amended and i == self.source)

    def instantiate(self, k: int) -> Tuple[Matrix, List[int], LatticePolytope, LatticePolytope]:
        src = self.candidate(self.source, k)
        dst = self.candidate(self.target, k)
        d = src.ambient_dim
        return self.matrix(d, k), self.translation(d, k), src, dst


def _zero(d, k):
    return [0] * d


def _w_a1(d, k):
    return _plus(_span(d, 1, d - 2), _e(d, d, coeff=2))


def _w_a5(d, k):
    return _plus(_span(d, 1, d - 3), _e(d, d, coeff=2))


CLAIMS: Tuple[ClaimedIdentity, ...] = (
    ClaimedIdentity("A:U_{1,2}", "A", 2, 1, _shear_col2, lambda d, k: _e(d, 2)),
    ClaimedIdentity("A:U_{1,3}", "A", 3, 1, lambda d, k: _fold_first(d, d - 2), _zero),
    ClaimedIdentity("A:U_{1,4}", "A", 4, 1, lambda d, k: _complement(d, k, d - 2), _w_a1,
                    note="undefined in source, hypothesis U_{1,5} tested",
                    substituted_for="A:U_{1,5}"),
    ClaimedIdentity("A:U_{5,6}", "A", 6, 5, lambda d, k: _complement(d, k, d - 3), _w_a5),
    ClaimedIdentity("A:U_{5,7}", "A", 7, 5, lambda d, k: _fold_first(d, d - 3), _zero),
    ClaimedIdentity("A:U_{5,8}", "A", 8, 5, _u58, _w_a5),
    ClaimedIdentity("A:U_{5,9}", "A", 9, 5, _u59, _zero),
    ClaimedIdentity("A:U_{5,10}", "A", 10, 5, _u5_10, _zero),
    ClaimedIdentity("B:U_{5,1}", "B", 1, 5, _b51, lambda d, k: _e(d, 2 * k - 2)),
    ClaimedIdentity("B:U_{5,2}", "B", 2, 5, lambda d, k: _fold_first(d, d - 2), _zero),
    ClaimedIdentity("B:U_{5,3}", "B", 3, 5, _b53, lambda d, k: _e(d, 1)),
    ClaimedIdentity("B:U_{5,4}", "B", 4, 5, _b54, lambda d, k: _e(d, 1)),
    ClaimedIdentity("B:U_{5,6}", "B", 6, 5, _shear_col2, lambda d, k: _e(d, 2),
                    note="subscript placement garbled in the source; read as f_U(P_6) + e_2"),
    ClaimedIdentity("B:U_{5,7}", "B", 7, 5, lambda d, k: _complement(d, k, d - 2), _w_a5),
    ClaimedIdentity("B:U_{5,7}'", "B", 7, 5, lambda d, k: _complement(d, k, d - 2), _w_a1,
                    note="candidate 7 and the translation both read with e_1..e_{d-2}",
                    amended=True),
)


def claim_by_name(name: str) -> ClaimedIdentity:
    for c in CLAIMS:
        if c.name == name:
            return c
    raise KeyError(name)
