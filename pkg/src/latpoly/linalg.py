"""Exact integer and rational linear algebra.

Matrices are plain lists of rows of Python ints (or ``Fraction`` where
noted).  Nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

Matrix = List[List[int]]

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


def check_int64(value: int) -> int:
    if not INT64_MIN <= value <= INT64_MAX:
        raise OverflowError(f"integer {value} outside signed 64-bit range")
    return value


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def copy(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(row) for row in A]


def transpose(A: Sequence[Sequence]) -> list:
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def vecmat(v: Sequence, A: Sequence[Sequence]) -> list:
    """Row vector times matrix."""
    n = len(A[0]) if A else 0
    out = [0] * n
    for coeff, row in zip(v, A):
        if coeff:
            for j in range(n):
                out[j] += coeff * row[j]
    return out


def primitive(v: Sequence[int]) -> List[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return list(v)
    return [x // g for x in v]


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def det(A: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss, fraction free)."""
    n = len(A)
    if n == 0:
        return 1
    M = copy(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


def rank(A: Sequence[Sequence]) -> int:
    if not A or not len(A[0]):
        return 0
    if all(isinstance(x, int) for row in A for x in row):
        M = [list(row) for row in A]
    else:
        # clear denominators row by row so elimination stays in the integers
        M = []
        for row in A:
            fr = [Fraction(x) for x in row]
            den = 1
            for x in fr:
                den = den * x.denominator // gcd(den, x.denominator)
            M.append([int(x * den) for x in fr])
    rows, cols = len(M), len(M[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        for i in range(r + 1, rows):
            q = M[i][c]
            if q:
                row = [p * a - q * b for a, b in zip(M[i], M[r])]
                g = 0
                for x in row:
                    g = gcd(g, x)
                M[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == rows:
            break
    return r


def solve(A: Sequence[Sequence], b: Sequence) -> List[Fraction]:
    """Solve the square system ``A x = b`` exactly; raises on singular A."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * p for a, p in zip(M[i], M[c])]
    return [M[i][n] for i in range(n)]


def inverse(A: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * p for a, p in zip(M[i], M[c])]
    return [row[n:] for row in M]


def integer_inverse(A: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a unimodular matrix; raises ``ValueError`` otherwise."""
    out = []
    for row in inverse(A):
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def cofactor_normal(rows: Sequence[Sequence[int]]) -> List[int]:
    """Generalized cross product of ``n-1`` vectors in ``Z^n``.

    The result is orthogonal to every row; it is zero iff the rows are
    linearly dependent.
    """
    n = len(rows) + 1
    out = []
    for j in range(n):
        minor = [[row[c] for c in range(n) if c != j] for row in rows]
        out.append((-1) ** j * det(minor))
    return out


# -- Hermite normal form ---------------------------------------------------

def hermite_normal_form(A: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H = U A``, ``U`` unimodular, pivots positive,
    entries above each pivot reduced into ``[0, pivot)`` and zero rows last.
    """
    H = copy(A)
    m = len(H)
    n = len(H[0]) if m else 0
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(H[i][c]), i))
            if p != r:
                H[r], H[p] = H[p], H[r]
                U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][c]:
                        done = False
            if done:
                break
        if all(H[i][c] == 0 for i in range(r, m)):
            continue
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        piv = H[r][c]
        for i in range(r):
            q = H[i][c] // piv
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return H, U


def column_hermite_form(A: Sequence[Sequence[int]]) -> Matrix:
    """Canonical form of ``A`` under right multiplication by GL_n(Z).

    Lower triangular (for square full-rank input) with entries left of each
    diagonal pivot reduced modulo that pivot.
    """
    H, _ = hermite_normal_form(transpose(A))
    return transpose(H)


# -- Smith normal form ------------------------------------------------------

@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ A @ right == diag(diagonal)`` with a divisibility chain."""

    left: Tuple[Tuple[int, ...], ...]
    right: Tuple[Tuple[int, ...], ...]
    diagonal: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for s in self.diagonal if s)


def smith_normal_form(A: Sequence[Sequence[int]]) -> SmithDecomposition:
    M = copy(A)
    m = len(M)
    n = len(M[0]) if m else 0
    L = identity(m)
    R = identity(n)

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        M[dst] = [a - q * b for a, b in zip(M[dst], M[src])]
        L[dst] = [a - q * b for a, b in zip(L[dst], L[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        for row in M:
            row[dst] -= q * row[src]
        for row in R:
            row[dst] -= q * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(M[i][j]), i, j) for i in range(t, m)
                       for j in range(t, n) if M[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            clean = True
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, M[i][t] // M[t][t])
                    clean = clean and M[i][t] == 0
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, M[t][j] // M[t][t])
                    clean = clean and M[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if M[i][j] % M[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if t < m and t < n and M[t][t] < 0:
            M[t] = [-a for a in M[t]]
            L[t] = [-a for a in L[t]]
    diagonal = tuple(M[i][i] for i in range(min(m, n)))
    return SmithDecomposition(tuple(map(tuple, L)), tuple(map(tuple, R)), diagonal)


def elementary_divisors(A: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    return smith_normal_form(A).diagonal


# -- lattices ---------------------------------------------------------------

def saturated_basis(rows: Sequence[Sequence[int]], dim: int) -> Matrix:
    """HNF basis of ``Z^dim ∩ span_Q(rows)``."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    snf = smith_normal_form(rows)
    r = snf.rank
    Rinv = integer_inverse(snf.right)
    H, _ = hermite_normal_form(Rinv[:r])
    return [row for row in H if any(row)]


def pivot_columns(H: Sequence[Sequence[int]]) -> List[int]:
    """Leading column of each nonzero row; zero rows (kept last by the HNF) are skipped."""
    cols = []
    for row in H:
        j = next((j for j, x in enumerate(row) if x), None)
        if j is None:
            break
        cols.append(j)
    return cols


def coordinates_in_basis(B: Sequence[Sequence[int]], x: Sequence[int]) -> List[Fraction]:
    """Solve ``y B = x`` for an HNF basis ``B`` (rational, exact)."""
    piv = pivot_columns(B)
    sub = [[B[i][c] for c in piv] for i in range(len(B))]
    # y sub = x[piv]  <=>  sub^T y^T = x[piv]
    return solve(transpose(sub), [x[c] for c in piv])


def complete_to_unimodular(B: Sequence[Sequence[int]], dim: int) -> Matrix:
    """Extend the rows of a saturated basis ``B`` to a basis of ``Z^dim``."""
    if not B:
        return identity(dim)
    snf = smith_normal_form(B)
    if any(s != 1 for s in snf.diagonal):
        raise ValueError("rows do not span a saturated sublattice")
    Rinv = integer_inverse(snf.right)
    full = [list(row) for row in B] + Rinv[len(B):]
    assert abs(det(full)) == 1
    return full


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_sublattices(index: int, dim: int) -> int:
    """Number of sublattices of ``Z^dim`` with the given index.

    Multiplicative in the index; a prime power ``p^e`` contributes the
    Gaussian binomial ``[e + dim - 1, e]_p``.
    """
    total = 1
    n = index
    p = 2
    while n > 1:
        if p * p > n:
            p = n
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            total *= gaussian_binomial(e + dim - 1, e, p)
        p += 1
    return total
