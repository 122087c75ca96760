"""Exact linear algebra over Z and Q: fraction-free elimination, HNF, LLL."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else max(a, b)


def integer_rows(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Scale each rational row to a primitive integer row; returns rows and scale factors."""
    out, scales = [], []
    for row in rows:
        den = 1
        for x in row:
            den = _lcm(den, Fraction(x).denominator)
        ints = [int(Fraction(x) * den) for x in row]
        out.append(ints)
        scales.append(den)
    return out, scales


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        g = gcd(g, x)
        if g == 1:
            return row
    return [x // g for x in row] if g > 1 else row


def echelon(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Fraction-free row echelon form of a rational matrix.

    Returns the nonzero echelon rows (integer, primitive) and their pivot columns.
    """
    mat, _ = integer_rows(rows)
    mat = [list(r) for r in mat]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        piv = mat[r][c]
        for i in range(r + 1, len(mat)):
            a = mat[i][c]
            if a:
                g = gcd(piv, a)
                mi, mr = piv // g, a // g
                mat[i] = _primitive([mi * x - mr * y for x, y in zip(mat[i], mat[r])])
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [row for row in mat[:r]], pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(echelon(rows)[0])


def in_rational_span(v: Sequence, rows: Sequence[Sequence]) -> bool:
    """True iff v lies in the Q-span of ``rows``."""
    if not any(Fraction(x) for x in v):
        return True
    if not rows:
        return False
    return rank(list(rows) + [list(v)]) == rank(rows)


def nullspace(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of {x : M x = 0} over Q for the rational matrix M given by ``rows``."""
    ncols = len(rows[0]) if rows else 0
    ech, pivots = echelon(rows)
    # reduce to RREF over Q
    red = [[Fraction(x) for x in row] for row in ech]
    for i in range(len(red) - 1, -1, -1):
        c = pivots[i]
        piv = red[i][c]
        red[i] = [x / piv for x in red[i]]
        for k in range(i):
            f = red[k][c]
            if f:
                red[k] = [x - f * y for x, y in zip(red[k], red[i])]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -red[i][fc]
        basis.append(vec)
    return basis


def inverse(mat: Sequence[Sequence]) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan over Q; raises ZeroDivisionError if singular."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def determinant(mat: Sequence[Sequence]) -> Fraction:
    """Exact determinant (Bareiss on the integer-scaled matrix)."""
    n = len(mat)
    if n == 0:
        return Fraction(1)
    ints, scales = integer_rows(mat)
    m = [list(r) for r in ints]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k]), None)
            if p is None:
                return Fraction(0)
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    det = Fraction(sign * m[n - 1][n - 1])
    for s in scales:
        det /= s
    return det


# -- Hermite normal form and Z-span membership -------------------------------

def hnf(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form of an integer matrix (zero rows dropped)."""
    mat = [list(map(int, r)) for r in rows if any(r)]
    if not mat:
        return []
    ncols = len(mat[0])
    out: Matrix = []
    r = 0
    for c in range(ncols):
        live = [i for i in range(r, len(mat)) if mat[i][c]]
        if not live:
            continue
        # Euclid on column c among rows r..end until a single nonzero remains
        while True:
            live = [i for i in range(r, len(mat)) if mat[i][c]]
            if len(live) <= 1:
                break
            p = min(live, key=lambda i: abs(mat[i][c]))
            for i in live:
                if i != p:
                    q = mat[i][c] // mat[p][c]
                    mat[i] = [x - q * y for x, y in zip(mat[i], mat[p])]
        p = live[0]
        mat[r], mat[p] = mat[p], mat[r]
        if mat[r][c] < 0:
            mat[r] = [-x for x in mat[r]]
        for i in range(r):
            q = mat[i][c] // mat[r][c]
            if q:
                mat[i] = [x - q * y for x, y in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    out = [row for row in mat[:r]]
    return out


def in_integer_span(v: Sequence[int], basis_hnf: Sequence[Sequence[int]]) -> bool:
    """Membership of an integer vector in the Z-span of a matrix already in HNF."""
    vec = list(map(int, v))
    for row in basis_hnf:
        c = next(i for i, x in enumerate(row) if x)
        for j in range(c):
            if vec[j]:
                return False
        if vec[c] % row[c]:
            return False
        q = vec[c] // row[c]
        if q:
            vec = [x - q * y for x, y in zip(vec, row)]
    return not any(vec)


# -- LLL ---------------------------------------------------------------------

def lll(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> Matrix:
    """Textbook LLL reduction of integer row vectors (exact rational Gram-Schmidt)."""
    b = [list(map(int, row)) for row in basis]
    n = len(b)
    if n == 0:
        return b

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    def gram_schmidt():
        bstar: list[list[Fraction]] = []
        bnorm: list[Fraction] = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                if bnorm[j] == 0:
                    continue
                mu[i][j] = dot(b[i], bstar[j]) / bnorm[j]
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
            bnorm.append(sum(x * x for x in v))
        return mu, bnorm, bstar

    mu, bnorm, bstar = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                for i in range(j + 1):
                    mu[k][i] -= q * (mu[j][i] if i < j else 1)
        if bnorm[k] >= (delta - mu[k][k - 1] ** 2) * bnorm[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, bnorm, bstar = gram_schmidt()
            k = max(k - 1, 1)
    return b
