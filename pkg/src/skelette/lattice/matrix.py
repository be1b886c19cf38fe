"""Exact integer matrices and rational linear algebra.

Everything here works on Python ints and ``fractions.Fraction``; there is no
floating point anywhere.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix")
        return cls(len(rows), cols, rows)

    @classmethod
    def identity(cls, n):
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, r, c):
        return cls.from_rows([[0] * c for _ in range(r)], c)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols_b = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = [[sum(a * b for a, b in zip(r, c)) for c in cols_b] for r in self.entries]
        return IntMatrix.from_rows(out, other.cols)

    def transpose(self):
        if not self.rows:
            return IntMatrix(self.cols, 0, tuple(() for _ in range(self.cols)))
        return IntMatrix.from_rows(list(zip(*self.entries)), self.rows)

    @property
    def T(self):
        return self.transpose()

    def to_lists(self):
        return [list(r) for r in self.entries]

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        return det([list(r) for r in self.entries])

    def is_diagonal(self):
        return all(self.entries[i][j] == 0
                   for i in range(self.rows) for j in range(self.cols) if i != j)

    def diagonal(self):
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]


def det(a):
    """Integer determinant by fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def frac_det(a):
    n = len(a)
    m = [[Fraction(x) for x in r] for r in a]
    d = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            m[k], m[p] = m[p], m[k]
            d = -d
        d *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return d


def rref(a):
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a):
    if not a:
        return 0
    return len(rref(a)[1])


def nullspace(a, ncols=None):
    """Basis of {x : a x = 0} over Q."""
    if not a:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ncols = len(a[0])
    m, piv = rref(a)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, p in enumerate(piv):
            x[p] = -m[i][f]
        basis.append(x)
    return basis


def solve(a, b):
    """Solve the square or overdetermined system a x = b exactly.

    Returns None if there is no solution; raises if the solution is not unique.
    """
    n = len(a[0]) if a else 0
    aug = [list(r) + [bi] for r, bi in zip(a, b)]
    m, piv = rref(aug)
    if n in piv:
        return None
    if len(piv) < n:
        raise ValueError("system is underdetermined")
    x = [Fraction(0)] * n
    for i, p in enumerate(piv):
        x[p] = m[i][n]
    return x


def inverse(a):
    n = len(a)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(a)]
    m, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in m]


def int_inverse(a):
    inv = inverse(a)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(r, v)) for r in a]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def primitive(v):
    """Scale a rational vector to a primitive integer vector (sign kept)."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    w = [int(x * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g == 0:
        return tuple(w)
    return tuple(x // g for x in w)


def content(v):
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g
