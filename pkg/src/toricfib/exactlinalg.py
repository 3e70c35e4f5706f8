"""Exact integer linear algebra on arbitrary-precision integers.

Vectors are tuples of ints and matrices are tuples of row tuples; everything
is immutable and pure.  These primitives (Hermite forms, kernels, saturation)
back all of the geometry layers.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

Vec = tuple
Mat = tuple


def vec(it):
    return tuple(int(x) for x in it)


def mat(rows):
    m = tuple(vec(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def zero_vec(n):
    return (0,) * n


def is_zero(v):
    return all(x == 0 for x in v)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v, strict=True))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v, strict=True))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v, strict=True))


def neg(v):
    return tuple(-a for a in v)


def scale(c, v):
    return tuple(c * a for a in v)


def transpose(m):
    return tuple(zip(*m)) if m else ()


def vecmat(v, m):
    """Row vector times matrix."""
    if not m:
        return ()
    return tuple(sum(v[i] * m[i][j] for i in range(len(m))) for j in range(len(m[0])))


def matmul(a, b):
    return tuple(vecmat(row, b) for row in a)


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def gcd_vec(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v):
    """v divided by the gcd of its entries; direction is preserved.

    Raises ValueError on the zero vector, which has no primitive generator.
    """
    g = gcd_vec(v)
    if g == 0:
        raise ValueError("no primitive generator")
    return tuple(x // g for x in v)


def hermite_form(m):
    """Row-style Hermite normal form with transformation certificate.

    Returns (H, U) with U unimodular and U*m = H.  H is canonical: pivots are
    positive, entries above each pivot are reduced into [0, pivot), zero rows
    are at the bottom.
    """
    m = mat(m)
    if not m:
        raise ValueError("empty matrix")
    nrows = len(m)
    ncols = len(m[0])
    h = [list(r) for r in m]
    u = [list(r) for r in identity(nrows)]
    row = 0
    pivots = []
    for col in range(ncols):
        if row == nrows:
            break
        # clear the column below `row` by gcd steps
        while True:
            nz = [i for i in range(row, nrows) if h[i][col] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(h[i][col]))
            if i0 != row:
                h[row], h[i0] = h[i0], h[row]
                u[row], u[i0] = u[i0], u[row]
            done = True
            for i in range(row + 1, nrows):
                if h[i][col] != 0:
                    q = h[i][col] // h[row][col]
                    for j in range(ncols):
                        h[i][j] -= q * h[row][j]
                    for j in range(nrows):
                        u[i][j] -= q * u[row][j]
                    if h[i][col] != 0:
                        done = False
            if done:
                break
        if h[row][col] != 0:
            if h[row][col] < 0:
                h[row] = [-x for x in h[row]]
                u[row] = [-x for x in u[row]]
            pivots.append((row, col))
            row += 1
    # reduce entries above pivots, left to right so later columns stay reduced
    for prow, pcol in pivots:
        p = h[prow][pcol]
        for i in range(prow):
            q = h[i][pcol] // p
            if q:
                for j in range(ncols):
                    h[i][j] -= q * h[prow][j]
                for j in range(nrows):
                    u[i][j] -= q * u[prow][j]
    return mat(h), mat(u)


def rank(m):
    if not m:
        return 0
    h, _ = hermite_form(m)
    return sum(1 for r in h if not is_zero(r))


def det(m):
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def kernel_basis(points):
    """Echelon basis of the saturated left kernel {c : c * points = 0}.

    Rows come back in Hermite normal form, so the first nonzero entry of each
    row is positive; the resulting basis generates every integer relation
    among the rows of `points`.
    """
    points = mat(points)
    if not points:
        raise ValueError("empty matrix")
    h, u = hermite_form(points)
    kern = [u[i] for i in range(len(h)) if is_zero(h[i])]
    if not kern:
        return ()
    hk, _ = hermite_form(kern)
    return tuple(r for r in hk if not is_zero(r))


def left_kernel(m):
    return kernel_basis(m)


def right_kernel(m):
    """Basis of {x : m * x = 0}, as rows."""
    m = mat(m)
    if not m:
        raise ValueError("empty matrix")
    return kernel_basis(transpose(m))


def saturation(m):
    """Basis of the saturation of the row span of m (rows, in HNF)."""
    m = mat(m)
    if not m:
        raise ValueError("empty matrix")
    ncols = len(m[0])
    k = right_kernel(m)
    if not k:
        return tuple(identity(ncols))
    sat = right_kernel(k)
    return sat if sat else ()


def solve_exact(a, b):
    """One integer solution x of x * a = b, or None.

    `a` is a matrix (rows spanning the relevant lattice), `b` a row vector in
    the row span.  Returns None when b is not an integer combination of the
    rows of a.
    """
    a = mat(a)
    b = vec(b)
    h, u = hermite_form(a)
    nrows = len(h)
    ncols = len(h[0])
    pivots = []
    for i in range(nrows):
        for j in range(ncols):
            if h[i][j] != 0:
                pivots.append((i, j))
                break
    y = [0] * nrows
    r = list(b)
    for i, j in pivots:
        if r[j] % h[i][j] != 0:
            return None
        c = r[j] // h[i][j]
        y[i] = c
        if c:
            r = [r[t] - c * h[i][t] for t in range(ncols)]
    if any(r):
        return None
    return vecmat(tuple(y), u)


def solve_right(a, b):
    """One integer solution x (column) of a * x = b, or None."""
    sol = solve_exact(transpose(mat(a)), b)
    return sol


@dataclass(frozen=True)
class Sublattice:
    """A saturated sublattice of Z^ambient_rank given by independent basis rows."""

    basis: Mat
    ambient_rank: int

    @classmethod
    def from_spanning(cls, rows, ambient_rank=None):
        rows = mat(rows)
        if not rows:
            raise ValueError("sublattice needs at least one spanning vector")
        n = len(rows[0]) if ambient_rank is None else ambient_rank
        sat = saturation(rows)
        return cls(basis=sat, ambient_rank=n)

    @property
    def rank(self):
        return len(self.basis)

    def coords(self, v):
        """Coordinates of v in the basis, or None if v is outside the sublattice."""
        return solve_exact(self.basis, v)

    def contains(self, v):
        return self.coords(v) is not None

    def from_coords(self, c):
        return vecmat(vec(c), self.basis)
