"""Exact linear algebra over Fraction vectors, plus integer Hermite normal form.

Vectors are tuples of Fraction (or int); matrices are lists of row tuples.
Everything here is dense and desk-scale: ranks up to ~6, a few hundred rows.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def fvec(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(a, c):
    c = Fraction(c)
    return tuple(c * x for x in a)


def vec_dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def is_zero_vec(a) -> bool:
    return all(x == 0 for x in a)


def primitive(v) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector with a canonical sign."""
    v = fvec(v)
    if is_zero_vec(v):
        return tuple(0 for _ in v)
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


def _echelon(rows):
    """Row reduce in place (copy); returns (echelon rows, pivot column list)."""
    mat = [list(fvec(r)) for r in rows]
    ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = Fraction(1) / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]], pivots


def rank(rows) -> int:
    if not rows:
        return 0
    return len(_echelon(rows)[0])


def rref(rows):
    """Reduced row echelon basis of the span of `rows` (canonical for the subspace)."""
    return _echelon(rows)[0]


def in_span(v, rows) -> bool:
    if not rows:
        return is_zero_vec(v)
    base = rank(rows)
    return rank(list(rows) + [v]) == base


def det(mat) -> Fraction:
    m = [list(fvec(r)) for r in mat]
    n = len(m)
    sign = 1
    d = Fraction(1)
    for c in range(n):
        piv = None
        for i in range(c, n):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        d *= m[c][c]
        inv = Fraction(1) / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d * sign


def solve(mat, b):
    """Solve the square system mat * x = b exactly; None if singular."""
    n = len(mat)
    m = [list(fvec(r)) + [Fraction(b[i])] for i, r in enumerate(mat)]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        inv = Fraction(1) / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return tuple(m[i][n] for i in range(n))


def inverse(mat):
    """Exact inverse of a square matrix; None if singular."""
    n = len(mat)
    m = [list(fvec(r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(mat)]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        inv = Fraction(1) / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [tuple(row[n:]) for row in m]


def solve_coords(vectors, target):
    """Coordinates of `target` in the basis `vectors` (rows); None if not a basis."""
    n = len(vectors)
    if n == 0:
        return () if is_zero_vec(target) else None
    # target = sum_i x_i vectors[i]  <=>  transpose system
    cols = [[Fraction(vectors[i][j]) for i in range(n)] for j in range(len(target))]
    if len(cols) != n:
        raise ValueError("solve_coords expects a square basis")
    return solve(cols, target)


def hyperplane_normal(rows, dim):
    """Primitive normal of the span of dim-1 independent rows; None if dependent.

    For dim == 1 the empty set spans {0} and every vector is "normal"; we
    return the 1-dimensional unit so callers can test sign consistency.
    """
    if dim == 1:
        return (1,) if not rows else None
    if len(rows) != dim - 1:
        raise ValueError("need exactly dim-1 rows")
    ech, pivots = _echelon(rows)
    if len(ech) != dim - 1:
        return None
    free = [c for c in range(dim) if c not in pivots][0]
    normal = [Fraction(0)] * dim
    normal[free] = Fraction(1)
    for i, p in enumerate(pivots):
        normal[p] = -ech[i][free]
    return primitive(normal)


def hnf(rows):
    """Row-style Hermite normal form basis of the integer row span.

    Input rows must be integral. Returns a list of linearly independent
    integer rows, upper triangular w.r.t. pivot columns, pivots positive,
    entries above each pivot reduced into [0, pivot).
    """
    mat = [list(int(x) for x in r) for r in rows if not is_zero_vec(r)]
    if not mat:
        return []
    ncols = len(mat[0])
    basis = []
    r = 0
    for c in range(ncols):
        # gather rows with nonzero entry in column c at or below r
        while True:
            live = [i for i in range(r, len(mat)) if mat[i][c] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda i: abs(mat[i][c]))
            i0 = live[0]
            for i in live[1:]:
                q = mat[i][c] // mat[i0][c]
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[i0])]
        live = [i for i in range(r, len(mat)) if mat[i][c] != 0]
        if not live:
            continue
        i0 = live[0]
        mat[r], mat[i0] = mat[i0], mat[r]
        if mat[r][c] < 0:
            mat[r] = [-a for a in mat[r]]
        # reduce entries above the pivot
        for i in range(r):
            q = mat[i][c] // mat[r][c]
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
        r += 1
    return [tuple(row) for row in mat[:r]]
