"""Exact integer and rational linear algebra helpers.

Everything here works on plain tuples/lists of ``int`` or ``Fraction``;
no floating point is ever used.  Matrices are lists of row tuples.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(c * a for a in v)


def vec_dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def content(v):
    """gcd of the entries (0 for the zero vector)."""
    g = 0
    for a in v:
        g = gcd(g, int(a))
    return g


def primitive(v):
    """Divide an integer vector by the gcd of its entries.

    The sign is kept as given; the zero vector raises.
    """
    g = content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(int(a) // g for a in v)


def clear_denominators(v):
    """Scale a rational vector to a primitive integer vector (same direction)."""
    fracs = [Fraction(a) for a in v]
    lcm = 1
    for f in fracs:
        d = f.denominator
        lcm = lcm // gcd(lcm, d) * d
    ints = tuple(int(f * lcm) for f in fracs)
    return primitive(ints)


def hnf_with_transform(rows):
    """Row-style Hermite normal form with a unimodular transform.

    Returns (H, U) with U * rows == H, U unimodular, H in row echelon
    form with positive pivots and reduced entries above each pivot.
    ``rows`` may be any iterable of equal-length integer tuples.
    """
    A = [list(int(x) for x in r) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    pivot_row = 0
    for col in range(n):
        # find a row at or below pivot_row with a nonzero entry in col
        nz = [i for i in range(pivot_row, m) if A[i][col] != 0]
        if not nz:
            continue
        # euclidean reduction among those rows
        while len(nz) > 1:
            nz.sort(key=lambda i: abs(A[i][col]))
            i0 = nz[0]
            for i in nz[1:]:
                q = A[i][col] // A[i0][col]
                if q:
                    for j in range(n):
                        A[i][j] -= q * A[i0][j]
                    for j in range(m):
                        U[i][j] -= q * U[i0][j]
            nz = [i for i in nz if A[i][col] != 0]
        i0 = nz[0]
        if i0 != pivot_row:
            A[i0], A[pivot_row] = A[pivot_row], A[i0]
            U[i0], U[pivot_row] = U[pivot_row], U[i0]
        if A[pivot_row][col] < 0:
            A[pivot_row] = [-x for x in A[pivot_row]]
            U[pivot_row] = [-x for x in U[pivot_row]]
        # reduce entries above the pivot
        p = A[pivot_row][col]
        for i in range(pivot_row):
            q = A[i][col] // p
            if q:
                for j in range(n):
                    A[i][j] -= q * A[pivot_row][j]
                for j in range(m):
                    U[i][j] -= q * U[pivot_row][j]
        pivot_row += 1
    H = [tuple(r) for r in A]
    return H, [tuple(r) for r in U]


def row_hnf(rows):
    """Nonzero rows of the Hermite normal form (a canonical lattice basis)."""
    H, _ = hnf_with_transform(rows)
    return [r for r in H if any(r)]


def left_kernel(rows):
    """Basis of {x integral : x * rows == 0}; the basis is saturated."""
    rows = list(rows)
    if not rows:
        return []
    H, U = hnf_with_transform(rows)
    return [U[i] for i in range(len(H)) if not any(H[i])]


def right_kernel(rows, n=None):
    """Basis of {x integral : rows * x == 0} inside Z^n."""
    rows = [tuple(r) for r in rows]
    if not rows:
        if n is None:
            raise ValueError("need ambient dimension for empty system")
        return [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    cols = list(zip(*rows))
    return left_kernel(cols)


def saturation(rows, n):
    """HNF basis of (Q-span of rows) intersected with Z^n."""
    rows = [tuple(r) for r in rows if any(r)]
    if not rows:
        return []
    K = right_kernel(rows, n)
    sat = right_kernel(K, n)
    return row_hnf(sat)


def rational_rank(rows):
    A = [[Fraction(x) for x in r] for r in rows]
    if not A:
        return 0
    m, n = len(A), len(A[0])
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, m) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        pr = A[rank]
        for i in range(m):
            if i != rank and A[i][col] != 0:
                c = A[i][col] / pr[col]
                A[i] = [a - c * b for a, b in zip(A[i], pr)]
        rank += 1
        if rank == m:
            break
    return rank


def solve_rational(A_rows, b):
    """One rational solution x of A x = b, or None if inconsistent.

    Free variables are set to zero.
    """
    A = [[Fraction(x) for x in r] + [Fraction(y)] for r, y in zip(A_rows, b)]
    m = len(A)
    n = len(A_rows[0]) if m else 0
    pivots = []
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, m) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        pr = A[rank]
        inv = 1 / pr[col]
        A[rank] = [a * inv for a in pr]
        for i in range(m):
            if i != rank and A[i][col] != 0:
                c = A[i][col]
                A[i] = [a - c * b2 for a, b2 in zip(A[i], A[rank])]
        pivots.append(col)
        rank += 1
    for i in range(rank, m):
        if A[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = A[i][n]
    return tuple(x)


def coords_in_basis(basis_rows, v):
    """Coordinates of v in the given lattice basis (rows), or None.

    Returns integer coordinates when v lies in the lattice, exact
    rationals when it merely lies in the span, None otherwise.
    """
    if not basis_rows:
        return () if not any(v) else None
    cols = list(zip(*basis_rows))
    x = solve_rational(cols, v)
    if x is None:
        return None
    out = []
    for c in x:
        c = Fraction(c)
        out.append(int(c) if c.denominator == 1 else c)
    return tuple(out)


def integer_solve(A_rows, b):
    """One integral solution x of A x = b, or None.

    Works by column Hermite reduction: with U A^T = H, the system
    becomes H^T y = b for x = U^T y.
    """
    A = [tuple(int(v) for v in r) for r in A_rows]
    m = len(A)
    n = len(A[0]) if m else 0
    bvec = [Fraction(v) for v in b]
    if any(v.denominator != 1 for v in bvec):
        return None
    bvec = [int(v) for v in bvec]
    if n == 0:
        return () if not any(bvec) else None
    H, U = hnf_with_transform(list(zip(*A)))  # U A^T = H
    Ht = list(zip(*H))  # m x n, echelon columns
    y = [0] * n
    resid = list(bvec)
    for j in range(n):
        col = [Ht[i][j] for i in range(m)]
        piv = next((i for i in range(m) if col[i] != 0), None)
        if piv is None:
            continue
        if resid[piv] % col[piv] != 0:
            # try later columns only if this pivot row is already clear
            if resid[piv] != 0:
                return None
            continue
        q = resid[piv] // col[piv]
        y[j] = q
        for i in range(m):
            resid[i] -= q * col[i]
    if any(resid):
        return None
    x = [0] * n
    for j in range(n):
        if y[j]:
            for i in range(n):
                x[i] += U[j][i] * y[j]
    return tuple(x)


def det_int(rows):
    """Determinant of a square matrix with integer/rational entries (exact)."""
    A = [[Fraction(x) for x in r] for r in rows]
    n = len(A)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if A[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        det *= A[col][col]
        inv = 1 / A[col][col]
        for i in range(col + 1, n):
            if A[i][col] != 0:
                c = A[i][col] * inv
                A[i] = [a - c * b for a, b in zip(A[i], A[col])]
    return det
