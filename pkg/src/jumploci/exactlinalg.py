"""Dense exact linear algebra over Q and over cyclotomic fields.

Field elements only need arithmetic operators, truthiness as a zero test, and
true division; Fraction and Cyclotomic both qualify.
"""

from __future__ import annotations

from fractions import Fraction


def matrix_rank(rows):
    """Rank by Gaussian elimination; works over any exact field."""
    mat = [list(r) for r in rows]
    if not mat or not mat[0]:
        return 0
    ncols = len(mat[0])
    rank = 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][c]
        mat[rank] = [v / pv for v in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][c]:
                f = mat[i][c]
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def nullspace(rows, ncols=None):
    """Basis of the right kernel over the field of the entries (Fraction-safe)."""
    mat = [list(r) for r in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    if not mat:
        return [[Fraction(1) if j == i else Fraction(0) for j in range(ncols)]
                for i in range(ncols)]
    pivots = []
    rank = 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][c]
        mat[rank] = [v / pv for v in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][c]:
                f = mat[i][c]
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[rank])]
        pivots.append(c)
        rank += 1
        if rank == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc]
        basis.append(vec)
    return basis


def row_space_basis(rows):
    """Echelon basis of the row space over Q."""
    mat = [[Fraction(x) for x in r] for r in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    rank = 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][c]
        mat[rank] = [v / pv for v in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][c]:
                f = mat[i][c]
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return mat[:rank]


def coords_in_basis(basis_rows, vec):
    """Coefficients of vec in the given independent rows, or None."""
    n = len(basis_rows)
    if n == 0:
        return [] if not any(vec) else None
    ncols = len(vec)
    aug = [[Fraction(basis_rows[j][i]) for j in range(n)] + [Fraction(vec[i])]
           for i in range(ncols)]
    pivots, rank = [], 0
    for c in range(n):
        pivot = next((i for i in range(rank, ncols) if aug[i][c]), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        pv = aug[rank][c]
        aug[rank] = [v / pv for v in aug[rank]]
        for i in range(ncols):
            if i != rank and aug[i][c]:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[rank])]
        pivots.append(c)
        rank += 1
    for i in range(rank, ncols):
        if aug[i][n]:
            return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        sol[c] = aug[i][n]
    return sol
