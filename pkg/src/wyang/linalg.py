"""Dense exact linear algebra over the rationals (Gaussian elimination)."""

from fractions import Fraction


def rank(rows):
    """Rank of a matrix given as a list of rows of numbers."""
    mat = [[Fraction(x) for x in row] for row in rows]
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        for i in range(r + 1, len(mat)):
            if mat[i][c]:
                f = mat[i][c] / pv
                for j in range(c, ncols):
                    mat[i][j] -= f * mat[r][j]
        r += 1
        if r == len(mat):
            break
    return r


def nullity(rows):
    ncols = len(rows[0]) if rows else 0
    return ncols - rank(rows)
