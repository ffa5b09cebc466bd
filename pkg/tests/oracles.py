"""Independent reference implementations used to validate the fast paths.

Everything here is deliberately naive: textbook row reduction on dense
Fraction rows, and a brute-force tableau counter.  These never share code
with the library's elimination or hook-content routines.
"""

from fractions import Fraction


def dense_rows(matrix):
    """SparseMatrix -> dense list-of-lists (field values as given)."""
    rows = [[0] * matrix.cols for _ in range(matrix.rows)]
    for r, c, v in matrix.items():
        rows[r][c] = v
    return rows


def rank_gauss_fractions(rows):
    """Rank by plain Gaussian elimination over Fraction, no pivoting tricks."""
    rows = [[Fraction(x) for x in row] for row in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rank = 0
    for c in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if rows[r][c] != 0:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        for r in range(rank + 1, nrows):
            if rows[r][c] != 0:
                f = rows[r][c] / prow[c]
                rows[r] = [x - f * y for x, y in zip(rows[r], prow)]
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_gauss_mod_p(rows, p):
    """Rank by plain Gaussian elimination over F_p on dense int rows."""
    rows = [[int(x) % p for x in row] for row in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rank = 0
    for c in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if rows[r][c]:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = pow(prow[c], -1, p)
        for r in range(rank + 1, nrows):
            if rows[r][c]:
                f = rows[r][c] * inv % p
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], prow)]
        rank += 1
        if rank == nrows:
            break
    return rank


def count_ssyt(shape, v):
    """Number of semistandard fillings of `shape` with entries in 1..v.

    Rows weakly increase left to right, columns strictly increase top to
    bottom.  Pure backtracking; fine for |shape| <= 6 and v <= 4.
    """
    shape = tuple(shape)
    cells = [(r, c) for r, width in enumerate(shape) for c in range(width)]

    def rec(idx, filling):
        if idx == len(cells):
            return 1
        r, c = cells[idx]
        lo = 1
        if c > 0:
            lo = max(lo, filling[(r, c - 1)])
        if r > 0:
            lo = max(lo, filling[(r - 1, c)] + 1)
        total = 0
        for value in range(lo, v + 1):
            filling[(r, c)] = value
            total += rec(idx + 1, filling)
        filling.pop((r, c), None)
        return total

    return rec(0, {})
