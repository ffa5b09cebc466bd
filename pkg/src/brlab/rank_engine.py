"""Exact rank computation over Q and F_p for sparse matrices.

Rank results carry certification semantics: the rank over F_p of an integer
matrix can only undercount the rank over Q, so a mod-p rank is a *sound*
(possibly loose) input to a lower-bound certificate, while an exact-Q rank
is tight for the matrix at hand.

Elimination is deterministic: pivots are chosen on the sparsest active
column, ties broken by lowest column index, then sparsest row, then lowest
row index.  Repeated runs give identical results.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd

from .errors import BadPrime, FieldMismatch, FormatError, InvalidDimension
from .scalars import FieldTag, certification_primes

METHOD_DENSE = "DenseElimination"
METHOD_SPARSE = "SparseElimination"
METHOD_FRACTION_FREE = "FractionFree"

# Strategy auto-selection: dense elimination only for small matrices or
# genuinely filled ones (>= 5% nonzero within the cell cap).
_DENSE_CELL_LIMIT = 4_000_000
_DENSE_SMALL_CELLS = 10_000
_DENSE_MIN_FILL = 0.05


class SparseMatrix:
    """Immutable sparse matrix over an exact field.

    Entries are kept as a map (row, col) -> nonzero value; duplicate
    coordinates and stored zeros are rejected at construction.
    """

    __slots__ = ("rows", "cols", "field", "_cells")

    def __init__(self, rows: int, cols: int, entries, field: FieldTag):
        if rows < 0 or cols < 0:
            raise InvalidDimension(f"negative shape {rows}x{cols}")
        cells = {}
        zero = field.zero()
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise InvalidDimension(f"entry ({r},{c}) outside {rows}x{cols}")
            if (r, c) in cells:
                raise FormatError(f"duplicate entry at ({r},{c})")
            v = field.coerce(v)
            if v == zero:
                raise FormatError(f"stored zero at ({r},{c})")
            cells[(r, c)] = v
        self.rows = rows
        self.cols = cols
        self.field = field
        self._cells = cells

    @property
    def nnz(self) -> int:
        return len(self._cells)

    def items(self) -> list[tuple[int, int, object]]:
        """Entries as (row, col, value) triples sorted by (row, col)."""
        return [(r, c, self._cells[(r, c)]) for r, c in sorted(self._cells)]

    def value(self, r: int, c: int):
        return self._cells.get((r, c), self.field.zero())

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.cols, self.rows,
            ((c, r, v) for (r, c), v in self._cells.items()),
            self.field,
        )

    def row_dicts(self) -> list[dict[int, object]]:
        """Fresh row-major copy: one {col: value} dict per row."""
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self._cells.items():
            rows[r][c] = v
        return rows

    def is_integral(self) -> bool:
        """True when every entry is an integer (denominator 1 over Q)."""
        if not self.field.is_q:
            return True
        return all(v.denominator == 1 for v in self._cells.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.field, self._cells) == (
            other.rows, other.cols, other.field, other._cells)

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz}, field={self.field})"


@dataclass(frozen=True)
class RankResult:
    """Outcome of one exact rank computation."""

    rank: int
    field: FieldTag
    method: str
    certified_lower_bound_over_q: bool


@dataclass(frozen=True)
class MultiPrime:
    """Take the max of ranks over a list of primes (defaults when None)."""

    primes: tuple[int, ...] | None = None


@dataclass(frozen=True)
class ExactQ:
    """Exact rank over the rationals."""


# ---------------------------------------------------------------------------
# elimination cores
# ---------------------------------------------------------------------------

def _split_components(rows: list[dict[int, object]]) -> list[list[dict[int, object]]]:
    """Group rows into connected components of the row/column bipartite graph.

    A block-diagonal split (after row/column permutation) lets elimination
    run per block; ranks add.  Components come out ordered by their smallest
    row index, so the split is deterministic.
    """
    parent = list(range(len(rows)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    col_owner: dict[int, int] = {}
    for ri, row in enumerate(rows):
        for c in row:
            if c in col_owner:
                ra, rb = find(col_owner[c]), find(ri)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
            else:
                col_owner[c] = ri
    groups: dict[int, list[dict[int, object]]] = {}
    for ri, row in enumerate(rows):
        if row:
            groups.setdefault(find(ri), []).append(row)
    return [groups[k] for k in sorted(groups)]


def _rank_sparse_modp(rows: list[dict[int, int]], p: int) -> int:
    """Sparse Gaussian elimination over F_p on row dicts (consumed)."""
    col_rows: dict[int, set[int]] = {}
    for ri, row in enumerate(rows):
        for c in row:
            col_rows.setdefault(c, set()).add(ri)
    heap = [(len(rs), c) for c, rs in col_rows.items()]
    heapq.heapify(heap)
    rank = 0
    while heap:
        cnt, c = heapq.heappop(heap)
        rs = col_rows.get(c)
        if rs is None:
            continue
        if not rs:
            del col_rows[c]
            continue
        if len(rs) != cnt:
            heapq.heappush(heap, (len(rs), c))
            continue
        r = min(rs, key=lambda rr: (len(rows[rr]), rr))
        inv = pow(rows[r][c], -1, p)
        piv = {cc: vv * inv % p for cc, vv in rows[r].items()}
        for rr in list(rs):
            if rr == r:
                continue
            row = rows[rr]
            f = row.pop(c)
            for cc, vv in piv.items():
                if cc == c:
                    continue
                x = (row.get(cc, 0) - f * vv) % p
                if x:
                    if cc not in row:
                        col_rows[cc].add(rr)
                    row[cc] = x
                elif cc in row:
                    del row[cc]
                    col_rows[cc].discard(rr)
        for cc in piv:
            if cc != c:
                col_rows[cc].discard(r)
        rows[r] = {}
        del col_rows[c]
        rank += 1
    return rank


def _strip_content(row: dict[int, int]) -> None:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for c in row:
            row[c] //= g


def _rank_sparse_fraction_free(rows: list[dict[int, int]]) -> int:
    """Integer-preserving elimination on row dicts (consumed); rank over Q.

    Row update is row <- g*row - f*piv followed by removal of the row's
    integer content, so entries stay integers with no exactness caveats.
    """
    col_rows: dict[int, set[int]] = {}
    for ri, row in enumerate(rows):
        for c in row:
            col_rows.setdefault(c, set()).add(ri)
    heap = [(len(rs), c) for c, rs in col_rows.items()]
    heapq.heapify(heap)
    rank = 0
    while heap:
        cnt, c = heapq.heappop(heap)
        rs = col_rows.get(c)
        if rs is None:
            continue
        if not rs:
            del col_rows[c]
            continue
        if len(rs) != cnt:
            heapq.heappush(heap, (len(rs), c))
            continue
        r = min(rs, key=lambda rr: (len(rows[rr]), rr))
        piv = rows[r]
        _strip_content(piv)
        g = piv[c]
        for rr in list(rs):
            if rr == r:
                continue
            row = rows[rr]
            f = row.pop(c)
            col_rows[c].discard(rr)
            for cc in row:
                row[cc] *= g
            for cc, vv in piv.items():
                if cc == c:
                    continue
                x = row.get(cc, 0) - f * vv
                if x:
                    if cc not in row:
                        col_rows[cc].add(rr)
                    row[cc] = x
                elif cc in row:
                    del row[cc]
                    col_rows[cc].discard(rr)
            _strip_content(row)
        for cc in piv:
            if cc != c:
                col_rows[cc].discard(r)
        rows[r] = {}
        del col_rows[c]
        rank += 1
    return rank


def _rank_dense_modp(mat: list[list[int]], p: int) -> int:
    """Dense elimination over F_p on a list of row lists (consumed)."""
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    rank = 0
    for c in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if mat[r][c]:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        inv = pow(prow[c], -1, p)
        if inv != 1:
            prow = mat[rank] = [x * inv % p for x in prow]
        for r in range(rank + 1, nrows):
            f = mat[r][c]
            if f:
                mat[r] = [(x - f * y) % p for x, y in zip(mat[r], prow)]
        rank += 1
        if rank == nrows:
            break
    return rank


# ---------------------------------------------------------------------------
# public rank operations
# ---------------------------------------------------------------------------

def _rows_mod_p(m: SparseMatrix, p: int) -> list[dict[int, int]]:
    if m.field.is_q:
        rows: list[dict[int, int]] = [dict() for _ in range(m.rows)]
        for (r, c), v in m._cells.items():
            den = v.denominator % p
            if den == 0:
                raise BadPrime(f"denominator {v.denominator} at ({r},{c}) vanishes mod {p}")
            x = v.numerator % p if den == 1 else v.numerator * pow(den, -1, p) % p
            if x:
                rows[r][c] = x
        return rows
    if m.field.p != p:
        raise FieldMismatch(f"matrix over {m.field} cannot be reduced mod {p}")
    rows = [dict() for _ in range(m.rows)]
    for (r, c), v in m._cells.items():
        rows[r][c] = v
    return rows


def rank_mod_p(m: SparseMatrix, p: int) -> RankResult:
    """Exact rank over F_p.

    Certified as a lower bound on the rank over Q exactly when the entries
    are integers (an integer matrix's mod-p rank never exceeds its Q-rank).
    """
    tag = FieldTag.prime_field(p)
    rows = _rows_mod_p(m, p)
    cells = m.rows * m.cols
    nnz = sum(len(r) for r in rows)
    if cells <= _DENSE_SMALL_CELLS or (
            cells <= _DENSE_CELL_LIMIT and nnz >= _DENSE_MIN_FILL * cells):
        dense = [[0] * m.cols for _ in range(m.rows)]
        for r, row in enumerate(rows):
            for c, v in row.items():
                dense[r][c] = v
        rank = _rank_dense_modp(dense, p)
        method = METHOD_DENSE
    else:
        rank = sum(_rank_sparse_modp(comp, p) for comp in _split_components(rows))
        method = METHOD_SPARSE
    return RankResult(rank, tag, method, m.is_integral())


def rank_exact_q(m: SparseMatrix) -> RankResult:
    """Exact rank over Q via fraction-free integer elimination.

    Rational rows are scaled integral first (rank-preserving).
    """
    if not m.field.is_q:
        raise FieldMismatch(f"exact-Q rank needs rational entries, matrix is over {m.field}")
    rows: list[dict[int, int]] = [dict() for _ in range(m.rows)]
    denoms: list[int] = [1] * m.rows
    for (r, c), v in m._cells.items():
        denoms[r] = denoms[r] * v.denominator // gcd(denoms[r], v.denominator)
    for (r, c), v in m._cells.items():
        rows[r][c] = v.numerator * (denoms[r] // v.denominator)
    rank = sum(_rank_sparse_fraction_free(comp) for comp in _split_components(rows))
    return RankResult(rank, FieldTag.rationals(), METHOD_FRACTION_FREE, True)


def rank_certified(m: SparseMatrix, strategy: MultiPrime | ExactQ) -> RankResult:
    """Rank with certified-lower-bound semantics.

    MultiPrime: max of ranks over the strategy's primes (default list when
    unset); sound for lower-bound certificates on integer matrices because
    each mod-p rank is at most the Q-rank.  ExactQ delegates to rank_exact_q.
    """
    if isinstance(strategy, ExactQ):
        return rank_exact_q(m)
    if not isinstance(strategy, MultiPrime):
        raise TypeError(f"unknown strategy {strategy!r}")
    if not m.is_integral():
        raise BadPrime("MultiPrime certification requires integer entries")
    primes = strategy.primes if strategy.primes is not None else certification_primes()
    if not primes:
        raise BadPrime("empty prime list")
    best: RankResult | None = None
    for p in primes:
        res = rank_mod_p(m, p)
        if best is None or res.rank > best.rank:
            best = res
    return best


# ---------------------------------------------------------------------------
# shared sparse-matrix file format: "rows cols field" header, then
# "r c val" lines sorted by (row, col)
# ---------------------------------------------------------------------------

def write_matrix(m: SparseMatrix, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{m.rows} {m.cols} {m.field}\n")
        ser = m.field.serialize
        for r, c, v in m.items():
            fh.write(f"{r} {c} {ser(v)}\n")


def read_matrix(path) -> SparseMatrix:
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().split()
        if len(header) != 3:
            raise FormatError(f"bad matrix header {header!r}")
        try:
            rows, cols = int(header[0]), int(header[1])
        except ValueError as exc:
            raise FormatError(f"bad matrix header {header!r}") from exc
        field = FieldTag.from_string(header[2])
        entries = []
        prev = None
        for line in fh:
            if not line.strip():
                continue
            toks = line.split()
            if len(toks) != 3:
                raise FormatError(f"bad matrix line {line!r}")
            r, c = int(toks[0]), int(toks[1])
            if prev is not None and (r, c) <= prev:
                raise FormatError(f"entries not sorted at ({r},{c})")
            prev = (r, c)
            entries.append((r, c, field.parse(toks[2])))
    return SparseMatrix(rows, cols, entries, field)
