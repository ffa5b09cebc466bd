"""Exterior-algebra index machinery and the wedge-power flattening.

Basis vectors of the p-th exterior power of the first tensor factor are
labeled by strictly increasing index subsets, enumerated in
*colexicographic* order: a subset's position is then a plain sum of
binomials, so no lookup table is needed even at a = 16, p = 7 scale.

The sign convention wedges the incoming vector on the left,
a_i ^ (a_{s1} ^ ... ^ a_{sp}); any consistent convention yields the same
ranks, but certificates must be bit-reproducible, so this one is fixed.
"""

from __future__ import annotations

import warnings
from bisect import bisect_left
from dataclasses import dataclass
from math import comb

from .errors import InvalidDimension
from .rank_engine import SparseMatrix
from .tensor import Tensor3


class WedgeRangeWarning(UserWarning):
    """p exceeds ceil(a/2) - 1: the flattening duplicates a complementary one."""


@dataclass(frozen=True)
class SubsetIndex:
    """Strictly increasing index subset of [0, ambient)."""

    elements: tuple[int, ...]
    ambient: int

    def __post_init__(self) -> None:
        e = self.elements
        if any(e[i] >= e[i + 1] for i in range(len(e) - 1)):
            raise InvalidDimension(f"subset {e} not strictly increasing")
        if e and not (0 <= e[0] and e[-1] < self.ambient):
            raise InvalidDimension(f"subset {e} outside ambient {self.ambient}")

    def __len__(self) -> int:
        return len(self.elements)


def subset_rank(elements: tuple[int, ...]) -> int:
    """Colexicographic position of a strictly increasing subset."""
    return sum(comb(s, idx + 1) for idx, s in enumerate(elements))


def _colex_tuples(a: int, p: int):
    if p == 0:
        yield ()
        return
    for top in range(p - 1, a):
        for rest in _colex_tuples(top, p - 1):
            yield rest + (top,)


def enumerate_subsets(a: int, p: int) -> list[SubsetIndex]:
    """All C(a, p) subsets in colexicographic order; position = basis index."""
    if not (0 <= p <= a):
        raise InvalidDimension(f"need 0 <= p <= a, got p={p}, a={a}")
    return [SubsetIndex(t, a) for t in _colex_tuples(a, p)]


def wedge_insert(i: int, s: SubsetIndex) -> tuple[int, SubsetIndex] | None:
    """Wedge basis vector i onto subset s from the left.

    Returns (sign, enlarged subset), or None when i already occurs (the
    wedge is zero).  sign = (-1)^(number of elements of s below i).
    """
    if not (0 <= i < s.ambient):
        raise InvalidDimension(f"index {i} outside ambient {s.ambient}")
    pos = bisect_left(s.elements, i)
    if pos < len(s.elements) and s.elements[pos] == i:
        return None
    sign = -1 if pos % 2 else 1
    merged = s.elements[:pos] + (i,) + s.elements[pos:]
    return sign, SubsetIndex(merged, s.ambient)


@dataclass(frozen=True)
class KoszulMatrix:
    """Wedge-power flattening as an explicit sparse matrix with labels.

    Row index of (k, S') is colex(S')*c + k; column index of (j, S) is
    colex(S)*b + j.  At p = 0 this reproduces the classical mode-B
    flattening including its row order.
    """

    matrix: SparseMatrix
    row_labels: tuple[tuple[int, SubsetIndex], ...]
    col_labels: tuple[tuple[int, SubsetIndex], ...]
    a: int
    b: int
    c: int
    p: int

    @property
    def rows(self) -> int:
        return self.matrix.rows

    @property
    def cols(self) -> int:
        return self.matrix.cols

    def labels_json(self) -> dict:
        """Row/column labels as JSON-ready lists: [factor index, subset]."""
        return {
            "params": {"a": self.a, "b": self.b, "c": self.c, "p": self.p},
            "rows": [[k, list(s.elements)] for k, s in self.row_labels],
            "cols": [[j, list(s.elements)] for j, s in self.col_labels],
        }


def redundancy_cap(a: int) -> int:
    """Largest p giving an essentially new flattening: ceil(a/2) - 1."""
    return (a + 1) // 2 - 1


def koszul_flattening(t: Tensor3, p: int) -> KoszulMatrix:
    """Flatten t against p-fold wedges of the first factor.

    For each tensor entry (i, j, k, v) and each p-subset S avoiding i, the
    value sign(i, S) * v lands at row (k, S u {i}), column (j, S).  Shape is
    c*C(a, p+1) rows by b*C(a, p) columns.
    """
    a, b, c = t.dims
    if not (0 <= p <= a - 1):
        raise InvalidDimension(f"need 0 <= p <= a-1, got p={p}, a={a}")
    if p > redundancy_cap(a):
        warnings.warn(
            f"p={p} exceeds ceil(a/2)-1={redundancy_cap(a)}; "
            "the bound is still valid but duplicates a smaller power",
            WedgeRangeWarning,
            stacklevel=2,
        )
    small = list(_colex_tuples(a, p))
    rank_of_big = {s: q for q, s in enumerate(_colex_tuples(a, p + 1))}

    # Per-i insertion table: (column subset position, row subset position, sign).
    inserts: list[list[tuple[int, int, int]]] = [[] for _ in range(a)]
    for q, s in enumerate(small):
        inside = set(s)
        for i in range(a):
            if i in inside:
                continue
            pos = bisect_left(s, i)
            merged = s[:pos] + (i,) + s[pos:]
            inserts[i].append((q, rank_of_big[merged], -1 if pos % 2 else 1))

    field = t.field
    zero = field.zero()
    cells: dict[tuple[int, int], object] = {}
    for (i, j, k), v in t._cells.items():
        neg_v = field.neg(v)
        for qcol, qrow, sign in inserts[i]:
            key = (qrow * c + k, qcol * b + j)
            x = field.add(cells.get(key, zero), v if sign > 0 else neg_v)
            if x == zero:
                cells.pop(key, None)
            else:
                cells[key] = x

    matrix = SparseMatrix(
        c * comb(a, p + 1), b * comb(a, p),
        ((r, col, v) for (r, col), v in cells.items()),
        field,
    )
    col_labels = tuple(
        (j, SubsetIndex(s, a)) for s in small for j in range(b))
    row_labels = tuple(
        (k, SubsetIndex(s, a)) for s in _colex_tuples(a, p + 1) for k in range(c))
    return KoszulMatrix(matrix, row_labels, col_labels, a, b, c, p)
