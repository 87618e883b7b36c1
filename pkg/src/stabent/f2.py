"""Bit-packed linear algebra over GF(2).

Matrices are stored row-major with each row packed into a Python int
(bit ``j`` of ``data[i]`` is the entry at row ``i``, column ``j``).  Row
XOR is a single int operation, which keeps Gaussian elimination fast for
the matrix sizes this package deals with (up to a few hundred columns).
All values are immutable after construction; every operation returns a
new matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "F2Matrix",
    "RrefResult",
    "rank",
    "rref",
    "kernel",
    "solve",
    "replay_row_ops",
]

# A row operation is ("swap", i, j) exchanging rows i and j, or
# ("xor", i, j) meaning row i ^= row j.
RowOp = tuple[str, int, int]


def _mask(cols: int) -> int:
    return (1 << cols) - 1


@dataclass(frozen=True)
class F2Matrix:
    """Dense binary matrix with int-packed rows.

    Empty shapes (0 rows or 0 columns) are legal; rank is then 0 and the
    kernel conventions follow from the shape.
    """

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.data) != self.rows:
            raise ValueError(f"expected {self.rows} packed rows, got {len(self.data)}")
        m = _mask(self.cols)
        for r in self.data:
            if r & ~m:
                raise ValueError("row has bits beyond the declared column count")

    # -- constructors ------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "F2Matrix":
        packed = []
        width = cols
        for row in rows:
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ValueError("ragged rows")
            packed.append(sum((int(v) & 1) << j for j, v in enumerate(row)))
        if width is None:
            width = 0 if cols is None else cols
        return cls(len(packed), width, tuple(packed))

    @classmethod
    def from_ints(cls, ints: Iterable[int], cols: int) -> "F2Matrix":
        packed = tuple(ints)
        return cls(len(packed), cols, packed)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    # -- element access ----------------------------------------------

    def get(self, i: int, j: int) -> int:
        return (self.data[i] >> j) & 1

    def row(self, i: int) -> int:
        return self.data[i]

    def row_bits(self, i: int) -> list[int]:
        return [(self.data[i] >> j) & 1 for j in range(self.cols)]

    def column(self, j: int) -> int:
        """Column ``j`` packed as an int (bit ``i`` = row ``i``)."""
        return sum(((self.data[i] >> j) & 1) << i for i in range(self.rows))

    def to_lists(self) -> list[list[int]]:
        return [self.row_bits(i) for i in range(self.rows)]

    def to_array(self):
        import numpy as np

        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for i in range(self.rows):
            r = self.data[i]
            for j in range(self.cols):
                out[i, j] = (r >> j) & 1
        return out

    def __iter__(self) -> Iterator[int]:
        return iter(self.data)

    def __str__(self) -> str:
        return "\n".join("".join(str(b) for b in self.row_bits(i)) for i in range(self.rows))

    # -- structure ---------------------------------------------------

    def transpose(self) -> "F2Matrix":
        return F2Matrix(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def hstack(self, other: "F2Matrix") -> "F2Matrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        data = tuple(self.data[i] | (other.data[i] << self.cols) for i in range(self.rows))
        return F2Matrix(self.rows, self.cols + other.cols, data)

    def vstack(self, other: "F2Matrix") -> "F2Matrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return F2Matrix(self.rows + other.rows, self.cols, self.data + other.data)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int] | None = None) -> "F2Matrix":
        if cols is None:
            return F2Matrix(len(rows), self.cols, tuple(self.data[i] for i in rows))
        data = []
        for i in rows:
            r = self.data[i]
            data.append(sum(((r >> c) & 1) << j for j, c in enumerate(cols)))
        return F2Matrix(len(rows), len(cols), tuple(data))

    def select_columns(self, cols: Sequence[int]) -> "F2Matrix":
        return self.submatrix(range(self.rows), cols)

    def permute_columns(self, perm: Sequence[int]) -> "F2Matrix":
        """Reorder columns so new column ``p`` is old column ``perm[p]``."""
        if sorted(perm) != list(range(self.cols)):
            raise ValueError("not a permutation of the columns")
        return self.select_columns(perm)

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.cols != other.rows:
            raise ValueError("inner dimension mismatch")
        out = []
        for i in range(self.rows):
            acc = 0
            r = self.data[i]
            while r:
                j = (r & -r).bit_length() - 1
                acc ^= other.data[j]
                r &= r - 1
            out.append(acc)
        return F2Matrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return F2Matrix(self.rows, self.cols, tuple(a ^ b for a, b in zip(self.data, other.data)))

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.data)

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(self.get(i, j) == self.get(j, i) for i in range(self.rows) for j in range(i))

    def zero_diagonal(self) -> "F2Matrix":
        data = tuple(self.data[i] & ~(1 << i) for i in range(self.rows))
        return F2Matrix(self.rows, self.cols, data)


@dataclass(frozen=True)
class RrefResult:
    matrix: F2Matrix
    row_ops: tuple[RowOp, ...]
    pivot_cols: tuple[int, ...]


def _eliminate(
    rows: list[int],
    cols: int,
    col_order: Sequence[int] | None = None,
    record: list[RowOp] | None = None,
) -> list[int]:
    """In-place RREF of packed rows; returns the pivot columns in use order.

    Pivot choice is the first column of ``col_order`` with a 1 at or below
    the current pivot row, then the lowest such row, which makes the result
    deterministic.
    """
    order = range(cols) if col_order is None else col_order
    nrows = len(rows)
    pivots: list[int] = []
    prow = 0
    for col in order:
        if prow == nrows:
            break
        hit = -1
        for i in range(prow, nrows):
            if (rows[i] >> col) & 1:
                hit = i
                break
        if hit < 0:
            continue
        if hit != prow:
            rows[prow], rows[hit] = rows[hit], rows[prow]
            if record is not None:
                record.append(("swap", prow, hit))
        for i in range(nrows):
            if i != prow and (rows[i] >> col) & 1:
                rows[i] ^= rows[prow]
                if record is not None:
                    record.append(("xor", i, prow))
        pivots.append(col)
        prow += 1
    return pivots


def rref(M: F2Matrix, col_order: Sequence[int] | None = None) -> RrefResult:
    """Reduced row echelon form with the applied row operations recorded.

    Replaying ``row_ops`` against the original matrix reproduces the
    result exactly.  ``col_order`` overrides the column scan order (used
    by callers that need specific columns pivoted first); pivot_cols is
    reported in scan order, strictly increasing for the default order.
    """
    rows = list(M.data)
    ops: list[RowOp] = []
    pivots = _eliminate(rows, M.cols, col_order, ops)
    return RrefResult(F2Matrix(M.rows, M.cols, tuple(rows)), tuple(ops), tuple(pivots))


def replay_row_ops(M: F2Matrix, ops: Sequence[RowOp]) -> F2Matrix:
    rows = list(M.data)
    for kind, i, j in ops:
        if kind == "swap":
            rows[i], rows[j] = rows[j], rows[i]
        elif kind == "xor":
            rows[i] ^= rows[j]
        else:
            raise ValueError(f"unknown row op {kind!r}")
    return F2Matrix(M.rows, M.cols, tuple(rows))


def rank(M: F2Matrix) -> int:
    rows = list(M.data)
    return len(_eliminate(rows, M.cols))


def kernel(M: F2Matrix) -> F2Matrix:
    """Basis of the row kernel {v : v M = 0}, one vector per matrix row.

    The returned matrix has ``M.rows - rank(M)`` rows of width ``M.rows``.
    Found by eliminating ``[M | I]``: rows whose M-part vanishes carry the
    wanted combination in their I-part.
    """
    n = M.rows
    aug = [M.data[i] | (1 << (M.cols + i)) for i in range(n)]
    _eliminate(aug, M.cols)
    msk = _mask(M.cols)
    basis = [row >> M.cols for row in aug if row & msk == 0]
    return F2Matrix(len(basis), n, tuple(basis))


def solve(M: F2Matrix, rhs: int | Sequence[int], side: str = "left") -> int | None:
    """Solve a linear system over GF(2); returns one packed solution or None.

    side="left" solves x M = rhs with x of length ``M.rows`` and rhs of
    length ``M.cols``; side="right" solves M x = rhs with x of length
    ``M.cols`` and rhs of length ``M.rows``.
    """
    if side == "right":
        return solve(M.transpose(), rhs, side="left")
    if side != "left":
        raise ValueError("side must be 'left' or 'right'")
    b = rhs if isinstance(rhs, int) else sum((int(v) & 1) << j for j, v in enumerate(rhs))
    if b & ~_mask(M.cols):
        raise ValueError("rhs wider than the column count")
    # x M = rhs is M^T x^T = rhs^T: eliminate [M^T | rhs^T] column-wise.
    mt = M.transpose()
    aug = [mt.data[i] | (((b >> i) & 1) << M.rows) for i in range(M.cols)]
    pivots = _eliminate(aug, M.rows)
    x = 0
    for prow, col in enumerate(pivots):
        if (aug[prow] >> M.rows) & 1:
            x |= 1 << col
    # Verify: inconsistent systems leave a nonzero rhs bit on a zero row.
    for row in aug:
        if row & _mask(M.rows) == 0 and (row >> M.rows) & 1:
            return None
    return x
