"""Dense linear algebra over the two-element field.

Rows are stored as Python ints used as bitsets: bit ``j`` of ``rows[i]`` is
the entry in row ``i``, column ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class NotAComplexError(ValueError):
    """Raised when a would-be differential does not square to zero."""


@dataclass(frozen=True)
class F2Matrix:
    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(self.rows)}")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError("row has bits outside the column range")

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> F2Matrix:
        ncols = nrows if ncols is None else ncols
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> F2Matrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence[int]]) -> F2Matrix:
        nrows = len(entries)
        ncols = len(entries[0]) if nrows else 0
        rows = []
        for row in entries:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            bits = 0
            for j, v in enumerate(row):
                if v & 1:
                    bits |= 1 << j
            rows.append(bits)
        return cls(nrows, ncols, tuple(rows))

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, ones: Iterable[tuple[int, int]]) -> F2Matrix:
        """Build from (row, col) positions; repeated positions cancel mod 2."""
        rows = [0] * nrows
        for i, j in ones:
            rows[i] ^= 1 << j
        return cls(nrows, ncols, tuple(rows))

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return (self.rows[i] >> j) & 1

    def to_dense(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def nonzero(self) -> list[tuple[int, int]]:
        out = []
        for i, r in enumerate(self.rows):
            j = 0
            while r:
                if r & 1:
                    out.append((i, j))
                r >>= 1
                j += 1
        return out

    def count_nonzero(self) -> int:
        return sum(bin(r).count("1") for r in self.rows)

    def transpose(self) -> F2Matrix:
        return F2Matrix.from_entries(self.ncols, self.nrows, ((j, i) for i, j in self.nonzero()))

    def __matmul__(self, other: F2Matrix) -> F2Matrix:
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.rows:
            acc = 0
            k = 0
            while r:
                if r & 1:
                    acc ^= other.rows[k]
                r >>= 1
                k += 1
            out.append(acc)
        return F2Matrix(self.nrows, other.ncols, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.rows)


def rank(m: F2Matrix) -> int:
    """Rank over F2 by Gaussian elimination on the row bitsets."""
    pivots: dict[int, int] = {}  # leading bit -> reduced row
    for r in m.rows:
        while r:
            top = r.bit_length() - 1
            if top not in pivots:
                pivots[top] = r
                break
            r ^= pivots[top]
    return len(pivots)


def homology_rank(d: F2Matrix) -> int:
    """Total F2 homology rank of the ungraded complex with differential ``d``."""
    if d.nrows != d.ncols:
        raise ValueError("differential must be square")
    if not (d @ d).is_zero():
        raise NotAComplexError("d*d != 0")
    return d.nrows - 2 * rank(d)


def kernel_dim(m: F2Matrix) -> int:
    """Dimension of the kernel of ``m`` acting on column vectors.

    Computed from an explicit kernel basis (column echelon form) rather than
    via rank-nullity, so it can serve as an independent check on :func:`rank`.
    """
    n = m.ncols
    # columns of m as bitsets over rows, paired with the identity tracking
    cols = []
    for j in range(n):
        c = 0
        for i, r in enumerate(m.rows):
            if (r >> j) & 1:
                c |= 1 << i
        cols.append([c, 1 << j])
    basis = []
    pivots: dict[int, list[int]] = {}
    for c, track in cols:
        while c:
            top = c.bit_length() - 1
            if top not in pivots:
                pivots[top] = [c, track]
                break
            c ^= pivots[top][0]
            track ^= pivots[top][1]
        if c == 0:
            basis.append(track)
    # basis vectors are independent because each carries a distinct leading column
    for v in basis:
        for r in m.rows:
            assert bin(r & v).count("1") % 2 == 0
    return len(basis)
