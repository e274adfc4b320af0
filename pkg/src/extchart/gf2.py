"""Bit-packed linear algebra over the two-element field.

Vectors are Python ints used as bitsets (bit j = coordinate j), matrices are
lists of row ints.  All routines use deterministic leftmost-lowest pivoting,
so identical inputs give identical outputs on every run.
"""

from __future__ import annotations

from dataclasses import dataclass


def popcount(x: int) -> int:
    return x.bit_count()


def lowest_bit(x: int) -> int:
    """Index of the lowest set bit (x must be nonzero)."""
    return (x & -x).bit_length() - 1


@dataclass(frozen=True)
class F2Matrix:
    """Dense matrix over GF(2), rows bit-packed into ints."""

    rows: tuple[int, ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: list[list[int]] | list[int], ncols: int | None = None) -> "F2Matrix":
        if rows and isinstance(rows[0], list):
            width = ncols if ncols is not None else (max(len(r) for r in rows) if rows else 0)
            packed = tuple(sum((bit & 1) << j for j, bit in enumerate(r)) for r in rows)
            return cls(packed, width)
        if ncols is None:
            raise ValueError("ncols required for pre-packed rows")
        return cls(tuple(rows), ncols)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "F2Matrix":
        return cls((0,) * nrows, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def transpose(self) -> "F2Matrix":
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                j = lowest_bit(r)
                cols[j] |= 1 << i
                r &= r - 1
        return F2Matrix(tuple(cols), self.nrows)

    def mul_vec(self, v: int) -> int:
        """Matrix times column vector (v packed over columns)."""
        out = 0
        for i, r in enumerate(self.rows):
            if popcount(r & v) & 1:
                out |= 1 << i
        return out


def rref(m: F2Matrix) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    """Reduced row echelon data of a GF(2) matrix.

    Returns:
        (rank, pivot_cols, kernel_basis) where kernel_basis is a tuple of
        bit-packed vectors over the columns spanning the null space of m
        (as a map from column space to row space).  Pivots are chosen
        leftmost-lowest, so the output is deterministic for a fixed column
        order; kernel vectors are emitted in increasing free-column order.
    """
    work = list(m.rows)
    nrows, ncols = len(work), m.ncols
    pivot_cols: list[int] = []
    row = 0
    for col in range(ncols):
        sel = -1
        for r in range(row, nrows):
            if (work[r] >> col) & 1:
                sel = r
                break
        if sel < 0:
            continue
        work[row], work[sel] = work[sel], work[row]
        for r in range(nrows):
            if r != row and ((work[r] >> col) & 1):
                work[r] ^= work[row]
        pivot_cols.append(col)
        row += 1
        if row == nrows:
            break
    rank = len(pivot_cols)
    pivot_set = set(pivot_cols)
    kernel: list[int] = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = 1 << free
        for i, pc in enumerate(pivot_cols):
            if (work[i] >> free) & 1:
                vec |= 1 << pc
        kernel.append(vec)
    return rank, tuple(pivot_cols), tuple(kernel)


def rref_rows(m: F2Matrix) -> F2Matrix:
    """The reduced row echelon form itself (zero rows dropped)."""
    work = list(m.rows)
    nrows, ncols = len(work), m.ncols
    row = 0
    for col in range(ncols):
        sel = -1
        for r in range(row, nrows):
            if (work[r] >> col) & 1:
                sel = r
                break
        if sel < 0:
            continue
        work[row], work[sel] = work[sel], work[row]
        for r in range(nrows):
            if r != row and ((work[r] >> col) & 1):
                work[r] ^= work[row]
        row += 1
        if row == nrows:
            break
    return F2Matrix(tuple(r for r in work if r), ncols)


def rank(m: F2Matrix) -> int:
    return rref(m)[0]


class Echelon:
    """Incremental row-echelon container over GF(2).

    Rows may carry an auxiliary combination vector (over caller-provided
    tags) so membership certificates and kernel combinations fall out of
    insertion, and an insertion weight so reductions can be restricted to a
    weight prefix.  Pivot choice: lowest set bit of the reduced row.
    """

    __slots__ = ("pivots", "rows", "combs", "weights", "track", "n_inserted")

    def __init__(self, track: bool = False):
        self.pivots: dict[int, int] = {}
        self.rows: list[int] = []
        self.combs: list[int] = []
        self.weights: list[int] = []
        self.track = track
        self.n_inserted = 0

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: int, comb: int = 0, wmax: int | None = None) -> tuple[int, int]:
        """Reduce vec against rows of weight <= wmax; returns (residual,
        combination).

        Stored rows keep their pivot as the lowest set bit, so eliminating
        the current lowest bit never disturbs lower ones and one ascending
        pass suffices.  Rows above the weight cut never clear a bit, and a
        bit owned by such a row stays settled, so the residual is zero
        exactly when vec lies in the span of the admitted rows.
        """
        pivots = self.pivots
        rows = self.rows
        combs = self.combs
        weights = self.weights
        track = self.track
        settled = 0
        while vec:
            low = vec & -vec
            idx = pivots.get(low.bit_length() - 1)
            if idx is None or (wmax is not None and weights[idx] > wmax):
                settled |= low
                vec ^= low
            else:
                vec ^= rows[idx]
                if track:
                    comb ^= combs[idx]
        return settled, comb

    def insert(self, vec: int, tag: int | None = None, weight: int = 0) -> int | None:
        """Insert a vector; returns its kernel combination if dependent.

        Rows must be inserted in non-decreasing weight order for weighted
        reductions to be meaningful.
        """
        marker = 1 << (self.n_inserted if tag is None else tag)
        self.n_inserted += 1
        residual, comb = self.reduce(vec, marker if self.track else 0)
        if residual == 0:
            return comb if self.track else 0
        self.pivots[lowest_bit(residual)] = len(self.rows)
        self.rows.append(residual)
        self.combs.append(comb)
        self.weights.append(weight)
        return None

    def contains(self, vec: int) -> bool:
        return self.reduce(vec)[0] == 0

    def rank(self) -> int:
        return len(self.rows)


def solve(rows: list[int], target: int) -> int | None:
    """Solve sum_{i in S} rows[i] = target; returns the index set S as a
    bitmask, or None if unsolvable.  Deterministic."""
    ech = Echelon(track=True)
    for r in rows:
        ech.insert(r)
    residual, comb = ech.reduce(target, 0)
    if residual != 0:
        return None
    return comb
