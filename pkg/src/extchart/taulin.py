"""Graded linear algebra over the polynomial ring F2[tau].

A homogeneous matrix over F2[tau] with weighted row/column labels has all
entry exponents forced by the label weights, so weight-w slices are plain
GF(2) matrices and tau acts as the canonical shift between consecutive
slices.  Kernels are computed slice by slice inside a weight window; when
the window is too small to see every generator the result is flagged as
truncated rather than silently dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .gf2 import Echelon, F2Matrix, rref
from .grading import AlgDegree


@dataclass(frozen=True)
class TauPoly:
    """Polynomial in tau over F2, stored as the sparse set of exponents."""

    exponents: frozenset[int] = frozenset()

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise ValueError("tau exponents must be non-negative")

    @classmethod
    def zero(cls) -> "TauPoly":
        return cls(frozenset())

    @classmethod
    def monomial(cls, k: int) -> "TauPoly":
        return cls(frozenset({k}))

    @classmethod
    def one(cls) -> "TauPoly":
        return cls.monomial(0)

    def __bool__(self) -> bool:
        return bool(self.exponents)

    def __add__(self, other: "TauPoly") -> "TauPoly":
        return TauPoly(self.exponents ^ other.exponents)

    def __mul__(self, other: "TauPoly") -> "TauPoly":
        acc: set[int] = set()
        for a in self.exponents:
            for b in other.exponents:
                acc ^= {a + b}
        return TauPoly(frozenset(acc))

    def shift(self, k: int) -> "TauPoly":
        return TauPoly(frozenset(e + k for e in self.exponents))

    def specialize_tau_one(self) -> int:
        """Value in F2 after setting tau = 1."""
        return len(self.exponents) & 1

    def __repr__(self) -> str:
        if not self.exponents:
            return "0"
        terms = []
        for e in sorted(self.exponents):
            terms.append("1" if e == 0 else ("tau" if e == 1 else f"tau^{e}"))
        return "+".join(terms)


class TruncationError(Exception):
    """A weight window was too small for the requested computation."""


@dataclass(frozen=True)
class TauMatrix:
    """Homogeneous matrix over F2[tau] with graded row and column labels.

    Entry (i, j) maps the column-j generator (degree col_degrees[j]) to a
    multiple of the row-i generator; homogeneity forces every nonzero entry
    to be the single monomial tau^(col w - row w).
    """

    entries: tuple[tuple[TauPoly, ...], ...]
    row_degrees: tuple[AlgDegree, ...]
    col_degrees: tuple[AlgDegree, ...]

    def __post_init__(self):
        for i, row in enumerate(self.entries):
            if len(row) != len(self.col_degrees):
                raise ValueError("entry row width does not match column labels")
            for j, p in enumerate(row):
                if not p:
                    continue
                forced = self.col_degrees[j].w - self.row_degrees[i].w
                if self.col_degrees[j].t != self.row_degrees[i].t:
                    raise ValueError(f"entry ({i},{j}) mixes internal degrees")
                if p.exponents != {forced}:
                    raise ValueError(
                        f"entry ({i},{j}) = {p} is not homogeneous; "
                        f"forced exponent is {forced}"
                    )

    @property
    def nrows(self) -> int:
        return len(self.row_degrees)

    @property
    def ncols(self) -> int:
        return len(self.col_degrees)

    def f2_support(self) -> F2Matrix:
        """The underlying GF(2) coefficient matrix (exponents implied)."""
        return F2Matrix(
            tuple(
                sum(1 << j for j, p in enumerate(row) if p)
                for row in self.entries
            ),
            self.ncols,
        )

    def stable_weight(self) -> int:
        """Weight above which slices stop producing new kernel generators."""
        weights = [d.w for d in self.row_degrees] + [d.w for d in self.col_degrees]
        return max(weights) if weights else 0

    def min_weight(self) -> int:
        weights = [d.w for d in self.col_degrees]
        return min(weights) if weights else 0


@dataclass(frozen=True)
class GradedKernelGenerator:
    """One F2[tau]-module generator of a graded kernel.

    coords[j] is the coefficient of column generator j; the coefficient of a
    column with weight w_j is tau^(weight - w_j) when the support bit is set.
    """

    support: int
    weight: int
    coords: tuple[TauPoly, ...]


@dataclass
class GradedKernel:
    generators: list[GradedKernelGenerator] = field(default_factory=list)
    truncated: bool = False
    window: tuple[int, int] = (0, 0)

    def support_masks(self) -> list[int]:
        return [g.support for g in self.generators]


def tau_kernel(m: TauMatrix, window: tuple[int, int] | None = None) -> GradedKernel:
    """Generating set of ker(m) as a graded F2[tau]-module.

    The weight-w slice of the source is spanned by tau^(w - w_j) e_j over
    columns with w_j <= w, on which m is the GF(2) support matrix restricted
    to the included rows/columns.  New generators are the slice kernel
    elements not reached by the tau-shift from the previous slice.

    Args:
        m: homogeneous matrix.
        window: inclusive weight range to scan; defaults to the full
            stabilization range of m.  A window whose upper end is below the
            stabilization weight yields ``truncated=True``.

    Returns:
        GradedKernel with generators in (weight, column-order) order.
    """
    auto = (m.min_weight(), m.stable_weight())
    if window is None:
        window = auto
    lo, hi = window
    if lo > hi:
        raise ValueError("empty weight window")

    result = GradedKernel(window=window, truncated=hi < auto[1])

    # Columns in (weight, index) order; the echelon of processed images plus
    # the kernel combinations discovered so far grows monotonically with w.
    order = sorted(range(m.ncols), key=lambda j: (m.col_degrees[j].w, j))
    support = m.f2_support().transpose()  # row j = image of column j over rows
    ech = Echelon(track=True)
    tags_seen: list[int] = []
    for j in order:
        wj = m.col_degrees[j].w
        if wj > hi:
            break
        tags_seen.append(j)
        comb = ech.insert(support.rows[j], tag=j)
        if comb is None:
            continue
        weight = wj
        if weight < lo:
            # Generator exists below the window; surface it at the window
            # floor rather than dropping it, and flag the truncation.
            weight = lo
            result.truncated = True
        coords = tuple(
            TauPoly.monomial(weight - m.col_degrees[k].w)
            if (comb >> k) & 1
            else TauPoly.zero()
            for k in range(m.ncols)
        )
        result.generators.append(GradedKernelGenerator(comb, weight, coords))
    return result


def kernel_slice_f2(m: TauMatrix, w: int) -> tuple[list[int], list[int]]:
    """Brute-force basis of the weight-w kernel slice.

    Returns (included column indices, kernel vectors packed over that
    index list).  Used as the independent check of tau_kernel.
    """
    cols = [j for j in range(m.ncols) if m.col_degrees[j].w <= w]
    rows = [i for i in range(m.nrows) if m.row_degrees[i].w <= w]
    packed = []
    for i in rows:
        r = 0
        for jj, j in enumerate(cols):
            if m.entries[i][j]:
                r |= 1 << jj
        packed.append(r)
    _, _, kernel = rref(F2Matrix(tuple(packed), len(cols)))
    return cols, list(kernel)
