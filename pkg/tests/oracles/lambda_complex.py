"""Independent classical Ext oracle via the Koszul-dual differential algebra.

Monomials on generators u_0, u_1, ... (u_i in stem i, filtration 1) are
admissible when each index is at most twice its left neighbour; inadmissible
adjacent pairs straighten by

    u_i u_(2i+1+n) = sum_j C(n-1-j, j) u_(i+n-j) u_(2i+1+j)

and the differential is

    d(u_n) = sum_(j>=1) C(n-j, j) u_(n-j) u_(j-1),

extended as a derivation.  Cohomology in (filtration, internal degree)
recovers the classical Adams E2 chart, and concatenation computes its
products.  Everything here is deliberately naive and separate from the
resolution engine; d∘d = 0 is asserted on the range it is used for.
"""

from __future__ import annotations

import sys
from functools import lru_cache
from math import comb

Mono = tuple[int, ...]


def admissible(m: Mono) -> bool:
    return all(m[k + 1] <= 2 * m[k] for k in range(len(m) - 1))


@lru_cache(maxsize=None)
def _straighten_pair(i: int, j: int) -> frozenset[Mono]:
    """u_i u_j as a sum of admissible pairs (F2 coefficients)."""
    if j <= 2 * i:
        return frozenset({(i, j)})
    n = j - 2 * i - 1
    acc: set[Mono] = set()
    for jp in range(0, n):
        if comb(n - 1 - jp, jp) & 1:
            for term in _straighten_pair(i + n - jp, 2 * i + 1 + jp):
                acc ^= {term}
    return frozenset(acc)


@lru_cache(maxsize=None)
def normalize(m: Mono) -> frozenset[Mono]:
    """Express a monomial in the admissible basis."""
    for k in range(len(m) - 1):
        if m[k + 1] > 2 * m[k]:
            acc: set[Mono] = set()
            for pair in _straighten_pair(m[k], m[k + 1]):
                for term in normalize(m[:k] + pair + m[k + 2:]):
                    acc ^= {term}
            return frozenset(acc)
    return frozenset({m})


@lru_cache(maxsize=None)
def d_gen(n: int) -> frozenset[Mono]:
    acc: set[Mono] = set()
    for j in range(1, n + 1):
        if n - j >= j and comb(n - j, j) & 1:
            acc ^= {(n - j, j - 1)}
    return frozenset(acc)


@lru_cache(maxsize=None)
def differential(m: Mono) -> frozenset[Mono]:
    """d(m) in the admissible basis (derivation over F2)."""
    acc: set[Mono] = set()
    for k in range(len(m)):
        for pair in d_gen(m[k]):
            for term in normalize(m[:k] + pair + m[k + 1:]):
                acc ^= {term}
    return frozenset(acc)


@lru_cache(maxsize=None)
def monomials(f: int, stem: int) -> tuple[Mono, ...]:
    """Admissible length-f monomials of total index sum = stem, sorted."""
    if f == 0:
        return ((),) if stem == 0 else ()
    if f == 1:
        return ((stem,),) if stem >= 0 else ()
    out = []
    for first in range(0, stem + 1):
        for rest in monomials(f - 1, stem - first):
            if not rest or rest[0] <= 2 * first:
                out.append((first,) + rest)
    return tuple(sorted(out))


def _pack(terms: frozenset[Mono], index: dict[Mono, int]) -> int:
    v = 0
    for t in terms:
        v ^= 1 << index[t]
    return v


def _rank(rows: list[int]) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            low = (r & -r).bit_length() - 1
            if low in pivots:
                r ^= pivots[low]
            else:
                pivots[low] = r
                rank += 1
                break
    return rank


def d_matrix(f: int, stem: int) -> tuple[list[int], tuple[Mono, ...], tuple[Mono, ...]]:
    src = monomials(f, stem)
    tgt = monomials(f + 1, stem - 1)
    idx = {m: i for i, m in enumerate(tgt)}
    rows = [_pack(differential(m), idx) for m in src]
    return rows, src, tgt


def ext_dim(stem: int, f: int) -> int:
    """dim Ext^(f, stem+f) over F2."""
    if f == 0:
        return 1 if stem == 0 else 0
    rows, src, _ = d_matrix(f, stem)
    rank_out = _rank(list(rows))
    rows_in, _, _ = d_matrix(f - 1, stem + 1)
    rank_in = _rank(list(rows_in))
    return len(src) - rank_out - rank_in


def check_dd_zero(max_stem: int, max_f: int) -> bool:
    for f in range(1, max_f + 1):
        for stem in range(0, max_stem + 1):
            for m in monomials(f, stem):
                acc: set[Mono] = set()
                for term in differential(m):
                    acc ^= set(differential(term))
                if acc:
                    return False
    return True


class CohomologyClass:
    """A cocycle modulo boundaries at fixed (stem, f)."""

    def __init__(self, stem: int, f: int, terms: frozenset[Mono]):
        self.stem = stem
        self.f = f
        self.terms = terms

    @classmethod
    def from_monomial(cls, m: Mono) -> "CohomologyClass":
        return cls(sum(m), len(m), frozenset({m}))

    def multiply(self, other: "CohomologyClass") -> "CohomologyClass":
        acc: set[Mono] = set()
        for a in self.terms:
            for b in other.terms:
                for t in normalize(a + b):
                    acc ^= {t}
        return CohomologyClass(self.stem + other.stem, self.f + other.f, frozenset(acc))

    def is_boundary(self) -> bool:
        if not self.terms:
            return True
        rows_in, src_in, tgt = d_matrix(self.f - 1, self.stem + 1)
        idx = {m: i for i, m in enumerate(tgt)}
        vec = _pack(self.terms, idx)
        pivots: dict[int, int] = {}
        for r in rows_in:
            rr = r
            while rr:
                low = (rr & -rr).bit_length() - 1
                if low in pivots:
                    rr ^= pivots[low]
                else:
                    pivots[low] = rr
                    break
        while vec:
            low = (vec & -vec).bit_length() - 1
            if low in pivots:
                vec ^= pivots[low]
            else:
                return False
        return True

    def is_zero_class(self) -> bool:
        return self.is_boundary()


def cocycle_basis(stem: int, f: int) -> list[CohomologyClass]:
    """Cocycle representatives of a basis of cohomology at (stem, f)."""
    rows, src, _ = d_matrix(f, stem)
    pivots: dict[int, tuple[int, int]] = {}
    kernel_combos: list[int] = []
    for i, r in enumerate(rows):
        comb = 1 << i
        while r:
            low = (r & -r).bit_length() - 1
            if low in pivots:
                pr, pc = pivots[low]
                r ^= pr
                comb ^= pc
            else:
                pivots[low] = (r, comb)
                comb = 0
                break
        if comb:
            kernel_combos.append(comb)
    # Reduce kernel representatives against the boundary span so the output
    # is a basis of the quotient, not just a list of non-boundaries.
    rows_in, _, tgt_here = d_matrix(f - 1, stem + 1) if f >= 1 else ([], (), ())
    idx = {m: i for i, m in enumerate(src)}
    bpivots: dict[int, int] = {}

    def reduce_vec(v: int, pv: dict[int, int]) -> int:
        while v:
            low = (v & -v).bit_length() - 1
            if low in pv:
                v ^= pv[low]
            else:
                return v
        return 0

    def insert_vec(v: int, pv: dict[int, int]) -> bool:
        v = reduce_vec(v, pv)
        if v:
            pv[(v & -v).bit_length() - 1] = v
            return True
        return False

    for r in rows_in:
        insert_vec(r, bpivots)
    out = []
    for comb in kernel_combos:
        vec = 0
        v = comb
        while v:
            i = (v & -v).bit_length() - 1
            v &= v - 1
            vec ^= 1 << i
        if insert_vec(vec, bpivots):
            terms: set[Mono] = set()
            v = comb
            while v:
                i = (v & -v).bit_length() - 1
                v &= v - 1
                terms ^= {src[i]}
            out.append(CohomologyClass(stem, f, frozenset(terms)))
    return out


if __name__ == "__main__":
    max_stem = int(sys.argv[1]) if len(sys.argv) > 1 else 16
    max_f = int(sys.argv[2]) if len(sys.argv) > 2 else 10
    assert check_dd_zero(min(max_stem, 12), min(max_f, 8))
    for s in range(max_stem + 1):
        print(s, [ext_dim(s, f) for f in range(max_f + 1)])
