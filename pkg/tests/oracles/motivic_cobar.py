"""Independent motivic Ext oracle: reduced cobar complex over F2[tau].

Cochains in filtration f are f-fold tensors of positive-degree reduced dual
monomials.  A tensor with entry weights summing to W represents classes in
all weights w <= W (tau^(W-w) scalars); homogeneity forces the coefficient
between two tensors to be the single monomial tau^(weight difference), so
every weight slice of the differential is the same GF(2) incidence matrix
restricted to tensors of weight >= w.

Deliberately naive: builds full tensor bases and row-reduces.  Only usable
in low internal degrees, which is all an oracle needs.
"""

from __future__ import annotations

from functools import lru_cache

from extchart.steenrod import AlgebraSpec, DualMonomial, basis, coproduct

MOT = AlgebraSpec("motivic")

Tensor = tuple[DualMonomial, ...]


@lru_cache(maxsize=None)
def _monomials(t: int) -> tuple[DualMonomial, ...]:
    return tuple(DualMonomial(m.r, m.e) for m in basis(MOT, t))


@lru_cache(maxsize=None)
def tensors(f: int, t: int) -> tuple[Tensor, ...]:
    if f == 0:
        return ((),) if t == 0 else ()
    out = []
    for t1 in range(1, t - f + 2):
        for m in _monomials(t1):
            for rest in tensors(f - 1, t - t1):
                out.append((m,) + rest)
    return tuple(sorted(out))


def tensor_weight(T: Tensor) -> int:
    return sum(m.degree(MOT).w for m in T)


@lru_cache(maxsize=None)
def reduced_coproduct(m: DualMonomial) -> tuple[tuple[int, DualMonomial, DualMonomial], ...]:
    return tuple((k, a, b) for k, a, b in coproduct(m, MOT)
                 if not a.is_one and not b.is_one)


def differential(T: Tensor) -> frozenset[Tensor]:
    """Support of d(T); tau powers are implied by tensor weights."""
    acc: set[Tensor] = set()
    for i, m in enumerate(T):
        for _, a, b in reduced_coproduct(m):
            acc ^= {T[:i] + (a, b) + T[i + 1:]}
    return frozenset(acc)


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


def _d_rows(f: int, t: int, w: int) -> tuple[list[int], int]:
    """Rows of d on the weight-w slice; returns (rows, slice dimension)."""
    src = [T for T in tensors(f, t) if tensor_weight(T) >= w]
    tgt = [T for T in tensors(f + 1, t) if tensor_weight(T) >= w]
    idx = {T: i for i, T in enumerate(tgt)}
    rows = []
    for T in src:
        v = 0
        for U in differential(T):
            if U in idx:
                v ^= 1 << idx[U]
        rows.append(v)
    return rows, len(src)


def ext_dim(s: int, f: int, w: int) -> int:
    """dim over F2 of motivic Ext in tridegree (s, f, w)."""
    t = s + f
    if f == 0:
        return 1 if s == 0 and w <= 0 else 0
    rows_out, n = _d_rows(f, t, w)
    rows_in, _ = _d_rows(f - 1, t, w)
    return n - _rank(rows_out) - _rank(rows_in)


def check_dd_zero(max_f: int, max_t: int) -> bool:
    for f in range(1, max_f + 1):
        for t in range(0, max_t + 1):
            for T in tensors(f, t):
                acc: set[Tensor] = set()
                for U in differential(T):
                    acc ^= set(differential(U))
                if acc:
                    return False
    return True


if __name__ == "__main__":
    assert check_dd_zero(3, 8)
    probes = [
        (0, 1, 0), (1, 1, 1), (2, 2, 2), (3, 3, 3), (4, 4, 4), (4, 4, 3),
        (3, 3, 2), (3, 1, 2), (0, 3, 0), (6, 2, 4), (5, 5, 5), (5, 5, 4),
    ]
    for s, f, w in probes:
        print((s, f, w), ext_dim(s, f, w))
