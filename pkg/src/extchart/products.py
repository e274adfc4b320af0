"""Yoneda products on Ext via chain-map lifting, h-tower probes, and
indecomposability scans.

A class b in filtration f_b is a functional on stage-f_b generators.  Its
cocycle lifts to a chain map phi_k: F_(f_b+k) -> F_k of degree
(-t_b, -w_b), solved lazily generator by generator against the stored
differential slices with weight-capped elimination.  The product a*b
evaluates a's functional on phi values at stage f_a, so one cached lift of
the second factor serves every left factor; h-towers reuse a single
progressively deepened lift of the tower base.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exttable import ExtClass, ExtTable
from .gf2 import Echelon
from .grading import TriDegree
from .resolution import RangeError, ResolutionState
from .steenrod import IDENTITY, basis_index, rmult_table


class LiftError(Exception):
    """A chain-map lift left the computed range."""


@dataclass
class ChainMapLift:
    """Lazily filled values phi_k(generator), keyed (k, generator index) at
    stage f_b + k, each a stage-k cell support in internal degree t_g - t_b.

    Commutation with the differentials holds by construction and is checked
    directly in the test suite.
    """

    degree: TriDegree
    support: int
    homotopy_shift: bool = False
    values: dict[tuple[int, int], int] = field(default_factory=dict)


class ProductEngine:
    """Yoneda products over one computed resolution."""

    def __init__(self, state: ResolutionState, table: ExtTable | None = None):
        self.state = state
        self.table = table if table is not None else ExtTable(state)
        self.spec = state.spec
        self._lifts: dict[tuple[TriDegree, int], ChainMapLift] = {}
        self._slice_kernels: dict[tuple[int, int], list[tuple[int, int]]] = {}

    # -- chain-map lifting ---------------------------------------------------

    def lift_of(self, b: ExtClass, homotopy_shift: bool = False) -> ChainMapLift:
        key = (b.degree, b.support)
        if homotopy_shift:
            return ChainMapLift(b.degree, b.support, True)
        lift = self._lifts.get(key)
        if lift is None:
            lift = ChainMapLift(b.degree, b.support)
            self._lifts[key] = lift
        return lift

    def lift_value(self, lift: ChainMapLift, k: int, g_idx: int) -> int:
        """phi_k on the g_idx-th generator of stage f_b + k."""
        key = (k, g_idx)
        cached = lift.values.get(key)
        if cached is not None:
            return cached
        state = self.state
        fb, tb, wb = lift.degree.f, lift.degree.t, lift.degree.w
        sf = fb + k
        if sf > state.f_done:
            raise LiftError(f"lift needs stage {sf}; computed {state.f_done}")
        d = state.gens[sf][g_idx]
        t_out = d.t - tb
        vec = 0
        if k == 0:
            if d.t == tb:
                local = state.gens_at(fb, tb).index(g_idx)
                if (lift.support >> local) & 1:
                    vec = 1  # tau^(w_g - w_b) times the bottom generator
        elif t_out >= 0:
            rhs = 0
            _, tgt_offsets = state.cells(k - 1, t_out)
            for _, a, j in state.diffs[sf][g_idx]:
                val = self.lift_value(lift, k - 1, j)
                if val == 0:
                    continue
                tj = state.gens[sf - 1][j].t - tb
                cells_j, _ = state.cells(k - 1, tj)
                v = val
                while v:
                    pos = (v & -v).bit_length() - 1
                    v &= v - 1
                    gp, b_local, _ = cells_j[pos]
                    d1 = tj - state.gens[k - 1][gp].t
                    rhs ^= rmult_table(self.spec, d1, a)[b_local] << tgt_offsets[gp]
            if rhs:
                vec = state.solve(k, t_out, rhs, wmax=d.w - wb)
                if vec is None:
                    raise LiftError(f"no preimage lifting into stage {k} at t={t_out}")
                if lift.homotopy_shift:
                    vec ^= self._kernel_shift(k, t_out, d.w - wb)
        lift.values[key] = vec
        return vec

    def _kernel_shift(self, s: int, t: int, wmax: int) -> int:
        """A deterministic element of ker d_s in the (s, t) slice within the
        weight cap, or 0; used to exhibit lift independence."""
        key = (s, t)
        kers = self._slice_kernels.get(key)
        if kers is None:
            data = self.state.slice_data(s, t)
            ech = Echelon(track=True)
            kers = []
            for i in data.order:
                comb = ech.insert(data.rows[i], tag=i, weight=data.cells[i][2])
                if comb is not None:
                    kers.append((comb, data.cells[i][2]))
            self._slice_kernels[key] = kers
        for comb, w in kers:
            if w <= wmax:
                return comb
        return 0

    # -- products -------------------------------------------------------------

    def yoneda_product(self, a: ExtClass, b: ExtClass,
                       homotopy_shift: bool = False) -> ExtClass | None:
        """The Ext product a*b, or None when it vanishes."""
        prod_deg = a.degree + b.degree
        self.table.check_range(prod_deg.f, prod_deg.t)
        lift = self.lift_of(b, homotopy_shift)
        state = self.state
        fa, ta = a.degree.f, a.degree.t
        gens_prod = state.gens_at(prod_deg.f, prod_deg.t)
        gens_a = state.gens_at(fa, ta)
        cells_a, offs_a = state.cells(fa, ta)
        unit_mask = 0
        id_local = basis_index(self.spec, 0)[IDENTITY]
        for local, g_idx in enumerate(gens_a):
            if (a.support >> local) & 1:
                unit_mask |= 1 << (offs_a[g_idx] + id_local)
        support = 0
        for local, g_idx in enumerate(gens_prod):
            val = self.lift_value(lift, fa, g_idx)
            if (val & unit_mask).bit_count() & 1:
                support |= 1 << local
        if support == 0 or self.table.is_boundary(prod_deg, support):
            return None
        return ExtClass(prod_deg, support)

    def h_tower(self, x: ExtClass, h: ExtClass, kmax: int) -> tuple[int, bool]:
        """(largest k <= kmax with h^k x != 0, alive-at-boundary flag).

        The flag is True when the probe stopped for range reasons (or hit
        kmax) while still alive, so death is never claimed past the boundary.
        """
        alive = 0
        hpow: ExtClass | None = None
        for k in range(1, kmax + 1):
            deg = x.degree + h.degree.scale(k)
            if not self.table.in_range(deg.f, deg.t):
                return alive, True
            try:
                hpow = h if k == 1 else self.yoneda_product(h, hpow)
                if hpow is None:
                    return alive, False
                y = self.yoneda_product(hpow, x)
            except (RangeError, LiftError):
                return alive, True
            if y is None:
                return alive, False
            alive = k
        return alive, True

    def indecomposability_scan(self, x: ExtClass) -> dict:
        """Exhaustive decomposability scan at deg x over factor pairs with
        positive stem-plus-filtration.

        status: "decomposable" (with witness factor pairs spanning it),
        "indecomposable", or "inconclusive" on range shortfall (never a
        false negative).
        """
        deg = x.degree
        table = self.table
        spec = self.spec
        pairs = []
        for s1 in range(0, deg.s + 1):
            s2 = deg.s - s1
            for f1 in range(0, deg.f + 1):
                f2 = deg.f - f1
                if s1 + f1 <= 0 or s2 + f2 <= 0:
                    continue
                pairs.append((s1, f1, s2, f2))
        for s1, f1, s2, f2 in pairs:
            if not (table.in_range(f1, s1 + f1) and table.in_range(f2, s2 + f2)):
                return {"status": "inconclusive", "missing": (s1, f1, s2, f2)}
        span = Echelon()
        if spec.is_motivic:
            for row in table.boundary_echelon(deg.f, deg.t, deg.w).rows:
                span.insert(row)
        witnesses = []
        n_products = 0
        for s1, f1, s2, f2 in pairs:
            if spec.is_motivic:
                tops1 = [z.top_w for z in table.summands(s1, f1)]
                tops2 = [z.top_w for z in table.summands(s2, f2)]
                if not tops1 or not tops2:
                    continue
                w1_range = range(deg.w - max(tops2), max(tops1) + 1)
            else:
                w1_range = [0]
            for w1 in w1_range:
                d1 = TriDegree(s1, f1, w1 if spec.is_motivic else 0)
                d2 = TriDegree(s2, f2, deg.w - w1 if spec.is_motivic else 0)
                for ca in table.classes(d1):
                    for cb in table.classes(d2):
                        p = self.yoneda_product(ca, cb)
                        if p is not None:
                            n_products += 1
                            span.insert(p.support)
                            witnesses.append((ca, cb))
        if span.contains(x.support):
            return {"status": "decomposable", "witnesses": witnesses,
                    "n_products": n_products}
        return {"status": "indecomposable", "n_products": n_products}


def yoneda_product(state: ResolutionState, a: ExtClass, b: ExtClass) -> ExtClass | None:
    return ProductEngine(state).yoneda_product(a, b)
