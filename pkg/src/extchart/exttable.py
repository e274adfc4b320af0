"""Ext dimension tables with their F2[tau]-module structure.

For the classical flavor, minimality makes the dual complex zero and every
generator of stage f in internal degree t contributes one Ext class in
(s, f) = (t - f, f).

For the motivic flavor the dual complex has tau-divisible differentials
(the pure tau-power coefficients of the stored differentials) and Ext in a
fixed (f, t) is a finitely generated graded F2[tau]-module.  It decomposes
as a sum of cyclic pieces F2[tau]/tau^k with a top weight; free pieces are
the ones still alive at the stable weight floor.  The decomposition is
recovered from ranks of tau-power maps between weight slices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .gf2 import Echelon
from .grading import TriDegree
from .steenrod import IDENTITY
from .resolution import RangeError, ResolutionState


@dataclass(frozen=True)
class ExtSummand:
    """One cyclic summand of Ext^(f, t): top weight and tau-order.

    order is the least k with tau^k * generator = 0, or None for a free
    (tau-torsion-free) summand.
    """

    top_w: int
    order: int | None

    def covers(self, w: int) -> bool:
        if w > self.top_w:
            return False
        return self.order is None or w > self.top_w - self.order


@dataclass(frozen=True)
class ExtClass:
    """A cocycle class: tridegree plus coordinates over the generator-dual
    basis of its (f, t) slot (bit i = dual of the i-th degree-t generator).
    """

    degree: TriDegree
    support: int
    name: str | None = None

    def __post_init__(self):
        if self.support <= 0:
            raise ValueError("an Ext class has nonzero coordinates")

    def with_name(self, name: str) -> "ExtClass":
        return ExtClass(self.degree, self.support, name)

    def tau_times(self, k: int = 1) -> "ExtClass":
        return ExtClass(self.degree.tau_shift(k), self.support, None)

    def __repr__(self) -> str:
        d = self.degree
        label = self.name or f"[{self.support:b}]"
        return f"{label}({d.s},{d.f},{d.w})"


class ExtTable:
    """Tridegree-indexed dimensions backed by a computed resolution."""

    def __init__(self, state: ResolutionState):
        self.state = state
        self.spec = state.spec
        self._summands: dict[tuple[int, int], tuple[ExtSummand, ...]] = {}
        self._homology: dict[tuple[int, int], dict] = {}

    # -- range -------------------------------------------------------------

    @property
    def max_f(self) -> int:
        return self.state.f_done - 1 if self.spec.is_motivic else self.state.f_done

    def check_range(self, f: int, t: int):
        if f < 0 or f > self.max_f or not self.state.in_range(min(f + 1, self.state.f_done), t):
            raise RangeError(
                f"(f={f}, t={t}) outside computed range "
                f"(f <= {self.max_f}, t <= {self.state.t_done}"
                + (f", stem <= {self.state.stem_cap}" if self.state.stem_cap is not None else "")
                + ")"
            )

    def in_range(self, f: int, t: int) -> bool:
        try:
            self.check_range(f, t)
            return True
        except RangeError:
            return False

    # -- classical dimensions ----------------------------------------------

    def dim_classical(self, s: int, f: int) -> int:
        t = s + f
        self.check_range(f, t)
        return len(self.state.gens_at(f, t))

    def classes_classical(self, s: int, f: int) -> list[ExtClass]:
        t = s + f
        self.check_range(f, t)
        return [ExtClass(TriDegree(s, f, 0), 1 << i)
                for i in range(len(self.state.gens_at(f, t)))]

    # -- motivic module structure -------------------------------------------

    def _tau_homology(self, f: int, t: int) -> dict:
        """Cocycle and boundary data of the dual complex at (f, t).

        Returns dict with:
            weights: source generator weights (local order),
            cocycles: [(support, validity weight)] — exists at w <= validity,
            boundaries: [(support, validity weight)],
            floor: weight below which everything is stable.
        """
        key = (f, t)
        if key in self._homology:
            return self._homology[key]
        state = self.state
        srcs = state.gens_at(f, t)
        weights = [state.gens[f][i].w for i in srcs]
        up = state.gens_at(f + 1, t) if f + 1 < len(state.gens) else []
        down = state.gens_at(f - 1, t) if f >= 1 else []

        def unit_bits(stage: int, gen: int, targets: list[int]) -> int:
            pos = {g: p for p, g in enumerate(targets)}
            bits = 0
            for _, a, j in state.diffs[stage][gen]:
                if a == IDENTITY and j in pos:
                    bits ^= 1 << pos[j]
            return bits

        # D_f(g^) has a tau-coefficient on g'^ iff d(g') carries a pure
        # tau-power of g; rows below are D_f images per source generator.
        up_rows = [0] * len(srcs)
        for q, gp in enumerate(up):
            hit = unit_bits(f + 1, gp, srcs)
            v = hit
            while v:
                p = (v & -v).bit_length() - 1
                v &= v - 1
                up_rows[p] |= 1 << q
        boundaries = []
        for gpp in down:
            supp = 0
            for p, g in enumerate(srcs):
                for k, a, j in state.diffs[f][g]:
                    if a == IDENTITY and j == gpp:
                        supp ^= 1 << p
            if supp:
                boundaries.append((supp, state.gens[f - 1][gpp].w))

        # Cocycles: combinations of sources with zero D_f image, discovered
        # inserting in weight-descending order so each combination's validity
        # weight (its minimum member weight) is the insertion weight.
        ech = Echelon(track=True)
        cocycles = []
        for p in sorted(range(len(srcs)), key=lambda p: (-weights[p], p)):
            comb = ech.insert(up_rows[p], tag=p)
            if comb is not None:
                cocycles.append((comb, weights[p]))
        floor_candidates = weights + [w for _, w in boundaries]
        floor = (min(floor_candidates) - 1) if floor_candidates else 0
        data = {
            "weights": weights,
            "cocycles": cocycles,
            "boundaries": boundaries,
            "floor": floor,
            "srcs": srcs,
        }
        self._homology[key] = data
        return data

    def summands(self, s: int, f: int) -> tuple[ExtSummand, ...]:
        """Cyclic decomposition of motivic Ext^(f, s+f) over F2[tau]."""
        if not self.spec.is_motivic:
            raise ValueError("summands are a motivic-flavor query")
        t = s + f
        self.check_range(f, t)
        key = (f, t)
        if key in self._summands:
            return self._summands[key]
        data = self._tau_homology(f, t)
        cocycles, boundaries, floor = data["cocycles"], data["boundaries"], data["floor"]
        if not cocycles:
            self._summands[key] = ()
            return ()
        w_hi = max(v for _, v in cocycles)

        def rank_of(vectors: list[int]) -> int:
            ech = Echelon()
            for v in vectors:
                ech.insert(v)
            return ech.rank()

        def S(a: int, b: int) -> int:
            # blocks with top >= a and bottom <= b: rank of tau^(a-b) from
            # weight a to weight b.
            if a < b:
                a = b
            bvecs = [supp for supp, v in boundaries if v >= b]
            zvecs = [supp for supp, v in cocycles if v >= a]
            return rank_of(bvecs + zvecs) - rank_of(bvecs)

        out: list[ExtSummand] = []
        for top in range(w_hi, floor - 1, -1):
            frees = S(top, floor) - S(top + 1, floor)
            out.extend([ExtSummand(top, None)] * frees)
            for bottom in range(floor + 1, top + 1):
                n = (S(top, bottom) - S(top + 1, bottom)
                     - S(top, bottom - 1) + S(top + 1, bottom - 1))
                out.extend([ExtSummand(top, top - bottom + 1)] * n)
        out.sort(key=lambda z: (-z.top_w, z.order is None, z.order or 0))
        self._summands[key] = tuple(out)
        return tuple(out)

    def dim(self, d: TriDegree) -> int:
        """F2-dimension at a tridegree (motivic) or (s, f) with w ignored."""
        if not self.spec.is_motivic:
            return self.dim_classical(d.s, d.f)
        return sum(1 for z in self.summands(d.s, d.f) if z.covers(d.w))

    # -- cocycle representatives --------------------------------------------

    def boundary_echelon(self, f: int, t: int, w: int) -> Echelon:
        data = self._tau_homology(f, t)
        ech = Echelon()
        for supp, v in data["boundaries"]:
            if v >= w:
                ech.insert(supp)
        return ech

    def classes(self, d: TriDegree) -> list[ExtClass]:
        """Representative basis of Ext at a tridegree."""
        if not self.spec.is_motivic:
            return self.classes_classical(d.s, d.f)
        t = d.s + d.f
        self.check_range(d.f, t)
        data = self._tau_homology(d.f, t)
        ech = self.boundary_echelon(d.f, t, d.w)
        out = []
        for supp, v in data["cocycles"]:
            if v >= d.w and ech.insert(supp) is None:
                out.append(ExtClass(d, supp))
        return out

    def is_boundary(self, d: TriDegree, support: int) -> bool:
        if support == 0:
            return True
        if not self.spec.is_motivic:
            return False
        return self.boundary_echelon(d.f, d.s + d.f, d.w).contains(support)

    def is_cocycle(self, d: TriDegree, support: int) -> bool:
        if not self.spec.is_motivic:
            return True
        data = self._tau_homology(d.f, d.s + d.f)
        ech = Echelon()
        for supp, v in data["cocycles"]:
            if v >= d.w:
                ech.insert(supp)
        return ech.contains(support)

    def same_class(self, a: ExtClass, b: ExtClass) -> bool:
        if a.degree != b.degree:
            return False
        return self.is_boundary(a.degree, a.support ^ b.support)

    def nonzero_degrees(self, max_stem: int, max_f: int) -> list[tuple[int, int, int]]:
        """(s, f, dim) triples over the requested classical-range window."""
        out = []
        for s in range(0, max_stem + 1):
            for f in range(0, max_f + 1):
                if not self.in_range(f, s + f):
                    continue
                n = (len(self.state.gens_at(f, s + f))
                     if not self.spec.is_motivic else
                     sum(1 for _ in self.summands(s, f)))
                if n:
                    out.append((s, f, n))
        return out


def ext_dimensions(state: ResolutionState) -> ExtTable:
    """Dimension table of the computed resolution."""
    return ExtTable(state)


@dataclass
class VanishingReport:
    """Outcome of the slope-1/2 vanishing-line scan on a classical table."""

    passed: bool
    max_stem: int
    max_f: int
    violations: list[tuple[int, int]]
    intercept_minus_3: list[tuple[int, int]]
    expected_minus_3: list[tuple[int, int]]

    def __bool__(self) -> bool:
        return self.passed


def verify_vanishing(table: ExtTable, max_stem: int | None = None,
                     max_f: int | None = None) -> VanishingReport:
    """Check the classical vanishing region and the intercept -3 census.

    Above the line of slope 1/2 with x-intercept -3 only the stem-0 tower
    survives, and the intercept -3 classes are exactly the degrees
    (8k+3, 4k+3), each one-dimensional (the k-fold periodicity translates
    of the cube of the first odd-primary-free generator).
    """
    state = table.state
    if state.spec.is_motivic:
        raise ValueError("the vanishing scan applies to the classical flavor")
    if max_stem is None:
        max_stem = state.stem_cap if state.stem_cap is not None else state.t_done
    if max_f is None:
        max_f = table.max_f
    violations = []
    minus3 = []
    for s in range(0, max_stem + 1):
        for f in range(0, max_f + 1):
            if not table.in_range(f, s + f):
                continue
            dim = table.dim_classical(s, f)
            if dim == 0:
                continue
            icept = s - 2 * f
            if s == 0:
                continue
            if icept < -3:
                violations.append((s, f))
            elif icept == -3:
                minus3.extend([(s, f)] * dim)
    expected = [(8 * k + 3, 4 * k + 3) for k in range((max_stem - 3) // 8 + 1)
                if 8 * k + 3 <= max_stem and 4 * k + 3 <= max_f]
    passed = not violations and sorted(minus3) == sorted(expected)
    return VanishingReport(passed, max_stem, max_f, violations, sorted(minus3), expected)
