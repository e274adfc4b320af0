"""Minimal free resolutions of the ground module over a Steenrod algebra.

The ground module is F2 (classical flavor) or F2[tau] (motivic flavor);
minimality is taken with respect to the augmentation ideal all the way down
to F2, so motivic differentials may carry pure tau-power entries and the
dual complex computes the F2[tau]-module structure of Ext.

Internal degree slices of a free module are represented by "cells"
(basis element, generator) with their weights; homogeneity forces every
coefficient to be a tau-monomial whose exponent is the weight difference,
so slices of the differential are plain GF(2) matrices over cells and tau
acts as the canonical shift between weight slices.  Kernels and minimal
covers are found in one deterministic echelon pass per (stage, degree) by
inserting cell rows in weight order: a dependent row discovered at a
weight-w cell is a kernel module generator of weight w, and a kernel
generator not covered by images of lower cells spawns a new free-module
generator.

Classical resolutions may be capped by stem (sound over a field); motivic
resolutions always compute full (filtration, internal degree) rectangles
because kernels can involve tau-multiples of same-degree generators in
higher stems.
"""

from __future__ import annotations

import gzip
import hashlib
import json
import time
from dataclasses import dataclass, field

from .gf2 import Echelon
from .grading import AlgDegree, TriDegree
from .steenrod import (
    IDENTITY,
    AlgebraSpec,
    MilnorBasisElement,
    basis,
    lmult_table,
)

CHECKPOINT_FORMAT = "extchart-resolution"
CHECKPOINT_VERSION = 1

DiffEntry = tuple[int, MilnorBasisElement, int]  # (tau power, algebra term, target gen)


class RangeError(Exception):
    """Query outside the computed range."""


class CheckpointError(Exception):
    """Unreadable, corrupt, or incompatible checkpoint file."""


@dataclass(frozen=True)
class FreeModule:
    """One stage of the resolution: an ordered list of free generators."""

    generators: tuple[tuple[str, AlgDegree], ...]

    def __len__(self) -> int:
        return len(self.generators)


@dataclass
class SliceData:
    """Degree-t slice of a stage: cells, their rows, and a solver echelon."""

    cells: list[tuple[int, int, int]]  # (gen index, local basis index, weight)
    offsets: list[int]  # bit offset of each generator block
    rows: list[int]  # image of each cell over the cells of the stage below
    echelon: Echelon  # tracked, insertion in (weight, canonical) order
    order: list[int]  # cell indices in processing order


class ResolutionState:
    """A partially computed minimal resolution, extendable and persistable."""

    def __init__(self, spec: AlgebraSpec, stem_cap: int | None = None):
        if spec.is_motivic and stem_cap is not None:
            raise ValueError("stem caps are unsound for the motivic flavor")
        self.spec = spec
        self.stem_cap = stem_cap
        self.gens: list[list[AlgDegree]] = [[AlgDegree(0, 0)]]
        self.diffs: list[list[tuple[DiffEntry, ...]]] = [[()]]
        self.f_done = 0
        self.t_done = 0
        self._slice_cache: dict[tuple[int, int], SliceData] = {}

    # -- bookkeeping -------------------------------------------------------

    @property
    def max_f(self) -> int:
        return self.f_done

    @property
    def max_t(self) -> int:
        return self.t_done

    def stage(self, s: int) -> FreeModule:
        return FreeModule(
            tuple((self.gen_id(s, i), d) for i, d in enumerate(self.gens[s]))
        )

    def gen_id(self, s: int, i: int) -> str:
        d = self.gens[s][i]
        k = sum(1 for j in range(i) if self.gens[s][j].t == d.t)
        return f"s{s}t{d.t}n{k}"

    def gens_at(self, s: int, t: int) -> list[int]:
        if s >= len(self.gens):
            return []
        return [i for i, d in enumerate(self.gens[s]) if d.t == t]

    def in_range(self, f: int, t: int) -> bool:
        if f > self.f_done or t > self.t_done or t < 0 or f < 0:
            return False
        if self.stem_cap is not None and t - f > self.stem_cap:
            return False
        return True

    def _gen_allowed(self, s: int, t: int) -> bool:
        return self.stem_cap is None or t - s <= self.stem_cap

    # -- slices ------------------------------------------------------------

    def cells(self, s: int, t: int) -> tuple[list[tuple[int, int, int]], list[int]]:
        """Canonical cell list of stage s in degree t, plus block offsets."""
        out: list[tuple[int, int, int]] = []
        offsets: list[int] = []
        pos = 0
        for g_idx, d in enumerate(self.gens[s]):
            offsets.append(pos)
            if d.t > t:
                continue
            for b_local, b in enumerate(basis(self.spec, t - d.t)):
                out.append((g_idx, b_local, d.w + b.degree(self.spec).w))
                pos += 1
        return out, offsets

    def cell_row(self, s: int, t: int, g_idx: int, b_local: int, tgt_offsets: list[int]) -> int:
        """Image of cell (basis[b_local] * gen g_idx) over stage s-1 cells."""
        d = self.gens[s][g_idx]
        tb = t - d.t
        row = 0
        for _, a, j in self.diffs[s][g_idx]:
            row ^= lmult_table(self.spec, tb, a)[b_local] << tgt_offsets[j]
        return row

    def slice_data(self, s: int, t: int) -> SliceData:
        """Rows and solver echelon for the degree-t slice of d_s (cached)."""
        key = (s, t)
        cached = self._slice_cache.get(key)
        if cached is not None:
            return cached
        cells, offsets = self.cells(s, t)
        _, tgt_offsets = self.cells(s - 1, t) if s > 0 else ([], [])
        rows = []
        for g_idx, b_local, _ in cells:
            if s == 0:
                rows.append(0)
            else:
                rows.append(self.cell_row(s, t, g_idx, b_local, tgt_offsets))
        order = sorted(range(len(cells)), key=lambda i: (cells[i][2], i))
        ech = Echelon(track=True)
        for i in order:
            ech.insert(rows[i], tag=i, weight=cells[i][2])
        data = SliceData(cells, offsets, rows, ech, order)
        self._slice_cache[key] = data
        return data

    # -- construction ------------------------------------------------------

    def extend(self, max_f: int, max_t: int, progress=None) -> "ResolutionState":
        """Grow the resolution to the requested rectangle (in place)."""
        if max_f < self.f_done or max_t < self.t_done:
            raise ValueError("resolutions only extend, never shrink")
        while len(self.gens) <= max_f:
            self.gens.append([])
            self.diffs.append([])
        if max_f > self.f_done and self.t_done > 0:
            for t in range(self.t_done + 1):
                self._process_degree(t, self.f_done, max_f)
        self.f_done = max_f
        for t in range(self.t_done + 1, max_t + 1):
            self._process_degree(t, 0, max_f)
            self.t_done = t
            if progress is not None:
                progress(t, max_t)
        self.t_done = max_t
        self._slice_cache.clear()
        return self

    def _process_degree(self, t: int, f_known: int, max_f: int):
        """Create all generators in internal degree t for stages up to max_f.

        Stages <= f_known are already complete in this degree; the kernel of
        d_(f_known) is recomputed to seed the first new stage.  With a stem
        cap, stages below t - cap - 1 are skipped entirely: no generators
        live there, and over a field the kernel in degree t never involves
        unit coefficients of same-degree generators, so seeding the chain at
        stage t - cap - 1 is sound.
        """
        s_floor = 0
        if self.stem_cap is not None:
            s_floor = max(0, t - self.stem_cap - 1)
        start = max(f_known, s_floor)
        ker_prev: list[tuple[int, int]] = []  # (support over lower-stage cells, weight)
        have_kernel = False
        for s in range(start, max_f + 1):
            if s == 0:
                if t > 0:
                    cells0, _ = self.cells(0, t)
                    ker_prev = [(1 << i, cells0[i][2]) for i in
                                sorted(range(len(cells0)), key=lambda i: (cells0[i][2], i))]
                    have_kernel = True
                continue

            cells, _ = self.cells(s, t)
            tgt_cells, tgt_offsets = self.cells(s - 1, t)
            rows = [self.cell_row(s, t, g, b, tgt_offsets) for g, b, _ in cells]

            if s > f_known and self._gen_allowed(s, t) and have_kernel:
                # Cover ker(d_(s-1))_t: images of existing cells first at each
                # weight, then kernel generators in discovery order.
                events: list[tuple[int, int, int]] = []
                for i, (_, _, w) in enumerate(cells):
                    events.append((w, 0, i))
                for n in range(len(ker_prev)):
                    events.append((ker_prev[n][1], 1, n))
                events.sort()
                cover = Echelon()
                new_gens: list[tuple[int, int]] = []
                for w, kind, idx in events:
                    if kind == 0:
                        cover.insert(rows[idx])
                    elif cover.insert(ker_prev[idx][0]) is None:
                        new_gens.append((ker_prev[idx][0], w))
                # Insertion order: weight descending within an internal
                # degree, kernel discovery order breaking ties.
                new_gens.sort(key=lambda g: -g[1])
                for kvec, w in new_gens:
                    entries = self._decode_kernel_vector(kvec, w, tgt_cells, s - 1, t)
                    g_idx = len(self.gens[s])
                    self.gens[s].append(AlgDegree(t, w))
                    self.diffs[s].append(entries)
                    # The new unit cell's image is the kernel vector itself.
                    cells.append((g_idx, 0, w))
                    rows.append(kvec)

            if s >= max_f or not self._gen_allowed(s + 1, t):
                break
            ech = Echelon(track=True)
            kernel: list[tuple[int, int]] = []
            for i in sorted(range(len(cells)), key=lambda i: (cells[i][2], i)):
                comb = ech.insert(rows[i], tag=i, weight=cells[i][2])
                if comb is not None:
                    kernel.append((comb, cells[i][2]))
            ker_prev = kernel
            have_kernel = True

    def _decode_kernel_vector(
        self, kvec: int, w: int, tgt_cells: list[tuple[int, int, int]], s_tgt: int, t: int
    ) -> tuple[DiffEntry, ...]:
        entries: list[DiffEntry] = []
        v = kvec
        while v:
            pos = (v & -v).bit_length() - 1
            v &= v - 1
            g_idx, b_local, w_cell = tgt_cells[pos]
            a = basis(self.spec, t - self.gens[s_tgt][g_idx].t)[b_local]
            k = w - w_cell
            if k < 0:
                raise AssertionError("kernel vector above its own weight")
            if a == IDENTITY and k == 0:
                raise AssertionError("minimality violated: unit coefficient")
            entries.append((k, a, g_idx))
        entries.sort(key=lambda e: (e[2], e[1].e, e[1].r, e[0]))
        return tuple(entries)

    # -- solving and verification ------------------------------------------

    def solve(self, s: int, t: int, target: int, wmax: int | None = None) -> int | None:
        """A cell combination x of stage s, degree t, weight <= wmax slots,
        with d_s(x) = target (over stage s-1 cells); None if unsolvable."""
        data = self.slice_data(s, t)
        residual, comb = data.echelon.reduce(target, 0, wmax=wmax)
        if residual:
            return None
        return comb

    def apply_differential(self, s: int, t: int, support: int) -> int:
        """d_s applied to a cell-supported vector, as stage s-1 cell support."""
        data = self.slice_data(s, t)
        out = 0
        v = support
        while v:
            pos = (v & -v).bit_length() - 1
            v &= v - 1
            out ^= data.rows[pos]
        return out

    def verify_dd_zero(self) -> bool:
        """Symbolic check d_(s-1) . d_s = 0 on every computed generator."""
        for s in range(2, len(self.gens)):
            for g_idx, d in enumerate(self.gens[s]):
                tgt_cells, tgt_offsets = self.cells(s - 1, d.t)
                vec = self.cell_row(s, d.t, g_idx, 0, tgt_offsets)
                if self.apply_differential(s - 1, d.t, vec):
                    return False
        return True

    def verify_minimality(self) -> bool:
        """Differentials land in the augmentation ideal (tau included)."""
        for s in range(1, len(self.gens)):
            for entries in self.diffs[s]:
                for k, a, _ in entries:
                    if a == IDENTITY and (k == 0 or not self.spec.is_motivic):
                        return False
        return True

    # -- persistence --------------------------------------------------------

    def _payload(self) -> dict:
        return {
            "format": CHECKPOINT_FORMAT,
            "version": CHECKPOINT_VERSION,
            "algebra": self.spec.name,
            "stem_cap": self.stem_cap,
            "f_done": self.f_done,
            "t_done": self.t_done,
            "stages": [
                {
                    "generators": [[d.t, d.w] for d in stage_gens],
                    "differentials": [
                        [[k, a.e, list(a.r), j] for k, a, j in entries]
                        for entries in self.diffs[s]
                    ],
                }
                for s, stage_gens in enumerate(self.gens)
            ],
        }

    def save(self, path) -> None:
        payload = self._payload()
        body = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        digest = hashlib.sha256(body.encode()).hexdigest()
        doc = json.dumps({"checksum": digest, "payload": payload},
                         sort_keys=True, separators=(",", ":"))
        with gzip.open(path, "wb", mtime=0) as fh:
            fh.write(doc.encode())

    @classmethod
    def load(cls, path) -> "ResolutionState":
        try:
            with gzip.open(path, "rb") as fh:
                doc = json.loads(fh.read().decode())
        except (OSError, EOFError, ValueError) as exc:
            raise CheckpointError(f"unreadable checkpoint {path}: {exc}") from exc
        if not isinstance(doc, dict) or "payload" not in doc or "checksum" not in doc:
            raise CheckpointError(f"malformed checkpoint {path}")
        payload = doc["payload"]
        body = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        if hashlib.sha256(body.encode()).hexdigest() != doc["checksum"]:
            raise CheckpointError(f"checksum mismatch in {path}")
        if payload.get("format") != CHECKPOINT_FORMAT:
            raise CheckpointError(f"not a resolution checkpoint: {path}")
        if payload.get("version") != CHECKPOINT_VERSION:
            raise CheckpointError(
                f"checkpoint version {payload.get('version')} unsupported"
            )
        state = cls(AlgebraSpec.from_name(payload["algebra"]), payload["stem_cap"])
        state.gens = []
        state.diffs = []
        for stage in payload["stages"]:
            state.gens.append([AlgDegree(t, w) for t, w in stage["generators"]])
            state.diffs.append([
                tuple((k, MilnorBasisElement(e, tuple(r)), j) for k, e, r, j in entries)
                for entries in stage["differentials"]
            ])
        state.f_done = payload["f_done"]
        state.t_done = payload["t_done"]
        return state

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ResolutionState)
            and self.spec == other.spec
            and self.stem_cap == other.stem_cap
            and self.gens == other.gens
            and self.diffs == other.diffs
            and (self.f_done, self.t_done) == (other.f_done, other.t_done)
        )


def resolve(spec: AlgebraSpec, max_f: int, max_t: int,
            stem_cap: int | None = None, progress=None) -> ResolutionState:
    """Compute a minimal resolution of the ground module from scratch."""
    state = ResolutionState(spec, stem_cap)
    state.extend(max_f, max_t, progress=progress)
    return state


def extend_resolution(state: ResolutionState, max_f: int, max_t: int) -> ResolutionState:
    """Spec-surface alias for in-place extension."""
    return state.extend(max_f, max_t)
