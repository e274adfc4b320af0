"""Tri-graded degree arithmetic for Ext charts.

Ext classes are graded by (stem, Adams filtration, motivic weight); algebra
elements by (internal degree, weight) with internal degree t = s + f.
Classical objects ignore the weight slot.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class TriDegree:
    """Degree (s, f, w) of an Ext class: stem, filtration, weight."""

    s: int
    f: int
    w: int = 0

    def __post_init__(self):
        if self.f < 0:
            raise ValueError(f"filtration must be non-negative, got {self.f}")

    def __add__(self, other: "TriDegree") -> "TriDegree":
        return TriDegree(self.s + other.s, self.f + other.f, self.w + other.w)

    def scale(self, k: int) -> "TriDegree":
        return TriDegree(k * self.s, k * self.f, k * self.w)

    @property
    def t(self) -> int:
        """Internal degree of the corresponding cocycle."""
        return self.s + self.f

    def tau_shift(self, k: int = 1) -> "TriDegree":
        """Degree of tau^k times a class in this degree."""
        return TriDegree(self.s, self.f, self.w - k)


@dataclass(frozen=True, order=True)
class AlgDegree:
    """Degree (t, w) of a homogeneous algebra or module element."""

    t: int
    w: int = 0

    def __post_init__(self):
        if self.t < 0:
            raise ValueError(f"internal degree must be non-negative, got {self.t}")

    def __add__(self, other: "AlgDegree") -> "AlgDegree":
        return AlgDegree(self.t + other.t, self.w + other.w)


def chow_degree(d: TriDegree) -> int:
    """Chow degree s + f - 2w."""
    return d.s + d.f - 2 * d.w


def v1_intercept(s: int, f: int) -> int:
    """x-intercept s - 2f of the slope-1/2 line through (s, f) on an Adams
    chart."""
    return s - 2 * f


def ext_degree(f: int, alg: AlgDegree) -> TriDegree:
    """Tridegree of the Ext class dual to a stage-f generator in degree alg."""
    return TriDegree(alg.t - f, f, alg.w)
