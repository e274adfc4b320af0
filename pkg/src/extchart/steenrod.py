"""Milnor-basis models of the mod-2 Steenrod algebra.

Four algebras are supported: the classical algebra over F2, the C-motivic
algebra over F2[tau], and their A(2) subalgebras (generated by Sq^1, Sq^2,
Sq^4).  Elements are F2[tau]-linear combinations of Milnor basis symbols
Q(E)P(R) (classical flavor: Sq(R), empty E).

Multiplication is defined by dualizing the coproduct of the dual Hopf
algebra: <a*b, m> = <a (x) b, psi(m)> over reduced monomials m.  Two fast
paths implement the same product: classical Milnor matrices, and, for the
motivic flavor, transport through the weight-forgetting bijection
Q(E)P(R) <-> Sq(2R + 1_E) onto the classical algebra with tau-powers
reinstated from weight homogeneity.  The dual-pairing route stays the
source of truth; the fast paths are checked against it in the test suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .grading import AlgDegree
from .taulin import TauPoly

DEGREE_BOUND = 120


class DegreeOverflowError(Exception):
    """Requested degree exceeds the run-scoped bound."""


def _check_degree(t: int):
    if t > DEGREE_BOUND:
        raise DegreeOverflowError(f"internal degree {t} exceeds bound {DEGREE_BOUND}")


@dataclass(frozen=True, order=True)
class AlgebraSpec:
    """Which Steenrod algebra: flavor (classical/motivic) and profile."""

    flavor: str
    profile: str = "full"

    def __post_init__(self):
        if self.flavor not in ("classical", "motivic"):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if self.profile not in ("full", "a2"):
            raise ValueError(f"unknown profile {self.profile!r}")

    @property
    def is_motivic(self) -> bool:
        return self.flavor == "motivic"

    @property
    def name(self) -> str:
        return self.flavor if self.profile == "full" else f"a2-{self.flavor}"

    @classmethod
    def from_name(cls, name: str) -> "AlgebraSpec":
        table = {
            "classical": cls("classical"),
            "motivic": cls("motivic"),
            "a2-classical": cls("classical", "a2"),
            "a2-motivic": cls("motivic", "a2"),
        }
        if name not in table:
            raise ValueError(f"unknown algebra {name!r}; choose from {sorted(table)}")
        return table[name]

    def xi_cap(self, i: int) -> int:
        """Exclusive upper bound for the exponent of xi_i (dual side)."""
        if self.profile == "full":
            return 1 << 62
        top = 3 if self.flavor == "classical" else 2
        return 1 << max(0, top - i + 1) if i <= top else 1

    def tau_allowed_mask(self) -> int:
        if self.flavor == "classical":
            return 0
        return 0b111 if self.profile == "a2" else (1 << 62) - 1

    def xi_t(self, i: int) -> int:
        return (1 << (i + 1)) - 2 if self.is_motivic else (1 << i) - 1

    @staticmethod
    def xi_w(i: int) -> int:
        return (1 << i) - 1

    @staticmethod
    def tau_t(i: int) -> int:
        return (1 << (i + 1)) - 1

    @staticmethod
    def tau_w(i: int) -> int:
        return (1 << i) - 1


def _strip(r: tuple[int, ...]) -> tuple[int, ...]:
    n = len(r)
    while n and r[n - 1] == 0:
        n -= 1
    return r[:n]


@dataclass(frozen=True, order=True)
class MilnorBasisElement:
    """Q(E)P(R) with E a bitmask of Q-indices and R the P-exponent tuple.

    Classical flavor: E is empty and the element is Sq(R).  Trailing zeros
    of R are normalized away; the identity is Q()P() = Sq().
    """

    e: int = 0
    r: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "r", _strip(self.r))
        if self.e < 0 or any(x < 0 for x in self.r):
            raise ValueError("negative Milnor data")

    @property
    def is_identity(self) -> bool:
        return self.e == 0 and not self.r

    def degree(self, spec: AlgebraSpec) -> AlgDegree:
        t = w = 0
        e = self.e
        i = 0
        while e:
            if e & 1:
                t += spec.tau_t(i)
                w += spec.tau_w(i)
            e >>= 1
            i += 1
        for i, ri in enumerate(self.r, start=1):
            t += ri * spec.xi_t(i)
            w += ri * spec.xi_w(i)
        if not spec.is_motivic:
            w = 0
        return AlgDegree(t, w)

    def in_profile(self, spec: AlgebraSpec) -> bool:
        if self.e & ~spec.tau_allowed_mask():
            return False
        return all(ri < spec.xi_cap(i) for i, ri in enumerate(self.r, start=1))

    def __repr__(self) -> str:
        parts = [f"Q{i}" for i in range(self.e.bit_length()) if (self.e >> i) & 1]
        if self.r:
            parts.append("P(" + ",".join(map(str, self.r)) + ")")
        return "*".join(parts) if parts else "1"


SQ_ONE = MilnorBasisElement(0, (1,))
IDENTITY = MilnorBasisElement(0, ())


def to_classical_sq(m: MilnorBasisElement) -> MilnorBasisElement:
    """Weight-forgetting translation Q(E)P(R) -> Sq(2R + 1_E).

    Bijective on Milnor bases (also between A(2) profiles); it is the
    monomial-basis shadow of setting tau = 1, under which the motivic dual
    becomes the classical dual via tau_i -> xi_(i+1), xi_i -> xi_i^2.
    """
    n = max(len(m.r), m.e.bit_length())
    rbar = []
    for i in range(1, n + 1):
        ri = m.r[i - 1] if i <= len(m.r) else 0
        rbar.append(2 * ri + ((m.e >> (i - 1)) & 1))
    return MilnorBasisElement(0, tuple(rbar))


def from_classical_sq(m: MilnorBasisElement) -> MilnorBasisElement:
    """Inverse of to_classical_sq."""
    e = 0
    r = []
    for i, ri in enumerate(m.r, start=1):
        r.append(ri >> 1)
        if ri & 1:
            e |= 1 << (i - 1)
    return MilnorBasisElement(e, tuple(r))


# ---------------------------------------------------------------------------
# Basis enumeration


@lru_cache(maxsize=None)
def _p_parts(spec: AlgebraSpec, t: int, imax: int) -> tuple[tuple[int, ...], ...]:
    """All P-exponent tuples (r_1..r_imax) of internal degree t in profile."""
    if t == 0:
        return ((),)
    if t < 0 or imax == 0:
        return ()
    out = []
    deg = spec.xi_t(imax)
    if deg <= 0:
        return ()
    top = min((t // deg) + 1, spec.xi_cap(imax))
    for ri in range(top):
        for rest in _p_parts(spec, t - ri * deg, imax - 1):
            if ri == 0 and len(rest) < imax:
                out.append(rest)
            else:
                out.append(rest + (0,) * (imax - len(rest) - 1) + (ri,))
    return tuple(out)


@lru_cache(maxsize=None)
def basis(spec: AlgebraSpec, t: int, w: int | None = None) -> tuple[MilnorBasisElement, ...]:
    """All Milnor basis elements of internal degree t (optionally weight w),
    in the canonical (E bitmask, R) lexicographic order."""
    if t < 0:
        return ()
    _check_degree(t)
    out: list[MilnorBasisElement] = []
    if spec.is_motivic:
        allowed = spec.tau_allowed_mask()
        qmax = -1
        while spec.tau_t(qmax + 1) <= t:
            qmax += 1
        slots = [i for i in range(qmax + 1) if (allowed >> i) & 1]
        for pick in itertools.chain.from_iterable(
            itertools.combinations(slots, k) for k in range(len(slots) + 1)
        ):
            e = sum(1 << i for i in pick)
            te = sum(spec.tau_t(i) for i in pick)
            if te > t:
                continue
            imax = 1
            while spec.xi_t(imax + 1) <= t - te:
                imax += 1
            for r in _p_parts(spec, t - te, imax):
                out.append(MilnorBasisElement(e, r))
    else:
        imax = 1
        while spec.xi_t(imax + 1) <= t:
            imax += 1
        for r in _p_parts(spec, t, imax):
            out.append(MilnorBasisElement(0, r))
    if w is not None:
        out = [m for m in out if m.degree(spec).w == w]
    out.sort(key=lambda m: (m.e, m.r))
    return tuple(out)


@lru_cache(maxsize=None)
def basis_index(spec: AlgebraSpec, t: int) -> dict[MilnorBasisElement, int]:
    return {m: i for i, m in enumerate(basis(spec, t))}


# ---------------------------------------------------------------------------
# Dual Hopf algebra: monomials and the coproduct


@dataclass(frozen=True, order=True)
class DualMonomial:
    """Monomial xi^xi_exps * tau(tau_mask) in the dual algebra, reduced so
    every tau_i exponent is at most 1 (tau_i^2 = tau * xi_(i+1))."""

    xi: tuple[int, ...] = ()
    tau: int = 0

    def __post_init__(self):
        object.__setattr__(self, "xi", _strip(self.xi))

    @property
    def is_one(self) -> bool:
        return not self.xi and self.tau == 0

    def degree(self, spec: AlgebraSpec) -> AlgDegree:
        return MilnorBasisElement(self.tau, self.xi).degree(spec)

    def to_milnor(self) -> MilnorBasisElement:
        return MilnorBasisElement(self.tau, self.xi)

    @classmethod
    def from_milnor(cls, m: MilnorBasisElement) -> "DualMonomial":
        return cls(m.r, m.e)


DUAL_ONE = DualMonomial()


def _mono_mul(spec: AlgebraSpec, a: DualMonomial, b: DualMonomial) -> tuple[int, DualMonomial] | None:
    """Product of reduced monomials: (tau power, reduced monomial), or None
    when a profile cap kills the product."""
    n = max(len(a.xi), len(b.xi))
    xi = [ (a.xi[i] if i < len(a.xi) else 0) + (b.xi[i] if i < len(b.xi) else 0) for i in range(n) ]
    k = 0
    common = a.tau & b.tau
    tau = a.tau ^ b.tau
    i = 0
    cm = common
    while cm:
        if cm & 1:
            k += 1
            j = i + 1  # tau_i^2 = tau * xi_(i+1)
            while len(xi) < j:
                xi.append(0)
            xi[j - 1] += 1
        cm >>= 1
        i += 1
    for idx, exp in enumerate(xi, start=1):
        if exp >= spec.xi_cap(idx):
            return None
    if tau & ~spec.tau_allowed_mask():
        return None
    return k, DualMonomial(tuple(xi), tau)


CoproductTerm = tuple[int, DualMonomial, DualMonomial]


@lru_cache(maxsize=None)
def _psi_xi(spec: AlgebraSpec, n: int) -> tuple[CoproductTerm, ...]:
    terms = []
    for i in range(n + 1):
        left_exp = 1 << i
        left = DualMonomial(tuple([0] * (n - i - 1) + [left_exp]) if n - i > 0 else (), 0)
        if n - i > 0 and left_exp >= spec.xi_cap(n - i):
            continue
        right = DualMonomial(tuple([0] * (i - 1) + [1]) if i > 0 else (), 0)
        if i > 0 and 1 >= spec.xi_cap(i):
            continue
        terms.append((0, left, right))
    return tuple(terms)


@lru_cache(maxsize=None)
def _psi_tau(spec: AlgebraSpec, n: int) -> tuple[CoproductTerm, ...]:
    allowed = spec.tau_allowed_mask()
    terms = []
    if (1 << n) & allowed:
        terms.append((0, DualMonomial((), 1 << n), DUAL_ONE))
    for i in range(n + 1):
        if not ((1 << i) & allowed):
            continue
        left_exp = 1 << i
        if n - i > 0 and left_exp >= spec.xi_cap(n - i):
            continue
        left = DualMonomial(tuple([0] * (n - i - 1) + [left_exp]) if n - i > 0 else (), 0)
        right = DualMonomial((), 1 << i)
        terms.append((0, left, right))
    return tuple(terms)


def _tensor_mul(spec: AlgebraSpec, terms: dict, gen_terms: tuple[CoproductTerm, ...]) -> dict:
    out: dict[tuple[DualMonomial, DualMonomial], int] = {}
    for (m1, m2), k in terms.items():
        for kg, g1, g2 in gen_terms:
            p1 = _mono_mul(spec, m1, g1)
            if p1 is None:
                continue
            p2 = _mono_mul(spec, m2, g2)
            if p2 is None:
                continue
            k1, n1 = p1
            k2, n2 = p2
            key = (n1, n2)
            ktot = k + kg + k1 + k2
            if key in out:
                if out[key] != ktot:
                    raise AssertionError("inhomogeneous coproduct accumulation")
                del out[key]  # F2 cancellation
            else:
                out[key] = ktot
    return out


@lru_cache(maxsize=None)
def coproduct(m: DualMonomial, spec: AlgebraSpec = AlgebraSpec("motivic")) -> tuple[CoproductTerm, ...]:
    """Full coproduct of a reduced dual monomial, as (tau power, left, right)
    terms with F2 coefficients."""
    if m.is_one:
        return ((0, DUAL_ONE, DUAL_ONE),)
    if m.tau:
        i = (m.tau & -m.tau).bit_length() - 1
        rest = DualMonomial(m.xi, m.tau & (m.tau - 1))
        gen_terms = _psi_tau(spec, i)
    else:
        i = next(idx for idx, e in enumerate(m.xi, start=1) if e > 0)
        xi = list(m.xi)
        xi[i - 1] -= 1
        rest = DualMonomial(tuple(xi), 0)
        gen_terms = _psi_xi(spec, i)
    acc = {(t[1], t[2]): t[0] for t in coproduct(rest, spec)}
    out = _tensor_mul(spec, acc, gen_terms)
    return tuple(sorted((k, a, b) for (a, b), k in out.items()))


# ---------------------------------------------------------------------------
# Elements and multiplication


class AlgebraElement:
    """F2[tau]-linear combination of Milnor basis elements."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms: dict[MilnorBasisElement, TauPoly] | None = None):
        self.spec = spec
        self.terms: dict[MilnorBasisElement, TauPoly] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = c

    @classmethod
    def monomial(cls, spec: AlgebraSpec, m: MilnorBasisElement, tau_power: int = 0) -> "AlgebraElement":
        return cls(spec, {m: TauPoly.monomial(tau_power)})

    @classmethod
    def unit(cls, spec: AlgebraSpec) -> "AlgebraElement":
        return cls.monomial(spec, IDENTITY)

    @classmethod
    def zero(cls, spec: AlgebraSpec) -> "AlgebraElement":
        return cls(spec)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and self.spec == other.spec and self.terms == other.terms

    def __hash__(self):
        return hash((self.spec, tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, TauPoly.zero()) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return AlgebraElement(self.spec, out)

    def tau_times(self, k: int = 1) -> "AlgebraElement":
        return AlgebraElement(self.spec, {m: c.shift(k) for m, c in self.terms.items()})

    def degree(self) -> AlgDegree | None:
        """Common (t, w) of all terms, or None for 0; raises if mixed."""
        deg = None
        for m, c in self.terms.items():
            base = m.degree(self.spec)
            for k in c.exponents:
                d = AlgDegree(base.t, base.w + k) if self.spec.is_motivic else AlgDegree(base.t, 0)
                if deg is None:
                    deg = d
                elif deg != d:
                    raise ValueError(f"inhomogeneous element: {deg} vs {d}")
        return deg

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=lambda m: (m.e, m.r)):
            c = self.terms[m]
            bits.append(f"({c})*{m}" if c.exponents != {0} else f"{m}")
        return " + ".join(bits)


def _multinomial_odd(parts: list[int]) -> bool:
    total = 0
    for x in parts:
        if total & x:
            return False
        total |= x
    return True


@lru_cache(maxsize=None)
def _milnor_product_classical(r: tuple[int, ...], s: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Classical Milnor basis product Sq(r) * Sq(s) as a tuple of result
    exponent tuples (F2 coefficients; each tuple appears iff its coefficient
    is 1)."""
    if not r:
        return (s,)
    if not s:
        return (r,)
    m, n = len(r), len(s)
    results: set[tuple[int, ...]] = set()

    # x[i][j] for i in 1..m, j in 1..n; row remainders go to column 0 and
    # column remainders to row 0.
    def rec(i: int, j: int, rem_r: list[int], rem_s: list[int], cells: dict):
        if i > m:
            diag_len = m + n
            diags = [[] for _ in range(diag_len + 1)]
            for jj in range(1, n + 1):
                diags[jj].append(rem_s[jj])
            for ii in range(1, m + 1):
                diags[ii].append(rem_r[ii])
            for (ii, jj), x in cells.items():
                diags[ii + jj].append(x)
            t = []
            ok = True
            for d in range(1, diag_len + 1):
                parts = diags[d]
                if not _multinomial_odd(parts):
                    ok = False
                    break
                t.append(sum(parts))
            if ok:
                tt = _strip(tuple(t))
                results.symmetric_difference_update({tt})
            return
        ni, nj = (i, j + 1) if j < n else (i + 1, 1)
        step = 1 << j
        top = min(rem_r[i] // step, rem_s[j])
        for x in range(top + 1):
            if x:
                rem_r[i] -= step
                rem_s[j] -= 1
                cells[(i, j)] = x
            rec(ni, nj, rem_r, rem_s, cells)
        rem_r[i] += top * step
        rem_s[j] += top
        cells.pop((i, j), None)

    rec(1, 1, [0] + list(r), [0] + list(s), {})
    return tuple(sorted(results))


def multiply_classical_fast(a: MilnorBasisElement, b: MilnorBasisElement) -> tuple[MilnorBasisElement, ...]:
    if a.e or b.e:
        raise ValueError("classical fast path takes Sq(R) elements")
    return tuple(MilnorBasisElement(0, t) for t in _milnor_product_classical(a.r, b.r))


@lru_cache(maxsize=None)
def _basis_product(spec: AlgebraSpec, a: MilnorBasisElement, b: MilnorBasisElement) -> tuple[tuple[int, MilnorBasisElement], ...]:
    """a*b as ((tau power, basis element), ...) using the fast paths."""
    da, db = a.degree(spec), b.degree(spec)
    _check_degree(da.t + db.t)
    if spec.is_motivic:
        ca, cb = to_classical_sq(a), to_classical_sq(b)
        out = []
        for term in _milnor_product_classical(ca.r, cb.r):
            mot = from_classical_sq(MilnorBasisElement(0, term))
            if not mot.in_profile(spec):
                raise AssertionError(f"profile closure violated by {a}*{b} -> {mot}")
            k = da.w + db.w - mot.degree(spec).w
            if k < 0:
                raise AssertionError(f"negative tau power in {a}*{b}")
            out.append((k, mot))
        return tuple(sorted(out, key=lambda km: (km[1].e, km[1].r)))
    out = []
    for term in _milnor_product_classical(a.r, b.r):
        m = MilnorBasisElement(0, term)
        if not m.in_profile(spec):
            raise AssertionError(f"profile closure violated by {a}*{b} -> {m}")
        out.append((0, m))
    return tuple(sorted(out, key=lambda km: (km[1].e, km[1].r)))


def multiply(spec: AlgebraSpec, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Bilinear product, fast paths (checked elsewhere against the pairing)."""
    acc: dict[MilnorBasisElement, TauPoly] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            coef = ca * cb
            for k, m in _basis_product(spec, ma, mb):
                cur = acc.get(m, TauPoly.zero()) + coef.shift(k)
                if cur:
                    acc[m] = cur
                else:
                    acc.pop(m, None)
    return AlgebraElement(spec, acc)


def multiply_pairing(spec: AlgebraSpec, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Normative product: structure constants from <a(x)b, psi(m)> over all
    reduced monomials m in the product degree."""
    acc: dict[MilnorBasisElement, TauPoly] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            da, db = ma.degree(spec), mb.degree(spec)
            _check_degree(da.t + db.t)
            coef = ca * cb
            dual_a, dual_b = DualMonomial.from_milnor(ma), DualMonomial.from_milnor(mb)
            for m in basis(spec, da.t + db.t):
                hits = [k for k, m1, m2 in coproduct(DualMonomial.from_milnor(m), spec)
                        if m1 == dual_a and m2 == dual_b]
                if len(hits) > 1:
                    raise AssertionError("duplicate coproduct term")
                for k in hits:
                    expected = da.w + db.w - m.degree(spec).w if spec.is_motivic else 0
                    if spec.is_motivic and k != expected:
                        raise AssertionError("pairing tau power disagrees with weights")
                    cur = acc.get(m, TauPoly.zero()) + coef.shift(k)
                    if cur:
                        acc[m] = cur
                    else:
                        acc.pop(m, None)
    return AlgebraElement(spec, acc)


# ---------------------------------------------------------------------------
# Left-multiplication tables for the resolution engine


@lru_cache(maxsize=None)
def lmult_table(spec: AlgebraSpec, d1: int, a: MilnorBasisElement) -> tuple[int, ...]:
    """Bitmask rows of right multiplication by a: entry [i] is the support of
    basis(d1)[i] * a over basis(d1 + t_a), tau powers implied by weights."""
    ta = a.degree(spec).t
    idx = basis_index(spec, d1 + ta)
    rows = []
    for b in basis(spec, d1):
        bits = 0
        for _, m in _basis_product(spec, b, a):
            bits |= 1 << idx[m]
        rows.append(bits)
    return tuple(rows)


@lru_cache(maxsize=None)
def rmult_table(spec: AlgebraSpec, d1: int, a: MilnorBasisElement) -> tuple[int, ...]:
    """Bitmask rows of left multiplication by a: entry [i] is the support of
    a * basis(d1)[i] over basis(d1 + t_a)."""
    ta = a.degree(spec).t
    idx = basis_index(spec, d1 + ta)
    rows = []
    for b in basis(spec, d1):
        bits = 0
        for _, m in _basis_product(spec, a, b):
            bits |= 1 << idx[m]
        rows.append(bits)
    return tuple(rows)
