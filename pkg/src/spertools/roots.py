"""Binomial roots of a weighted valuation, generalized monomials and
standard forms.

A complexity-one root is an irreducible binomial u^a - lam*u^b whose two
monomials have equal weighted degree.  Writing the lex-smaller exponent
vector first, the left side never involves u1, which sorts every root into
one of three shapes by which of u2, u3 appear on the left:

  shape A:  u2^b u3^c - lam * u1^a      (b, c >= 1; minimize a)
  shape B:  u2^b - lam * u1^a u3^c      (a >= 1, c >= 0; minimize b)
  shape C:  u3^c - lam * u1^a u2^b      (a, b >= 0, a+b >= 1; minimize c)

classify_roots finds the minimal representative of each nonempty shape in
the relation lattice {m : w.m = 0} by bounded search, with exact
number-theoretic backstops so that a minimum beyond the search bound is an
error rather than a silent wrong answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .core import (
    GenSeries,
    GroupVec,
    Poly,
    Rat,
    ValOrInf,
    is_infinite,
    rat,
)
from .curvette import (
    SemiCurvette,
    Weights,
    evaluate,
    initial_coeff,
    monomial_value,
    value,
)


class ExponentBoundError(ValueError):
    """A shape's minimal binomial lies beyond the configured search bound."""


@dataclass(frozen=True)
class BinomialRoot:
    """u^plus - lam * u^minus with disjoint monomial supports."""

    plus: tuple[int, ...]
    minus: tuple[int, ...]
    lam: Fraction = Fraction(1)

    def __init__(self, plus: Sequence[int], minus: Sequence[int],
                 lam: Fraction | int | str = 1,
                 weights: Optional[Weights] = None):
        plus = tuple(int(x) for x in plus)
        minus = tuple(int(x) for x in minus)
        if len(plus) != len(minus):
            raise ValueError("exponent vectors have different arities")
        if any(x < 0 for x in plus + minus):
            raise ValueError("root exponents must be non-negative")
        if plus == minus:
            raise ValueError("the two monomials coincide")
        if any(p and m for p, m in zip(plus, minus)):
            raise ValueError("monomial supports must be disjoint")
        lam = rat(lam)
        if lam == 0:
            raise ValueError("lam must be nonzero")
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)
        object.__setattr__(self, "lam", lam)
        if weights is not None and weights.of_exponent(plus) != weights.of_exponent(minus):
            raise ValueError("binomial is not quasi-homogeneous for the weights")

    @property
    def nvars(self) -> int:
        return len(self.plus)

    @property
    def diff(self) -> tuple[int, ...]:
        return tuple(p - m for p, m in zip(self.plus, self.minus))

    def as_poly(self) -> Poly:
        return Poly(self.nvars, {self.plus: Fraction(1), self.minus: -self.lam})

    def __repr__(self) -> str:
        def mono(e: tuple[int, ...]) -> str:
            s = "*".join(f"u{i + 1}^{x}" for i, x in enumerate(e) if x)
            return s or "1"
        lam = "" if self.lam == 1 else f"{self.lam}*"
        return f"{mono(self.plus)} - {lam}{mono(self.minus)}"


def normalize_root(q: BinomialRoot) -> tuple[tuple[int, ...], Fraction]:
    """Laurent form of the root divided by its subtracted monomial: the
    exponent difference plus - minus together with the constant lam."""
    return q.diff, q.lam


def qprime_value(q: BinomialRoot, delta: SemiCurvette) -> ValOrInf:
    """Excess of the root's value over its monomial degree along delta."""
    v = value(q.as_poly(), delta)
    if is_infinite(v):
        return v
    base = delta.variable_values().of_exponent(q.minus)
    return v - base


def qprime_initial(q: BinomialRoot, delta: SemiCurvette) -> Fraction:
    """Initial coefficient of the normalized root along delta."""
    num = initial_coeff(q.as_poly(), delta)
    den = Fraction(1)
    for qidx, e in enumerate(q.minus):
        if e:
            den *= delta.entries[qidx].leading()[1] ** e
    return num / den


# ---------------------------------------------------------------------------
# Classification from weights
# ---------------------------------------------------------------------------

def _weight_rows(w: Weights) -> list[tuple[Fraction, ...]]:
    """Rows of the k x n matrix whose kernel is the relation lattice."""
    return [tuple(w[q].coords[i] for q in range(w.n)) for i in range(w.rank)]


def _row_space_basis(rows: list[tuple[Fraction, ...]]) -> list[tuple[Fraction, ...]]:
    """Gaussian elimination over Q; returns independent rows in echelon form."""
    basis: list[list[Fraction]] = []
    for row in rows:
        cur = list(row)
        for b in basis:
            piv = next(i for i, x in enumerate(b) if x != 0)
            if cur[piv] != 0:
                f = cur[piv] / b[piv]
                cur = [x - f * y for x, y in zip(cur, b)]
        if any(x != 0 for x in cur):
            basis.append(cur)
    return [tuple(b) for b in basis]


def _primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    den = math.lcm(*(f.denominator for f in vec))
    ints = [int(f * den) for f in vec]
    g = math.gcd(*(abs(x) for x in ints))
    return tuple(x // g for x in ints) if g else tuple(ints)


@dataclass(frozen=True)
class _Candidate:
    shape: str                  # "A", "B" or "C"
    pivot: int
    plus: tuple[int, ...]
    minus: tuple[int, ...]

    @property
    def sort_key(self) -> tuple:
        return (self.pivot, self.minus, self.plus)


def _canonical(m: tuple[int, ...]) -> Optional[_Candidate]:
    """Split a nonzero lattice vector into a normalized candidate, with the
    lex-smaller exponent vector on the plus side."""
    plus = tuple(max(x, 0) for x in m)
    minus = tuple(max(-x, 0) for x in m)
    if minus < plus:
        plus, minus = minus, plus
    if plus == minus:
        return None
    if plus[0] != 0:
        # both sides involve u1: impossible for disjoint supports
        return None
    if plus[1] and plus[2]:
        return _Candidate("A", minus[0], plus, minus)
    if plus[1]:
        if minus[0] == 0:
            return None  # u1-free vector oriented the wrong way
        return _Candidate("B", plus[1], plus, minus)
    if plus[2]:
        return _Candidate("C", plus[2], plus, minus)
    return None


def _diophantine_reachable(a: int, b: int, c: int, xmin: int, ymin: int) -> bool:
    """Whether a*x + b*y = c has an integer solution with x>=xmin, y>=ymin."""
    g = math.gcd(abs(a), abs(b))
    if g == 0:
        return c == 0
    if c % g:
        return False
    # particular solution via extended gcd
    x0, y0 = _ext_gcd(a, b)
    x0 *= c // g
    y0 *= c // g
    da, db = a // g, b // g
    # general solution: x = x0 + db*t, y = y0 - da*t
    lo, hi = None, None

    def bound(coef: int, base: int, minimum: int) -> tuple[Optional[int], Optional[int]]:
        # base + coef*t >= minimum
        if coef > 0:
            return math.ceil(Fraction(minimum - base, coef)), None
        return None, math.floor(Fraction(minimum - base, coef))

    for coef, base, minimum in ((db, x0, xmin), (-da, y0, ymin)):
        l, h = bound(coef, base, minimum)
        if l is not None:
            lo = l if lo is None else max(lo, l)
        if h is not None:
            hi = h if hi is None else min(hi, h)
    if lo is None or hi is None:
        return True
    return lo <= hi


def _ext_gcd(a: int, b: int) -> tuple[int, int]:
    """Bezout coefficients (x, y) with a*x + b*y = gcd-with-signs."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_x, x = x, old_x - qt * x
        old_y, y = y, old_y - qt * y
    # old_r = gcd up to sign; fix signs so a*x + b*y = |gcd|
    if old_r < 0:
        old_x, old_y = -old_x, -old_y
    return old_x, old_y


def _shape_pivot_feasible(shape: str, p: int, r: tuple[int, int, int]) -> bool:
    """Exact test: does the full lattice contain a shape candidate with the
    given pivot exponent?  (r is the primitive relation row, r1 > 0.)"""
    r1, r2, r3 = r
    if shape == "A":     # r2*b + r3*c = r1*p, b,c >= 1
        return _diophantine_reachable(r2, r3, r1 * p, 1, 1)
    if shape == "B":     # r1*a + r3*c = r2*p, a >= 1, c >= 0
        return _diophantine_reachable(r1, r3, r2 * p, 1, 0)
    if shape == "C":     # r1*a + r2*b = r3*p, a,b >= 0 (a+b>=1 automatic)
        return _diophantine_reachable(r1, r2, r3 * p, 0, 0)
    raise ValueError(shape)


def _shape_cone_feasible(shape: str, r: tuple[int, int, int]) -> bool:
    """Whether the shape's sign cone meets the relation plane at all."""
    _, r2, r3 = r
    if shape == "A":
        return r2 > 0 or r3 > 0
    if shape == "B":
        return r2 > 0 or r3 < 0
    if shape == "C":
        return r3 > 0 or r2 < 0
    raise ValueError(shape)


def classify_roots(w: Weights, bound: int = 50) -> list[BinomialRoot]:
    """Minimal quasi-homogeneous binomials of the three shapes, lam = 1.

    Searches exponents up to the bound; a shape whose true minimum cannot be
    confirmed within the bound raises ExponentBoundError instead of silently
    returning a larger representative.
    """
    if w.n != 3:
        raise ValueError("classification needs exactly three variables")
    rows = _row_space_basis(_weight_rows(w))
    rk = len(rows)
    if rk == 0:
        raise ValueError("weights span no relation plane")
    if rk >= 3:
        return []

    best: dict[str, _Candidate] = {}

    if rk == 2:
        # one-dimensional kernel: the primitive cross product of the two rows
        (a1, a2, a3), (b1, b2, b3) = rows
        cross = (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
        gen = _primitive(cross)
        cand = _canonical(gen)
        if cand is None:
            cand = _canonical(tuple(-x for x in gen))
        if cand is None:
            return []
        if max(cand.plus + cand.minus) > bound:
            raise ExponentBoundError(
                f"minimal binomial {cand.plus}-{cand.minus} exceeds bound {bound}")
        best[cand.shape] = cand
    else:
        r = _primitive(rows[0])
        if r[0] < 0:
            r = tuple(-x for x in r)
        if any(x == 0 for x in r):
            # strictly positive weights force every coordinate to appear
            raise ValueError("degenerate relation row for positive weights")
        r1, r2, r3 = r
        for m2 in range(-bound, bound + 1):
            for m3 in range(-bound, bound + 1):
                num = -(r2 * m2 + r3 * m3)
                if num % r1:
                    continue
                m1 = num // r1
                if abs(m1) > bound or (m1 == 0 and m2 == 0 and m3 == 0):
                    continue
                cand = _canonical((m1, m2, m3))
                if cand is None:
                    continue
                cur = best.get(cand.shape)
                if cur is None or cand.sort_key < cur.sort_key:
                    best[cand.shape] = cand
        for shape in "ABC":
            found = best.get(shape)
            if found is None:
                if _shape_cone_feasible(shape, (r1, r2, r3)):
                    raise ExponentBoundError(
                        f"shape {shape} has a minimal binomial beyond bound {bound}")
                continue
            for p in range(1, found.pivot):
                if _shape_pivot_feasible(shape, p, (r1, r2, r3)):
                    raise ExponentBoundError(
                        f"shape {shape} minimum at pivot {p} exceeds bound {bound}")

    return [BinomialRoot(best[s].plus, best[s].minus, 1, weights=w)
            for s in "ABC" if s in best]


# ---------------------------------------------------------------------------
# Generalized monomials over a root system
# ---------------------------------------------------------------------------

class RootSystem:
    """Index space for generalized monomials: indices 0..n-1 are the ambient
    variables (complexity-zero roots), indices n.. address the binomials."""

    def __init__(self, n: int, weights: Weights, roots: Sequence[BinomialRoot] = ()):
        if weights.n != n:
            raise ValueError("weights arity mismatch")
        self.n = n
        self.weights = weights
        self.roots = tuple(roots)
        for q in self.roots:
            if q.nvars != n:
                raise ValueError("root arity mismatch")
        self._value_cache: dict[tuple[int, SemiCurvette], ValOrInf] = {}

    @property
    def size(self) -> int:
        return self.n + len(self.roots)

    def name(self, idx: int) -> str:
        return f"u{idx + 1}" if idx < self.n else f"Q{idx + 1}"

    def poly(self, idx: int) -> Poly:
        if idx < self.n:
            return Poly.variable(self.n, idx)
        return self.roots[idx - self.n].as_poly()

    def value_of(self, idx: int, delta: SemiCurvette) -> ValOrInf:
        key = (idx, delta)
        if key not in self._value_cache:
            self._value_cache[key] = value(self.poly(idx), delta)
        return self._value_cache[key]

    def monomial_value_of(self, idx: int) -> GroupVec:
        if idx < self.n:
            return self.weights[idx]
        v = monomial_value(self.poly(idx), self.weights)
        assert not is_infinite(v)
        return v


@dataclass(frozen=True)
class GenMonomial:
    """Finite product of roots, exponents keyed by root index.  Exponents are
    usually non-negative; negative entries mark Laurent rewrites and require
    a truncation order to evaluate."""

    exps: tuple[tuple[int, int], ...]

    def __init__(self, exps):
        if isinstance(exps, GenMonomial):
            pairs = exps.exps
        elif isinstance(exps, dict):
            pairs = tuple(sorted((int(i), int(e)) for i, e in exps.items() if e))
        else:
            pairs = tuple(sorted((int(i), int(e)) for i, e in exps if e))
        if any(i < 0 for i, _ in pairs):
            raise ValueError("negative root index")
        object.__setattr__(self, "exps", pairs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.exps)

    def exponent(self, idx: int) -> int:
        return dict(self.exps).get(idx, 0)

    def is_one(self) -> bool:
        return not self.exps

    def is_laurent(self) -> bool:
        return any(e < 0 for _, e in self.exps)

    def degree_vector(self, size: int) -> tuple[int, ...]:
        d = dict(self.exps)
        return tuple(d.get(i, 0) for i in range(size))

    def __mul__(self, other: "GenMonomial") -> "GenMonomial":
        d = dict(self.exps)
        for i, e in other.exps:
            d[i] = d.get(i, 0) + e
        return GenMonomial(d)

    def divide(self, idx: int, times: int = 1) -> "GenMonomial":
        d = dict(self.exps)
        d[idx] = d.get(idx, 0) - times
        return GenMonomial(d)

    def value_at(self, system: RootSystem, delta: SemiCurvette) -> ValOrInf:
        acc: ValOrInf = GroupVec.zero(delta.rank)
        for i, e in self.exps:
            v = system.value_of(i, delta)
            if is_infinite(v):
                return v
            acc = acc + v * e
        return acc

    def monomial_value_at(self, system: RootSystem) -> GroupVec:
        acc = GroupVec.zero(system.weights.rank)
        for i, e in self.exps:
            acc = acc + system.monomial_value_of(i) * e
        return acc

    def as_poly(self, system: RootSystem) -> Poly:
        if self.is_laurent():
            raise ValueError("Laurent generalized monomial has no polynomial form")
        p = Poly.const(system.n, 1)
        for i, e in self.exps:
            p = p * (system.poly(i) ** e)
        return p

    def evaluate(self, system: RootSystem, delta: SemiCurvette,
                 order: Optional[GroupVec] = None) -> GenSeries:
        from .core import div_truncated  # local to avoid cycle noise
        out = GenSeries.one(delta.rank)
        for i, e in self.exps:
            base = evaluate(system.poly(i), delta)
            if e >= 0:
                out = out * base ** e
            else:
                if order is None:
                    raise ValueError("negative exponent needs a truncation order")
                out = out * div_truncated(GenSeries.one(delta.rank),
                                          base ** (-e), order)
        if order is not None:
            out = out.truncate(order)
        return out

    def sign_at(self, system: RootSystem, delta: SemiCurvette) -> int:
        sg = 1
        from .curvette import sign_at
        for i, e in self.exps:
            s = sign_at(system.poly(i), delta)
            if s == 0:
                return 0
            if s < 0 and e % 2:
                sg = -sg
        return sg

    def __repr__(self) -> str:
        if not self.exps:
            return "1"
        return "*".join(f"[{i}]^{e}" if e != 1 else f"[{i}]"
                        for i, e in self.exps)


def genmon_compare(m1: GenMonomial, m2: GenMonomial, delta: SemiCurvette,
                   system: RootSystem) -> int:
    """Order generalized monomials by (value along delta, exponent vector)."""
    v1 = m1.value_at(system, delta)
    v2 = m2.value_at(system, delta)
    if is_infinite(v1) or is_infinite(v2):
        raise ValueError("monomial vanishes along the curvette")
    if v1 != v2:
        return -1 if v1 < v2 else 1
    e1 = m1.degree_vector(system.size)
    e2 = m2.degree_vector(system.size)
    if e1 == e2:
        return 0
    return -1 if e1 < e2 else 1


def is_relevant(q: Union[BinomialRoot, int], mu_alpha: GroupVec, w: Weights) -> bool:
    """Variables are always relevant; a binomial is relevant when its
    monomial degree sits below the separating value."""
    if isinstance(q, int):
        return True
    v = monomial_value(q.as_poly(), w)
    assert not is_infinite(v)
    return v < mu_alpha


def pair_complexity(roots: Sequence[BinomialRoot], mu_alpha: GroupVec,
                    w: Weights) -> int:
    """0 when no complexity-one root is relevant, else 1."""
    return 1 if any(is_relevant(q, mu_alpha, w) for q in roots) else 0


@dataclass(frozen=True)
class StandardForm:
    """A dominant generalized monomial plus strictly-larger-value tail terms,
    validated against the two designated points at construction."""

    dominant: GenMonomial
    tail: tuple[tuple[Fraction, GenMonomial], ...]

    def __init__(self, dominant: GenMonomial,
                 tail: Sequence[tuple[Rat, GenMonomial]],
                 system: RootSystem,
                 alpha: SemiCurvette, beta: SemiCurvette):
        tail = tuple((rat(c), m) for c, m in tail)
        if any(c == 0 for c, _ in tail):
            raise ValueError("zero tail coefficient")
        for point in (alpha, beta):
            dv = dominant.value_at(system, point)
            if is_infinite(dv):
                raise ValueError("dominant monomial vanishes at a designated point")
            for _, m in tail:
                tv = m.value_at(system, point)
                if not (is_infinite(tv) or dv < tv):
                    raise ValueError(
                        f"dominance fails: {dv!r} !< {tv!r} for tail {m!r}")
        object.__setattr__(self, "dominant", dominant)
        object.__setattr__(self, "tail", tail)

    def as_poly(self, system: RootSystem) -> Poly:
        p = self.dominant.as_poly(system)
        for c, m in self.tail:
            p = p + m.as_poly(system) * c
        return p
