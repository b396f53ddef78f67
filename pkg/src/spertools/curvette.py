"""Semi-curvettes: computable points of the real spectrum.

A semi-curvette substitutes an exact finite-support series for each ambient
variable and fixes a sign character on the value group.  Polynomial
evaluation is then exact, which makes the induced valuation, initial
coefficients and sign tests all decidable in rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import (
    INFINITY,
    GenSeries,
    GroupVec,
    Poly,
    RankMismatchError,
    SignChar,
    ValOrInf,
    abs_ge,
    div_truncated,
    is_infinite,
    min_value,
    series_sign,
)


@dataclass(frozen=True)
class SemiCurvette:
    """n exact series plus a sign character; centered at the maximal ideal
    (every entry has strictly positive leading exponent)."""

    entries: tuple[GenSeries, ...]
    sc: SignChar

    def __init__(self, entries: Sequence[GenSeries], sc: SignChar):
        entries = tuple(entries)
        if not entries:
            raise ValueError("a curvette needs at least one entry")
        rank = entries[0].rank
        for s in entries:
            if s.rank != rank:
                raise RankMismatchError("entries have mixed ranks")
            if not s.is_exact:
                raise ValueError("curvette entries must be exact series")
            if not s.terms:
                raise ValueError("curvette entries must be nonzero")
            if not min(s.terms) > GroupVec.zero(rank):
                raise ValueError("curvette entries must vanish at the center")
        if sc.rank != rank:
            raise RankMismatchError("sign character rank mismatch")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "sc", sc)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def rank(self) -> int:
        return self.entries[0].rank

    def variable_values(self) -> "Weights":
        """The weight vector assigning each variable its value here."""
        return Weights([min(s.terms) for s in self.entries])

    def __repr__(self) -> str:
        return f"SemiCurvette(n={self.n}, rank={self.rank})"


@dataclass(frozen=True)
class Weights:
    """Strictly positive values for the ambient variables."""

    w: tuple[GroupVec, ...]

    def __init__(self, w: Sequence[GroupVec]):
        w = tuple(w)
        if not w:
            raise ValueError("empty weight vector")
        rank = w[0].rank
        zero = GroupVec.zero(rank)
        for v in w:
            if v.rank != rank:
                raise RankMismatchError("weights have mixed ranks")
            if not v > zero:
                raise ValueError("weights must be strictly positive")
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return len(self.w)

    @property
    def rank(self) -> int:
        return self.w[0].rank

    def __getitem__(self, q: int) -> GroupVec:
        return self.w[q]

    def of_exponent(self, e: Sequence[int]) -> GroupVec:
        """Weighted degree of a (possibly Laurent) exponent vector."""
        acc = GroupVec.zero(self.rank)
        for q, x in enumerate(e):
            if x:
                acc = acc + self.w[q] * x
        return acc


def evaluate(f: Poly, alpha: SemiCurvette,
             order: Optional[GroupVec] = None) -> GenSeries:
    """Substitute the curvette entries into f.

    Polynomial input gives an exact finite series.  Laurent input (negative
    exponents) requires a caller-supplied truncation order for the series
    inversions it entails.
    """
    if f.nvars != alpha.n:
        raise ValueError(f"polynomial in {f.nvars} variables on a curvette "
                         f"with {alpha.n} entries")
    if f.is_laurent() and order is None:
        raise ValueError("Laurent input requires an explicit truncation order")
    rank = alpha.rank
    total = GenSeries.zero(rank)
    pow_cache: dict[tuple[int, int], GenSeries] = {}

    def power(q: int, k: int) -> GenSeries:
        key = (q, k)
        if key not in pow_cache:
            if k >= 0:
                pow_cache[key] = alpha.entries[q] ** k
            else:
                assert order is not None
                pow_cache[key] = div_truncated(
                    GenSeries.one(rank), alpha.entries[q] ** (-k), order)
        return pow_cache[key]

    for e, c in f.terms.items():
        term = GenSeries.one(rank).scale(c)
        for q, k in enumerate(e):
            if k:
                term = term * power(q, k)
        total = total + term
    if order is not None:
        total = total.truncate(order)
    return total


def value(f: Poly, alpha: SemiCurvette) -> ValOrInf:
    """Order of vanishing of f along the curvette; infinity when f dies."""
    if f.is_zero():
        return INFINITY
    return evaluate(f, alpha).value()


def monomial_value(f: Poly, w: Weights) -> ValOrInf:
    """Minimum weighted degree over the support of f."""
    if f.is_zero():
        return INFINITY
    return min_value(w.of_exponent(e) for e in f.terms)


def initial_coeff(f: Poly, alpha: SemiCurvette) -> Fraction:
    """Leading coefficient of the evaluation; errors on a zero evaluation."""
    s = evaluate(f, alpha)
    if not s.terms:
        raise ValueError("initial coefficient undefined: f vanishes on the curvette")
    return s.leading()[1]


def sign_at(f: Poly, alpha: SemiCurvette) -> int:
    return series_sign(evaluate(f, alpha), alpha.sc)


def changes_sign(f: Poly, alpha: SemiCurvette, beta: SemiCurvette) -> bool:
    """True when f is >=0 at one point and <=0 at the other (a vanishing
    evaluation counts as both)."""
    sa = sign_at(f, alpha)
    sb = sign_at(f, beta)
    return (sa >= 0 and sb <= 0) or (sa <= 0 and sb >= 0)


def is_tangent(f: Poly, alpha: SemiCurvette) -> bool:
    """True when f vanishes along alpha to higher order than the center's
    fastest coordinate."""
    v = value(f, alpha)
    center = min_value(s.value() for s in alpha.entries)
    if is_infinite(v):
        return True
    assert not is_infinite(center)
    return v > center


def abs_ge_at(f: Poly, g: Poly, alpha: SemiCurvette, strict: bool = False) -> bool:
    return abs_ge(evaluate(f, alpha), evaluate(g, alpha), alpha.sc, strict)
