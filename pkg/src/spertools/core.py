"""Exact arithmetic core: lex-ordered value groups, sparse polynomials and
finite-support generalized power series over the rationals.

Representation choices:

  GroupVec    -- a point of Q^k under total lexicographic order; immutable,
                 coordinates are Fraction.
  Poly        -- sparse map {exponent tuple -> Fraction}.  Exponents are int
                 tuples; negative entries are allowed so the same container
                 doubles as a Laurent term list.  The zero polynomial is the
                 empty map; zero coefficients are never stored.
  GenSeries   -- sparse map {GroupVec -> Fraction} plus a truncation marker.
                 truncation None means the series is exact (all terms known);
                 a GroupVec truncation tau means every exponent >= tau has
                 been discarded and predicates must refuse to answer when the
                 result could depend on the missing tail.
  SignChar    -- one sign per group coordinate.  The induced character on
                 exponents works on parities after clearing denominators with
                 a fixed scale D; exponents whose scaled coordinates are not
                 integers have no defined sign.

Everything here is immutable after construction and all operations are pure
functions, so concurrent read-only use is safe.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

Rat = Fraction

RatLike = Union[int, str, Fraction]


def rat(x: RatLike) -> Fraction:
    """Coerce ints, 'p/q' strings or Fractions to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def fmt_rat(q: Fraction) -> str:
    """Render as 'p/q', or bare 'p' for integers (round-trips via rat())."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class RankMismatchError(ValueError):
    pass


class TruncationError(ArithmeticError):
    """An answer would depend on terms beyond a series truncation."""


class SignUndefinedError(ArithmeticError):
    """A sign character cannot evaluate the given exponent."""


# ---------------------------------------------------------------------------
# Value group Q^k with lexicographic order
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupVec:
    """An element of the value group Q^k, totally ordered lexicographically."""

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable[RatLike]):
        object.__setattr__(self, "coords", tuple(rat(c) for c in coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    @staticmethod
    def zero(rank: int) -> "GroupVec":
        return GroupVec([Fraction(0)] * rank)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def _check_rank(self, other: "GroupVec") -> None:
        if self.rank != other.rank:
            raise RankMismatchError(f"rank {self.rank} vs {other.rank}")

    def __add__(self, other: "GroupVec") -> "GroupVec":
        self._check_rank(other)
        return GroupVec(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "GroupVec") -> "GroupVec":
        self._check_rank(other)
        return GroupVec(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "GroupVec":
        return GroupVec(-a for a in self.coords)

    def __mul__(self, scalar: RatLike) -> "GroupVec":
        s = rat(scalar)
        return GroupVec(a * s for a in self.coords)

    __rmul__ = __mul__

    def __lt__(self, other: "GroupVec") -> bool:
        return lex_compare(self, other) < 0

    def __le__(self, other: "GroupVec") -> bool:
        return lex_compare(self, other) <= 0

    def __gt__(self, other: "GroupVec") -> bool:
        return lex_compare(self, other) > 0

    def __ge__(self, other: "GroupVec") -> bool:
        return lex_compare(self, other) >= 0

    def __repr__(self) -> str:
        return "(" + ",".join(fmt_rat(c) for c in self.coords) + ")"


def gv(*coords: RatLike) -> GroupVec:
    """Shorthand constructor: gv(1, 4) == GroupVec([1, 4])."""
    return GroupVec(coords)


def lex_compare(a: GroupVec, b: GroupVec) -> int:
    """Total lexicographic comparison; returns -1, 0 or +1."""
    if a.rank != b.rank:
        raise RankMismatchError(f"rank {a.rank} vs {b.rank}")
    for x, y in zip(a.coords, b.coords):
        if x != y:
            return -1 if x < y else 1
    return 0


def isolated_level(g: GroupVec) -> int:
    """1-based index of the first nonzero coordinate.

    The convex subgroups of Q^k under lex order are exactly the coordinate
    tails {v : v_1 = ... = v_m = 0}; the largest one avoiding g consists of
    the vectors whose level exceeds isolated_level(g), together with 0.
    """
    for i, c in enumerate(g.coords):
        if c != 0:
            return i + 1
    raise ValueError("isolated_level undefined for the zero vector")


class _Infinity:
    """The value of the zero series; greater than every GroupVec."""

    _instance: Optional["_Infinity"] = None

    def __new__(cls) -> "_Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return isinstance(other, _Infinity)

    def __gt__(self, other: object) -> bool:
        return not isinstance(other, _Infinity)

    def __ge__(self, other: object) -> bool:
        return True

    def __eq__(self, other: object) -> bool:
        return isinstance(other, _Infinity)

    def __hash__(self) -> int:
        return hash("spertools-infinity")

    def __add__(self, other: object) -> "_Infinity":
        return self

    __radd__ = __add__

    def __repr__(self) -> str:
        return "inf"


INFINITY = _Infinity()

ValOrInf = Union[GroupVec, _Infinity]


def is_infinite(v: ValOrInf) -> bool:
    return isinstance(v, _Infinity)


def min_value(values: Iterable[ValOrInf]) -> ValOrInf:
    best: ValOrInf = INFINITY
    for v in values:
        if best is INFINITY or (not is_infinite(v) and v < best):
            best = v
    return best


# ---------------------------------------------------------------------------
# Sign characters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SignChar:
    """Signs of the coordinate generators t^{e_j}, inducing a character on
    exponents via parities of the coordinates scaled by parity_denominator."""

    signs: tuple[int, ...]
    parity_denominator: int = 1

    def __init__(self, signs: Iterable[int], parity_denominator: int = 1):
        sgns = tuple(int(s) for s in signs)
        if any(s not in (1, -1) for s in sgns):
            raise ValueError("signs must be +1 or -1")
        if parity_denominator < 1:
            raise ValueError("parity denominator must be >= 1")
        object.__setattr__(self, "signs", sgns)
        object.__setattr__(self, "parity_denominator", int(parity_denominator))

    @property
    def rank(self) -> int:
        return len(self.signs)

    def sigma(self, g: GroupVec) -> int:
        """Sign of the monomial t^g, or raise if parity is undefined."""
        if g.rank != self.rank:
            raise RankMismatchError(f"rank {g.rank} vs {self.rank}")
        result = 1
        for s, c in zip(self.signs, g.coords):
            scaled = c * self.parity_denominator
            if scaled.denominator != 1:
                raise SignUndefinedError(
                    f"exponent {g!r} not integral at parity denominator "
                    f"{self.parity_denominator}")
            if s < 0 and scaled.numerator % 2 != 0:
                result = -result
        return result


def all_positive_char(rank: int, parity_denominator: int = 1) -> SignChar:
    return SignChar([1] * rank, parity_denominator)


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials (Laurent-tolerant)
# ---------------------------------------------------------------------------

ExpVec = tuple[int, ...]


class Poly:
    """Sparse polynomial over Q in nvars variables.

    terms maps exponent tuples to nonzero coefficients; negative exponents
    are tolerated so the class can carry Laurent term lists (evaluation of
    those requires an explicit truncation order downstream).
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[ExpVec, RatLike] | None = None):
        self.nvars = int(nvars)
        clean: dict[ExpVec, Fraction] = {}
        if terms:
            for e, c in terms.items():
                et = tuple(int(x) for x in e)
                if len(et) != self.nvars:
                    raise ValueError(f"exponent {et} has wrong arity")
                cf = rat(c)
                if cf != 0:
                    clean[et] = clean.get(et, Fraction(0)) + cf
                    if clean[et] == 0:
                        del clean[et]
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "Poly":
        return Poly(nvars)

    @staticmethod
    def const(nvars: int, c: RatLike) -> "Poly":
        return Poly(nvars, {(0,) * nvars: rat(c)})

    @staticmethod
    def variable(nvars: int, idx: int) -> "Poly":
        if not 0 <= idx < nvars:
            raise ValueError(f"variable index {idx} out of range")
        e = [0] * nvars
        e[idx] = 1
        return Poly(nvars, {tuple(e): Fraction(1)})

    @staticmethod
    def monomial(nvars: int, exps: Sequence[int], c: RatLike = 1) -> "Poly":
        return Poly(nvars, {tuple(int(x) for x in exps): rat(c)})

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_laurent(self) -> bool:
        return any(x < 0 for e in self.terms for x in e)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def support(self) -> list[ExpVec]:
        return sorted(self.terms)

    def coeff(self, e: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(int(x) for x in e), Fraction(0))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Poly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise ValueError("variable counts differ")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly | RatLike") -> "Poly":
        if not isinstance(other, Poly):
            s = rat(other)
            return Poly(self.nvars, {e: c * s for e, c in self.terms.items()})
        self._check(other)
        out: dict[ExpVec, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Poly(self.nvars, out)

    def __rmul__(self, other: RatLike) -> "Poly":
        return self * other

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "*".join(f"u{i + 1}^{x}" for i, x in enumerate(e) if x != 0)
            bits.append(f"{fmt_rat(c)}{'*' + mono if mono else ''}")
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# Generalized power series
# ---------------------------------------------------------------------------

class GenSeries:
    """Finite-support series in t^Gamma with exact rational coefficients.

    truncation None marks an exact series.  A finite truncation tau promises
    only that the stored terms are all terms with exponent < tau.
    """

    __slots__ = ("rank", "terms", "truncation")

    def __init__(self, rank: int,
                 terms: Mapping[GroupVec, RatLike] | Iterable[tuple[GroupVec, RatLike]] | None = None,
                 truncation: Optional[GroupVec] = None):
        self.rank = int(rank)
        items: Iterable[tuple[GroupVec, RatLike]]
        if terms is None:
            items = ()
        elif isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        clean: dict[GroupVec, Fraction] = {}
        for g, c in items:
            if g.rank != self.rank:
                raise RankMismatchError(f"exponent rank {g.rank} vs {self.rank}")
            cf = rat(c)
            if cf == 0:
                continue
            acc = clean.get(g, Fraction(0)) + cf
            if acc == 0:
                clean.pop(g, None)
            else:
                clean[g] = acc
        if truncation is not None:
            if truncation.rank != self.rank:
                raise RankMismatchError("truncation rank mismatch")
            clean = {g: c for g, c in clean.items() if g < truncation}
        self.terms = clean
        self.truncation = truncation

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(rank: int) -> "GenSeries":
        return GenSeries(rank)

    @staticmethod
    def one(rank: int) -> "GenSeries":
        return GenSeries(rank, {GroupVec.zero(rank): Fraction(1)})

    @staticmethod
    def monomial(g: GroupVec, c: RatLike = 1) -> "GenSeries":
        return GenSeries(g.rank, {g: rat(c)})

    # -- structure ----------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.truncation is None

    def is_zero(self) -> bool:
        """True only for the exactly-known zero series."""
        return not self.terms and self.is_exact

    def leading(self) -> tuple[GroupVec, Fraction]:
        if not self.terms:
            if self.is_exact:
                raise ValueError("zero series has no leading term")
            raise TruncationError(
                f"no terms known below truncation {self.truncation!r}")
        g = min(self.terms)
        return g, self.terms[g]

    def value(self) -> ValOrInf:
        """Order of vanishing; infinity for the exact zero series."""
        if not self.terms:
            if self.is_exact:
                return INFINITY
            raise TruncationError(
                f"value undetermined below truncation {self.truncation!r}")
        return min(self.terms)

    def coeff(self, g: GroupVec) -> Fraction:
        return self.terms.get(g, Fraction(0))

    def support(self) -> list[GroupVec]:
        return sorted(self.terms)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, GenSeries) and self.rank == other.rank
                and self.terms == other.terms
                and self.truncation == other.truncation)

    def __hash__(self) -> int:
        return hash((self.rank, frozenset(self.terms.items()), self.truncation))

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "GenSeries") -> None:
        if self.rank != other.rank:
            raise RankMismatchError(f"rank {self.rank} vs {other.rank}")

    @staticmethod
    def _min_trunc(a: Optional[GroupVec], b: Optional[GroupVec]) -> Optional[GroupVec]:
        if a is None:
            return b
        if b is None:
            return a
        return a if a <= b else b

    def __add__(self, other: "GenSeries") -> "GenSeries":
        self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            s = out.get(g, Fraction(0)) + c
            if s == 0:
                out.pop(g, None)
            else:
                out[g] = s
        return GenSeries(self.rank, out,
                         self._min_trunc(self.truncation, other.truncation))

    def __neg__(self) -> "GenSeries":
        return GenSeries(self.rank, {g: -c for g, c in self.terms.items()},
                         self.truncation)

    def __sub__(self, other: "GenSeries") -> "GenSeries":
        return self + (-other)

    def scale(self, c: RatLike) -> "GenSeries":
        s = rat(c)
        if s == 0:
            return GenSeries(self.rank, {}, self.truncation)
        return GenSeries(self.rank, {g: cf * s for g, cf in self.terms.items()},
                         self.truncation)

    def shift(self, g: GroupVec) -> "GenSeries":
        """Multiply by the monomial t^g."""
        tr = None if self.truncation is None else self.truncation + g
        return GenSeries(self.rank, {e + g: c for e, c in self.terms.items()}, tr)

    def __mul__(self, other: "GenSeries") -> "GenSeries":
        self._check(other)
        # A truncated factor limits the product to tau + value(other factor).
        tr: Optional[GroupVec] = None
        if self.truncation is not None:
            if not other.terms:
                tr = None if other.is_exact else self.truncation + other.truncation
            else:
                tr = self.truncation + min(other.terms)
        if other.truncation is not None and self.terms:
            tr = self._min_trunc(tr, other.truncation + min(self.terms))
        if not self.terms or not other.terms:
            return GenSeries(self.rank, {}, tr)
        out: dict[GroupVec, Fraction] = {}
        for g1, c1 in self.terms.items():
            for g2, c2 in other.terms.items():
                g = g1 + g2
                s = out.get(g, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(g, None)
                else:
                    out[g] = s
        return GenSeries(self.rank, out, tr)

    def __pow__(self, k: int) -> "GenSeries":
        if k < 0:
            raise ValueError("negative power of a series; divide explicitly")
        result = GenSeries.one(self.rank)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def truncate(self, order: GroupVec) -> "GenSeries":
        return GenSeries(self.rank, self.terms,
                         self._min_trunc(self.truncation, order))

    def __repr__(self) -> str:
        if not self.terms:
            body = "0"
        else:
            body = " + ".join(f"{fmt_rat(self.terms[g])}*t^{g!r}"
                              for g in sorted(self.terms))
        if self.truncation is not None:
            body += f" + O(t^{self.truncation!r})"
        return body


def series_sign(s: GenSeries, sc: SignChar) -> int:
    """Sign of a series under a sign character: 0 only for exact zero."""
    if not s.terms:
        if s.is_exact:
            return 0
        raise TruncationError("sign undetermined: no terms below truncation")
    g, c = s.leading()
    return (1 if c > 0 else -1) * sc.sigma(g)


def abs_series(s: GenSeries, sc: SignChar) -> GenSeries:
    sg = series_sign(s, sc)
    return s if sg >= 0 else -s


def abs_ge(s1: GenSeries, s2: GenSeries, sc: SignChar, strict: bool = False) -> bool:
    """Decide |s1| >= |s2| (or > with strict=True) exactly.

    Raises TruncationError if the difference of absolute values is not
    decidable below the truncation order.
    """
    d = abs_series(s1, sc) - abs_series(s2, sc)
    if not d.terms and not d.is_exact:
        raise TruncationError("magnitude comparison undecidable at truncation")
    sg = series_sign(d, sc)
    return sg > 0 if strict else sg >= 0


def div_truncated(s1: GenSeries, s2: GenSeries, order: GroupVec,
                  max_steps: int = 4096) -> GenSeries:
    """Quotient r with value(s1 - s2*r) >= order.

    The result is exact when the division terminates with zero remainder and
    both inputs are exact; otherwise it carries truncation order - value(s2).
    Divisions whose remainder value climbs too slowly to reach the requested
    order within max_steps raise TruncationError instead of looping.
    """
    if s1.rank != s2.rank:
        raise RankMismatchError(f"rank {s1.rank} vs {s2.rank}")
    if not s2.terms:
        raise ZeroDivisionError("division by zero series")
    lead2, c2 = s2.leading()

    # Caps from input truncations: the quotient is only trustworthy while the
    # remainder stays below what the inputs actually determine.
    order_eff = order
    if s1.truncation is not None and s1.truncation < order_eff:
        order_eff = s1.truncation
    if s2.truncation is not None and s1.terms:
        cap = s2.truncation + min(s1.terms) - lead2
        if cap < order_eff:
            order_eff = cap

    quotient: dict[GroupVec, Fraction] = {}
    rem = s1
    steps = 0
    while rem.terms and min(rem.terms) < order_eff:
        g, c = rem.leading()
        e = g - lead2
        q = c / c2
        quotient[e] = q
        rem = rem - s2.shift(e).scale(q)
        steps += 1
        if steps > max_steps:
            raise TruncationError(
                f"division did not reach order {order!r} in {max_steps} steps")
    exact = (not rem.terms and rem.is_exact
             and s1.is_exact and s2.is_exact)
    tr = None if exact else order_eff - lead2
    return GenSeries(s1.rank, quotient, tr)


def series_inverse(s: GenSeries, order: GroupVec, max_steps: int = 4096) -> GenSeries:
    return div_truncated(GenSeries.one(s.rank), s, order, max_steps)
