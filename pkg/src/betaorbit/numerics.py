"""Exact and validated real numbers for base-beta dynamics.

Four representations, one interface:

* RationalValue   -- exact Fraction (covers the integer tier).
* QuadraticValue  -- exact (a + b*sqrt(d))/c with sign decided by conjugation.
* AlgebraicValue  -- element of Q[x]/(D) at the unique root of D inside an
                     isolating rational interval.  Signs are exact: a
                     gcd-based zero test (no factoring) plus interval
                     refinement by bisection.  This backs ``poly:`` bases.
* IntervalValue   -- enclosure with an optional precision-escalation
                     callback (``pi``) or fixed radius (``dec:``).

All enclosures are rational intervals, so interval arithmetic downstream is
itself exact.  Comparisons either decide or raise PrecisionExhausted; they
never guess.
"""

from __future__ import annotations

import os
import re
from fractions import Fraction
from math import gcd, isqrt
from typing import Callable, Sequence

import mpmath

from .errors import (
    InternalInvariantError,
    MultipleRootsError,
    NoRootError,
    PrecisionExhausted,
)
from .words import EpWord, Word

Poly = tuple[Fraction, ...]  # coefficients low-to-high

DEFAULT_START_PREC = 128  # decimal digits
_PREC_CAP_ENV = "BETA_ORBIT_MAX_PREC"


def precision_cap() -> int:
    try:
        return max(64, int(os.environ.get(_PREC_CAP_ENV, "2048")))
    except ValueError:
        return 2048


def _prec_ladder(start: int = DEFAULT_START_PREC):
    cap = precision_cap()
    p = min(start, cap)
    while True:
        yield p
        if p >= cap:
            return
        p = min(2 * p, cap)


# ---------------------------------------------------------------------------
# polynomial helpers (dense, low-to-high, Fraction coefficients)
# ---------------------------------------------------------------------------

def poly_trim(p: Sequence[Fraction]) -> Poly:
    q = list(p)
    while q and q[-1] == 0:
        q.pop()
    return tuple(q)


def poly_degree(p: Poly) -> int:
    return len(p) - 1  # degree of 0 is -1


def poly_add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                      for i in range(n)])


def poly_neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def poly_sub(p: Poly, q: Poly) -> Poly:
    return poly_add(p, poly_neg(q))


def poly_scale(p: Poly, k: Fraction) -> Poly:
    if k == 0:
        return ()
    return tuple(c * k for c in p)


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq, lq = poly_degree(q), q[-1]
    quo = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    while len(r) >= len(q) and poly_trim(r):
        r = list(poly_trim(r))
        if len(r) < len(q):
            break
        k = len(r) - len(q)
        f = r[-1] / lq
        quo[k] = f
        for i in range(len(q)):
            r[k + i] -= f * q[i]
        r.pop()
    return poly_trim(quo), poly_trim(r)


def poly_mod(p: Poly, q: Poly) -> Poly:
    return poly_divmod(p, q)[1]


def poly_monic(p: Poly) -> Poly:
    if not p:
        return ()
    return tuple(c / p[-1] for c in p)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    a, b = poly_trim(p), poly_trim(q)
    while b:
        a, b = b, poly_mod(a, b)
    return poly_monic(a)


def poly_deriv(p: Poly) -> Poly:
    return poly_trim([i * c for i, c in enumerate(p)][1:])


def poly_eval(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_eval_interval(p: Poly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Exact interval Horner: encloses {p(x) : x in [lo, hi]}."""
    alo, ahi = Fraction(0), Fraction(0)
    for c in reversed(p):
        cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(cands) + c, max(cands) + c
    return alo, ahi


def poly_squarefree(p: Poly) -> Poly:
    g = poly_gcd(p, poly_deriv(p))
    if poly_degree(g) <= 0:
        return poly_monic(p)
    q, r = poly_divmod(p, g)
    if r:
        raise InternalInvariantError("gcd must divide the polynomial")
    return poly_monic(q)


def sturm_chain(p: Poly) -> list[Poly]:
    chain = [poly_trim(p), poly_deriv(p)]
    while chain[-1]:
        rem = poly_mod(chain[-2], chain[-1])
        chain.append(poly_neg(rem))
    chain.pop()
    return chain


def _sign_variations(values: list[Fraction]) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def sturm_count(p: Poly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in (lo, hi]."""
    chain = sturm_chain(p)
    at_lo = _sign_variations([poly_eval(f, lo) for f in chain])
    at_hi = _sign_variations([poly_eval(f, hi) for f in chain])
    return at_lo - at_hi


def poly_from_ints(coeffs: Sequence[int | Fraction]) -> Poly:
    return poly_trim([Fraction(c) for c in coeffs])


# ---------------------------------------------------------------------------
# the real-value tower
# ---------------------------------------------------------------------------

class RealValue:
    """Common interface; concrete arithmetic lives in the subclasses."""

    kind: str = "?"

    def sign(self) -> int:
        raise NotImplementedError

    def bounds(self, prec: int = 30) -> tuple[Fraction, Fraction]:
        """A rational enclosure; exact kinds refine to any requested width."""
        raise NotImplementedError

    def floor_with_hit(self) -> tuple[int, bool]:
        """(floor(x), x is exactly that integer + ... i.e. x itself integral)."""
        raise NotImplementedError

    def is_refinable(self) -> bool:
        return True

    # -- operator plumbing ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return self._from_fraction(Fraction(other))
        if isinstance(other, RationalValue):
            return self._from_fraction(other.value)
        if type(other) is type(self):
            return other
        return None

    def _from_fraction(self, f: Fraction) -> "RealValue":
        raise NotImplementedError

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._add(o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._add(o._neg())

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o._add(self._neg())

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._mul(o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._mul(o._inv())

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o._mul(self._inv())

    def __neg__(self):
        return self._neg()

    def __pow__(self, n: int):
        if n < 0:
            return (self ** (-n))._inv()
        out = self._from_fraction(Fraction(1))
        base = self
        while n:
            if n & 1:
                out = out._mul(base)
            base = base._mul(base)
            n >>= 1
        return out

    def _add(self, other):
        raise NotImplementedError

    def _mul(self, other):
        raise NotImplementedError

    def _neg(self):
        raise NotImplementedError

    def _inv(self):
        raise NotImplementedError

    # -- presentation ----------------------------------------------------------
    def repr_tag(self) -> str:
        raise NotImplementedError

    def decimal(self, prec: int = 30) -> str:
        lo, hi = self.bounds(prec + 2)
        mid = (lo + hi) / 2
        return _fraction_to_decimal(mid, prec)


def _fraction_to_decimal(x: Fraction, prec: int) -> str:
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = x * 10 ** prec
    n = scaled.numerator // scaled.denominator
    ip, fp = divmod(n, 10 ** prec)
    return f"{sign}{ip}.{str(fp).rjust(prec, '0')}"


class RationalValue(RealValue):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = Fraction(value)

    @property
    def kind(self) -> str:  # type: ignore[override]
        return "int" if self.value.denominator == 1 else "rational"

    def _from_fraction(self, f: Fraction) -> "RationalValue":
        return RationalValue(f)

    def sign(self) -> int:
        return (self.value > 0) - (self.value < 0)

    def bounds(self, prec: int = 30) -> tuple[Fraction, Fraction]:
        return self.value, self.value

    def floor_with_hit(self) -> tuple[int, bool]:
        n = self.value.numerator // self.value.denominator
        return n, self.value.denominator == 1

    def _add(self, other):
        return RationalValue(self.value + other.value)

    def _mul(self, other):
        return RationalValue(self.value * other.value)

    def _neg(self):
        return RationalValue(-self.value)

    def _inv(self):
        return RationalValue(1 / self.value)

    def __eq__(self, other):
        return isinstance(other, RationalValue) and self.value == other.value

    def __hash__(self):
        return hash(("RationalValue", self.value))

    def __repr__(self):
        return f"RationalValue({self.value})"

    def repr_tag(self) -> str:
        return "exact-rational"


def _square_free_split(d: int) -> tuple[int, int]:
    """d = s^2 * d0 with d0 squarefree; returns (s, d0)."""
    s, d0, f = 1, d, 2
    while f * f <= d0:
        while d0 % (f * f) == 0:
            d0 //= f * f
            s *= f
        f += 1
    return s, d0


class QuadraticValue(RealValue):
    """(a + b*sqrt(d))/c with integers a, b, c>0 and d squarefree > 1."""

    kind = "quadratic"
    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int, d: int, c: int):
        if c == 0:
            raise ZeroDivisionError("zero denominator")
        if d <= 1:
            raise ValueError("need d > 1; rationals go to RationalValue")
        s, d0 = _square_free_split(d)
        if d0 <= 1:
            raise ValueError(f"d={d} is a perfect square; use RationalValue")
        a, b, d = a, b * s, d0
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(abs(a), abs(b)), c)
        self.a, self.b, self.c, self.d = a // g, b // g, c // g, d

    def _from_fraction(self, f: Fraction) -> "QuadraticValue":
        return QuadraticValue(f.numerator, 0, self.d, f.denominator)

    def _coerce(self, other):
        if isinstance(other, QuadraticValue):
            if other.d == self.d:
                return other
            if other.b == 0:
                return self._from_fraction(Fraction(other.a, other.c))
            return None
        return super()._coerce(other)

    def as_fraction(self) -> Fraction | None:
        return Fraction(self.a, self.c) if self.b == 0 else None

    def sign(self) -> int:
        a, b = self.a, self.b  # c > 0
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # mixed signs: compare a^2 with b^2 d; equality impossible (d squarefree)
        t = a * a - b * b * self.d
        if t == 0:
            raise InternalInvariantError("a^2 == b^2 d with d squarefree")
        return (1 if t > 0 else -1) * (1 if a > 0 else -1)

    def bounds(self, prec: int = 30) -> tuple[Fraction, Fraction]:
        scale = 10 ** prec
        if self.b >= 0:
            r = isqrt(self.b * self.b * self.d * scale * scale)
            lo = Fraction(self.a * scale + r, self.c * scale)
            hi = Fraction(self.a * scale + r + 1, self.c * scale)
        else:
            r = isqrt(self.b * self.b * self.d * scale * scale)
            lo = Fraction(self.a * scale - r - 1, self.c * scale)
            hi = Fraction(self.a * scale - r, self.c * scale)
        return lo, hi

    def floor_with_hit(self) -> tuple[int, bool]:
        if self.b == 0:
            return Fraction(self.a, self.c).__floor__(), self.c == 1
        lo, hi = self.bounds(20)
        n = lo.numerator // lo.denominator
        # adjust in the (rare) case the enclosure straddles an integer;
        # irrational, so strict comparisons decide
        while (self - n).sign() < 0:
            n -= 1
        while (self - (n + 1)).sign() >= 0:
            n += 1
        return n, False

    def _add(self, other: "QuadraticValue"):
        return QuadraticValue(self.a * other.c + other.a * self.c,
                              self.b * other.c + other.b * self.c,
                              self.d, self.c * other.c)

    def _mul(self, other: "QuadraticValue"):
        return QuadraticValue(self.a * other.a + self.b * other.b * self.d,
                              self.a * other.b + self.b * other.a,
                              self.d, self.c * other.c)

    def _neg(self):
        return QuadraticValue(-self.a, -self.b, self.d, self.c)

    def _inv(self):
        # c/(a + b sqrt d) = c (a - b sqrt d)/(a^2 - b^2 d)
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadraticValue(self.a * self.c, -self.b * self.c, self.d, norm)

    def __eq__(self, other):
        if isinstance(other, QuadraticValue):
            return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)
        if isinstance(other, (int, Fraction, RationalValue)):
            f = other.value if isinstance(other, RationalValue) else Fraction(other)
            return self.b == 0 and Fraction(self.a, self.c) == f
        return NotImplemented

    def __hash__(self):
        return hash(("QuadraticValue", self.a, self.b, self.c, self.d))

    def spec_text(self) -> str:
        sign = "+" if self.b >= 0 else "-"
        return f"({self.a}{sign}{abs(self.b)}*sqrt({self.d}))/{self.c}"

    def __repr__(self):
        return f"QuadraticValue({self.spec_text()})"

    def repr_tag(self) -> str:
        return "quadratic"


def quadratic(a: int, b: int, d: int, c: int) -> RealValue:
    """Factory that downgrades rational results to RationalValue."""
    if b == 0 or d == 0:
        return RationalValue(Fraction(a, c))
    s, d0 = _square_free_split(d)
    if d0 == 1:
        return RationalValue(Fraction(a + b * s, c))
    return QuadraticValue(a, b, d, c)


class AlgebraicContext:
    """The unique real root of an integer polynomial in an isolating interval.

    The defining polynomial is made squarefree at construction (exact
    gcd with the derivative; this is not factoring).  Zero tests for
    polynomial expressions in the root use gcd against the modulus plus a
    sign change check over the isolating interval, which is sound because
    the interval contains exactly one root of the modulus and endpoints
    are never roots.
    """

    def __init__(self, coeffs: Sequence[int | Fraction], lo, hi, *, label: str | None = None):
        D = poly_squarefree(poly_from_ints(coeffs))
        if poly_degree(D) < 1:
            raise NoRootError("constant polynomial")
        lo, hi = Fraction(lo), Fraction(hi)
        if lo >= hi:
            raise ValueError("empty search interval")
        flo, fhi = poly_eval(D, lo), poly_eval(D, hi)
        if flo == 0 or fhi == 0:
            raise NoRootError("interval endpoint is a root; nudge the interval")
        n = sturm_count(D, lo, hi)
        if n == 0:
            raise NoRootError(f"no root in ({lo}, {hi})")
        if n > 1:
            raise MultipleRootsError(f"{n} roots in ({lo}, {hi})")
        if (flo > 0) == (fhi > 0):
            raise MultipleRootsError("single root but no sign change (even multiplicity?)")
        self.modulus = D
        self.lo, self.hi = lo, hi
        self.rational: Fraction | None = None
        self.label = label or f"root of {self._poly_str()} in ({lo}, {hi})"

    def _poly_str(self) -> str:
        return "[" + ",".join(str(c) for c in self.modulus) + "]"

    def refine(self) -> None:
        if self.rational is not None:
            return
        mid = (self.lo + self.hi) / 2
        fm = poly_eval(self.modulus, mid)
        if fm == 0:
            # the isolated root is the rational midpoint
            self.rational = mid
            self.lo = self.hi = mid
            return
        flo = poly_eval(self.modulus, self.lo)
        if (flo > 0) != (fm > 0):
            self.hi = mid
        else:
            self.lo = mid

    def enclosure(self, width: Fraction) -> tuple[Fraction, Fraction]:
        while self.hi - self.lo > width and self.rational is None:
            self.refine()
        return self.lo, self.hi

    def reduce(self, p: Poly) -> Poly:
        return poly_mod(p, self.modulus)

    def vanishes(self, p: Poly) -> bool:
        """Exact test p(root) == 0."""
        p = self.reduce(p)
        if not p:
            return True
        if self.rational is not None:
            return poly_eval(p, self.rational) == 0
        g = poly_gcd(p, self.modulus)
        if poly_degree(g) < 1:
            return False
        # g | modulus and the endpoints are not roots of the modulus,
        # so g changes sign on the interval iff its (unique possible)
        # root there is ours.
        glo, ghi = poly_eval(g, self.lo), poly_eval(g, self.hi)
        return (glo > 0) != (ghi > 0)

    def sign_of(self, p: Poly) -> int:
        p = self.reduce(p)
        if not p:
            return 0
        if self.rational is not None:
            v = poly_eval(p, self.rational)
            return (v > 0) - (v < 0)
        if self.vanishes(p):
            return 0
        while True:
            vlo, vhi = poly_eval_interval(p, self.lo, self.hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            self.refine()
            if self.rational is not None:
                v = poly_eval(p, self.rational)
                return (v > 0) - (v < 0)

    def inverse(self, p: Poly) -> Poly:
        """Multiplicative inverse of p(root) as a polynomial mod the modulus.

        May shrink the modulus to one of its divisors when the modulus is
        reducible (discovered through gcd, never by factoring).
        """
        p = self.reduce(p)
        if not p:
            raise ZeroDivisionError("inverse of zero")
        while True:
            g = poly_gcd(p, self.modulus)
            if poly_degree(g) < 1:
                break
            quo, rem = poly_divmod(self.modulus, g)
            if rem:
                raise InternalInvariantError("gcd must divide the modulus")
            # p(root) != 0 and g | p would force g(root) != 0... but g | modulus
            # means one of g, modulus/g vanishes at the root; it must be quo.
            if self.vanishes(g):
                raise ZeroDivisionError("inverse of zero (gcd vanishes at the root)")
            self.modulus = poly_monic(quo)
            p = self.reduce(p)
            if not p:
                raise InternalInvariantError("nonzero value reduced to zero after modulus shrink")
        # extended Euclid: s*p + t*modulus = 1
        r0, r1 = self.modulus, p
        s0, s1 = (), (Fraction(1),)
        while poly_degree(r1) > 0:
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        if not r1:
            raise InternalInvariantError("p and modulus not coprime after shrink loop")
        const = r1[0]
        return self.reduce(poly_scale(s1, 1 / const))


class AlgebraicValue(RealValue):
    """poly(root) for a shared AlgebraicContext root."""

    kind = "validated"  # presented as a validated real; decisions are exact
    __slots__ = ("ctx", "poly")

    def __init__(self, ctx: AlgebraicContext, poly: Sequence[Fraction] | Poly):
        self.ctx = ctx
        self.poly = ctx.reduce(poly_trim(tuple(Fraction(c) for c in poly)))

    @classmethod
    def root(cls, ctx: AlgebraicContext) -> "AlgebraicValue":
        return cls(ctx, (Fraction(0), Fraction(1)))

    def _from_fraction(self, f: Fraction) -> "AlgebraicValue":
        return AlgebraicValue(self.ctx, (f,))

    def _coerce(self, other):
        if isinstance(other, AlgebraicValue):
            return other if other.ctx is self.ctx else None
        return super()._coerce(other)

    def sign(self) -> int:
        return self.ctx.sign_of(self.poly)

    def as_fraction(self) -> Fraction | None:
        p = self.ctx.reduce(self.poly)
        if not p:
            return Fraction(0)
        if poly_degree(p) == 0:
            return p[0]
        if self.ctx.rational is not None:
            return poly_eval(p, self.ctx.rational)
        return None

    def bounds(self, prec: int = 30) -> tuple[Fraction, Fraction]:
        f = self.as_fraction()
        if f is not None:
            return f, f
        width = Fraction(1, 10 ** prec)
        lo, hi = self.ctx.enclosure(width)
        vlo, vhi = poly_eval_interval(self.poly, lo, hi)
        while vhi - vlo > width:
            self.ctx.refine()
            lo, hi = self.ctx.lo, self.ctx.hi
            vlo, vhi = poly_eval_interval(self.poly, lo, hi)
            if self.ctx.rational is not None:
                v = poly_eval(self.poly, self.ctx.rational)
                return v, v
        return vlo, vhi

    def floor_with_hit(self) -> tuple[int, bool]:
        tested: set[int] = set()
        while True:
            f = self.as_fraction()
            if f is not None:
                return f.numerator // f.denominator, f.denominator == 1
            lo, hi = poly_eval_interval(self.poly, self.ctx.lo, self.ctx.hi)
            nlo = lo.numerator // lo.denominator
            nhi = hi.numerator // hi.denominator
            if nlo == nhi:
                n = nlo
                if lo == n and n not in tested:
                    if self.ctx.vanishes(poly_sub(self.poly, (Fraction(n),))):
                        return n, True
                    tested.add(n)
                if lo > n or n in tested:
                    return n, False
            elif nhi == nlo + 1 and nhi not in tested:
                # exactly one integer boundary inside; decide hit exactly
                if self.ctx.vanishes(poly_sub(self.poly, (Fraction(nhi),))):
                    return nhi, True
                tested.add(nhi)
            self.ctx.refine()

    def _add(self, other: "AlgebraicValue"):
        return AlgebraicValue(self.ctx, poly_add(self.poly, other.poly))

    def _mul(self, other: "AlgebraicValue"):
        return AlgebraicValue(self.ctx, poly_mul(self.poly, other.poly))

    def _neg(self):
        return AlgebraicValue(self.ctx, poly_neg(self.poly))

    def _inv(self):
        return AlgebraicValue(self.ctx, self.ctx.inverse(self.poly))

    def __repr__(self):
        return f"AlgebraicValue({list(self.poly)!r} @ {self.ctx.label})"

    def repr_tag(self) -> str:
        lo, hi = self.bounds(30)
        return f"enclosure±{_fraction_to_decimal((hi - lo) / 2, 34)[:40]}"


class IntervalValue(RealValue):
    """Validated real: rational enclosure, optionally refinable on demand."""

    kind = "validated"
    __slots__ = ("_lo", "_hi", "_refiner", "label")

    def __init__(self, lo, hi, refiner: Callable[[int], tuple[Fraction, Fraction]] | None = None,
                 label: str = "interval"):
        self._lo, self._hi = Fraction(lo), Fraction(hi)
        if self._lo > self._hi:
            raise ValueError("inverted interval")
        self._refiner = refiner
        self.label = label

    def is_refinable(self) -> bool:
        return self._refiner is not None

    def _from_fraction(self, f: Fraction) -> "IntervalValue":
        return IntervalValue(f, f, label=str(f))

    def bounds(self, prec: int = 30) -> tuple[Fraction, Fraction]:
        target = Fraction(1, 10 ** prec)
        if self._hi - self._lo > target and self._refiner is not None:
            lo, hi = self._refiner(prec)
            # enclosures only ever shrink
            lo, hi = max(lo, self._lo), min(hi, self._hi)
            if lo > hi:
                raise InternalInvariantError(f"refiner produced disjoint enclosure for {self.label}")
            self._lo, self._hi = lo, hi
        return self._lo, self._hi

    def width(self) -> Fraction:
        return self._hi - self._lo

    def sign(self) -> int:
        for prec in _prec_ladder():
            lo, hi = self.bounds(prec)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            if lo == hi == 0:
                return 0
            if not self.is_refinable():
                break
        raise PrecisionExhausted(
            f"sign of {self.label} undecidable at precision cap", needed_digits=precision_cap())

    def floor_with_hit(self) -> tuple[int, bool]:
        for prec in _prec_ladder():
            lo, hi = self.bounds(prec)
            if lo == hi:
                return lo.numerator // lo.denominator, lo.denominator == 1
            nlo = lo.numerator // lo.denominator
            nhi = hi.numerator // hi.denominator
            if nlo == nhi and lo > nlo:
                # enclosure strictly inside (n, n+1): floor decided, no hit
                return nlo, False
            if not self.is_refinable():
                break
        raise PrecisionExhausted(
            f"floor of {self.label} straddles an integer at the precision cap",
            needed_digits=precision_cap())

    def _interval_op(self, other, op):
        a, b = self._lo, self._hi
        c, d = other._lo, other._hi
        if op == "add":
            return IntervalValue(a + c, b + d)
        if op == "mul":
            cands = (a * c, a * d, b * c, b * d)
            return IntervalValue(min(cands), max(cands))
        raise ValueError(op)

    def _add(self, other):
        return self._interval_op(other, "add")

    def _mul(self, other):
        return self._interval_op(other, "mul")

    def _neg(self):
        return IntervalValue(-self._hi, -self._lo)

    def _inv(self):
        if self._lo <= 0 <= self._hi:
            raise ZeroDivisionError("interval contains zero")
        return IntervalValue(1 / self._hi, 1 / self._lo)

    def __repr__(self):
        return f"IntervalValue([{float(self._lo)}, {float(self._hi)}], {self.label})"

    def repr_tag(self) -> str:
        r = (self._hi - self._lo) / 2
        return f"enclosure±{_fraction_to_decimal(r, 40)[:44]}"


def _mpf_tuple_to_fraction(t) -> Fraction:
    sign, man, exp, _ = t
    v = Fraction(int(man)) * Fraction(2) ** exp
    return -v if sign else v


def pi_value() -> IntervalValue:
    def refine(prec: int) -> tuple[Fraction, Fraction]:
        bits = int(prec * 3.33) + 16
        lo = mpmath.libmp.mpf_pi(bits, "d")
        hi = mpmath.libmp.mpf_pi(bits, "u")
        return _mpf_tuple_to_fraction(lo), _mpf_tuple_to_fraction(hi)

    lo, hi = refine(40)
    return IntervalValue(lo, hi, refiner=refine, label="pi")


# ---------------------------------------------------------------------------
# root isolation and parsing
# ---------------------------------------------------------------------------

def isolate_dominant_root(coeffs: Sequence[int | Fraction], search: tuple) -> RealValue:
    """The unique root of the polynomial inside the (open) search interval.

    Exact representation when the squarefree part has degree <= 2;
    otherwise an AlgebraicValue whose enclosure refines by bisection.
    Raises NoRootError / MultipleRootsError when the Sturm count is not 1.
    """
    lo, hi = Fraction(search[0]), Fraction(search[1])
    D = poly_squarefree(poly_from_ints(coeffs))
    if poly_degree(D) < 1:
        raise NoRootError("constant polynomial")
    n = sturm_count(D, lo, hi)
    if n == 0:
        raise NoRootError(f"no root in ({lo}, {hi})")
    if n > 1:
        raise MultipleRootsError(f"{n} roots in ({lo}, {hi})")
    if poly_degree(D) == 1:
        return RationalValue(-D[0] / D[1])
    if poly_degree(D) == 2:
        # clear denominators: A x^2 + B x + C with integers
        m = 1
        for c in D:
            m = m * c.denominator // gcd(m, c.denominator)
        C0, B0, A0 = (int(c * m) for c in D)
        disc = B0 * B0 - 4 * A0 * C0
        if disc < 0:
            raise NoRootError("complex roots only")
        s, d0 = _square_free_split(disc) if disc > 0 else (0, 0)
        for sgn in (1, -1):
            if d0 <= 1:
                val: RealValue = RationalValue(Fraction(-B0 + sgn * s, 2 * A0))
            else:
                val = quadratic(-B0, sgn * s, d0, 2 * A0)
            if (val - lo).sign() > 0 and (val - hi).sign() < 0:
                return val
        raise InternalInvariantError("Sturm says one root but neither quadratic root is inside")
    ctx = AlgebraicContext(coeffs, lo, hi)
    return AlgebraicValue.root(ctx)


_QUAD_RE = re.compile(
    r"^\(\s*(-?\d+)\s*([+-])\s*(\d+)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*\)\s*/\s*(\d+)$")
_DEC_RE = re.compile(r"^(-?\d+(?:\.\d+)?)(?:@(\d+))?$")
_POLY_RE = re.compile(r"^\[([-\d,\s/]+)\]@\(([^,]+),([^)]+)\)$")


def _fraction_from_decimal(text: str) -> Fraction:
    return Fraction(text.replace(" ", ""))


def parse_real(spec: str) -> RealValue:
    """Parse the CLI number grammar.

    ``int:3``  ``rat:3/2``  ``quad:(1+1*sqrt(5))/2``  ``quad:sqrt(7)``  ``pi``
    ``poly:[-1,-1,0,1]@(1.3,1.4)``  ``dec:1.32471795724@60``; bare integers
    and fractions are accepted as conveniences.
    """
    spec = spec.strip()
    if spec == "pi":
        return pi_value()
    if spec.startswith("int:"):
        return RationalValue(int(spec[4:]))
    if spec.startswith("rat:"):
        return RationalValue(Fraction(spec[4:]))
    if spec.startswith("quad:"):
        body = spec[5:].strip()
        m = re.match(r"^sqrt\(\s*(\d+)\s*\)$", body)
        if m:
            return quadratic(0, 1, int(m.group(1)), 1)
        m = _QUAD_RE.match(body)
        if m:
            a, sgn, b, d, c = m.groups()
            bb = int(b) if sgn == "+" else -int(b)
            return quadratic(int(a), bb, int(d), int(c))
        raise ValueError(f"bad quadratic spec {spec!r}; want quad:(A+B*sqrt(D))/C")
    if spec.startswith("poly:"):
        m = _POLY_RE.match(spec[5:].replace(" ", ""))
        if m:
            coeffs = [Fraction(part) for part in m.group(1).split(",")]
            lo = _fraction_from_decimal(m.group(2))
            hi = _fraction_from_decimal(m.group(3))
            return isolate_dominant_root(coeffs, (lo, hi))
        raise ValueError(f"bad poly spec {spec!r}; want poly:[c0,c1,...]@(lo,hi)")
    if spec.startswith("dec:"):
        m = _DEC_RE.match(spec[4:])
        if m:
            mid = _fraction_from_decimal(m.group(1))
            prec = int(m.group(2)) if m.group(2) else 40
            r = Fraction(1, 10 ** prec)
            return IntervalValue(mid - r, mid + r, label=f"dec:{m.group(1)}@{prec}")
        raise ValueError(f"bad dec spec {spec!r}")
    # bare rational / integer
    try:
        return RationalValue(Fraction(spec))
    except ValueError:
        raise ValueError(f"unrecognized number spec {spec!r}") from None


def ensure_beta(v: RealValue) -> RealValue:
    """Validate beta > 1 (refining validated reals as needed)."""
    s = (v - 1).sign() if not isinstance(v, IntervalValue) else None
    if s is not None:
        if s <= 0:
            raise ValueError("beta must be > 1")
        return v
    for prec in _prec_ladder(40):
        lo, hi = v.bounds(prec)
        if lo > 1:
            return v
        if hi <= 1:
            raise ValueError("beta must be > 1")
        if not v.is_refinable():
            break
    raise PrecisionExhausted("cannot certify beta > 1", needed_digits=precision_cap())


def parse_beta(spec: str) -> RealValue:
    return ensure_beta(parse_real(spec))


# ---------------------------------------------------------------------------
# words as numbers
# ---------------------------------------------------------------------------

def value_like(beta: RealValue, f) -> RealValue:
    """A constant of beta's representation kind."""
    return beta._from_fraction(Fraction(f))


def eval_word(w: Word | EpWord, beta: RealValue) -> RealValue:
    """(w)_beta = sum w_i / beta^i, exact in beta's own arithmetic.

    Finite words are evaluated as w 0^omega; eventually periodic words via
    the geometric series closed form.
    """
    inv = value_like(beta, 1) / beta
    if isinstance(w, Word):
        return _eval_finite(w, beta, inv)
    pre_val = _eval_finite(w.pre, beta, inv)
    per_num = value_like(beta, 0)
    for a in w.per:
        per_num = per_num * beta + a  # builds sum per_i beta^{L-i}
    per_val = per_num / ((beta ** len(w.per)) - 1)
    return pre_val + (inv ** len(w.pre)) * per_val


def _eval_finite(w: Word, beta: RealValue, inv: RealValue) -> RealValue:
    acc = value_like(beta, 0)
    for a in reversed(w.letters):
        acc = (acc + a) * inv
    return acc


def compare(x: RealValue, y: RealValue, *, max_prec: int | None = None) -> int:
    """-1, 0, +1.  Exact within a representation; across representations it
    refines enclosures until they separate (PrecisionExhausted if they never
    do before the cap — cross-representation equality is not decided here)."""
    diff = _try_exact_diff(x, y)
    if diff is not None:
        return diff.sign()
    cap = max_prec or precision_cap()
    prec = 30
    while prec <= cap:
        xlo, xhi = x.bounds(prec)
        ylo, yhi = y.bounds(prec)
        if xhi < ylo:
            return -1
        if yhi < xlo:
            return 1
        if xlo == xhi and ylo == yhi:
            return 0 if xlo == ylo else (-1 if xlo < ylo else 1)
        prec *= 2
    raise PrecisionExhausted(
        "values indistinguishable at the precision cap", needed_digits=cap)


def _try_exact_diff(x: RealValue, y: RealValue) -> RealValue | None:
    try:
        d = x - y
    except TypeError:
        return None
    if d is NotImplemented:
        d = -(y - x) if (y - x) is not NotImplemented else None
    if d is None or d is NotImplemented:
        return None
    if isinstance(d, IntervalValue):
        return None
    return d
