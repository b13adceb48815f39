"""Mechanical (Sturmian/periodic) words, Christoffel words, balance, and
the mechanical/skew classification of eventually periodic words.

Lower/upper mechanical words come from floor/ceiling differences of
alpha*n + rho; rational slopes give purely periodic words whose primitive
period is the Christoffel word a.z.b (lower) / b.z.a (upper) with z the
central word.  An infinite balanced binary word is mechanical or skew
(Morse-Hedlund); unbalanced words carry a palindrome witness u with both
a.u.a and b.u.b as factors (Coven-Hedlund).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, gcd
from typing import Union

from .errors import PrecisionExhausted
from .numerics import RationalValue, RealValue
from .words import EpWord, Word

LOWER = "lower"
UPPER = "upper"


@dataclass(frozen=True)
class MechSpec:
    """Slope/intercept description of a mechanical word."""

    slope: Fraction | RealValue
    intercept: Fraction | RealValue = Fraction(0)
    flavor: str = LOWER

    def __post_init__(self):
        if self.flavor not in (LOWER, UPPER):
            raise ValueError(f"flavor must be {LOWER!r} or {UPPER!r}")


@dataclass(frozen=True)
class Mechanical:
    slope: Fraction
    representative: EpWord  # the intercept-0 orbit representative


@dataclass(frozen=True)
class Skew:
    slope: Fraction
    preperiod_len: int


@dataclass(frozen=True)
class Unbalanced:
    witness: Word | None  # palindrome u with aua, bub factors (binary words)


Classification = Union[Mechanical, Skew, Unbalanced]


def _floor_term(slope, intercept, n: int) -> int:
    v = slope * n + intercept
    if not isinstance(v, RealValue):
        return math.floor(v)
    f, _ = v.floor_with_hit()
    return f


def _ceil_term(slope, intercept, n: int) -> int:
    if isinstance(slope, Fraction) and isinstance(intercept, Fraction):
        return math.ceil(slope * n + intercept)
    v = slope * n + intercept
    if not isinstance(v, RealValue):
        return math.ceil(v)
    f, hit = v.floor_with_hit()
    return f if hit else f + 1


def _coerce_param(x):
    if isinstance(x, RationalValue):
        return x.value
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return x


def mechanical_prefix(spec: MechSpec, n: int) -> Word:
    """First n letters of s_{alpha,rho} (lower) or s'_{alpha,rho} (upper)."""
    slope = _coerce_param(spec.slope)
    rho = _coerce_param(spec.intercept)
    term = _floor_term if spec.flavor == LOWER else _ceil_term
    vals = [term(slope, rho, k) for k in range(n + 1)]
    return Word(vals[k + 1] - vals[k] for k in range(n))


def mechanical_word(slope: Fraction, flavor: str = LOWER) -> EpWord:
    """Purely periodic mechanical word of rational slope, intercept 0."""
    slope = Fraction(slope)
    if slope < 0:
        raise ValueError("slope must be >= 0")
    if slope.denominator == 1:
        return EpWord.constant(int(slope))
    q = slope.denominator
    period = mechanical_prefix(MechSpec(slope, Fraction(0), flavor), q)
    return EpWord((), period)


def christoffel(p: int, q: int, letters: tuple[int, int] | None = None
                ) -> tuple[Word, Word, Word]:
    """(lower, upper, central) Christoffel words of slope p/q.

    Default letters are ceil(p/q)-1 and ceil(p/q); pass `letters` to
    transpose onto another consecutive pair.
    """
    if q < 1 or gcd(p, q) != 1:
        raise ValueError(f"need coprime p, q with q >= 1: got {p}/{q}")
    if q == 1:
        raise ValueError("integer slope has no Christoffel factorization")
    slope = Fraction(p, q)
    lower = Word(mechanical_word(slope, LOWER).per.letters)
    upper = Word(mechanical_word(slope, UPPER).per.letters)
    if letters is not None:
        a_new, b_new = letters
        if b_new != a_new + 1:
            raise ValueError("letters must be consecutive")
        a_old = ceil(slope) - 1
        lower = Word(a_new + (x - a_old) for x in lower)
        upper = Word(a_new + (x - a_old) for x in upper)
    central = lower[1:-1]
    return lower, upper, central


def characteristic_prefix(slope, n: int) -> Word:
    """First n letters of the characteristic word c_alpha (drop the first
    letter of s_{alpha,0})."""
    slope = _coerce_param(slope)
    if isinstance(slope, Fraction) and slope.denominator == 1:
        raise ValueError("characteristic word needs a non-integer slope")
    return mechanical_prefix(MechSpec(slope, Fraction(0), LOWER), n + 1)[1:]


# ---------------------------------------------------------------------------
# balance and classification
# ---------------------------------------------------------------------------

def _count_spread(w: EpWord, b: int, n: int) -> tuple[int, int]:
    facs = w.factors(n)
    counts = [f.occurrences(b) for f in facs]
    return min(counts), max(counts)


def _unbalance_witness(w: EpWord, a: int, b: int, max_len: int) -> Word | None:
    """Palindrome u with a.u.a and b.u.b both factors (Coven-Hedlund)."""
    for n in range(2, max_len + 3):
        facs = w.factors(n)
        for f in facs:
            u = f[1:-1]
            if not u.is_palindrome():
                continue
            if f[0] == a and f[-1] == a and Word((b,)) + u + Word((b,)) in facs:
                return u
    return None


def is_balanced(w: EpWord) -> bool | Word:
    """True, or the Coven-Hedlund witness u when the word is unbalanced.

    Exact for eventually periodic words: any imbalance shows up at factor
    lengths <= |pre| + 2|per| (cross-checked against brute force in tests).
    """
    alph = sorted(w.alphabet())
    if len(alph) <= 1:
        return True
    if len(alph) > 2:
        raise ValueError(f"balance is defined for binary words, got alphabet {alph}")
    a, b = alph
    bound = len(w.pre) + 2 * len(w.per)
    for n in range(1, bound + 1):
        lo, hi = _count_spread(w, b, n)
        if hi - lo > 1:
            witness = _unbalance_witness(w, a, b, bound)
            if witness is None:
                raise RuntimeError(f"imbalance at length {n} but no witness found in {w!r}")
            return witness
    return True


def classify_balanced(w: EpWord) -> Classification:
    """Mechanical / Skew / Unbalanced verdict for an eventually periodic word.

    Mechanical means the canonical form is purely periodic with the period a
    rotation of a Christoffel word (all intercepts share that shift orbit);
    balanced with a genuine preperiod is skew.  Words over non-consecutive
    or >2 letters are not mechanical over integer digits and get an
    Unbalanced verdict (witness only exists in the consecutive binary case).
    """
    alph = sorted(w.alphabet())
    if len(alph) == 1:
        return Mechanical(Fraction(alph[0]), EpWord.constant(alph[0]))
    if len(alph) != 2 or alph[1] != alph[0] + 1:
        return Unbalanced(witness=None)
    a, b = alph
    verdict = is_balanced(w)
    if verdict is not True:
        return Unbalanced(witness=verdict)
    period = w.per
    slope = Fraction(a) + Fraction(period.occurrences(b), len(period))
    if not w.is_purely_periodic():
        return Skew(slope=slope, preperiod_len=len(w.pre))
    if slope.denominator == 1:
        return Mechanical(slope, EpWord.constant(int(slope)))
    # balanced purely periodic: period must be a rotation of the Christoffel word
    lower, _, _ = christoffel(slope.numerator, slope.denominator)
    if not _is_rotation(period.letters, lower.letters):
        raise RuntimeError(f"balanced periodic word {w!r} is not a Christoffel rotation")
    return Mechanical(slope=slope, representative=mechanical_word(slope, LOWER))


def _is_rotation(u: tuple[int, ...], v: tuple[int, ...]) -> bool:
    if len(u) != len(v):
        return False
    return any(v[k:] + v[:k] == u for k in range(len(v)))


def is_lower_christoffel(word: Word) -> Fraction | None:
    """The slope p/q if `word` is exactly t_{p,q} (intercept-0 lower period)."""
    return _christoffel_slope(word, LOWER)


def is_upper_christoffel(word: Word) -> Fraction | None:
    return _christoffel_slope(word, UPPER)


def _christoffel_slope(word: Word, flavor: str) -> Fraction | None:
    alph = sorted(word.alphabet())
    if len(alph) == 1 and len(word) == 1:
        return Fraction(alph[0])
    if len(alph) != 2 or alph[1] != alph[0] + 1:
        return None
    a, b = alph
    if math.gcd(word.occurrences(b), len(word)) != 1:
        return None
    slope = Fraction(a) + Fraction(word.occurrences(b), len(word))
    candidate = mechanical_word(slope, flavor).per
    return slope if candidate == word else None


# ---------------------------------------------------------------------------
# skew-word generation (test vectors)
# ---------------------------------------------------------------------------

def _apply_morphism_word(images: dict[int, tuple[int, ...]], w: tuple[int, ...]) -> tuple[int, ...]:
    out: list[int] = []
    for x in w:
        out.extend(images[x])
    return tuple(out)


def skew_epword(script: str, l: int, x: int, y: int, a: int = 0, b: int = 1) -> EpWord:
    """mu(x^l y x^omega) where mu composes the standard morphisms named in
    `script` ('a' for psi_a, 'b' for psi_b, applied left-to-right as written,
    i.e. script 'ab' means psi_a o psi_b).

    psi_a: a->a, b->ab;  psi_b: a->ba, b->b.  Suffixes of these words (minus
    the purely periodic ones) are exactly the skew words.
    """
    if {x, y} != {a, b}:
        raise ValueError("x, y must enumerate the two letters")
    pre: tuple[int, ...] = (x,) * l + (y,)
    per: tuple[int, ...] = (x,)
    for name in reversed(script):
        if name == "a":
            images = {a: (a,), b: (a, b)}
        elif name == "b":
            images = {a: (b, a), b: (b,)}
        else:
            raise ValueError(f"script letters must be 'a' or 'b': {script!r}")
        pre = _apply_morphism_word(images, pre)
        per = _apply_morphism_word(images, per)
    return EpWord(pre, per)


def skew_word(script: str, l: int, x: int, y: int, n: int, a: int = 0, b: int = 1) -> Word:
    """Length-n prefix of mu(x^l y x^omega); a generator of skew test vectors."""
    return skew_epword(script, l, x, y, a, b).prefix(n)
