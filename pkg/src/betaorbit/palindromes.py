"""Palindromic closure, the Pal operator, central words, and central prefixes.

Central words over {a, b} (b = a + 1 in all dynamical uses, but the
combinatorics only needs two distinct letters) are the palindromic cores of
Christoffel words: a word is central iff it is a power of a single letter or
a palindrome of the form p.ab.q = q.ba.p with p, q palindromes.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import BetaOrbitError
from .words import Word

__all__ = [
    "CentralDecomp",
    "NotCentralError",
    "UnaryPowerError",
    "palindromic_closure",
    "pal",
    "is_central",
    "central_decompose",
    "directive_word",
    "longest_central_prefix",
]


class NotCentralError(BetaOrbitError):
    pass


class UnaryPowerError(BetaOrbitError):
    pass


@dataclass(frozen=True)
class CentralDecomp:
    """w = p.ab.q = q.ba.p with p, q palindromes; |p|+2 and |q|+2 are coprime periods."""

    w: Word
    p: Word
    q: Word
    a: int
    b: int


def _longest_palindromic_suffix_start(letters: tuple[int, ...]) -> int:
    n = len(letters)
    for start in range(n):
        seg = letters[start:]
        if seg == seg[::-1]:
            return start
    return n


def palindromic_closure(w: Word) -> Word:
    """w^+ : the unique shortest palindrome having w as a prefix."""
    ls = w.letters
    start = _longest_palindromic_suffix_start(ls)
    return Word(ls + ls[:start][::-1])


def pal(directive: Word) -> Word:
    """Iterated palindromic closure Pal(v), one letter of v at a time."""
    out = Word()
    for z in directive:
        out = palindromic_closure(out + Word((z,)))
    return out


def _split_pabq(w: Word, a: int, b: int) -> tuple[Word, Word] | None:
    ls = w.letters
    for i in range(len(ls) - 1):
        if ls[i] == a and ls[i + 1] == b:
            p, q = Word(ls[:i]), Word(ls[i + 2:])
            if p.is_palindrome() and q.is_palindrome():
                return p, q
    return None


def is_central(w: Word) -> bool:
    """True iff w is a power of a single letter or lies in P ∩ P.ab.P."""
    alph = sorted(w.alphabet())
    if len(alph) <= 1:
        return True
    if len(alph) != 2:
        raise ValueError(f"central words are unary or binary, got alphabet {alph}")
    if not w.is_palindrome():
        return False
    a, b = alph
    return _split_pabq(w, a, b) is not None


def central_decompose(w: Word) -> CentralDecomp:
    """The unique palindromes p, q with w = p.ab.q = q.ba.p (Prop. on central words)."""
    alph = sorted(w.alphabet())
    if len(alph) <= 1:
        raise UnaryPowerError(f"{w!r} is a power of a single letter")
    if len(alph) != 2 or not w.is_palindrome():
        raise NotCentralError(f"{w!r} is not central")
    a, b = alph
    split = _split_pabq(w, a, b)
    if split is None:
        raise NotCentralError(f"{w!r} is not central")
    p, q = split
    if (q + Word((b, a)) + p).letters != w.letters:
        raise NotCentralError(f"{w!r} is not central (pabq found but qbap mismatch)")
    return CentralDecomp(w=w, p=p, q=q, a=a, b=b)


def directive_word(w: Word) -> Word:
    """Invert Pal on a central word by walking its palindromic prefixes."""
    if not is_central(w):
        raise NotCentralError(f"{w!r} is not central")
    directive: list[int] = []
    cur = Word()
    while len(cur) < len(w):
        z = w[len(cur)]
        directive.append(z)
        cur = palindromic_closure(cur + Word((z,)))
        if cur.letters != w.letters[: len(cur)]:
            raise NotCentralError(f"{w!r} is not central (prefix walk failed)")
    return Word(directive)


def coprime_periods(w: Word) -> tuple[int, int]:
    """The two coprime periods |p|+2, |q|+2 of a non-unary central word."""
    d = central_decompose(w)
    pp, qq = len(d.p) + 2, len(d.q) + 2
    if gcd(pp, qq) != 1:
        raise NotCentralError(f"periods {pp}, {qq} of {w!r} are not coprime")
    return pp, qq


def longest_central_prefix(s, a: int, b: int, max_len: int) -> tuple[Word, bool]:
    """Longest central prefix of the infinite word s over {a, b}.

    Grows the current central prefix u by palindromic closure with the next
    letter of s, verifying each candidate against the actual digits.  Returns
    (u, saturated); saturated means the search hit max_len while u might
    still extend (the Sturmian-characteristic situation), so callers can
    retry with a larger budget instead of trusting a truncated answer.
    """
    if b != a + 1:
        raise ValueError("letters must be consecutive (b = a + 1)")
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    u = Word()
    while True:
        z = s.letter(len(u))
        if z != a and z != b:
            return u, False
        candidate = palindromic_closure(u + Word((z,)))
        if len(candidate) > max_len:
            return u, True
        ok = True
        for i in range(len(u), len(candidate)):
            if s.letter(i) != candidate[i]:
                ok = False
                break
        if not ok:
            return u, False
        u = candidate
