"""Finite words, eventually periodic words, lazy digit streams, lexicographic order.

Letters are plain nonnegative ints.  Finite words embed into infinite words
as w0^omega for comparison purposes.  EpWord is kept in canonical form
(primitive period, minimal preperiod) so that structural equality is
word equality.

Text grammar: letters are comma-free decimal digits while every letter is
< 10 (``01101``), comma-separated otherwise (``10,0,11``).  An eventually
periodic word is written ``pre|per`` (``1|10`` for 1(10)^omega, ``|per``
for purely periodic).
"""

from __future__ import annotations

import enum
import itertools
from math import gcd
from typing import Callable, Iterable, Iterator, Union

from .errors import InternalInvariantError

Letter = int


class Ordering(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1
    UNDECIDED = 2  # ran out of horizon on a stream comparison


def _letters_from_text(text: str) -> tuple[int, ...]:
    if text == "":
        return ()
    if "," in text:
        return tuple(int(part) for part in text.split(","))
    return tuple(int(ch) for ch in text)


def _letters_to_text(letters: tuple[int, ...]) -> str:
    if any(a >= 10 for a in letters):
        return ",".join(str(a) for a in letters)
    return "".join(str(a) for a in letters)


class Word:
    """Immutable finite word over nonnegative integer letters."""

    __slots__ = ("_letters",)

    def __init__(self, letters: Iterable[int] = ()):
        ls = tuple(int(a) for a in letters)
        if any(a < 0 for a in ls):
            raise ValueError(f"letters must be nonnegative: {ls}")
        self._letters = ls

    @classmethod
    def from_text(cls, text: str) -> "Word":
        return cls(_letters_from_text(text))

    @property
    def letters(self) -> tuple[int, ...]:
        return self._letters

    def __len__(self) -> int:
        return len(self._letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self._letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self._letters[i])
        return self._letters[i]

    def __add__(self, other: "Word") -> "Word":
        return Word(self._letters + Word._coerce(other)._letters)

    def __mul__(self, n: int) -> "Word":
        return Word(self._letters * n)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self._letters == other._letters

    def __hash__(self) -> int:
        return hash(("Word", self._letters))

    def __repr__(self) -> str:
        return f"Word({self.to_text()!r})"

    def to_text(self) -> str:
        return _letters_to_text(self._letters)

    @staticmethod
    def _coerce(w) -> "Word":
        if isinstance(w, Word):
            return w
        return Word(w)

    def reversal(self) -> "Word":
        return Word(self._letters[::-1])

    def is_palindrome(self) -> bool:
        return self._letters == self._letters[::-1]

    def occurrences(self, a: int) -> int:
        return self._letters.count(a)

    def alphabet(self) -> set[int]:
        return set(self._letters)


EMPTY = Word()


def _primitive_root(letters: tuple[int, ...]) -> tuple[int, ...]:
    """Shortest u with letters == u^k, via the KMP prefix function."""
    n = len(letters)
    if n <= 1:
        return letters
    pi = [0] * n
    k = 0
    for q in range(1, n):
        while k > 0 and letters[k] != letters[q]:
            k = pi[k - 1]
        if letters[k] == letters[q]:
            k += 1
        pi[q] = k
    p = n - pi[-1]
    if p < n and n % p == 0:
        return letters[:p]
    return letters


class EpWord:
    """Eventually periodic infinite word pre . per^omega in canonical form.

    Canonical = the period is primitive and the preperiod is minimal (its
    last letter differs from the letter one period earlier), so two EpWords
    denote the same infinite word iff they are structurally equal.
    """

    __slots__ = ("_pre", "_per")

    def __init__(self, pre: Iterable[int] | Word = (), per: Iterable[int] | Word = ()):
        pre_t = Word._coerce(pre).letters
        per_t = Word._coerce(per).letters
        if not per_t:
            raise ValueError("period must be nonempty")
        per_t = _primitive_root(per_t)
        pre_l = list(pre_t)
        per_l = list(per_t)
        # absorb a suffix-consistent overhang: move the boundary left while
        # the last preperiod letter matches the letter one period earlier
        while pre_l and pre_l[-1] == per_l[-1]:
            per_l.insert(0, per_l.pop())
            pre_l.pop()
        self._pre = Word(pre_l)
        self._per = Word(per_l)

    @classmethod
    def from_text(cls, text: str) -> "EpWord":
        if "|" not in text:
            raise ValueError(f"EpWord text must contain '|': {text!r}")
        pre, per = text.split("|", 1)
        return cls(_letters_from_text(pre), _letters_from_text(per))

    @classmethod
    def constant(cls, a: int) -> "EpWord":
        return cls((), (a,))

    @property
    def pre(self) -> Word:
        return self._pre

    @property
    def per(self) -> Word:
        return self._per

    def is_purely_periodic(self) -> bool:
        return len(self._pre) == 0

    def letter(self, i: int) -> int:
        np = len(self._pre)
        if i < np:
            return self._pre[i]
        return self._per[(i - np) % len(self._per)]

    def prefix(self, n: int) -> Word:
        return Word(self.letter(i) for i in range(n))

    def shift(self, n: int = 1) -> "EpWord":
        np = len(self._pre)
        if n <= np:
            return EpWord(self._pre.letters[n:], self._per)
        k = (n - np) % len(self._per)
        return EpWord((), self._per.letters[k:] + self._per.letters[:k])

    def shifts(self) -> list["EpWord"]:
        """All distinct shifts (there are at most |pre| + |per| of them)."""
        return [self.shift(n) for n in range(len(self._pre) + len(self._per))]

    def alphabet(self) -> set[int]:
        return set(self._pre.letters) | set(self._per.letters)

    def factors(self, n: int) -> set[Word]:
        """Exact set of length-n factors of the infinite word.

        Window = preperiod + enough periods to provably capture every factor.
        """
        if n < 1:
            raise ValueError("factor length must be >= 1")
        reps = (n - 1) // len(self._per) + 3
        window = self._pre.letters + self._per.letters * reps
        return {Word(window[i:i + n]) for i in range(len(window) - n + 1)}

    def __eq__(self, other) -> bool:
        return isinstance(other, EpWord) and self._pre == other._pre and self._per == other._per

    def __hash__(self) -> int:
        return hash(("EpWord", self._pre.letters, self._per.letters))

    def __repr__(self) -> str:
        return f"EpWord({self.to_text()!r})"

    def to_text(self) -> str:
        return f"{self._pre.to_text()}|{self._per.to_text()}"


class DigitStream:
    """Lazy infinite letter sequence with a materialized prefix cache.

    Reads are stable: letter(i) always returns the same value once produced.
    Generation may raise PrecisionExhausted; it must never silently guess.
    A stream may learn an exact eventually periodic form (cycle detection in
    the generator) which is then reported by as_epword().
    """

    def __init__(self, source: Iterator[int] | None = None, *, epword: EpWord | None = None):
        if source is None and epword is None:
            raise ValueError("need a generator or an EpWord")
        self._cache: list[int] = []
        self._source = source
        self._epword = epword

    def set_epword(self, w: EpWord) -> None:
        """Called by generators once an exact cycle is known."""
        self._epword = w

    def as_epword(self) -> EpWord | None:
        return self._epword

    def letter(self, i: int) -> int:
        if i < len(self._cache):
            return self._cache[i]
        while len(self._cache) <= i:
            if self._epword is not None:
                # exact form known; stop consuming the generator
                return self._epword.letter(i)
            self._cache.append(next(self._source))
        return self._cache[i]

    def prefix(self, n: int) -> Word:
        return Word(self.letter(i) for i in range(n))

    def suffix(self, n: int) -> "ShiftedStream":
        return ShiftedStream(self, n)


class ShiftedStream:
    """Read-only shifted view sigma^n of a DigitStream (shares the cache)."""

    def __init__(self, parent: DigitStream, offset: int):
        if isinstance(parent, ShiftedStream):
            offset += parent._offset
            parent = parent._parent
        self._parent = parent
        self._offset = offset

    def letter(self, i: int) -> int:
        return self._parent.letter(i + self._offset)

    def prefix(self, n: int) -> Word:
        return Word(self.letter(i) for i in range(n))

    def suffix(self, n: int) -> "ShiftedStream":
        return ShiftedStream(self._parent, self._offset + n)

    def as_epword(self) -> EpWord | None:
        w = self._parent.as_epword()
        if w is None:
            return None
        return w.shift(self._offset)


class PrependedWord:
    """The infinite word a . w for a stream-backed w (exact EpWords prepend directly)."""

    def __init__(self, head: Iterable[int] | Word, tail):
        self._head = Word._coerce(head).letters
        self._tail = tail

    def letter(self, i: int) -> int:
        if i < len(self._head):
            return self._head[i]
        return self._tail.letter(i - len(self._head))

    def prefix(self, n: int) -> Word:
        return Word(self.letter(i) for i in range(n))

    def as_epword(self) -> EpWord | None:
        w = self._tail.as_epword() if hasattr(self._tail, "as_epword") else None
        if w is None:
            return None
        return EpWord(self._head + w.pre.letters, w.per)


InfiniteWord = Union[EpWord, DigitStream, ShiftedStream, PrependedWord]
WordLike = Union[Word, EpWord, DigitStream, ShiftedStream, PrependedWord]


def prepend(head: Iterable[int] | Word, w: WordLike) -> WordLike:
    head_w = Word._coerce(head)
    if isinstance(w, Word):
        return head_w + w
    if isinstance(w, EpWord):
        return EpWord(head_w.letters + w.pre.letters, w.per)
    return PrependedWord(head_w, w)


def shift(w: WordLike, n: int = 1):
    """sigma^n; EpWord results are re-canonicalized, streams become views."""
    if n < 0:
        raise ValueError("shift count must be >= 0")
    if isinstance(w, EpWord):
        return w.shift(n)
    if isinstance(w, Word):
        return w[n:]
    return w.suffix(n) if n else w


def _as_epword_operand(w: WordLike) -> EpWord | None:
    if isinstance(w, EpWord):
        return w
    if isinstance(w, Word):
        # finite words embed as w 0^omega
        return EpWord(w, (0,))
    return w.as_epword()


def _lex_compare_exact(ue: EpWord, ve: EpWord) -> Ordering:
    if ue == ve:
        return Ordering.EQ
    bound = max(len(ue.pre), len(ve.pre)) + _lcm(len(ue.per), len(ve.per))
    for i in range(bound):
        x, y = ue.letter(i), ve.letter(i)
        if x != y:
            return Ordering.LT if x < y else Ordering.GT
    raise InternalInvariantError("distinct canonical EpWords agree on their decision window")


def lex_compare(u: WordLike, v: WordLike, horizon: int = 10_000) -> Ordering:
    """Lexicographic comparison; finite words embed as w0^omega.

    Two EpWords (or finite words) compare exactly, no horizon involved.
    When a true stream is involved the comparison scans at most `horizon`
    letters and reports UNDECIDED if no difference showed up.  Streams that
    learn an exact eventually periodic form mid-scan (cycle detection) are
    upgraded to the exact comparison, so equality is decidable for them too.
    """
    ue = _as_epword_operand(u)
    ve = _as_epword_operand(v)
    if ue is not None and ve is not None:
        return _lex_compare_exact(ue, ve)
    uu = ue if ue is not None else u
    vv = ve if ve is not None else v
    i = 0
    while i < horizon:
        x, y = uu.letter(i), vv.letter(i)
        if x != y:
            return Ordering.LT if x < y else Ordering.GT
        i += 1
        if i % 32 == 0:
            ue, ve = _as_epword_operand(u), _as_epword_operand(v)
            if ue is not None and ve is not None:
                return _lex_compare_exact(ue, ve)
    ue, ve = _as_epword_operand(u), _as_epword_operand(v)
    if ue is not None and ve is not None:
        return _lex_compare_exact(ue, ve)
    return Ordering.UNDECIDED


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def stream_from_function(fn: Callable[[int], int]) -> DigitStream:
    return DigitStream(fn(i) for i in itertools.count())


def occurrences(w: Word, a: int) -> int:
    return w.occurrences(a)


def reversal(w: Word) -> Word:
    return w.reversal()


def is_palindrome(w: Word) -> bool:
    return w.is_palindrome()


def factors(w: EpWord, n: int) -> set[Word]:
    return w.factors(n)
