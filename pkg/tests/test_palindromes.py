import itertools
from math import gcd

import pytest

from betaorbit.oracle import naive_is_central, naive_shortest_palindrome_with_prefix
from betaorbit.palindromes import (
    NotCentralError,
    UnaryPowerError,
    central_decompose,
    directive_word,
    is_central,
    longest_central_prefix,
    pal,
    palindromic_closure,
)
from betaorbit.words import DigitStream, EpWord, Word


def W(text):
    return Word.from_text(text)


def test_closure_examples():
    assert palindromic_closure(W("01101")) == W("0110110")  # (abbab)+ = abbabba
    assert palindromic_closure(W("")) == W("")
    assert palindromic_closure(W("001")) == W("00100")      # aab -> aabaa


def test_closure_matches_brute_force():
    for n in range(0, 13):
        for letters in itertools.product((0, 1), repeat=n):
            got = palindromic_closure(Word(letters)).letters
            want = naive_shortest_palindrome_with_prefix(letters)
            assert got == want
            # idempotent
            assert palindromic_closure(Word(got)).letters == got


def test_pal_examples():
    assert pal(W("")) == W("")
    assert pal(W("0")) == W("0")
    assert pal(W("01")) == W("010")
    assert pal(W("010")) == W("010010")


def test_is_central_examples():
    assert is_central(W("010"))
    assert not is_central(W("0110"))
    assert is_central(W("00000"))
    assert is_central(W(""))
    with pytest.raises(ValueError):
        is_central(W("012"))


def test_is_central_matches_naive_and_pal_image():
    images = set()
    for n in range(0, 9):
        for v in itertools.product((0, 1), repeat=n):
            w = pal(Word(v))
            if len(w) <= 12:
                images.add(w.letters)
    for n in range(0, 13):
        for letters in itertools.product((0, 1), repeat=n):
            verdict = is_central(Word(letters))
            assert verdict == naive_is_central(letters)
            if n <= 12 and verdict and len(set(letters)) == 2:
                assert letters in images  # central <=> image of Pal


def test_central_decompose_examples():
    d = central_decompose(W("010"))
    assert d.p == W("") and d.q == W("0") and (d.a, d.b) == (0, 1)
    d = central_decompose(W("00100"))
    assert d.p == W("0") and d.q == W("00")
    with pytest.raises(UnaryPowerError):
        central_decompose(W("0000"))
    with pytest.raises(NotCentralError):
        central_decompose(W("0110"))


def _central_words(max_len):
    seen = set()
    for n in range(0, max_len):
        for v in itertools.product((0, 1), repeat=n):
            w = pal(Word(v))
            if len(w) <= max_len:
                seen.add(w)
    return seen


def test_directive_roundtrip_up_to_10():
    for n in range(0, 11):
        for v in itertools.product((0, 1), repeat=n):
            w = pal(Word(v))
            assert is_central(w)
            assert directive_word(w) == Word(v)


def test_coprime_periods_and_letterwise_periods():
    for w in _central_words(14):
        if len(set(w.letters)) != 2:
            continue
        d = central_decompose(w)
        p1, p2 = len(d.p) + 2, len(d.q) + 2
        assert gcd(p1, p2) == 1
        for period in (p1, p2):
            for i in range(len(w) - period):
                assert w[i] == w[i + period]


def test_prefix_property_lemma3():
    # for central w = pabq = qbap: w.ab.q is a prefix of (qba)^om, w.ba.p of (pab)^om
    for w in _central_words(14):
        if len(set(w.letters)) != 2:
            continue
        d = central_decompose(w)
        a, b = d.a, d.b
        left = w + Word((a, b)) + d.q
        right = w + Word((b, a)) + d.p
        qba = EpWord((), d.q.letters + (b, a))
        pab = EpWord((), d.p.letters + (a, b))
        assert left.letters == tuple(qba.letter(i) for i in range(len(left)))
        assert right.letters == tuple(pab.letter(i) for i in range(len(right)))


def test_longest_central_prefix_examples():
    # beta = 3/2 tail: s = 0100000010010..., u = 010
    s = EpWord((0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0), (0,))
    u, sat = longest_central_prefix(s, 0, 1, 64)
    assert u == W("010") and not sat
    # sqrt7 tail: s = 112020102..., over {1,2}: u = 11
    s = EpWord((1, 1, 2, 0, 2, 0, 1, 0, 2), (0,))
    u, sat = longest_central_prefix(s, 1, 2, 64)
    assert u == W("11") and not sat
    # characteristic word of slope 1/2 never stops growing central prefixes
    s = EpWord((), (0, 1))
    u, sat = longest_central_prefix(s, 0, 1, 50)
    assert sat and len(u) >= 3


def test_longest_central_prefix_first_letter_outside():
    s = EpWord((2, 0, 1), (0,))
    u, sat = longest_central_prefix(s, 0, 1, 16)
    assert u == W("") and not sat
