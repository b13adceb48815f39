import itertools
import random

import pytest

from betaorbit.words import EpWord, Ordering, Word, lex_compare, prepend, shift


def W(text):
    return Word.from_text(text)


def E(text):
    return EpWord.from_text(text)


def test_word_text_roundtrip():
    assert W("01101").letters == (0, 1, 1, 0, 1)
    assert W("").letters == ()
    assert W("10,0,11").letters == (10, 0, 11)
    assert W("10,0,11").to_text() == "10,0,11"
    assert W("0123").to_text() == "0123"


def test_word_basics():
    w = W("0110110")  # abbabba
    assert w.occurrences(1) == 4
    assert w.is_palindrome()
    assert w.reversal().reversal() == w
    assert len(w) == sum(w.occurrences(a) for a in w.alphabet())


def test_epword_canonical_forms():
    # primitive period
    assert E("|0101").per == W("01")
    # suffix-consistent overhang absorbed into the period
    assert E("1|01") == E("|10")
    assert E("0|010") == E("|001")
    # genuine preperiod survives
    sk = E("1|10")
    assert sk.pre == W("1") and sk.per == W("10")


def test_epword_equality_is_word_equality():
    assert E("|10") == E("11|01")
    assert E("|10") != E("0|10")


def test_lex_examples_from_corner_cases():
    assert lex_compare(W("010"), E("0100|0")) is Ordering.EQ
    assert lex_compare(E("|01"), E("|10")) is Ordering.LT
    assert lex_compare(E("|10"), E("1|01")) is Ordering.EQ


def test_shift_examples():
    assert shift(E("|01"), 1) == E("|10")
    assert shift(E("1|10"), 1) == E("|10")
    assert shift(E("|001"), 3) == E("|001")
    assert shift(E("11|010"), 4) == E("|100")


def test_factors_exact():
    assert E("|01").factors(2) == {W("01"), W("10")}
    assert E("1|10").factors(2) == {W("11"), W("10"), W("01")}
    assert E("|0011").factors(2) == {W("00"), W("01"), W("11"), W("10")}


def test_factor_window_against_brute_force():
    rng = random.Random(7)
    for _ in range(40):
        pre = tuple(rng.randrange(2) for _ in range(rng.randrange(3)))
        per = tuple(rng.randrange(2) for _ in range(1, rng.randrange(1, 4) + 1))
        if not per:
            per = (0,)
        w = EpWord(pre, per)
        for n in range(1, 6):
            window = [w.letter(i) for i in range(len(w.pre) + 6 * len(w.per) + n + 30)]
            brute = {tuple(window[i:i + n]) for i in range(len(window) - n)}
            assert {f.letters for f in w.factors(n)} == brute


def _all_epwords_binary(max_total):
    out = set()
    for total in range(1, max_total + 1):
        for pre_len in range(total):
            per_len = total - pre_len
            for pre in itertools.product((0, 1), repeat=pre_len):
                for per in itertools.product((0, 1), repeat=per_len):
                    out.add(EpWord(pre, per))
    return sorted(out, key=lambda w: (w.pre.letters, w.per.letters))


def test_total_order_exhaustive_binary():
    words = _all_epwords_binary(4)
    for u in words:
        assert lex_compare(u, u) is Ordering.EQ
        for v in words:
            uv = lex_compare(u, v)
            vu = lex_compare(v, u)
            # antisymmetry
            assert (uv, vu) in ((Ordering.EQ, Ordering.EQ),
                                (Ordering.LT, Ordering.GT),
                                (Ordering.GT, Ordering.LT))


def test_total_order_transitive_sampled_ternary():
    rng = random.Random(11)
    words = []
    for _ in range(60):
        pre = tuple(rng.randrange(3) for _ in range(rng.randrange(3)))
        per = tuple(rng.randrange(3) for _ in range(1, rng.randrange(1, 4) + 1))
        words.append(EpWord(pre, per))
    for _ in range(400):
        u, v, w = rng.choice(words), rng.choice(words), rng.choice(words)
        if lex_compare(u, v) is Ordering.LT and lex_compare(v, w) is Ordering.LT:
            assert lex_compare(u, w) is Ordering.LT


def test_finite_vs_embedded_agreement():
    rng = random.Random(3)
    for _ in range(200):
        u = Word(rng.randrange(2) for _ in range(rng.randrange(5)))
        v = Word(rng.randrange(2) for _ in range(rng.randrange(5)))
        direct = lex_compare(u, v)
        embedded = lex_compare(EpWord(u, (0,)), EpWord(v, (0,)))
        assert direct == embedded


def test_canonicalization_idempotent():
    w = E("110|0110")
    again = EpWord(w.pre, w.per)
    assert again == w
    # shifting a purely periodic word by its period is the identity
    p = E("|0110111")
    assert shift(p, len(p.per)) == p


def test_prepend():
    assert prepend((1,), E("|01")) == E("1|01")
    assert prepend((0,), E("|01")) == E("|001")


def test_bad_letters_rejected():
    with pytest.raises(ValueError):
        Word((-1, 0))
    with pytest.raises(ValueError):
        EpWord((0,), ())
