"""Brute-force cross-checks, deliberately independent of the main code paths.

Balance, centrality, lexicographic comparison and orbit simulation are
reimplemented naively here (letter lists and exhaustive scans) so that
agreement with the word-combinatorics machinery actually means something.
Only the exact number arithmetic is shared; it is infrastructure, not the
part under test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .numerics import RationalValue, RealValue, value_like
from .words import DigitStream, EpWord, Word


@dataclass
class OrbitSim:
    points: list
    vmin: RealValue
    vmax: RealValue
    cycle_closed: bool
    cycle_start: int | None = None

    def diameter(self):
        return self.vmax - self.vmin


def _bar_step(x: RealValue, beta: RealValue) -> RealValue:
    v = beta * x
    n, hit = v.floor_with_hit()
    if hit:
        return value_like(beta, 1)
    return v - n


def _key(x: RealValue):
    if isinstance(x, RationalValue):
        return x.value
    if hasattr(x, "a") and hasattr(x, "d"):
        return (x.a, x.b, x.c, x.d)
    if hasattr(x, "poly"):
        return ("alg", x.ctx.reduce(x.poly))
    return None


def simulate_orbit(x0, beta: RealValue, steps: int) -> OrbitSim:
    """Iterate Tbar exactly (for exact number kinds) and track min/max."""
    if isinstance(x0, (int, Fraction)):
        x0 = RationalValue(x0)
    x = x0 if isinstance(x0, RationalValue) and isinstance(beta, RationalValue) \
        else value_like(beta, x0.value) if isinstance(x0, RationalValue) else x0
    pts = [x]
    seen = {_key(x): 0}
    closed, start = False, None
    for i in range(steps):
        x = _bar_step(x, beta)
        k = _key(x)
        if k is not None and k in seen:
            closed, start = True, seen[k]
            break
        if k is not None:
            seen[k] = len(pts)
        pts.append(x)
    vmin = vmax = pts[0]
    for p in pts[1:]:
        if (p - vmin).sign() < 0:
            vmin = p
        if (p - vmax).sign() > 0:
            vmax = p
    return OrbitSim(points=pts, vmin=vmin, vmax=vmax, cycle_closed=closed, cycle_start=start)


# ---------------------------------------------------------------------------
# naive word utilities (independent of betaorbit.words comparison logic)
# ---------------------------------------------------------------------------

def ep_letters(pre: tuple[int, ...], per: tuple[int, ...], n: int) -> list[int]:
    out = list(pre)
    while len(out) < n:
        out.extend(per)
    return out[:n]


def naive_less(u: list[int], v: list[int]) -> bool | None:
    """u < v on the common length; None when equal so far."""
    for x, y in zip(u, v):
        if x != y:
            return x < y
    return None


def naive_balance_violation(letters: list[int], b: int, max_len: int) -> int | None:
    """Smallest factor length with b-count spread > 1, scanning a plain list."""
    for n in range(1, max_len + 1):
        counts = [sum(1 for c in letters[i:i + n] if c == b)
                  for i in range(len(letters) - n + 1)]
        if counts and max(counts) - min(counts) > 1:
            return n
    return None


def naive_is_central(letters: tuple[int, ...]) -> bool:
    """Centrality by definition: unary power, or palindrome p.ab.q = q.ba.p."""
    alph = sorted(set(letters))
    if len(alph) <= 1:
        return True
    if len(alph) != 2:
        return False
    if letters != letters[::-1]:
        return False
    a, b = alph
    for i in range(len(letters) - 1):
        if letters[i] == a and letters[i + 1] == b:
            p, q = letters[:i], letters[i + 2:]
            if p == p[::-1] and q == q[::-1] and q + (b, a) + p == letters:
                return True
    return False


def naive_shortest_palindrome_with_prefix(letters: tuple[int, ...]) -> tuple[int, ...]:
    n = len(letters)
    for total in range(n, 2 * n):
        # a palindrome of length `total` with our prefix is fully determined
        cand = list(letters) + [0] * (total - n)
        for i in range(total):
            j = total - 1 - i
            if i < n:
                cand[j] = cand[i]
        cand_t = tuple(cand)
        if cand_t[:n] == letters and cand_t == cand_t[::-1]:
            return cand_t
    return letters  # already a palindrome (total == n covers this)


def _dbar_one_digits(beta: Fraction, n: int) -> tuple[list[int], tuple[int, int] | None]:
    """First n digits of dbar_beta(1) by direct Fraction iteration, plus the
    (preperiod, period) split if the exact state recurs within n steps."""
    x = Fraction(1)
    digits: list[int] = []
    seen = {x: 0}
    cycle = None
    for i in range(n):
        v = beta * x
        if v.denominator == 1:
            d = int(v) - 1
            x = Fraction(1)
        else:
            d = v.numerator // v.denominator
            x = v - d
        digits.append(d)
        if cycle is None:
            if x in seen:
                cycle = (seen[x], i + 1)
            else:
                seen[x] = i + 1
    return digits, cycle


def enumerate_admissible_epwords(beta: RationalValue | Fraction, max_pre: int, max_per: int,
                                 horizon: int = 600) -> list[EpWord]:
    """All canonical EpWords over A_beta whose every shift passes the strict
    Parry test against dbar_beta(1) (naive digit-list comparison).

    Comparisons undecided at the horizon are conservatively rejected.
    """
    beta = beta.value if isinstance(beta, RationalValue) else Fraction(beta)
    top = _alphabet_top(beta)
    d1, cycle = _dbar_one_digits(beta, horizon)
    results: list[EpWord] = []
    seen: set[EpWord] = set()
    for pre_len in range(max_pre + 1):
        for per_len in range(1, max_per + 1):
            for pre in product(range(top + 1), repeat=pre_len):
                for per in product(range(top + 1), repeat=per_len):
                    w = EpWord(pre, per)
                    if w in seen:
                        continue
                    seen.add(w)
                    if len(w.pre) > max_pre or len(w.per) > max_per:
                        continue
                    if _all_shifts_strictly_below(w, d1, cycle, horizon):
                        results.append(w)
    return results


def enumerate_periodic_orbit_words(beta: RationalValue | Fraction, max_per: int,
                                   horizon: int = 600) -> list[EpWord]:
    """Purely periodic words (0^omega excluded) whose shifts are all <= the
    expansion of 1: the generators of periodic invariant Tbar-orbit closures."""
    beta = beta.value if isinstance(beta, RationalValue) else Fraction(beta)
    top = _alphabet_top(beta)
    d1, cycle = _dbar_one_digits(beta, horizon)
    results: list[EpWord] = []
    seen: set[EpWord] = set()
    for per_len in range(1, max_per + 1):
        for per in product(range(top + 1), repeat=per_len):
            if all(c == 0 for c in per):
                continue
            w = EpWord((), per)
            if w in seen or len(w.per) > max_per:
                continue
            seen.add(w)
            if _all_shifts_below(w, d1, cycle, horizon, strict=False):
                results.append(w)
    return results


def _alphabet_top(beta: Fraction) -> int:
    top = beta.numerator // beta.denominator
    if beta.denominator == 1:
        top = int(beta) - 1
    return top


def _all_shifts_strictly_below(w: EpWord, d1: list[int], cycle, horizon: int) -> bool:
    return _all_shifts_below(w, d1, cycle, horizon, strict=True)


def _all_shifts_below(w: EpWord, d1: list[int], cycle, horizon: int, strict: bool) -> bool:
    n_shifts = len(w.pre) + len(w.per)
    for k in range(n_shifts):
        sw = w.shift(k)
        length = min(horizon, len(d1))
        mine = ep_letters(sw.pre.letters, sw.per.letters, length)
        less = naive_less(mine, d1[:length])
        if less is None:
            if strict:
                return False  # equal on the window: cannot certify strict <
            if cycle is not None:
                pre_len, cyc_end = cycle
                period = cyc_end - pre_len
                lcm = period * len(sw.per) // gcd(period, len(sw.per))
                if length >= max(pre_len, len(sw.pre)) + lcm:
                    continue  # window covers both periodicities: genuinely equal
            return False  # undecided: reject conservatively
        if not less:
            return False
    return True


def frequency_estimate(stream: DigitStream, n: int) -> Fraction:
    """Partial mean of the first n digits."""
    if n < 1:
        raise ValueError("need n >= 1")
    return Fraction(sum(stream.letter(i) for i in range(n)), n)
