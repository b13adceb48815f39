"""The beta and beta-bar transformations and their digit expansions.

T(x) = beta*x mod 1 (greedy);  Tbar(x) = <beta*x> where <t> = 1 when t is an
integer and {t} otherwise.  Digits: greedy x_i = floor(beta T^{i-1} x),
bar x_i = ceil(beta Tbar^{i-1} x) - 1.  Bar expansions are never finite;
the single degenerate point is x = 0, where we keep the greedy 0^omega by
convention (Tbar would send 0 to 1 and the digit rule yields -1).

Expansions are digit streams.  For exact number kinds the generator tracks
the exact orbit state and detects cycles, so rational/quadratic/poly-backed
inputs yield their eventually periodic form exactly.  Interval-backed inputs
are expanded with exact rational interval arithmetic, restarting at doubled
precision when a digit is ambiguous — digits are decided or refused, never
guessed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .errors import PrecisionExhausted
from .numerics import (
    DEFAULT_START_PREC,
    AlgebraicValue,
    IntervalValue,
    QuadraticValue,
    RationalValue,
    RealValue,
    precision_cap,
    value_like,
)
from .words import DigitStream, EpWord, Ordering, Word, lex_compare

GREEDY = "greedy"
BAR = "bar"


def _check_kind(kind: str) -> bool:
    if kind not in (GREEDY, BAR):
        raise ValueError(f"kind must be {GREEDY!r} or {BAR!r}")
    return kind == GREEDY


def digit_step(x: RealValue, beta: RealValue, kind: str = BAR) -> tuple[int, RealValue]:
    """One expansion step: the produced digit and the next orbit point."""
    greedy = _check_kind(kind)
    v = beta * x
    n, hit = v.floor_with_hit()
    if greedy:
        if hit:
            return n, value_like(beta, 0)
        return n, v - n
    if hit:
        if n == 0:
            raise ValueError("bar digit undefined at x = 0")
        return n - 1, value_like(beta, 1)
    return n, v - n


def t_map(x: RealValue, beta: RealValue, kind: str = BAR) -> RealValue:
    """T(x) or Tbar(x); integer hits go to 0 (greedy) resp. 1 (bar)."""
    greedy = _check_kind(kind)
    v = beta * x
    n, hit = v.floor_with_hit()
    if hit:
        return value_like(beta, 0 if greedy else 1)
    return v - n


def _state_key(x: RealValue):
    if isinstance(x, RationalValue):
        return ("r", x.value)
    if isinstance(x, QuadraticValue):
        return ("q", x.a, x.b, x.c, x.d)
    if isinstance(x, AlgebraicValue):
        return ("a", x.ctx.reduce(x.poly))
    return None


def _exact_generator(x0: RealValue, beta: RealValue, greedy: bool,
                     box: list, max_states: int) -> Iterator[int]:
    state = x0
    digits: list[int] = []
    seen = {_state_key(x0): 0}
    while True:
        digit, state = digit_step(state, beta, GREEDY if greedy else BAR)
        digits.append(digit)
        yield digit
        key = _state_key(state)
        idx = len(digits)
        if key in seen:
            j = seen[key]
            ep = EpWord(digits[:j], digits[j:idx])
            box[0].set_epword(ep)
            pos = idx
            while True:
                yield ep.letter(pos)
                pos += 1
        if len(seen) < max_states:
            seen[key] = idx


def _ceil_frac(f: Fraction) -> int:
    return -((-f).numerator // (-f).denominator) if f.denominator > 1 else f.numerator


def _interval_generator(x0: IntervalValue | RealValue, beta: RealValue,
                        greedy: bool) -> Iterator[int]:
    """Restart-based digit generation with exact rational interval arithmetic."""
    digits: list[int] = []
    prec = DEFAULT_START_PREC
    cap = precision_cap()
    refinable = beta.is_refinable() or x0.is_refinable()
    emitted = 0
    while True:
        blo, bhi = beta.bounds(prec)
        lo, hi = x0.bounds(prec)
        lo, hi = max(lo, Fraction(0)), min(hi, Fraction(1))
        # replay committed digits (all non-hit; decisions only tighten)
        for d in digits:
            vlo, vhi = blo * lo, bhi * hi
            lo, hi = max(vlo - d, Fraction(0)), min(vhi - d, Fraction(1))
        restart = False
        while not restart:
            vlo, vhi = blo * lo, bhi * hi
            if greedy:
                nlo = vlo.numerator // vlo.denominator
                nhi = vhi.numerator // vhi.denominator
            else:
                nlo = _ceil_frac(vlo) - 1
                nhi = _ceil_frac(vhi) - 1
            if nlo == nhi:
                d = nlo
                digits.append(d)
                lo, hi = max(vlo - d, Fraction(0)), min(vhi - d, Fraction(1))
                while emitted < len(digits):
                    yield digits[emitted]
                    emitted += 1
                continue
            # ambiguous digit: escalate or give up
            if not refinable or prec >= cap:
                raise PrecisionExhausted(
                    f"digit {len(digits) + 1} of the expansion is ambiguous "
                    f"(beta*x enclosure [{float(vlo)}, {float(vhi)}] straddles an integer)",
                    needed_digits=prec * 2)
            prec = min(2 * prec, cap)
            restart = True


def expand(x: RealValue, beta: RealValue, kind: str = BAR,
           max_states: int = 1_000_000) -> DigitStream:
    """Digit stream of d_beta(x) or dbar_beta(x), with exact cycle detection
    for exact number kinds (the stream then reports its EpWord form)."""
    greedy = _check_kind(kind)
    x = _coerce_point(x, beta)
    if not greedy and not isinstance(x, IntervalValue) and x.sign() == 0:
        # degenerate endpoint: keep 0^omega (see module docstring)
        return DigitStream(epword=EpWord.constant(0))
    if isinstance(beta, IntervalValue) or isinstance(x, IntervalValue):
        return DigitStream(_interval_generator(x, beta, greedy))
    box: list = [None]
    gen = _exact_generator(x, beta, greedy, box, max_states)
    stream = DigitStream(gen)
    box[0] = stream
    return stream


def _coerce_point(x, beta: RealValue) -> RealValue:
    """Bring x into beta's arithmetic so the orbit stays in one field."""
    if isinstance(x, (int, Fraction)):
        return value_like(beta, Fraction(x))
    if isinstance(x, RationalValue) and not isinstance(beta, RationalValue):
        return value_like(beta, x.value)
    if isinstance(x, IntervalValue) and not isinstance(beta, IntervalValue):
        return x  # mixed interval/exact: handled by the interval generator
    if isinstance(beta, IntervalValue) and not isinstance(x, IntervalValue):
        if isinstance(x, RationalValue):
            return IntervalValue(x.value, x.value)
        lo, hi = x.bounds(DEFAULT_START_PREC)
        return IntervalValue(lo, hi, refiner=x.bounds)
    return x


def bar_expansion_of_one(beta: RealValue, max_states: int = 1_000_000) -> DigitStream:
    return expand(value_like(beta, 1), beta, BAR, max_states=max_states)


def bar_from_greedy(d: EpWord, dbar1) -> EpWord | object:
    """Prop-1(b) transform: rewrite a finite greedy expansion a_1..a_m into
    a_1..a_{m-1}(a_m - 1) dbar(1); non-finite expansions pass through."""
    if not _is_finite_expansion(d):
        return d
    u = d.pre.letters  # canonical form: last preperiod letter is nonzero
    if not u:
        return d  # greedy 0^omega (x = 0): keep the convention
    head = u[:-1] + (u[-1] - 1,)
    if isinstance(dbar1, EpWord):
        return EpWord(head + dbar1.pre.letters, dbar1.per)
    from .words import prepend  # stream tail
    return prepend(Word(head), dbar1)


def bar_of_one_from_greedy(d1: EpWord) -> EpWord:
    """Prop-1(a): dbar(1) = (e_1..e_{m-1}(e_m - 1))^omega when d(1) is finite."""
    if not _is_finite_expansion(d1):
        return d1
    u = d1.pre.letters
    if not u:
        raise ValueError("d_beta(1) cannot be 0^omega")
    return EpWord((), u[:-1] + (u[-1] - 1,))


def _is_finite_expansion(d: EpWord) -> bool:
    return isinstance(d, EpWord) and d.per.letters == (0,)


def is_admissible(s, beta: RealValue, horizon: int = 2_000) -> bool | None:
    """Parry test: every shift of s is lexicographically below dbar_beta(1).

    Exact (True/False) whenever both s and dbar(1) resolve to EpWords;
    otherwise decided violations give False and None means undecided at
    the horizon.
    """
    d1 = bar_expansion_of_one(beta)
    d1.prefix(min(horizon, 64))  # give cycle detection a chance
    target = d1.as_epword() or d1
    undecided = False
    if isinstance(s, EpWord):
        for sh in s.shifts():
            r = lex_compare(sh, target, horizon)
            if r in (Ordering.GT, Ordering.EQ):
                return False
            if r is Ordering.UNDECIDED:
                undecided = True
        return None if undecided else True
    for n in range(horizon):
        from .words import shift as _shift
        r = lex_compare(_shift(s, n), target, horizon)
        if r in (Ordering.GT, Ordering.EQ):
            return False
        if r is Ordering.UNDECIDED:
            undecided = True
    return None


def frequency(w: EpWord) -> Fraction:
    """Cesaro limit of the digit average: the mean of the primitive period."""
    return Fraction(sum(w.per.letters), len(w.per))
