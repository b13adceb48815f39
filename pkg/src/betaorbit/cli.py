"""Command-line interface.

JSON-lines records by default (one object per line, stable keys) so runs can
be golden-tested and piped; ``--plain`` switches to human-readable text.
Exit codes: 0 ok, 1 domain error, 2 precision exhausted, 3 undetermined at
the configured depth.  Numeric outputs carry a representation tag
(exact-rational / quadratic / enclosure).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import dynamics, locator, mechanical, oracle, palindromes
from .errors import (
    BetaOrbitError,
    DomainError,
    PrecisionExhausted,
    UndeterminedAtDepth,
)
from .numerics import (
    DEFAULT_START_PREC,
    RationalValue,
    RealValue,
    eval_word,
    parse_beta,
    parse_real,
)
from .words import EpWord, Word

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_PRECISION = 2
EXIT_UNDETERMINED = 3

DEC_PREC = 30


def _value_record(v) -> dict:
    if isinstance(v, Fraction):
        v = RationalValue(v)
    rec = {"repr": v.repr_tag(), "decimal": v.decimal(DEC_PREC)}
    if isinstance(v, RationalValue):
        rec["value"] = str(v.value)
    elif hasattr(v, "spec_text"):
        rec["value"] = v.spec_text()
    elif hasattr(v, "as_fraction") and v.as_fraction() is not None:
        rec["value"] = str(v.as_fraction())
    else:
        lo, hi = v.bounds(DEC_PREC)
        rec["value"] = rec["decimal"]
        rec["enclosure"] = [str(lo), str(hi)]
    return rec


def _parse_word(text: str) -> Word | EpWord:
    if "|" in text:
        return EpWord.from_text(text)
    return Word.from_text(text)


def _params(args) -> dict:
    out = {"precision_default": DEFAULT_START_PREC}
    if hasattr(args, "max_depth"):
        out["max_depth"] = args.max_depth
    return out


# ---------------------------------------------------------------------------
# subcommand handlers (each returns a record dict)
# ---------------------------------------------------------------------------

def _cmd_expand(args) -> dict:
    beta = parse_beta(args.beta)
    x = parse_real(args.x)
    kind = dynamics.GREEDY if args.greedy else dynamics.BAR
    stream = dynamics.expand(x, beta, kind)
    prefix = stream.prefix(args.n)
    rec = {
        "cmd": "expand",
        "kind": kind,
        "digits": prefix.to_text(),
        "params": _params(args),
    }
    ep = stream.as_epword()
    if ep is not None:
        rec["epword"] = ep.to_text()
    return rec


def _orbit_record(res: locator.OrbitResult, cmd: str, args) -> dict:
    rec = {"cmd": cmd, **res.as_dict(), "params": _params(args)}
    return rec


def _cmd_freq(args) -> dict:
    beta = parse_beta(args.beta)
    res = locator.freq_of_beta(beta, max_depth=args.max_depth)
    return _orbit_record(res, "freq", args)


def _cmd_locate(args) -> dict:
    beta = parse_beta(args.beta)
    t = parse_real(args.t)
    res = locator.locate_orbit(t, beta, max_depth=args.max_depth)
    return _orbit_record(res, "locate", args)


def _cmd_delta(args) -> dict:
    alpha = Fraction(args.alpha)
    val = locator.delta(alpha)
    rec = {"cmd": "delta", "alpha": str(alpha), **_value_record(val), "params": _params(args)}
    if args.prec != DEC_PREC:
        rec["decimal"] = val.decimal(args.prec)
    return rec


def _cmd_xi(args) -> dict:
    beta = parse_beta(args.beta)
    try:
        alpha = Fraction(args.alpha)
        val = locator.xi(alpha, beta, max_depth=args.max_depth)
        alpha_str = str(alpha)
    except ValueError:
        a = parse_real(args.alpha)
        val = locator.xi(a, beta, max_depth=args.max_depth)
        alpha_str = args.alpha
    return {"cmd": "xi", "alpha": alpha_str, **_value_record(val), "params": _params(args)}


def _cmd_christoffel(args) -> dict:
    letters = None
    if args.alphabet is not None:
        letters = (args.alphabet, args.alphabet + 1)
    lower, upper, central = mechanical.christoffel(args.p, args.q, letters)
    return {
        "cmd": "christoffel",
        "lower": lower.to_text(),
        "upper": upper.to_text(),
        "central": central.to_text(),
    }


def _cmd_mechanical(args) -> dict:
    slope = parse_real(args.alpha)
    rho = parse_real(args.rho) if args.rho else RationalValue(0)
    spec = mechanical.MechSpec(
        slope if not isinstance(slope, RationalValue) else slope.value,
        rho if not isinstance(rho, RationalValue) else rho.value,
        mechanical.UPPER if args.upper else mechanical.LOWER,
    )
    prefix = mechanical.mechanical_prefix(spec, args.n)
    return {"cmd": "mechanical", "digits": prefix.to_text(), "flavor": spec.flavor}


def _cmd_pal(args) -> dict:
    w = Word.from_text(args.word)
    rec = {
        "cmd": "pal",
        "word": w.to_text(),
        "closure": palindromes.palindromic_closure(w).to_text(),
        "pal": palindromes.pal(w).to_text(),
        "is_central": palindromes.is_central(w),
    }
    if rec["is_central"]:
        rec["directive"] = palindromes.directive_word(w).to_text()
    return rec


def _cmd_central_prefix(args) -> dict:
    if args.stream:
        s = _parse_word(args.stream)
        if isinstance(s, Word):
            s = EpWord(s, (0,))
    else:
        if not (args.beta and args.x):
            raise DomainError("need --stream or both --beta and --x")
        stream = dynamics.expand(parse_real(args.x), parse_beta(args.beta), dynamics.BAR)
        s = stream.suffix(args.skip) if args.skip else stream
    a = args.a if args.a is not None else s.letter(0)
    u, saturated = palindromes.longest_central_prefix(s, a, a + 1, args.max_len)
    return {"cmd": "central-prefix", "u": u.to_text(), "saturated": saturated,
            "a": a, "b": a + 1, "max_len": args.max_len}


def _cmd_classify(args) -> dict:
    w = EpWord.from_text(args.word) if "|" in args.word else EpWord(Word.from_text(args.word), (0,))
    verdict = mechanical.classify_balanced(w)
    rec: dict = {"cmd": "classify", "word": w.to_text()}
    if isinstance(verdict, mechanical.Mechanical):
        rec["verdict"] = "mechanical"
        rec["slope"] = str(verdict.slope)
        rec["representative"] = verdict.representative.to_text()
    elif isinstance(verdict, mechanical.Skew):
        rec["verdict"] = "skew"
        rec["slope"] = str(verdict.slope)
        rec["preperiod_len"] = verdict.preperiod_len
    else:
        rec["verdict"] = "unbalanced"
        rec["witness"] = None if verdict.witness is None else verdict.witness.to_text()
    return rec


def _cmd_diam(args) -> dict:
    beta = parse_beta(args.beta)
    xi_val = parse_real(args.xi)
    rep = locator.diam_classify(xi_val, beta, horizon=args.horizon)
    rec: dict = {"cmd": "diam"}
    if isinstance(rep, locator.MechanicalDiam):
        rec["verdict"] = "mechanical"
        rec["slope"] = str(rep.slope)
        rec["diam"] = _value_record(rep.diam)
    elif isinstance(rep, locator.SkewDiam):
        rec["verdict"] = "skew"
        rec["slope"] = str(rep.slope)
        rec["stable_after"] = rep.stable_after
        rec["diam"] = _value_record(rep.diam)
    elif isinstance(rep, locator.NotSmall):
        rec["verdict"] = "not-small"
        rec["witness"] = None if rep.witness is None else rep.witness.to_text()
    elif isinstance(rep, locator.UndecidedDiam):
        rec["verdict"] = "undecided"
        rec["horizon"] = rep.horizon
    else:
        rec["verdict"] = "sturmian"
    # Cor. 8 closed form for integer bases and resolved words
    if isinstance(beta, RationalValue) and beta.value.denominator == 1 and \
            rec["verdict"] in ("mechanical", "skew"):
        d = dynamics.expand(xi_val, beta, dynamics.BAR)
        d.prefix(256)
        ep = d.as_epword()
        if ep is not None:
            rec["closed_form"] = str(locator.rational_xi_reconstruct(ep, int(beta.value)))
    return rec


def _farey_samples(lo: Fraction, hi: Fraction, count: int) -> list[Fraction]:
    """Deterministic small-denominator rationals in (lo, hi), Farey order."""
    out: list[Fraction] = []
    seen: set[Fraction] = set()
    den = 0
    while len(out) < count and den <= 64:
        den += 1
        for num in range(1, int(hi * den) + 1):
            f = Fraction(num, den)
            if lo < f < hi and f not in seen:
                seen.add(f)
                out.append(f)
                if len(out) >= count:
                    break
    return sorted(out)


def _cmd_staircase(args) -> dict:
    lo, hi = Fraction(args.frm), Fraction(args.to)
    rows: list[tuple[str, str, str]] = []
    if args.which == "delta":
        for f in _farey_samples(lo, hi, args.samples):
            try:
                rows.append((str(f), locator.delta(f).decimal(DEC_PREC), "ok"))
            except BetaOrbitError as e:
                rows.append((str(f), "", type(e).__name__))
    else:
        n = max(2, args.samples)
        for k in range(n):
            beta = lo + (hi - lo) * k / (n - 1)
            if beta <= 1:
                continue
            try:
                res = locator.freq_of_beta(RationalValue(beta), max_depth=args.max_depth)
                rows.append((str(beta), RationalValue(res.frequency).decimal(DEC_PREC), "ok"))
            except UndeterminedAtDepth as e:
                mid = sum(e.enclosure) / 2 if e.enclosure else Fraction(0)
                rows.append((str(beta), RationalValue(mid).decimal(DEC_PREC), "undetermined"))
            except BetaOrbitError as e:
                rows.append((str(beta), "", type(e).__name__))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("arg,value,status\n")
        for arg_s, val_s, status in rows:
            fh.write(f"{arg_s},{val_s},{status}\n")
    return {"cmd": "staircase", "which": args.which, "rows": len(rows), "out": args.out}


def _cmd_verify(args) -> dict:
    failures: list[str] = []
    checks = 0
    if args.suite == "freq-table":
        table = [
            ("quad:(1+1*sqrt(5))/2", Fraction(1, 2)),
            ("poly:[-1,-1,0,1]@(1.2,1.4)", Fraction(1, 5)),
            ("pi", Fraction(2)),
            ("quad:sqrt(7)", Fraction(5, 4)),
            ("rat:3/2", Fraction(1, 3)),
        ]
        for spec, want in table:
            checks += 1
            got = locator.freq_of_beta(parse_beta(spec)).frequency
            if got != want:
                failures.append(f"Freq({spec}) = {got}, want {want}")
    elif args.suite == "containment":
        import random
        rng = random.Random(20260810)
        done = 0
        while done < args.count:
            q = rng.randint(2, 6)
            p = rng.randint(q + 1, 4 * q)
            beta = Fraction(p, q)
            if beta <= 1:
                continue
            tmax = 1 - Fraction(q, p)
            t = Fraction(rng.randint(1, 400), 401) * tmax
            try:
                res = locator.locate_orbit(t, RationalValue(beta), max_depth=args.max_depth)
            except (UndeterminedAtDepth, PrecisionExhausted):
                continue
            if not isinstance(res.generator, EpWord):
                continue
            done += 1
            checks += 1
            pts = [eval_word(res.generator.shift(k), RationalValue(beta)).value
                   for k in range(len(res.generator.pre) + len(res.generator.per))]
            if not all(t <= x <= t + Fraction(q, p) for x in pts):
                failures.append(f"orbit escapes [t, t+1/beta] for beta={beta}, t={t}")
    elif args.suite == "uniqueness":
        for beta in (Fraction(3, 2), Fraction(5, 3), Fraction(7, 4)):
            words = oracle.enumerate_periodic_orbit_words(beta, 5)
            orbits = {}
            for w in words:
                pts = frozenset(eval_word(w.shift(k), RationalValue(beta)).value
                                for k in range(len(w.per)))
                orbits[pts] = w
            tmax = 1 - 1 / beta
            for k in range(1, 101):
                t = tmax * k / 100
                inside = [o for o in orbits
                          if all(t <= x <= t + 1 / beta for x in o)]
                checks += 1
                if len(inside) > 1:
                    failures.append(f"two orbits in [t, t+1/beta] at beta={beta}, t={t}")
    elif args.suite == "diam":
        for beta in (2, 3):
            for q in range(1, 7):
                for p in range(1, (beta - 1) * q + 1):
                    if Fraction(p, q).denominator != q:
                        continue
                    w = mechanical.mechanical_word(Fraction(p, q), mechanical.UPPER)
                    x0 = eval_word(w, RationalValue(beta)).value
                    sim = oracle.simulate_orbit(x0, RationalValue(beta), 4 * q + 8)
                    want = (Fraction(beta) ** (q - 1) - 1) / (Fraction(beta) ** q - 1)
                    checks += 1
                    if sim.diameter().value != want:
                        failures.append(f"diam mismatch beta={beta}, slope={p}/{q}")
    else:
        raise DomainError(f"unknown verify suite {args.suite!r}")
    return {"cmd": "verify", "suite": args.suite, "checks": checks,
            "failures": failures, "ok": not failures}


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            k, v = line.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="betaorbit",
        description="beta-expansions and invariant orbit location for the beta-bar transformation")
    ap.add_argument("--plain", action="store_true", help="human-readable output")
    ap.add_argument("--config", help="key=value defaults file (max-depth=..., horizon=...)")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_depth(p):
        p.add_argument("--max-depth", type=int, default=None,
                       help="digit/central-prefix budget (default 512)")

    p = sub.add_parser("expand", help="digit expansion of x in base beta")
    p.add_argument("--beta", required=True)
    p.add_argument("--x", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--bar", action="store_true", default=True)
    g.add_argument("--greedy", action="store_true")
    p.add_argument("-n", type=int, default=30)

    p = sub.add_parser("freq", help="Freq(beta)")
    p.add_argument("--beta", required=True)
    add_depth(p)

    p = sub.add_parser("locate", help="invariant orbit closure in [t, t+1/beta]")
    p.add_argument("--beta", required=True)
    p.add_argument("--t", required=True)
    add_depth(p)

    p = sub.add_parser("delta", help="devil's staircase Delta(alpha)")
    p.add_argument("--alpha", required=True)
    p.add_argument("--prec", type=int, default=DEC_PREC)

    p = sub.add_parser("xi", help="Xi(alpha, beta)")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    add_depth(p)

    p = sub.add_parser("christoffel", help="Christoffel words of slope p/q")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--alphabet", type=int, default=None, help="smaller letter a (b = a+1)")

    p = sub.add_parser("mechanical", help="mechanical word prefix")
    p.add_argument("--alpha", required=True)
    p.add_argument("--rho", default=None)
    p.add_argument("--upper", action="store_true")
    p.add_argument("-n", type=int, default=30)

    p = sub.add_parser("pal", help="palindromic closure / Pal / centrality")
    p.add_argument("word")

    p = sub.add_parser("central-prefix", help="longest central prefix of a stream")
    p.add_argument("--stream", help="word text (pre|per or finite)")
    p.add_argument("--beta")
    p.add_argument("--x")
    p.add_argument("--skip", type=int, default=0)
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--max-len", type=int, default=64)

    p = sub.add_parser("classify", help="mechanical / skew / unbalanced verdict")
    p.add_argument("word")

    p = sub.add_parser("diam", help="orbit diameter classification")
    p.add_argument("--beta", required=True)
    p.add_argument("--xi", required=True)
    p.add_argument("--horizon", type=int, default=400)

    p = sub.add_parser("staircase", help="CSV samples of Delta or Freq")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--delta", dest="which", action="store_const", const="delta")
    g.add_argument("--freq", dest="which", action="store_const", const="freq")
    p.add_argument("--from", dest="frm", required=True)
    p.add_argument("--to", dest="to", required=True)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--out", required=True)
    add_depth(p)

    p = sub.add_parser("verify", help="oracle cross-check suites")
    p.add_argument("--suite", required=True,
                   choices=["freq-table", "containment", "uniqueness", "diam"])
    p.add_argument("--count", type=int, default=200)
    add_depth(p)

    return ap


_HANDLERS = {
    "expand": _cmd_expand,
    "freq": _cmd_freq,
    "locate": _cmd_locate,
    "delta": _cmd_delta,
    "xi": _cmd_xi,
    "christoffel": _cmd_christoffel,
    "mechanical": _cmd_mechanical,
    "pal": _cmd_pal,
    "central-prefix": _cmd_central_prefix,
    "classify": _cmd_classify,
    "diam": _cmd_diam,
    "staircase": _cmd_staircase,
    "verify": _cmd_verify,
}


def _emit(rec: dict, plain: bool) -> None:
    if plain:
        for k, v in rec.items():
            print(f"{k}: {v}")
    else:
        print(json.dumps(rec, default=str))


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    cfg = _load_config(args.config)
    if getattr(args, "max_depth", None) is None and hasattr(args, "max_depth"):
        args.max_depth = int(cfg.get("max-depth", locator.DEFAULT_MAX_DEPTH))
    try:
        rec = _HANDLERS[args.command](args)
    except DomainError as e:
        _emit({"error": str(e), "kind": "domain"}, args.plain)
        return EXIT_DOMAIN
    except PrecisionExhausted as e:
        _emit({"error": str(e), "kind": "precision-exhausted",
               "needed_digits": e.needed_digits}, args.plain)
        return EXIT_PRECISION
    except UndeterminedAtDepth as e:
        rec = {"error": str(e), "kind": "undetermined-at-depth", "depth": e.depth}
        if e.enclosure:
            lo, hi = e.enclosure
            rec["freq_enclosure"] = [str(lo), str(hi)]
            rec["enclosure_width"] = str(hi - lo)
        _emit(rec, args.plain)
        return EXIT_UNDETERMINED
    except BetaOrbitError as e:
        _emit({"error": str(e), "kind": type(e).__name__}, args.plain)
        return EXIT_DOMAIN
    _emit(rec, args.plain)
    if args.command == "verify" and not rec.get("ok", True):
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
