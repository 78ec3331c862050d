"""Command-line interface.

Exit codes: 0 success (member, verified), 1 non-membership or a failed
check, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .exact import format_rational, parse_rational
from .group import GenWordSyntaxError, parse_genword
from .positivity.chain import beta_chain, sample_region
from .positivity.monoid import MonoidError, decompose_nonneg, format_part
from .positivity.signs import tits_signs
from .positivity.symbolic import region_symbolic
from .quiver import QuiverSyntaxError, indec_ordering
from .rootsys import RootSystemError, beta_roots, format_word, parse_word
from .verify import DEFAULT_TYPES, SUITES, run_suite


class UsageError(Exception):
    pass


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _context(args):
    from .context import resolve

    if args.quiver is None and args.type is None:
        raise UsageError("give --quiver or --type")
    if args.quiver is not None and args.type is not None:
        raise UsageError("--quiver and --type are mutually exclusive")
    if args.quiver is not None and getattr(args, "word", None):
        raise UsageError("--word goes with --type; a quiver fixes its own word")
    return resolve(quiver=args.quiver, type=args.type, word=getattr(args, "word", None))


def _point(text: str) -> list:
    out = []
    for k, tok in enumerate(text.split(","), 1):
        try:
            out.append(parse_rational(tok.strip()))
        except ValueError as exc:
            raise UsageError(f"--point entry {k}: {exc}") from None
    return out


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("RCG_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"RCG_SEED must be an integer, got {env!r}") from None


def _signs_json(ctx) -> dict:
    return tits_signs(ctx.algebra, ctx.word).to_json()


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_word(args) -> int:
    ctx = _context(args)
    rs = ctx.system
    if args.type is None or args.word is None:
        order = parse_word(args.order, rs.rank) if args.order else None
        ordering = indec_ordering(ctx.quiver, order)
        payload = {"word": list(ordering.word), **ordering.to_json()}
        lines = [f"word {format_word(ordering.word)}"]
        lines += [f"  tau^{it.power} I_{it.vertex}  {list(it.dim)}" for it in ordering.items]
    else:
        roots = beta_roots(rs, ctx.word)
        payload = {"word": list(ctx.word), "roots": [list(r) for r in roots]}
        lines = [f"word {format_word(ctx.word)}"] + [f"  {list(r)}" for r in roots]
    _emit(args, payload, lines)
    return 0


def cmd_signs(args) -> int:
    ctx = _context(args)
    s = tits_signs(ctx.algebra, ctx.word)
    payload = {"word": list(ctx.word), **s.to_json()}
    lines = [
        f"word {format_word(ctx.word)}",
        "eps " + " ".join(f"{e:+d}" for e in s.eps),
        "eps_tilde " + " ".join(f"{e:+d}" for e in s.eps_tilde),
        f"convention {s.convention}",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_region(args) -> int:
    ctx = _context(args)
    reg = region_symbolic(ctx.system, ctx.word)
    payload = reg.to_json()
    if not args.symbolic:
        for item in payload["inequalities"]:
            del item["beta"]
    payload["signs"] = _signs_json(ctx)
    lines = [f"word {format_word(ctx.word)}"]
    lines += [f"{p} > 0" for p in reg.nontrivial()]
    triv = [reg.variables[k] for k, t in enumerate(reg.trivial) if t]
    lines.append("trivial: " + ", ".join(triv))
    if args.symbolic:
        lines += [f"beta{k} = {reg.beta_text(k)}" for k in range(1, len(ctx.word) + 1)]
    _emit(args, payload, lines)
    return 0


def cmd_member(args) -> int:
    ctx = _context(args)
    if args.point is None:
        raise UsageError("member needs --point")
    b = _point(args.point)
    if len(b) != len(ctx.word):
        raise UsageError(f"--point has {len(b)} entries, the word has {len(ctx.word)} letters")
    if any(x <= 0 for x in b):
        raise UsageError("region coordinates must be positive")
    chain = beta_chain(ctx.system, ctx.word, b)
    payload = chain.to_json()
    lines = [f"status {chain.status}" + (f" at beta{chain.index}" if chain.index else "")]
    lines += [
        f"beta{k} = {format_rational(v)}" for k, v in enumerate(chain.betas, 1) if v is not None
    ]
    _emit(args, payload, lines)
    return 0 if chain.member else 1


def cmd_sample(args) -> int:
    ctx = _context(args)
    m = len(ctx.word)
    if args.point is not None:
        points = [_point(args.point)]
        if len(points[0]) != m or any(x <= 0 for x in points[0]):
            raise UsageError(f"--point must have {m} positive entries")
    else:
        rng = random.Random(_seed(args))
        points = [
            [parse_rational(f"{rng.randint(1, 9)}/{rng.randint(1, 9)}") for _ in range(m)]
            for _ in range(args.cases)
        ]
    samples = []
    for a in points:
        b = sample_region(ctx.system, ctx.word, a)
        samples.append({"a": [format_rational(x) for x in a], "b": [format_rational(x) for x in b]})
    payload = {"word": list(ctx.word), "samples": samples}
    lines = [",".join(s["b"]) for s in samples]
    _emit(args, payload, lines)
    return 0


def cmd_decompose(args) -> int:
    ctx = _context(args)
    if args.element is None:
        raise UsageError("decompose needs --element")
    word = parse_genword(args.element, ctx.algebra)
    d = decompose_nonneg(ctx.algebra, word)
    payload = d.to_json()
    h = " ".join(f"h{i}:{format_rational(t)}" for i, t in enumerate(d.h, 1) if t != 1)
    lines = [
        "minus " + (format_part(d.minus.cell, d.minus.coords, -1) or "1"),
        "h " + (h or "1"),
        "plus " + (format_part(d.plus.cell, d.plus.coords, 1) or "1"),
        f"cells {format_word(d.minus.cell) or '-'} | {format_word(d.plus.cell) or '-'}",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_verify(args) -> int:
    seed = _seed(args)
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}, all")
    types = args.type or list(DEFAULT_TYPES)
    results = []
    failed = None
    for suite in suites:
        for t in types:
            rep = run_suite(suite, t, args.cases, seed, only=args.case)
            results.append(rep)
            if not rep.ok and failed is None:
                failed = rep.failures[0]
    payload = {
        "seed": seed,
        "results": [
            {"suite": r.suite, "type": r.type, "cases": r.cases, "ok": r.ok} for r in results
        ],
    }
    lines = [f"{r.suite:<12} {r.type:<4} {r.cases:>5} cases  {'ok' if r.ok else 'FAIL'}" for r in results]
    if failed is not None:
        payload["counterexample"] = {
            "suite": failed.suite,
            "type": failed.type,
            "case": failed.index,
            "message": failed.message,
            "reproducer": failed.reproducer(seed),
        }
        lines.append(f"first failure: {failed.message}")
        lines.append(f"reproduce with: {failed.reproducer(seed)}")
    _emit(args, payload, lines)
    return 0 if failed is None else 1


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rcg", description="Total positivity regions of simply-laced Chevalley groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, word=True):
        sp.add_argument("--quiver", help='quiver, e.g. "A3: 1>2, 2>3"')
        sp.add_argument("--type", help="Dynkin type, e.g. A3 (orientation i -> j for i < j)")
        if word:
            sp.add_argument("--word", help="reduced word, e.g. 1,2,1 (with --type)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = common(sub.add_parser("word", help="leftmost word and τ-orbit ordering"))
    sp.add_argument("--order", help="admissible order, e.g. 1,2,3")
    sp.set_defaults(func=cmd_word)
    common(sub.add_parser("signs", help="Tits signs ε, ε̃")).set_defaults(func=cmd_signs)
    sp = common(sub.add_parser("region", help="inequalities of the region"))
    sp.add_argument("--symbolic", action="store_true", help="also print every β_k")
    sp.set_defaults(func=cmd_region)
    sp = common(sub.add_parser("member", help="membership of a point"))
    sp.add_argument("--point", help="comma-separated positive rationals")
    sp.set_defaults(func=cmd_member)
    sp = common(sub.add_parser("sample", help="region points from chain coordinates"))
    sp.add_argument("--point", help="a in ℝ₊^m; random points if omitted")
    sp.add_argument("--cases", type=int, default=1)
    sp.add_argument("--seed", type=int)
    sp.set_defaults(func=cmd_sample)
    sp = common(sub.add_parser("decompose", help="u⁻·h·u⁺ normal form of a nonnegative word"), word=False)
    sp.add_argument("--element", help='generator word, e.g. "+1:1 h1:2 -1:-1"')
    sp.set_defaults(func=cmd_decompose)
    sp = sub.add_parser("verify", help="randomized verification suites")
    sp.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)}, all")
    sp.add_argument("--type", action="append", help="Dynkin type (repeatable); default A2, A3, D4")
    sp.add_argument("--cases", type=int, default=20)
    sp.add_argument("--case", type=int, help="run only this case index")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, QuiverSyntaxError, GenWordSyntaxError, RootSystemError, MonoidError, ValueError) as exc:
        print(f"rcg {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
