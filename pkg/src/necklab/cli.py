"""Command line front end.

Exit status: 0 when a query is answered (positively, for finds), 1 when a
find comes back empty, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import adversary, coloring, splitting, words
from .exact_lp import as_rational, format_rational
from .svg import render_strip


class UsageError(Exception):
    pass


def _rat(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _load(path: str) -> coloring.StepColoring:
    try:
        with open(path) as fh:
            return coloring.parse_coloring(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except coloring.ColoringError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _fmt(xs: Sequence[Fraction]) -> str:
    return " ".join(format_rational(x) for x in xs)


def _write(path: str, text: str):
    with open(path, "w") as fh:
        fh.write(text)


def _report_splitting(res: splitting.SplitResult, out) -> int:
    if not res.found:
        print("found: no", file=out)
        return 1
    s = res.witness
    print("found: yes", file=out)
    print(f"size: {s.size}", file=out)
    print(f"cuts: {_fmt(s.cuts)}", file=out)
    print(f"assignment: {' '.join(map(str, s.assignment))}", file=out)
    print(f"granularity: {format_rational(s.granularity)}", file=out)
    return 0


def cmd_solve(args, out) -> int:
    f = _load(args.coloring)
    res = splitting.find_fair_splitting(f, args.a, args.b, args.q, args.max_size, args.granularity)
    if args.svg:
        cuts = res.witness.cuts if res.found else ()
        _write(args.svg, render_strip(f, args.a, args.b, cuts, res.witness.assignment if res.found else None))
    return _report_splitting(res, out)


def cmd_minsize(args, out) -> int:
    f = _load(args.coloring)
    r = splitting.min_splitting_size(f, args.a, args.b, args.q)
    print(f"min_size: {r}", file=out)
    return 0


def cmd_member(args, out) -> int:
    f = _load(args.coloring)
    gamma = args.gamma if args.gamma is not None else Fraction(1, args.n)
    res = splitting.membership_B(f, args.n, args.r, gamma, args.q)
    print(f"n: {args.n}  r: {args.r}  granularity: {format_rational(gamma)}", file=out)
    if args.svg:
        cuts = res.witness.cuts if res.found else ()
        _write(args.svg, render_strip(f, -args.n, args.n, cuts, res.witness.assignment if res.found else None))
    return _report_splitting(res, out)


def cmd_family(args, out) -> int:
    f = _load(args.coloring)
    res = splitting.find_fair_family_partition(f, args.n, args.e, args.q, args.gamma)
    if not res.found:
        print("found: no", file=out)
        return 1
    fam = res.witness
    print("found: yes", file=out)
    for (a, b), p in zip(fam.members, fam.assignment):
        print(f"member: {format_rational(a)} {format_rational(b)} part {p}", file=out)
    return 0


def cmd_construct(args, out) -> int:
    try:
        h = adversary.build_avoider(args.t, args.n, args.N, args.eps)
    except adversary.AdversaryError as exc:
        raise UsageError(str(exc)) from exc
    text = coloring.format_coloring(h)
    if args.out:
        _write(args.out, text)
        print(f"wrote {args.out}: k={h.k} cells={len(h.cell_colors)}", file=out)
    else:
        out.write(text)
    if args.svg:
        _write(args.svg, render_strip(h, -args.n, args.n))
    return 0


def cmd_metric(args, out) -> int:
    f, g = _load(args.f), _load(args.g)
    try:
        enc = coloring.metric_distance(f, g, args.bits)
    except coloring.ColoringError as exc:
        raise UsageError(str(exc)) from exc
    print(f"enclosure: [{format_rational(enc.lo)}, {format_rational(enc.hi)}]", file=out)
    print(f"approx: {float(enc.lo):.12g} .. {float(enc.hi):.12g}", file=out)
    return 0


def cmd_approx(args, out) -> int:
    f = _load(args.coloring)
    try:
        g = coloring.approximate_by_interval_coloring(f, args.n, args.eps, args.t)
    except coloring.ColoringError as exc:
        raise UsageError(str(exc)) from exc
    enc = coloring.metric_distance(f, g, 40)
    text = coloring.format_coloring(g)
    if args.out:
        _write(args.out, text)
    else:
        out.write(text)
    print(f"distance_hi: {format_rational(enc.hi)}", file=out if args.out else sys.stderr)
    return 0


def _word_arg(args) -> words.Word:
    try:
        if args.word is not None:
            found = words.parse_words(args.word)
        else:
            with open(args.file) as fh:
                found = words.parse_words(fh.read())
    except (OSError, words.WordError) as exc:
        raise UsageError(str(exc)) from exc
    if len(found) != 1:
        raise UsageError("expected exactly one word")
    return found[0]


def cmd_words(args, out) -> int:
    sub = args.words_cmd
    if sub == "find":
        hit = words.find_abelian_power(_word_arg(args), args.q)
        print("none" if hit is None else f"position {hit[0]} length {hit[1]}", file=out)
        return 1 if hit is None else 0
    if sub == "square":
        hit = words.find_square(_word_arg(args))
        print("none" if hit is None else f"position {hit[0]} length {hit[1]}", file=out)
        return 1 if hit is None else 0
    if sub == "gen":
        print(words.format_word(words.squarefree_ternary(args.length)), file=out)
        return 0
    if sub == "search":
        rep = words.backtrack_abelian_squarefree(args.sigma, args.length, args.budget)
        print(words.format_word(rep.word), file=out)
        print(f"length: {len(rep.word)} exhausted: {str(rep.exhausted).lower()} nodes: {rep.nodes}", file=out)
        return 0
    if sub == "split":
        try:
            res = words.discrete_fair_split(_word_arg(args), args.q)
        except words.WordError as exc:
            raise UsageError(str(exc)) from exc
        if res is None:
            print("found: no", file=out)
            return 1
        print(f"cuts: {' '.join(map(str, res.cuts))}", file=out)
        print(f"assignment: {' '.join(map(str, res.assignment))}", file=out)
        return 0
    rep = words.discrete_avoider_search(args.k, args.length, args.budget)
    print(words.format_word(rep.word), file=out)
    print(f"length: {len(rep.word)} exhausted: {str(rep.exhausted).lower()} nodes: {rep.nodes}", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="necklab", description="Exact fair-splitting laboratory for colored necklaces.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("solve", help="fair q-splitting of a fixed interval")
    s.add_argument("--coloring", required=True)
    s.add_argument("--a", type=_rat, required=True)
    s.add_argument("--b", type=_rat, required=True)
    s.add_argument("--q", type=int, default=2)
    s.add_argument("--max-size", type=int, required=True)
    s.add_argument("--granularity", type=_rat)
    s.add_argument("--svg")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("minsize", help="smallest fair splitting size of a fixed interval")
    s.add_argument("--coloring", required=True)
    s.add_argument("--a", type=_rat, required=True)
    s.add_argument("--b", type=_rat, required=True)
    s.add_argument("--q", type=int, default=2)
    s.set_defaults(func=cmd_minsize)

    s = sub.add_parser("member", help="membership in B_n^(r)")
    s.add_argument("--coloring", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--gamma", type=_rat)
    s.add_argument("--q", type=int, default=2)
    s.add_argument("--svg")
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("family", help="fair partition of an interval family")
    s.add_argument("--coloring", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--q", type=int, default=2)
    s.add_argument("--gamma", type=_rat)
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("construct", help="build a (t+3)-coloring avoiding short splittings")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--eps", type=_rat, default=Fraction(1))
    s.add_argument("--out")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("metric", help="enclosure of the coloring distance")
    s.add_argument("--f", required=True)
    s.add_argument("--g", required=True)
    s.add_argument("--bits", type=int, default=32)
    s.set_defaults(func=cmd_metric)

    s = sub.add_parser("approx", help="interval-coloring approximation")
    s.add_argument("--coloring", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--eps", type=_rat, required=True)
    s.add_argument("--t", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_approx)

    w = sub.add_parser("words", help="discrete necklaces and abelian powers")
    w.set_defaults(func=cmd_words)
    wsub = w.add_subparsers(dest="words_cmd", required=True)
    for name in ("find", "square", "split"):
        ws = wsub.add_parser(name)
        src = ws.add_mutually_exclusive_group(required=True)
        src.add_argument("--word", help="whitespace-separated letters")
        src.add_argument("--file")
        if name != "square":
            ws.add_argument("--q", type=int, default=2)
    ws = wsub.add_parser("gen")
    ws.add_argument("--length", type=int, required=True)
    ws = wsub.add_parser("search")
    ws.add_argument("--sigma", type=int, required=True)
    ws.add_argument("--length", type=int, required=True)
    ws.add_argument("--budget", type=int, default=10 ** 6)
    ws = wsub.add_parser("explore")
    ws.add_argument("--k", type=int, required=True)
    ws.add_argument("--length", type=int, required=True)
    ws.add_argument("--budget", type=int, default=10 ** 6)
    return p


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, splitting.SplitError, coloring.ColoringError, words.WordError) as exc:
        print(f"necklab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
