"""Command-line entry point.

Exit status is 0 on success, 1 when a computation rejects its input and 2
on malformed command lines.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import DomainError
from .exactnum import format_rational
from .expansions import Expansion, expand, expansion_depth, nilpotent_equal
from .kzint import Configuration, load_loop, num_grouplike_defect, transport
from .liealg import (
    abelian_lie_relations,
    lie_embed,
    lie_ideal_build,
    lie_quotient_dims,
    pure_braid_lie_relations,
    surface_lie_relations,
)
from .malcev import graded_rank_probe, malcev_present
from .ncseries import NCSeries, bch, coproduct, hilbert_series, ideal_build, tensor
from .ranks import FAMILIES, distinguish, rank_table
from .words import parse_presentation, parse_word

MAX_LEVEL = 12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _level(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid level {text!r}") from None
    if not 1 <= v <= MAX_LEVEL:
        raise argparse.ArgumentTypeError(f"level must be in 1..{MAX_LEVEL}")
    return v


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _generators(args) -> List[str]:
    if args.gens:
        return args.gens.split(",") if "," in args.gens else args.gens.split()
    return [f"x{i}" for i in range(1, args.n + 1)]


def _word(args, text):
    gens = _generators(args)
    return parse_word(text, gens), len(gens)


# --- subcommands ---------------------------------------------------------------------

def cmd_expand(args):
    w, rank = _word(args, args.word)
    s = expand(Expansion(args.kind, rank, args.N), w)
    return s.to_dict(), str(s)


def _exact_defect(s: NCSeries) -> Fraction:
    diff = coproduct(s) - tensor(s, s)
    worst = max((abs(c) for c in diff.terms.values()), default=Fraction(0))
    return max(worst, abs(s.constant - 1))


def cmd_grouplike(args):
    if (args.word is None) == (args.series is None):
        raise UsageError("give exactly one of --word or --series")
    if args.word is not None:
        w, rank = _word(args, args.word)
        s = expand(Expansion(args.kind, rank, args.N), w)
    else:
        with open(args.series) as fh:
            s = NCSeries.from_json(fh.read())
    d = _exact_defect(s)
    out = {"grouplike": d == 0, "defect": format_rational(d)}
    return out, f"grouplike: {str(d == 0).lower()}\ndefect: {format_rational(d)}"


def cmd_bch(args):
    rank = args.n or max(args.i, args.j)
    s = bch(args.i, args.j, args.N, rank=rank)
    return s.to_dict(), str(s)


def cmd_depth(args):
    w, rank = _word(args, args.word)
    d = expansion_depth(Expansion(args.kind, rank, args.N), w)
    text = str(d) if d is not None else f"beyond {args.N}"
    return {"depth": d, "level": args.N}, text


def cmd_nilpotent_eq(args):
    w1, rank = _word(args, args.w1)
    w2, _ = _word(args, args.w2)
    level = max(args.k, args.N or args.k)
    eq = nilpotent_equal(Expansion(args.kind, rank, level), w1, w2, args.k)
    return {"equal": eq, "k": args.k}, str(eq).lower()


def cmd_malcev(args):
    with open(args.presentation) as fh:
        p = parse_presentation(fh.read())
    mp = malcev_present(p, Expansion(args.kind, p.rank, args.N))
    probe = graded_rank_probe(mp)
    data = mp.to_dict()
    data["probe"] = probe.to_dict()
    lines = [f"relator {k}: {lp}" for k, lp in enumerate(mp.relator_logs, 1)]
    lines += [
        f"holonomy-like ranks: {' '.join(map(str, probe.ranks_holonomy_like))}",
        f"filtration ranks:    {' '.join(map(str, probe.ranks_filtration))}",
        f"agree through degree {probe.agree_through}",
    ]
    lines += [f"warning: {w}" for w in mp.warnings]
    return data, "\n".join(lines)


def _table_text(tables) -> str:
    K = len(tables[0].values)
    head = ["k"] + [t.label for t in tables]
    rows = [[str(k)] + [str(t[k]) + ("*" if t.flags[k - 1] else "") for t in tables] for k in range(1, K + 1)]
    widths = [max(len(r[c]) for r in [head] + rows) for c in range(len(head))]
    fmt = lambda r: "  ".join(x.rjust(w) for x, w in zip(r, widths))
    lines = [fmt(head)] + [fmt(r) for r in rows]
    notes = sorted({f for t in tables for f in t.flags if f})
    lines += [f"* {n}" for n in notes]
    return "\n".join(lines)


def cmd_ranks(args):
    param = args.g if args.family == "surface" else args.n
    if param is None:
        raise UsageError("--g is required for surface groups" if args.family == "surface" else "--n is required")
    t = rank_table(args.family, param, args.kind, args.K)
    d = t.to_dict()
    return d, _table_text([t])


def _family_arg(text: str, default: Optional[int]):
    fam, _, p = text.partition(":")
    if fam not in FAMILIES:
        raise UsageError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")
    if p:
        try:
            return fam, int(p)
        except ValueError:
            raise UsageError(f"bad parameter in {text!r}") from None
    if default is None:
        raise UsageError(f"no parameter for {fam!r}; use family:param or --n")
    return fam, default


def cmd_distinguish(args):
    picked = [_family_arg(s, args.n) for s in args.families]
    if len(picked) < 2:
        raise UsageError("need at least two families")
    tables = [rank_table(f, p, args.kind, args.K) for f, p in picked]
    reports = distinguish(tables)
    lines = [_table_text(tables), ""]
    for r in reports:
        if r.distinguished:
            lines.append(f"{r.first} vs {r.second}: differ at k={r.degree} ({r.values[0]} vs {r.values[1]})")
        else:
            lines.append(f"{r.first} vs {r.second}: not distinguished through k={args.K}")
    data = {"tables": [t.to_dict() for t in tables], "pairs": [r.to_dict() for r in reports]}
    return data, "\n".join(lines)


def cmd_kz(args):
    loop = load_loop(args.loop)
    s = transport(loop, args.K, args.tol)
    defect = num_grouplike_defect(s)
    deg1 = s.coeffs[1]
    integrality = float(max(abs(deg1 - deg1.real.round()))) if len(deg1) else 0.0
    data = s.to_dict(threshold=args.threshold)
    data["checks"] = {"grouplike_defect": defect, "degree1_integrality": integrality, "tol": args.tol}
    names = ([f"X{i + 1}{j + 1}" for i, j in loop.ambient.pairs()] if isinstance(loop.ambient, Configuration)
             else [f"X{i}" for i in range(1, loop.rank + 1)])
    lines = []
    for t in data["terms"]:
        w = "".join(names[a - 1] for a in t["word"]) if len(t["word"]) else "1"
        lines.append(f"{w:>16}  {t['re']: .10f} {t['im']:+.10f}i")
    lines.append(f"grouplike defect: {defect:.3e}")
    lines.append(f"degree-1 distance from integers: {integrality:.3e}")
    return data, "\n".join(lines)


def _ideal_gens(args):
    kind, _, p = args.ideal.partition(":")
    try:
        param = int(p) if p else None
    except ValueError:
        raise UsageError(f"bad parameter in {args.ideal!r}") from None
    if param is None:
        raise UsageError("ideal needs a parameter, e.g. pure-braid:3")
    if kind == "pure-braid":
        return 0, pure_braid_lie_relations(param)
    if kind == "surface":
        return 0, surface_lie_relations(param)
    if kind == "abelian":
        return 0, abelian_lie_relations(param)
    if kind == "free":
        return param, []
    raise UsageError(f"unknown ideal {kind!r}; use pure-braid, surface, abelian or free")


def cmd_hilbert(args):
    rank, rels = _ideal_gens(args)
    if rels:
        rank = rels[0].rank
    assoc = ideal_build([lie_embed(r, args.N) for r in rels], args.N, rank=rank)
    hs = hilbert_series(assoc)
    lie = lie_quotient_dims(lie_ideal_build(rels, args.N, rank=rank))
    data = {"ideal": args.ideal, "rank": rank, "level": args.N, "hilbert": hs, "lie_dims": lie}
    text = f"hilbert: {' '.join(map(str, hs))}\nlie dims: {' '.join(map(str, lie))}"
    return data, text


# --- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="grpexp", description="Group expansions, Malcev Lie algebras and rank tables.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def word_opts(sp, level=True):
        sp.add_argument("--n", type=_positive, default=2, help="number of generators (default 2)")
        sp.add_argument("--gens", help="generator names, comma or space separated (overrides --n)")
        sp.add_argument("--kind", default="exponential", choices=["exponential", "exp", "magnus"])
        if level:
            sp.add_argument("--N", type=_level, default=4, help="truncation level (default 4)")

    sp = sub.add_parser("expand", help="expansion of a word")
    word_opts(sp)
    sp.add_argument("--word", required=True)
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("grouplike", help="group-like test for a word image or a series file")
    word_opts(sp)
    sp.add_argument("--word")
    sp.add_argument("--series", help="NCSeries JSON file")
    sp.set_defaults(func=cmd_grouplike)

    sp = sub.add_parser("bch", help="log(exp(X_i) exp(X_j))")
    sp.add_argument("--i", type=_positive, required=True)
    sp.add_argument("--j", type=_positive, required=True)
    sp.add_argument("--N", type=_level, default=4)
    sp.add_argument("--n", type=_positive, help="rank (default max(i, j))")
    sp.set_defaults(func=cmd_bch)

    sp = sub.add_parser("depth", help="lowest degree of E(w) - 1")
    word_opts(sp)
    sp.add_argument("--word", required=True)
    sp.set_defaults(func=cmd_depth)

    sp = sub.add_parser("nilpotent-eq", help="equality of two words modulo Gamma_{k+1}")
    word_opts(sp, level=False)
    sp.add_argument("--w1", required=True)
    sp.add_argument("--w2", required=True)
    sp.add_argument("--k", type=_level, required=True)
    sp.add_argument("--N", type=_level)
    sp.set_defaults(func=cmd_nilpotent_eq)

    sp = sub.add_parser("malcev", help="relator logs and graded rank probe of a presentation")
    sp.add_argument("--presentation", required=True, help="presentation file")
    sp.add_argument("--kind", default="exponential", choices=["exponential", "exp", "magnus"])
    sp.add_argument("--N", type=_level, default=4)
    sp.set_defaults(func=cmd_malcev)

    sp = sub.add_parser("ranks", help="LCS or Chen ranks of a family")
    sp.add_argument("--family", required=True, choices=FAMILIES)
    sp.add_argument("--n", type=_positive)
    sp.add_argument("--g", type=_positive)
    sp.add_argument("--kind", default="lcs", choices=["lcs", "chen"])
    sp.add_argument("--K", type=_level, default=4)
    sp.set_defaults(func=cmd_ranks)

    sp = sub.add_parser("distinguish", help="first degree where rank tables differ")
    sp.add_argument("families", nargs="+", help="family or family:param")
    sp.add_argument("--n", type=_positive, help="default parameter")
    sp.add_argument("--kind", default="chen", choices=["lcs", "chen"])
    sp.add_argument("--K", type=_level, default=4)
    sp.set_defaults(func=cmd_distinguish)

    sp = sub.add_parser("kz", help="numerical parallel transport along a loop")
    sp.add_argument("--loop", required=True, help="loop JSON file")
    sp.add_argument("--K", type=_level, default=3)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--threshold", type=float, default=1e-12, help="omit smaller coefficients")
    sp.set_defaults(func=cmd_kz)

    sp = sub.add_parser("hilbert", help="Hilbert series and Lie quotient dims of an ideal")
    sp.add_argument("--ideal", required=True, help="pure-braid:n, surface:g, abelian:n or free:n")
    sp.add_argument("--N", type=_level, default=4)
    sp.set_defaults(func=cmd_hilbert)
    for sp in sub.choices.values():
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    return p


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        data, text = args.func(args)
    except UsageError as exc:
        print(parser.format_usage().rstrip(), file=err)
        print(f"error: {exc}", file=err)
        return 2
    except (DomainError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    print(json.dumps(data, indent=2) if args.json else text, file=out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
