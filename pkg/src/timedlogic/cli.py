"""Command-line front end: timedlogic <subcommand> ..."""

from __future__ import annotations

import argparse
import os
import sys
import warnings

from .games.menus import build_menu
from .games.signatures import OracleCapExceeded, ef_crosscheck, random_crosscheck
from .games.solver import FP, US, EFGame, TreeCapExceeded, duplicator_wins
from .logic.analysis import classify_formula, modal_count, modal_depth, tptl_fragment
from .logic.intervals import FAMILY_KINDS
from .logic.syntax import LOGICS, MTL, TPTL, TTL, FormulaSyntaxError, parse_formula, print_formula
from .semantics.evaluate import FreezeEvaluator, MTLEvaluator, NotAnchoredError
from .separations.families import CASE_IDS, gen_case
from .separations.runner import FULL, SMALL, edge_summary, run_separation
from .ttl2mitl.translate import DEFAULT, LITERAL, PunctualityError, Translator
from .words import WordError, parse_word, serialize_word

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def read_word(path: str):
    return parse_word(_read(path))


def read_formula(path: str, logic: str):
    lines = [ln for ln in _read(path).splitlines() if not ln.lstrip().startswith("#")]
    return parse_formula("\n".join(lines), logic)


def _menu(args):
    kinds = {k.lower(): k for k in FAMILY_KINDS}
    kind = kinds.get(args.menu.lower())
    if kind is None:
        raise CliError(f"unknown menu {args.menu!r}; expected one of {', '.join(FAMILY_KINDS)}")
    return build_menu(kind, args.k)


# -- subcommands -------------------------------------------------------------------

def cmd_eval(args) -> int:
    w = read_word(args.word)
    f = read_formula(args.formula, args.logic)
    i = args.position
    if i is None:
        if args.logic != MTL and not w.anchored_zero:
            raise NotAnchoredError(
                f"{args.logic} membership needs a word whose first timestamp is 0 (got {w.time(1)}); "
                "pass --position to evaluate at a position instead"
            )
        i = 1
    w.check_position(i)
    if args.logic == MTL:
        verdict = MTLEvaluator(w).holds(i, f)
    else:
        verdict = FreezeEvaluator(w).holds(i, {}, f)
    print("true" if verdict else "false")
    return EXIT_TRUE if verdict else EXIT_FALSE


def cmd_translate(args) -> int:
    f = read_formula(args.formula, TTL)
    tr = Translator(f, LITERAL if args.literal else DEFAULT, args.strict_punctuality)
    beta = tr.beta()
    lines = tr.report.lines(beta, f)
    if args.porcelain:
        print(f"beta\t{print_formula(beta)}")
        for ln in lines:
            key, _, val = ln.strip().partition(": ")
            print(f"{key}\t{val}")
    else:
        print(print_formula(beta))
        for ln in lines:
            print(f"# {ln}")
    return 0


def cmd_game(args) -> int:
    w0, w1 = read_word(args.word0), read_word(args.word1)
    menu = _menu(args)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        out = duplicator_wins(w0, w1, args.i0, args.i1, args.rounds, menu, args.variant,
                              strict_adjacency=args.strict_adjacency)
    if args.porcelain:
        print(f"winner\t{out.winner}")
        for rec in out.principal_variation:
            print(f"move\t{rec.round}\t{rec.word}\t{rec.move}\t{rec.interval}\t{rec.spoiler_pos}\t"
                  f"{'' if rec.duplicator_pos is None else rec.duplicator_pos}")
        for msg in out.warnings:
            print(f"warning\t{msg}")
        return 0
    print(out.winner)
    print(f"# {args.rounds} rounds, {menu.describe()}, {args.variant} variant, start ({args.i0},{args.i1})")
    for msg in out.warnings:
        print(f"# warning: {msg}")
    for rec in out.principal_variation:
        print(f"  {rec}")
    if out.final_note:
        print(f"  {out.final_note}")
    if args.tree:
        game = EFGame(w0, w1, menu, args.variant, args.strict_adjacency)
        try:
            tree = game.strategy_tree(args.i0, args.i1, args.rounds, args.tree_cap)
        except TreeCapExceeded as exc:
            raise CliError(str(exc)) from None
        print("# strategy tree")
        print("\n".join(tree.lines()))
    return 0


def _case_params(args) -> dict:
    return {k: getattr(args, k) for k in ("n", "k", "m", "r", "length") if getattr(args, k, None) is not None}


def cmd_gen(args) -> int:
    if args.case not in CASE_IDS:
        raise CliError(f"unknown case {args.case!r}")
    case = gen_case(args.case, **_case_params(args))
    os.makedirs(args.out, exist_ok=True)
    names = ["A", "B"] if len(case.words) == 2 else ["w"] + [f"v{j}" for j in range(1, len(case.words))]
    written = []
    for name, w in zip(names, case.words):
        path = os.path.join(args.out, f"{args.case}_{name}.tw")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"# {case.label()} word {name}\n")
            fh.write(serialize_word(w))
        written.append(path)
    path = os.path.join(args.out, f"{args.case}_phi.{case.logic}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# {case.label()} formula ({case.logic})\n{print_formula(case.formula)}\n")
    written.append(path)
    for p in written:
        print(p)
    return 0


def cmd_check(args) -> int:
    if args.case == "all":
        table = SMALL if args.small else FULL
        cases = [gen_case(cid, **table[cid]) for cid in CASE_IDS]
    elif args.case in CASE_IDS:
        params = _case_params(args) or (SMALL if args.small else FULL)[args.case]
        cases = [gen_case(args.case, **params)]
    else:
        raise CliError(f"unknown case {args.case!r}; expected all or one of {', '.join(CASE_IDS)}")
    reports = [run_separation(c, args.samples, args.seed) for c in cases]
    for r in reports:
        print("\n".join(r.porcelain() if args.porcelain else r.lines()))
    if args.case == "all" and not args.porcelain:
        print("\n".join(edge_summary(reports)))
    overall = all(r.passed for r in reports)
    print(f"{'overall' + chr(9) if args.porcelain else 'OVERALL '}{'PASS' if overall else 'FAIL'}")
    return 0 if overall else 1


def cmd_fragment(args) -> int:
    f = read_formula(args.formula, args.logic)
    if args.logic == TPTL:
        info = tptl_fragment(f)
        rows = [("logic", "TPTL"), ("modalities", ",".join(info["modalities"])),
                ("future_only", str(info["future_only"]).lower()),
                ("freeze_variables", ",".join(info["freeze_variables"]))]
    else:
        frag = classify_formula(f)
        rows = [("fragment", frag.name() if args.logic == MTL else "TTL"),
                ("unary", str(frag.unary).lower()), ("bounded", str(frag.bounded).lower()),
                ("non_punctual", str(frag.non_punctual).lower()), ("max_constant", str(frag.max_constant))]
    rows += [("modal_depth", str(modal_depth(f))), ("modal_count", str(modal_count(f)))]
    for key, val in rows:
        print(f"{key}\t{val}" if args.porcelain else f"{key}: {val}")
    return 0


def cmd_crosscheck(args) -> int:
    if args.random is not None:
        rep = random_crosscheck(args.random, args.seed)
        print(f"pairs: {rep.pairs}  agreed: {rep.agreed}  skipped over cap: {rep.skipped}")
        print(f"by variant: {' '.join(f'{k}={v}' for k, v in sorted(rep.by_variant.items()))}")
        for d in rep.disagreements:
            print(f"  disagreement: {d}")
        return 0 if rep.ok else 1
    if not (args.word0 and args.word1):
        raise CliError("crosscheck needs two word files or --random N")
    w0, w1 = read_word(args.word0), read_word(args.word1)
    try:
        rep = ef_crosscheck(w0, w1, args.rounds, _menu(args), args.variant)
    except OracleCapExceeded as exc:
        raise CliError(f"signature oracle cap exceeded: {exc}") from None
    print(rep)
    return 0 if rep.agree else 1


# -- parser --------------------------------------------------------------------------

def _game_options(p, menu_default="Int"):
    p.add_argument("--rounds", type=int, default=1)
    p.add_argument("--menu", default=menu_default, help=f"one of {', '.join(FAMILY_KINDS)}")
    p.add_argument("--k", type=int, default=1, help="menu bound (cap for unbounded families)")
    p.add_argument("--variant", choices=(US, FP), default=US)


def _case_options(p):
    for name in ("n", "k", "m", "r", "length"):
        p.add_argument(f"--{name}", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="timedlogic", description="Pointwise timed logics over finite timed words.")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    parser.add_argument("--porcelain", action="store_true", help="tab-separated output")
    # the same flags after the subcommand; SUPPRESS keeps the top-level value otherwise
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--porcelain", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    p = sub.add_parser("eval", help="evaluate a formula on a word")
    p.add_argument("word")
    p.add_argument("formula")
    p.add_argument("--logic", choices=LOGICS, default=MTL)
    p.add_argument("--position", type=int)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("translate", help="compile TTL into MITL[F,P]")
    p.add_argument("formula")
    p.add_argument("--literal", action="store_true")
    p.add_argument("--strict-punctuality", action="store_true")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("game", help="solve an EF game")
    p.add_argument("word0")
    p.add_argument("word1")
    _game_options(p)
    p.add_argument("--i0", type=int, default=1)
    p.add_argument("--i1", type=int, default=1)
    p.add_argument("--strict-adjacency", action="store_true")
    p.add_argument("--tree", action="store_true", help="also print the full strategy tree (debugging)")
    p.add_argument("--tree-cap", type=int, default=2000, help="node limit for --tree")
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("gen", help="write a witness family to files")
    p.add_argument("case", choices=CASE_IDS)
    _case_options(p)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="run a separation experiment")
    p.add_argument("case", help=f"all or one of {', '.join(CASE_IDS)}")
    _case_options(p)
    p.add_argument("--small", action="store_true", help="smallest parameters")
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fragment", help="classify a formula")
    p.add_argument("formula")
    p.add_argument("--logic", choices=LOGICS, default=MTL)
    p.set_defaults(func=cmd_fragment)

    p = sub.add_parser("crosscheck", help="game solver vs signature oracle")
    p.add_argument("word0", nargs="?")
    p.add_argument("word1", nargs="?")
    _game_options(p)
    p.add_argument("--random", type=int, metavar="N", help="check N seeded random pairs instead")
    p.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, WordError, FormulaSyntaxError, NotAnchoredError, PunctualityError,
            IndexError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
