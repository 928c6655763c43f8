"""``youngshap`` command-line front end.

Exit codes: 0 success, 1 verification failure or other error, 2 parse or
usage error, 3 size guard exceeded, 4 precondition violated (including
"not a member" of the requested class).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence, TextIO

from . import __version__
from .classification import classify
from .constructions import FillStrategy, choose_M, closure_construct, extend_equivalence_class
from .engine import (
    ENGINE_MAX_PLAYERS,
    ClassSpec,
    axiomatic_shapley,
    check_emp_closed_finite,
    check_theorem1_hypotheses_finite,
    solve_axiom_system,
)
from .equivalence import finest_partition, is_equivalence_class
from .errors import GameError, GuardExceeded, ParseError, PreconditionError, VerificationError
from .games import (
    Game,
    dual,
    format_allocation,
    format_coalition,
    from_bitmask_order,
    from_paper_order,
    game_from_json,
    game_to_json,
    parse_coalition,
    parse_rational,
    to_bitmask_order,
    to_paper_order,
)
from .golden import run_examples
from .shapley import SHAPLEY_MAX_PLAYERS, shapley

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_GUARD, EXIT_PRECONDITION = 0, 1, 2, 3, 4


# -- input ------------------------------------------------------------------

def _players_from_length(length: int) -> int:
    n = (length + 1).bit_length() - 1
    if n < 1 or (1 << n) - 1 != length:
        raise ParseError(f"{length} values is not 2^n - 1 for any n >= 1")
    return n


def parse_game_text(text: str, order: str = "paper") -> Game:
    """A JSON game document, or a bare vector of worths such as ``(0,0,0,3,1,2,3)``.

    A bare vector is read in ``order`` ("paper" or "bitmask", without the
    empty coalition); JSON documents carry their own order.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        return game_from_json(doc)
    tokens = [tok for tok in re.split(r"[\s,()\[\]]+", stripped) if tok]
    if not tokens:
        raise ParseError("empty game input")
    values = [parse_rational(tok) for tok in tokens]
    n = _players_from_length(len(values))
    return from_paper_order(n, values) if order == "paper" else from_bitmask_order(n, values)


def read_game(path: str, order: str, stdin: TextIO) -> Game:
    if path == "-":
        text = stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return parse_game_text(text, order)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _inputs(args: argparse.Namespace) -> list[str]:
    return list(args.input or []) + list(getattr(args, "files", None) or [])


def _one_game(args: argparse.Namespace, stdin: TextIO) -> Game:
    paths = _inputs(args)
    if len(paths) != 1:
        raise ParseError(f"expected exactly one input game, got {len(paths)}")
    return read_game(paths[0], args.format, stdin)


def _emit_game(g: Game, args: argparse.Namespace, out: TextIO) -> None:
    if args.plain:
        vals = to_paper_order(g) if args.format == "paper" else to_bitmask_order(g)
        print(format_allocation(vals), file=out)
    else:
        print(json.dumps(game_to_json(g, args.format)), file=out)


def _player(args: argparse.Namespace, g: Game) -> int:
    if args.player is None:
        raise ParseError("--player is required")
    if not 1 <= args.player <= g.n:
        raise ParseError(f"--player {args.player} outside 1..{g.n}")
    return args.player


def _M(args: argparse.Namespace) -> Optional[Fraction]:
    return parse_rational(args.M) if args.M is not None else None


# -- subcommands ------------------------------------------------------------

def cmd_shapley(args, out, err, stdin) -> int:
    v = _one_game(args, stdin)
    guard = args.max_players if args.max_players is not None else SHAPLEY_MAX_PLAYERS
    print(format_allocation(shapley(v, guard)), file=out)
    return EXIT_OK


def cmd_classify(args, out, err, stdin) -> int:
    v = _one_game(args, stdin)
    for tag in sorted(str(c) for c in classify(v)):
        print(tag, file=out)
    return EXIT_OK


def cmd_equiv(args, out, err, stdin) -> int:
    v = _one_game(args, stdin)
    if args.set is None:
        print(finest_partition(v), file=out)
    else:
        S = parse_coalition(args.set, v.n)
        print(f"equivalence class: {'yes' if is_equivalence_class(v, S) else 'no'}", file=out)
    return EXIT_OK


def cmd_dual(args, out, err, stdin) -> int:
    _emit_game(dual(_one_game(args, stdin)), args, out)
    return EXIT_OK


def _fill(args: argparse.Namespace, v: Game, k: int) -> FillStrategy:
    if args.fill == "zero":
        return FillStrategy.zero()
    if args.fill == "copy":
        return FillStrategy.copy()
    M = _M(args)
    if M is None:
        M = choose_M(v, k)
    return FillStrategy.exponential(M, M * v.n)


def cmd_extend(args, out, err, stdin) -> int:
    v = _one_game(args, stdin)
    if args.set is None:
        raise ParseError("--set is required")
    S = parse_coalition(args.set, v.n)
    k = _player(args, v)
    if args.class_tag is not None:
        spec = ClassSpec.parse(args.class_tag)
        if spec.target is None:
            raise PreconditionError(f"no closure route for class {spec}; use additive, strictly-convex, "
                                    "strictly-concave or all-games")
        w = closure_construct(v, S, k, spec.target, _M(args))
    else:
        w = extend_equivalence_class(v, S, k, _fill(args, v, k))
    _emit_game(w, args, out)
    for c in sorted(classify(v) - classify(w), key=str):
        print(f"warning: result not {c}", file=err)
    return EXIT_OK


def cmd_derive(args, out, err, stdin) -> int:
    v = _one_game(args, stdin)
    spec = ClassSpec.parse(args.class_tag or "all-games")
    guard = args.max_players if args.max_players is not None else ENGINE_MAX_PLAYERS
    if v.n > guard:
        raise GuardExceeded(f"derivation: n = {v.n} exceeds guard {guard}")
    if spec.game_class is not None and spec.game_class not in classify(v):
        raise PreconditionError(f"not a member of class {spec}")
    alloc, trace = axiomatic_shapley(v, spec, seed=args.seed, max_players=guard)
    print(format_allocation(alloc), file=out)
    if args.trace:
        print(trace.render(), file=out)
    return EXIT_OK


def _collection(args, stdin) -> list[Game]:
    paths = _inputs(args)
    if not paths:
        raise ParseError("no input games")
    return [read_game(p, args.format, stdin) for p in paths]


def cmd_closure_check(args, out, err, stdin) -> int:
    A = _collection(args, stdin)
    rep = check_emp_closed_finite(A)
    if rep.closed:
        print("EMP-closed: yes", file=out)
    else:
        g, S, k = rep.counterexample
        print(f"EMP-closed: no (game {A.index(g) + 1}, S = {format_coalition(S)}, k = {k})", file=out)
    hyp = check_theorem1_hypotheses_finite(A)
    if hyp.holds:
        print("characterization hypotheses: hold", file=out)
    else:
        g, k = hyp.failing
        print(f"characterization hypotheses: fail (game {g + 1}, k = {k})", file=out)
    return EXIT_OK


def cmd_solve_axioms(args, out, err, stdin) -> int:
    A = _collection(args, stdin)
    res = solve_axiom_system(A)
    if res.status == "unique":
        print("unique", file=out)
        for g in range(len(A)):
            print(f"game {g + 1}: {format_allocation(res.table.rows[g])}", file=out)
    elif res.status == "underdetermined":
        print(f"underdetermined, nullity {res.nullity}", file=out)
    else:
        print("infeasible", file=out)
    return EXIT_OK


def cmd_examples(args, out, err, stdin) -> int:
    return run_examples(out)


COMMANDS = {
    "shapley": cmd_shapley,
    "classify": cmd_classify,
    "equiv": cmd_equiv,
    "dual": cmd_dual,
    "extend": cmd_extend,
    "derive": cmd_derive,
    "closure-check": cmd_closure_check,
    "solve-axioms": cmd_solve_axioms,
    "examples": cmd_examples,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", action="append", metavar="FILE",
                        help="game file (JSON or bare vector); '-' reads standard input; repeatable")
    common.add_argument("--format", choices=("paper", "bitmask"), default="paper",
                        help="order of bare input vectors and of emitted games (default: paper)")
    common.add_argument("--class", dest="class_tag", metavar="TAG",
                        help="class tag such as all-games, superadditive, strictly-convex")
    common.add_argument("--set", metavar="S", help='coalition, e.g. "1,2"')
    common.add_argument("--player", type=int, metavar="K")
    common.add_argument("--fill", choices=("zero", "copy", "expM"), default="zero",
                        help="worths of coalitions outside the grown class (extend)")
    common.add_argument("--M", metavar="VALUE", help="big-M override for expM and closure routes")
    common.add_argument("--trace", action="store_true", help="print the derivation trace")
    common.add_argument("--seed", type=int, help="player-order seed for derive")
    common.add_argument("--max-players", type=int, metavar="N", help="override the size guard")
    common.add_argument("--plain", action="store_true", help="emit games as a bare value vector")

    parser = argparse.ArgumentParser(prog="youngshap", description="Exact TU-game tools for the Shapley value.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    helps = {
        "shapley": "Shapley value by the subset formula",
        "classify": "list the classes the game belongs to",
        "equiv": "finest partition into equivalence classes, or test --set",
        "dual": "dual game",
        "extend": "grow the equivalence class --set by --player",
        "derive": "derive the Shapley value from PO, ETP and EMP",
        "closure-check": "EMP-closedness and characterization hypotheses of a finite collection",
        "solve-axioms": "solve the PO/ETP/EMP system of a finite collection",
        "examples": "golden reproduction report",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text, description=text)
        if name in ("closure-check", "solve-axioms"):
            p.add_argument("files", nargs="*", metavar="FILE")
    return parser


def main(argv: Optional[Sequence[str]] = None, stdin: TextIO = None, out: TextIO = None,
         err: TextIO = None) -> int:
    stdin = stdin or sys.stdin
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out, err, stdin)
    except GuardExceeded as exc:
        print(f"error: {exc}", file=err)
        return EXIT_GUARD
    except PreconditionError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PRECONDITION
    except GameError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=err)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
