"""Command-line interface: ``stotting <command> ...``.

Exit codes: 0 success, 1 when the queried condition is found (a violation,
a witness, a failed strategy check, an unmet premise), 2 on input errors.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ContractViolation, InputError, StrategyFault
from .games import (
    MakerBreaker,
    Move,
    Side,
    StottingMakerBreaker,
    StottingWaiterClient,
    WaiterClient,
    apply_move,
    is_legal,
    legal_moves,
    new_game,
    role_name,
)
from .hypergraph import Hypergraph, canonical_key, load, serialize
from .matroid import (
    UniformMatroid,
    find_two_disjoint_bases,
    lehman_waiter,
    load_edge_list,
    matroid_to_hypergraph,
    restrict_to,
)
from .solver import Solver, optimal_strategy
from .strategy import (
    ADAPTERS,
    StrategyOracle,
    maker_from_stotting_waiter,
    waiter_from_stotting_waiter,
)
from .verify import CONFIGS, EnumClass, check_implications, search_separation, verify_strategy

GAMES = ("mb", "mb-biased", "wc", "smb", "swc")
TRANSFORMS = {
    ("smb", "wc"): "smb->wc",
    ("mb12", "smb"): "mb12->smb",
    ("swc", "mb"): "swc->mb",
    ("smb", "mb"): "smb->mb",
    ("swc", "wc"): "swc->wc",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _ratio(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b, got {text!r}") from None
    if a < 1 or b < 1:
        raise argparse.ArgumentTypeError("bias values must be at least 1")
    return a, b


def variant_from_args(args):
    game = args.game
    if game not in ("mb", "mb-biased"):
        if args.bias is not None:
            raise InputError(f"--bias is only valid with --game mb or mb-biased, not {game}")
        if args.first is not None:
            raise InputError(f"--first is only valid with --game mb or mb-biased, not {game}")
    if game in ("mb", "mb-biased"):
        a, b = args.bias or ((1, 1) if game == "mb" else (1, 2))
        first = Side.MAKER if args.first == "maker" else Side.BREAKER
        return MakerBreaker(a, b, first)
    return {"wc": WaiterClient(), "smb": StottingMakerBreaker(), "swc": StottingWaiterClient()}[game]


def _read_hypergraph(path: str) -> Hypergraph:
    try:
        return load(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def _echo(h: Hypergraph, out):
    out.write(serialize(h))


def _play_out(s, players, out):
    """Run a game where ``players[side](state, transcript)`` picks every move."""
    transcript = ()
    while not s.terminal:
        m = players[s.to_move](s, transcript)
        s = apply_move(s, m)
        transcript += (m,)
    return s, transcript


def _least_opponent(s, transcript):
    return legal_moves(s)[0]


def _print_trace(s, out):
    for line in s.trace_lines():
        out.write(line + "\n")
    w = s.winner()
    out.write(f"winner: {role_name(s.variant, w)}\n")


# --- commands ---------------------------------------------------------------------


def cmd_solve(args, out) -> int:
    variant = variant_from_args(args)
    h = _read_hypergraph(args.file)
    _echo(h, out)
    solver = Solver(variant)
    s = new_game(variant, h)
    report = solver.solve_state(s)
    out.write(f"game: {variant.name}\n")
    out.write(f"winner: {report.winner.value}\n")
    out.write(f"optimal move: {report.optimal_move or '-'}\n")
    out.write(f"states visited: {report.states_visited}\n")
    out.write(f"table hits: {report.table_hits}\n")
    if args.trace:
        def engine(state, transcript):
            return solver.solve_state(state).optimal_move

        final, _ = _play_out(s, {Side.MAKER: engine, Side.BREAKER: engine}, out)
        _print_trace(final, out)
    return 0


def _enum_class(args) -> EnumClass:
    return EnumClass(
        args.max_vertices,
        args.max_sets,
        args.max_set_size,
        minimal_only=not args.all_families,
        pad_isolated=args.pad_isolated,
    )


def cmd_verify(args, out) -> int:
    report = check_implications(_enum_class(args), jobs=args.jobs)
    out.write(report.text(timing=args.timing))
    return 0 if report.ok else 1


def cmd_search(args, out) -> int:
    cls = _enum_class(args)
    witnesses = search_separation(cls, args.premise, args.conclusion)
    for h in witnesses:
        out.write(f"# witness {args.premise}=M {args.conclusion}=B {canonical_key(h).decode()}\n")
        _echo(h, out)
    out.write(f"# {len(witnesses)} witnesses over {cls}\n")
    return 1 if witnesses else 0


def _verify_and_report(name, oracle: StrategyOracle, out) -> bool:
    result = verify_strategy(oracle.variant, oracle.hypergraph, oracle, oracle.side)
    if result.ok:
        out.write(f"{name}: wins all {result.leaves} lines\n")
    else:
        out.write(f"{name}: LOSES on " + "; ".join(map(str, result.line)) + "\n")
    return result.ok


def cmd_transform(args, out) -> int:
    key = (args.source, args.target)
    if key not in TRANSFORMS:
        raise InputError(
            f"no transformation from {args.source} to {args.target}; available: "
            + ", ".join(f"{a}->{b}" for a, b in TRANSFORMS)
        )
    h = _read_hypergraph(args.file)
    _echo(h, out)
    src_variant, adapter = ADAPTERS[TRANSFORMS[key]]
    try:
        src = optimal_strategy(src_variant, h)
    except ContractViolation:
        out.write(f"premise fails: maker-side does not win {args.source}\n")
        return 1
    adapted = adapter(src)
    ok = _verify_and_report(adapted.name, adapted, out)
    if args.trace:
        s = new_game(adapted.variant, h)
        final, _ = _play_out(
            s, {Side.MAKER: lambda st, tr: adapted(tr), Side.BREAKER: _least_opponent}, out
        )
        _print_trace(final, out)
    return 0 if ok else 1


def cmd_lehman(args, out) -> int:
    if args.graph:
        try:
            mat = load_edge_list(args.graph)
        except OSError as exc:
            raise InputError(f"cannot read {args.graph}: {exc.strerror or exc}") from None
    else:
        r, m = args.uniform
        mat = UniformMatroid(r, m)
    pair = find_two_disjoint_bases(mat)
    if pair is None:
        raise InputError("the matroid has no two disjoint bases")
    restricted, rpair = restrict_to(mat, pair)
    out.write(f"matroid: {mat!r}\n")
    out.write(f"bases: {pair}\n")
    if len(restricted.ground) < len(mat.ground):
        out.write(f"restricted to elements {list(restricted.elements)}\n")
    waiter = lehman_waiter(restricted, rpair)
    _echo(waiter.hypergraph, out)
    ok = _verify_and_report("stotting waiter", waiter, out)
    ok &= _verify_and_report("maker (breaker first)", maker_from_stotting_waiter(waiter), out)
    ok &= _verify_and_report("waiter", waiter_from_stotting_waiter(waiter), out)
    if args.trace:
        final, _ = _play_out(
            new_game(waiter.variant, waiter.hypergraph),
            {Side.MAKER: lambda st, tr: waiter(tr), Side.BREAKER: _least_opponent},
            out,
        )
        _print_trace(final, out)
    return 0 if ok else 1


def _read_move(s, text: str) -> Move | None:
    text = text.strip()
    kind = s.phase[0]
    words = text.split()
    try:
        if words and all(w.isdigit() for w in words):
            nums = [int(w) for w in words]
            if kind == "offer" and len(nums) == 2:
                m = Move("offer", min(nums), max(nums))
            elif len(nums) == 1 and kind in ("claim", "first", "second"):
                m = Move("claim", nums[0])
            elif len(nums) == 1 and kind in ("suggest", "add", "pick"):
                m = Move(kind, nums[0])
            else:
                return None
        elif text.upper() in ("BM", "MB") and kind == "announce":
            m = Move.parse(f"announce {text}")
        else:
            m = Move.parse(text)
    except InputError:
        return None
    return m if is_legal(s, m) else None


def cmd_play(args, out, stdin=None) -> int:
    stdin = stdin or sys.stdin
    variant = variant_from_args(args)
    h = _read_hypergraph(args.file)
    _echo(h, out)
    human = Side(args.human)
    solver = Solver(variant)
    s = new_game(variant, h)
    transcript = ()
    while not s.terminal:
        if s.to_move is human:
            moves = legal_moves(s)
            out.write(f"[{role_name(variant, human)}] legal: {', '.join(map(str, moves))}\n> ")
            out.flush()
            line = stdin.readline()
            if not line or line.strip() in ("q", "quit"):
                out.write("\naborted\n")
                for t in s.trace_lines():
                    out.write(t + "\n")
                return 2
            m = _read_move(s, line)
            if m is None:
                out.write("invalid move, try again\n")
                continue
        else:
            m = solver.solve_state(s).optimal_move
            out.write(f"[{role_name(variant, human.other)}] {m}\n")
        s = apply_move(s, m)
        transcript += (m,)
    _print_trace(s, out)
    return 0


# --- parser -----------------------------------------------------------------------


def _add_class_flags(p):
    p.add_argument("--max-vertices", type=int, default=4)
    p.add_argument("--max-sets", type=int, default=4)
    p.add_argument("--max-set-size", type=int, default=3)
    p.add_argument("--all-families", action="store_true", help="do not skip non-antichains")
    p.add_argument("--pad-isolated", action="store_true", help="also add isolated vertices")


def _add_game_flags(p):
    p.add_argument("--game", choices=GAMES, required=True)
    p.add_argument("--bias", type=_ratio, help="a:b quotas (mb, mb-biased)")
    p.add_argument("--first", choices=("maker", "breaker"), help="first mover (mb, mb-biased)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stotting", description="Exact solver for positional games.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one game")
    _add_game_flags(p)
    p.add_argument("--trace", action="store_true", help="print an optimal playout")
    p.add_argument("--seed", type=int, help="reserved; the engine is deterministic")
    p.add_argument("file")

    p = sub.add_parser("verify", help="run the implication battery")
    _add_class_flags(p)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true")

    p = sub.add_parser("search", help="find instances separating two games")
    _add_class_flags(p)
    p.add_argument("--premise", choices=tuple(CONFIGS), required=True)
    p.add_argument("--conclusion", choices=tuple(CONFIGS), required=True)

    p = sub.add_parser("transform", help="adapt a winning strategy and verify it")
    p.add_argument("--from", dest="source", choices=("smb", "mb12", "swc"), required=True)
    p.add_argument("--to", dest="target", choices=("wc", "smb", "mb"), required=True)
    p.add_argument("--trace", action="store_true")
    p.add_argument("file")

    p = sub.add_parser("lehman", help="Lehman's connectivity game on a matroid")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--graph", help="multigraph edge list file")
    g.add_argument("--uniform", type=_ratio, metavar="R:M", help="uniform matroid U(R,M)")
    p.add_argument("--trace", action="store_true")

    p = sub.add_parser("play", help="play interactively against the engine")
    _add_game_flags(p)
    p.add_argument("--human", choices=("maker", "breaker"), default="breaker")
    p.add_argument("file")
    return parser


COMMANDS = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "search": cmd_search,
    "transform": cmd_transform,
    "lehman": cmd_lehman,
    "play": cmd_play,
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except StrategyFault as exc:
        print(f"strategy fault: {exc}", file=sys.stderr)
        return 1


def main():
    raise SystemExit(run())
