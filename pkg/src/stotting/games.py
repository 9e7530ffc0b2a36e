"""The four positional-game protocols as immutable state machines.

Each variant has a protagonist (Maker, Waiter) who wants to own a whole
winning set and an antagonist (Breaker, Client) who wants to stop that.
Both are referred to through :class:`Side`.

Phases, in original vertex labels:

=================  =========================================================
variant            phases
=================  =========================================================
Maker-Breaker      ``("claim", side, remaining)``
Waiter-Client      ``("offer",)``, ``("pick", x, y)``
stotting MB        ``("announce",)``, ``("first", order)``, ``("second", order)``
stotting WC        ``("suggest",)``, ``("add", x)``, ``("pick", x, y)``
any, decided       ``("over",)``
=================  =========================================================

``order`` is ``"BM"`` (Breaker moves first this turn) or ``"MB"``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, replace
from typing import Iterable, Union

from .errors import ContractViolation, InputError
from .hypergraph import MAX_SOLVER_BOARD, Hypergraph, bits, reduce

BM = "BM"
MB = "MB"


class Side(enum.Enum):
    """Maker-side (Maker or Waiter) or Breaker-side (Breaker or Client)."""

    MAKER = "maker"
    BREAKER = "breaker"

    @property
    def other(self) -> Side:
        return Side.BREAKER if self is Side.MAKER else Side.MAKER


@dataclass(frozen=True)
class MakerBreaker:
    maker_quota: int = 1
    breaker_quota: int = 1
    first: Side = Side.BREAKER

    def __post_init__(self):
        if self.maker_quota < 1 or self.breaker_quota < 1:
            raise InputError("quotas must be at least 1")

    def quota(self, side: Side) -> int:
        return self.maker_quota if side is Side.MAKER else self.breaker_quota

    @property
    def name(self) -> str:
        return f"mb({self.maker_quota}:{self.breaker_quota},{self.first.value}-first)"


@dataclass(frozen=True)
class WaiterClient:
    name = "wc"


@dataclass(frozen=True)
class StottingMakerBreaker:
    name = "smb"


@dataclass(frozen=True)
class StottingWaiterClient:
    name = "swc"


Variant = Union[MakerBreaker, WaiterClient, StottingMakerBreaker, StottingWaiterClient]


def is_waiter_game(variant: Variant) -> bool:
    return isinstance(variant, (WaiterClient, StottingWaiterClient))


def role_name(variant: Variant, side: Side) -> str:
    if is_waiter_game(variant):
        return "waiter" if side is Side.MAKER else "client"
    return side.value


@dataclass(frozen=True, order=True)
class Move:
    """A single protocol action.

    ``kind`` is one of ``claim``, ``announce``, ``offer``, ``suggest``,
    ``add``, ``pick``.  For ``announce``, ``x`` is 0 for Breaker-first and
    1 for Maker-first; for ``offer``, ``x < y``.
    """

    kind: str
    x: int = 0
    y: int = 0

    def __str__(self):
        if self.kind == "announce":
            return f"announce {BM if self.x == 0 else MB}"
        if self.kind == "offer":
            return f"offer {self.x} {self.y}"
        return f"{self.kind} {self.x}"

    @classmethod
    def parse(cls, text: str) -> Move:
        words = text.split()
        if not words:
            raise InputError("empty move")
        kind, args = words[0], words[1:]
        try:
            if kind == "announce" and len(args) == 1 and args[0].upper() in (BM, MB):
                return announce(args[0].upper())
            if kind == "offer" and len(args) == 2:
                return offer(int(args[0]), int(args[1]))
            if kind in ("claim", "suggest", "add", "pick") and len(args) == 1:
                return cls(kind, int(args[0]))
        except ValueError:
            pass
        raise InputError(f"cannot parse move {text!r}")


def claim(v: int) -> Move:
    return Move("claim", v)


def announce(order: str) -> Move:
    return Move("announce", 0 if order == BM else 1)


def offer(x: int, y: int) -> Move:
    return Move("offer", min(x, y), max(x, y))


def suggest(v: int) -> Move:
    return Move("suggest", v)


def add(v: int) -> Move:
    return Move("add", v)


def pick(v: int) -> Move:
    return Move("pick", v)


def order_of(m: Move) -> str:
    return BM if m.x == 0 else MB


@dataclass(frozen=True)
class GameState:
    """Claimed sets plus the phase marker; ``live`` is the residual family.

    ``live`` holds the winning sets not yet hit by the antagonist, with the
    protagonist's vertices removed, in original labels.
    """

    variant: Variant
    hypergraph: Hypergraph
    phase: tuple
    maker: int = 0
    breaker: int = 0
    live: tuple[int, ...] = ()
    turn: int = 1
    claims: tuple[tuple[int, Side, int], ...] = ()

    @property
    def unclaimed(self) -> int:
        return self.hypergraph.full & ~(self.maker | self.breaker)

    def winner(self) -> Side | None:
        return winner(self)

    @property
    def terminal(self) -> bool:
        return self.phase[0] == "over"

    @property
    def to_move(self) -> Side | None:
        return to_move(self)

    def residual(self) -> Hypergraph:
        """The reduced residual hypergraph of this position."""
        return residual(self)

    def trace_lines(self) -> list[str]:
        return [f"{t} {role_name(self.variant, s)}:{v}" for t, s, v in self.claims]


def new_game(variant: Variant, h: Hypergraph) -> GameState:
    if h.board_size > MAX_SOLVER_BOARD:
        raise InputError(f"board of {h.board_size} elements exceeds {MAX_SOLVER_BOARD}")
    if isinstance(variant, MakerBreaker):
        phase = ("claim", variant.first, variant.quota(variant.first))
    elif isinstance(variant, WaiterClient):
        phase = ("offer",)
    elif isinstance(variant, StottingMakerBreaker):
        phase = ("announce",)
    elif isinstance(variant, StottingWaiterClient):
        phase = ("suggest",)
    else:
        raise InputError(f"unknown variant {variant!r}")
    s = GameState(variant, h, phase, live=tuple(sorted(set(h.sets))))
    return _settle(s)


def winner(s: GameState) -> Side | None:
    """Maker-side once a winning set is fully owned, Breaker-side once all are hit."""
    if 0 in s.live:
        return Side.MAKER
    if not s.live or not s.unclaimed:
        return Side.BREAKER
    return None


def residual(s: GameState) -> Hypergraph:
    return reduce(Hypergraph(s.hypergraph.board_size, s.live))


def to_move(s: GameState) -> Side | None:
    p = s.phase
    kind = p[0]
    if kind == "over":
        return None
    if kind == "claim":
        return p[1]
    if kind in ("announce", "suggest", "pick"):
        return Side.BREAKER
    if kind in ("offer", "add"):
        return Side.MAKER
    order = p[1]
    first = Side.BREAKER if order == BM else Side.MAKER
    return first if kind == "first" else first.other


def _claim(s: GameState, side: Side, v: int) -> GameState:
    b = 1 << (v - 1)
    if side is Side.MAKER:
        live = tuple(sorted({m & ~b for m in s.live}))
        return replace(s, maker=s.maker | b, live=live, claims=s.claims + ((s.turn, side, v),))
    live = tuple(m for m in s.live if not m & b)
    return replace(s, breaker=s.breaker | b, live=live, claims=s.claims + ((s.turn, side, v),))


def _settle(s: GameState) -> GameState:
    """Apply forced transitions: early termination and the lone leftover rule."""
    if winner(s) is not None:
        return replace(s, phase=("over",))
    if s.phase[0] in ("offer", "suggest"):
        free = bits(s.unclaimed)
        if len(free) == 1:
            s = _claim(s, Side.BREAKER, free[0] + 1)
            return replace(s, phase=("over",)) if winner(s) else s
    return s


def _free_vertices(s: GameState) -> list[int]:
    return [b + 1 for b in bits(s.unclaimed)]


def legal_moves(s: GameState) -> list[Move]:
    """All protocol-legal moves, sorted."""
    p = s.phase
    kind = p[0]
    if kind == "over":
        raise ContractViolation("legal_moves called on a terminal state")
    free = _free_vertices(s)
    if kind in ("claim", "first", "second"):
        return [claim(v) for v in free]
    if kind == "announce":
        return [announce(BM), announce(MB)]
    if kind == "offer":
        return [offer(x, y) for x, y in itertools.combinations(free, 2)]
    if kind == "suggest":
        return [suggest(v) for v in free]
    if kind == "add":
        return [add(v) for v in free if v != p[1]]
    if kind == "pick":
        return [pick(p[1]), pick(p[2])]
    raise ContractViolation(f"unknown phase {p!r}")


def is_legal(s: GameState, m: Move) -> bool:
    p = s.phase
    kind = p[0]
    if kind == "over" or (m.kind != "offer" and m.y != 0):
        return False

    def free(v):
        return 1 <= v <= s.hypergraph.board_size and bool(s.unclaimed >> (v - 1) & 1)

    if kind in ("claim", "first", "second"):
        return m.kind == "claim" and free(m.x)
    if kind == "announce":
        return m.kind == "announce" and m.x in (0, 1) and m.y == 0
    if kind == "offer":
        return m.kind == "offer" and m.x < m.y and free(m.x) and free(m.y)
    if kind == "suggest":
        return m.kind == "suggest" and free(m.x)
    if kind == "add":
        return m.kind == "add" and free(m.x) and m.x != p[1]
    if kind == "pick":
        return m.kind == "pick" and m.x in (p[1], p[2])
    return False


def apply_move(s: GameState, m: Move) -> GameState:
    if not is_legal(s, m):
        raise ContractViolation(f"illegal move {m} in phase {s.phase}")
    p = s.phase
    kind = p[0]
    v = s.variant
    if kind == "claim":
        side, remaining = p[1], p[2] - 1
        s = _claim(s, side, m.x)
        if remaining == 0:
            side = side.other
            remaining = v.quota(side)
            turn = s.turn + (side is v.first)
            s = replace(s, turn=turn)
        return _settle(replace(s, phase=("claim", side, remaining)))
    if kind == "announce":
        return replace(s, phase=("first", order_of(m)))
    if kind == "first":
        s = _claim(s, to_move(s), m.x)
        return _settle(replace(s, phase=("second", p[1])))
    if kind == "second":
        s = _claim(s, to_move(s), m.x)
        return _settle(replace(s, phase=("announce",), turn=s.turn + 1))
    if kind == "offer":
        return replace(s, phase=("pick", m.x, m.y))
    if kind == "suggest":
        return replace(s, phase=("add", m.x))
    if kind == "add":
        return replace(s, phase=("pick", min(p[1], m.x), max(p[1], m.x)))
    if kind == "pick":
        taken = m.x
        given = p[2] if taken == p[1] else p[1]
        s = _claim(s, Side.BREAKER, taken)
        s = _claim(s, Side.MAKER, given)
        nxt = ("offer",) if isinstance(v, WaiterClient) else ("suggest",)
        return _settle(replace(s, phase=nxt, turn=s.turn + 1))
    raise ContractViolation(f"unknown phase {p!r}")


def replay(variant: Variant, h: Hypergraph, moves: Iterable[Move]) -> GameState:
    s = new_game(variant, h)
    for m in moves:
        s = apply_move(s, m)
    return s
