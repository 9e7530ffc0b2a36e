"""Exact solver for all four game variants.

The search state is the reduced residual family plus the phase, never the
claimed sets themselves: after relabelling, many different histories map to
the same residual game.  Vertices that lie in no live winning set are
interchangeable, so only their number (``junk``) is kept; it cannot be
dropped because the move protocols (lone leftover, stotting order choice)
are sensitive to the number of free elements.

Only twin-class representatives are expanded: two vertices contained in
exactly the same live sets are swapped by an automorphism, so trying one of
them suffices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractViolation, InputError
from .games import (
    BM,
    MB,
    GameState,
    Move,
    Side,
    Variant,
    apply_move,
    legal_moves,
    new_game,
    replay,
)
from .hypergraph import MAX_SOLVER_BOARD, Hypergraph, reduce_masks
from .strategy import StrategyOracle

JUNK = -1


@dataclass(frozen=True)
class SolveReport:
    winner: Side
    optimal_move: Move | None
    states_visited: int
    table_hits: int

    def __str__(self):
        move = str(self.optimal_move) if self.optimal_move else "-"
        return (
            f"winner: {self.winner.value}\noptimal move: {move}\n"
            f"states visited: {self.states_visited}\ntable hits: {self.table_hits}"
        )


def _drop(fam, v):
    if v == JUNK:
        return fam
    return tuple(m for m in fam if not m >> v & 1)


def _take(fam, v):
    if v == JUNK:
        return fam
    b = ~(1 << v)
    return tuple(m & b for m in fam)


class Solver:
    """Memoising solver for one variant.

    The transposition table maps ``(family, junk, phase)`` to True when the
    protagonist wins.  ``max_table`` bounds its size; when reached the
    table is cleared.
    """

    def __init__(self, variant: Variant, use_table: bool = True, max_table: int | None = None):
        self.variant = variant
        self.use_table = use_table
        self.max_table = max_table
        self.table: dict = {}
        self.states_visited = 0
        self.table_hits = 0
        self._canon: dict = {}
        self._groups: dict = {}

    # -- compact search ---------------------------------------------------

    def _value(self, masks, unclaimed: int, phase) -> bool:
        key = frozenset(masks)
        c = self._canon.get(key)
        if c is None:
            if 0 in key:
                c = True
            elif not key:
                c = False
            else:
                fam, old = reduce_masks(key)
                c = (fam, len(old))
            self._canon[key] = c
        if c is True or c is False:
            return c
        fam, k = c
        junk = unclaimed - k
        if junk < 0:
            raise AssertionError("more live vertices than unclaimed ones")
        return self._node(fam, k, junk, phase)

    def _node(self, fam, k, junk, phase) -> bool:
        key = (fam, junk, phase)
        if self.use_table:
            hit = self.table.get(key)
            if hit is not None:
                self.table_hits += 1
                return hit
        self.states_visited += 1
        result = self._expand(fam, k, junk, phase)
        if self.use_table:
            if self.max_table is not None and len(self.table) >= self.max_table:
                self.table.clear()
            self.table[key] = result
        return result

    def _twins(self, fam, k):
        """Per twin class: (representative, another member or None)."""
        g = self._groups.get(fam)
        if g is None:
            sig: dict[int, list[int]] = {}
            for v in range(k):
                s = 0
                for i, m in enumerate(fam):
                    if m >> v & 1:
                        s |= 1 << i
                sig.setdefault(s, []).append(v)
            g = sorted((vs[0], vs[1] if len(vs) > 1 else None) for vs in sig.values())
            self._groups[fam] = g
        return g

    def _groups_with_junk(self, fam, k, junk):
        g = list(self._twins(fam, k))
        if junk:
            g.append((JUNK, JUNK if junk > 1 else None))
        return g

    def _expand(self, fam, k, junk, phase) -> bool:
        u = k + junk
        kind = phase[0]
        groups = self._groups_with_junk(fam, k, junk)
        if kind == "c":
            side, remaining = phase[1], phase[2]
            if remaining == 1:
                nxt_side = side.other
                nxt = ("c", nxt_side, self.variant.quota(nxt_side))
            else:
                nxt = ("c", side, remaining - 1)
            if side is Side.MAKER:
                return any(self._value(_take(fam, v), u - 1, nxt) for v, _ in groups)
            return all(self._value(_drop(fam, v), u - 1, nxt) for v, _ in groups)
        if kind == "a":
            return self._node(fam, k, junk, ("1", BM)) and self._node(fam, k, junk, ("1", MB))
        if kind in ("1", "2"):
            order = phase[1]
            first = Side.BREAKER if order == BM else Side.MAKER
            mover = first if kind == "1" else first.other
            nxt = ("2", order) if kind == "1" else ("a",)
            if mover is Side.MAKER:
                return any(self._value(_take(fam, v), u - 1, nxt) for v, _ in groups)
            return all(self._value(_drop(fam, v), u - 1, nxt) for v, _ in groups)
        if kind in ("o", "s"):
            if u == 1:
                v = groups[0][0]
                return self._value(_drop(fam, v), 0, phase)
            if kind == "o":
                return any(self._round(fam, u, a, b, phase) for a, b in self._pairs(groups))
            for i, (x, x2) in enumerate(groups):
                if not any(
                    self._round(fam, u, x, y, phase) for y in self._partners(groups, i, x2)
                ):
                    return False
            return True
        raise ContractViolation(f"unknown compact phase {phase!r}")

    def _round(self, fam, u, a, b, phase) -> bool:
        """Waiter wins whichever of ``a``, ``b`` the Client keeps."""
        return self._value(_take(_drop(fam, a), b), u - 2, phase) and self._value(
            _take(_drop(fam, b), a), u - 2, phase
        )

    @staticmethod
    def _pairs(groups):
        for i, (a, a2) in enumerate(groups):
            if a2 is not None:
                yield a, a2
            for b, _ in groups[i + 1 :]:
                yield a, b

    @staticmethod
    def _partners(groups, i, x2):
        for j, (y, _) in enumerate(groups):
            if j == i:
                if x2 is not None:
                    yield x2
            else:
                yield y

    # -- game-state interface --------------------------------------------

    def _compact_phase(self, s: GameState):
        p = s.phase
        kind = p[0]
        if kind == "claim":
            return ("c", p[1], p[2])
        if kind == "announce":
            return ("a",)
        if kind == "first":
            return ("1", p[1])
        if kind == "second":
            return ("2", p[1])
        if kind == "offer":
            return ("o",)
        if kind == "suggest":
            return ("s",)
        return None

    def value(self, s: GameState) -> Side:
        """Winner of ``s`` under optimal play."""
        w = s.winner()
        if w is not None:
            return w
        phase = self._compact_phase(s)
        if phase is None:
            # pending offer/suggestion: expand one protocol step directly
            mover = s.to_move
            for m in legal_moves(s):
                if self.value(apply_move(s, m)) is mover:
                    return mover
            return mover.other
        won = self._value(s.live, s.unclaimed.bit_count(), phase)
        return Side.MAKER if won else Side.BREAKER

    def solve_state(self, s: GameState) -> SolveReport:
        visited, hits = self.states_visited, self.table_hits
        w = self.value(s)
        best = None
        if not s.terminal:
            for m in legal_moves(s):
                if self.value(apply_move(s, m)) is w:
                    best = m
                    break
            if best is None:
                raise AssertionError("no move achieves the position value")
        return SolveReport(w, best, self.states_visited - visited, self.table_hits - hits)


def _check_board(h: Hypergraph) -> None:
    if h.board_size > MAX_SOLVER_BOARD:
        raise InputError(f"board of {h.board_size} elements exceeds {MAX_SOLVER_BOARD}")


def solve(variant: Variant, h: Hypergraph, use_table: bool = True) -> SolveReport:
    _check_board(h)
    return Solver(variant, use_table=use_table).solve_state(new_game(variant, h))


def solve_state(s: GameState, solver: Solver | None = None) -> SolveReport:
    return (solver or Solver(s.variant)).solve_state(s)


def optimal_strategy(
    variant: Variant, h: Hypergraph, side: Side = Side.MAKER, solver: Solver | None = None
) -> StrategyOracle:
    """Solver-backed winning strategy for ``side``.

    Raises ContractViolation if ``side`` does not win ``h``.
    """
    _check_board(h)
    solver = solver or Solver(variant)
    root = new_game(variant, h)
    if solver.value(root) is not side:
        raise ContractViolation(f"{side.value}-side does not win {variant.name} on this board")

    def choose(transcript):
        s = replay(variant, h, transcript)
        if s.to_move is not side:
            raise ContractViolation(f"not {side.value}-side's turn")
        return solver.solve_state(s).optimal_move

    return StrategyOracle(variant, h, side, choose, name=f"optimal[{variant.name}]")

