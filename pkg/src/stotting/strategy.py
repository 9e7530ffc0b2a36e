"""Strategy oracles and the constructions that turn one winning strategy into another.

A strategy is a pure function from the full move transcript to the next
move.  Adapters keep no mutable state: every query rebuilds what it needs
from the transcript (memoised per prefix), so an oracle may be asked about
hypothetical lines as freely as about the live one.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable

from .errors import ContractViolation, StrategyFault
from .games import (
    BM,
    MB,
    GameState,
    MakerBreaker,
    Move,
    Side,
    StottingMakerBreaker,
    StottingWaiterClient,
    Variant,
    WaiterClient,
    add,
    announce,
    apply_move,
    claim,
    is_legal,
    new_game,
    offer,
    order_of,
    pick,
    suggest,
)
from .hypergraph import Hypergraph, bits

Transcript = tuple[Move, ...]


@dataclass(frozen=True)
class StrategyOracle:
    variant: Variant
    hypergraph: Hypergraph
    side: Side
    choose: Callable[[Transcript], Move]
    name: str = "oracle"

    def __call__(self, transcript=()) -> Move:
        return self.choose(tuple(transcript))


@functools.lru_cache(maxsize=1 << 18)
def state_after(variant: Variant, h: Hypergraph, transcript: Transcript) -> GameState:
    if not transcript:
        return new_game(variant, h)
    return apply_move(state_after(variant, h, transcript[:-1]), transcript[-1])


def ask(src: StrategyOracle, transcript: Transcript) -> Move:
    """Query ``src`` and check that the answer is legal."""
    s = state_after(src.variant, src.hypergraph, transcript)
    if s.to_move is not src.side:
        raise StrategyFault(f"{src.name} queried out of turn", transcript)
    m = src(transcript)
    if not isinstance(m, Move) or not is_legal(s, m):
        raise StrategyFault(f"{src.name} returned illegal move {m}", transcript)
    return m


def _extend(variant, h, live: Transcript, moves) -> Transcript:
    """Append ``moves`` to ``live``, stopping once the game is decided."""
    for m in moves:
        if state_after(variant, h, live).terminal:
            break
        live = live + (m,)
    return live


def _expect(src: StrategyOracle, variant_type, side: Side = Side.MAKER):
    if not isinstance(src.variant, variant_type) or src.side is not side:
        raise ContractViolation(
            f"expected a {variant_type.__name__} {side.value}-side strategy, got {src.name}"
        )


def _least_free(s: GameState) -> int:
    return bits(s.unclaimed)[0] + 1


# --- stotting Maker => Waiter ---------------------------------------------------


def waiter_from_stotting_maker(src: StrategyOracle) -> StrategyOracle:
    """Waiter offers {v1, v2}: Maker's opening if allowed to start, and Maker's
    reply to Breaker opening with v1.  Client's choice decides which of the two
    stotting turns is recorded in the shadow transcript."""
    _expect(src, StottingMakerBreaker)
    h, smb, wc = src.hypergraph, src.variant, WaiterClient()

    @functools.lru_cache(maxsize=None)
    def pair_for(live: Transcript) -> tuple[int, int]:
        v1 = ask(src, live + (announce(MB),)).x
        v2 = ask(src, live + (announce(BM), claim(v1))).x
        if v1 == v2:
            raise StrategyFault(f"{src.name} claimed {v1} twice", live)
        return v1, v2

    @functools.lru_cache(maxsize=None)
    def shadow(transcript: Transcript) -> Transcript:
        if not transcript:
            return ()
        live = shadow(transcript[:-2])
        off, taken = transcript[-2], transcript[-1].x
        other = off.y if taken == off.x else off.x
        v1, v2 = pair_for(live)
        if (taken, other) == (v2, v1):
            turn = (announce(MB), claim(v1), claim(v2))
        else:
            turn = (announce(BM), claim(taken), claim(other))
        return _extend(smb, h, live, turn)

    def choose(transcript: Transcript) -> Move:
        s = state_after(wc, h, transcript)
        if s.phase[0] != "offer":
            raise ContractViolation("Waiter queried outside an offer phase")
        v1, v2 = pair_for(shadow(transcript))
        return offer(v1, v2)

    return StrategyOracle(wc, h, Side.MAKER, choose, name=f"waiter<-smb({src.name})")


# --- (1:2) Maker => stotting Maker ---------------------------------------------

BIASED = MakerBreaker(1, 2, Side.BREAKER)


@dataclass(frozen=True)
class SimulationLedger:
    """Bookkeeping for playing a (1:2) strategy inside a stotting game.

    ``sim`` is the simulated (1:2) game; ``slots`` lists, per simulated
    Breaker claim, ``(real_vertex_or_None, simulated_vertex)``; ``dummies``
    are the simulated Breaker claims with no real counterpart.
    """

    sim: GameState
    sim_transcript: Transcript
    real_maker: int
    real_breaker: int
    slots: tuple[tuple[int | None, int], ...] = ()

    @property
    def dummies(self) -> tuple[int, ...]:
        return tuple(s for r, s in self.slots if r != s)

    def invariants_hold(self) -> bool:
        sim_claimed = self.sim.maker | self.sim.breaker
        real_claimed = self.real_maker | self.real_breaker
        return sim_claimed & real_claimed == real_claimed and self.sim.maker == self.real_maker

    def breaker_slot(self, real: int | None) -> SimulationLedger:
        """Fill one simulated Breaker claim with ``real`` or, failing that, a dummy."""
        sim = self.sim
        if sim.terminal:
            return self
        if sim.to_move is not Side.BREAKER:
            raise AssertionError("simulated game out of step")
        free = sim.unclaimed
        if real is not None and free >> (real - 1) & 1:
            v = real
        else:
            v = bits(free)[0] + 1
        m = claim(v)
        return SimulationLedger(
            apply_move(sim, m),
            self.sim_transcript + (m,),
            self.real_maker,
            self.real_breaker,
            self.slots + ((real, v),),
        )

    def maker_move(self, v: int) -> SimulationLedger:
        sim = self.sim
        if not sim.terminal:
            if sim.to_move is not Side.MAKER or not sim.unclaimed >> (v - 1) & 1:
                raise StrategyFault(f"Maker claim {v} has no simulated counterpart")
            sim = apply_move(sim, claim(v))
            tr = self.sim_transcript + (claim(v),)
        else:
            tr = self.sim_transcript
        return SimulationLedger(sim, tr, self.real_maker | 1 << (v - 1), self.real_breaker, self.slots)

    def real_breaker_claim(self, v: int) -> SimulationLedger:
        led = self.breaker_slot(v)
        return SimulationLedger(
            led.sim, led.sim_transcript, led.real_maker, led.real_breaker | 1 << (v - 1), led.slots
        )


def simulate_biased(h: Hypergraph, transcript: Transcript) -> SimulationLedger:
    """Replay a stotting-MB transcript into the simulated (1:2) game."""
    return _ledger(h, tuple(transcript))


@functools.lru_cache(maxsize=1 << 16)
def _ledger(h: Hypergraph, transcript: Transcript) -> SimulationLedger:
    if not transcript:
        led = SimulationLedger(new_game(BIASED, h), (), 0, 0)
        return led.breaker_slot(None)  # the skipped very first Breaker move
    led = _ledger(h, transcript[:-1])
    before = state_after(StottingMakerBreaker(), h, transcript[:-1])
    m = transcript[-1]
    if m.kind == "announce":
        return led.breaker_slot(None) if order_of(m) == MB else led
    order = before.phase[1]
    if before.to_move is Side.BREAKER:
        return led.real_breaker_claim(m.x)
    led = led.maker_move(m.x)
    return led.breaker_slot(None) if order == BM else led


def stotting_maker_from_biased(src: StrategyOracle) -> StrategyOracle:
    """Stotting Maker that plays ``src`` in a simulated (1:2) game."""
    if src.variant != BIASED or src.side is not Side.MAKER:
        raise ContractViolation(f"expected a (1:2) Breaker-first Maker strategy, got {src.name}")
    h, smb = src.hypergraph, StottingMakerBreaker()

    def choose(transcript: Transcript) -> Move:
        s = state_after(smb, h, transcript)
        if s.to_move is not Side.MAKER:
            raise ContractViolation("stotting Maker queried out of turn")
        led = _ledger(h, transcript)
        if led.sim.terminal or led.sim.to_move is not Side.MAKER:
            return claim(_least_free(s))
        m = ask(src, led.sim_transcript)
        if not s.unclaimed >> (m.x - 1) & 1:
            raise StrategyFault(f"simulated move {m} is claimed in the real game", transcript)
        return m

    return StrategyOracle(smb, h, Side.MAKER, choose, name=f"smb<-mb12({src.name})")


# --- stotting Waiter => Maker ------------------------------------------------------

CLASSICAL = MakerBreaker(1, 1, Side.BREAKER)


def _mb_pairs(transcript: Transcript):
    return [(transcript[i].x, transcript[i + 1].x) for i in range(0, len(transcript) - 1, 2)]


def maker_from_stotting_waiter(src: StrategyOracle) -> StrategyOracle:
    """Maker answers Breaker's v with the element stotting Waiter adds to the suggestion v."""
    _expect(src, StottingWaiterClient)
    h, swc = src.hypergraph, src.variant

    def choose(transcript: Transcript) -> Move:
        s = state_after(CLASSICAL, h, transcript)
        if s.to_move is not Side.MAKER or len(transcript) % 2 != 1:
            raise ContractViolation("Maker queried out of turn")
        live: Transcript = ()
        for b, m in _mb_pairs(transcript):
            live = _extend(swc, h, live, (suggest(b), add(m), pick(b)))
        w = ask(src, live + (suggest(transcript[-1].x),))
        return claim(w.x)

    return StrategyOracle(CLASSICAL, h, Side.MAKER, choose, name=f"mb<-swc({src.name})")


# --- definitional embeddings --------------------------------------------------------


def maker_from_stotting_maker(src: StrategyOracle) -> StrategyOracle:
    """Classical Maker (Breaker first): every turn is a stotting turn ordered BM."""
    _expect(src, StottingMakerBreaker)
    h, smb = src.hypergraph, src.variant

    def choose(transcript: Transcript) -> Move:
        s = state_after(CLASSICAL, h, transcript)
        if s.to_move is not Side.MAKER or len(transcript) % 2 != 1:
            raise ContractViolation("Maker queried out of turn")
        live: Transcript = ()
        for b, m in _mb_pairs(transcript):
            live += (announce(BM), claim(b), claim(m))
        return ask(src, live + (announce(BM), claim(transcript[-1].x)))

    return StrategyOracle(CLASSICAL, h, Side.MAKER, choose, name=f"mb<-smb({src.name})")


def waiter_from_stotting_waiter(src: StrategyOracle) -> StrategyOracle:
    """Classical Waiter suggests the least free element to itself, then adds src's reply."""
    _expect(src, StottingWaiterClient)
    h, swc, wc = src.hypergraph, src.variant, WaiterClient()

    @functools.lru_cache(maxsize=None)
    def shadow(transcript: Transcript) -> Transcript:
        if not transcript:
            return ()
        live = shadow(transcript[:-2])
        off, taken = transcript[-2], transcript[-1]
        return _extend(swc, h, live, (suggest(off.x), add(off.y), pick(taken.x)))

    def choose(transcript: Transcript) -> Move:
        s = state_after(wc, h, transcript)
        if s.phase[0] != "offer":
            raise ContractViolation("Waiter queried outside an offer phase")
        live = shadow(transcript)
        x = _least_free(s)
        y = ask(src, live + (suggest(x),)).x
        return offer(x, y)

    return StrategyOracle(wc, h, Side.MAKER, choose, name=f"wc<-swc({src.name})")


MAKER_FIRST = MakerBreaker(1, 1, Side.MAKER)


@functools.lru_cache(maxsize=1 << 16)
def _extra_shadow(h: Hypergraph, src_choose, transcript: Transcript) -> tuple[Transcript, int]:
    """Breaker-first shadow of a Maker-first transcript and Maker's one extra element."""
    if len(transcript) == 1:
        return (), transcript[0].x
    shadow, extra = _extra_shadow(h, src_choose, transcript[:-2])
    b, m = transcript[-2], transcript[-1]
    wanted = src_choose(shadow + (b,))
    if wanted.x == extra:
        return shadow + (b, wanted), m.x
    return shadow + (b, m), extra


def maker_first(src: StrategyOracle) -> StrategyOracle:
    """Maker moving first, from a Breaker-first Maker strategy.

    Maker opens with the least element and otherwise plays ``src`` in a
    shadow game that ignores one owned "extra" element.  If ``src`` asks for
    the extra element, Maker claims the least free element instead, which
    becomes the new extra.  The shadow Maker set is always a subset of the
    real one, so a shadow win is a real win.
    """
    if src.variant != CLASSICAL or src.side is not Side.MAKER:
        raise ContractViolation(f"expected a Breaker-first Maker strategy, got {src.name}")
    h = src.hypergraph

    def choose(transcript: Transcript) -> Move:
        s = state_after(MAKER_FIRST, h, transcript)
        if s.to_move is not Side.MAKER or len(transcript) % 2 != 0:
            raise ContractViolation("Maker queried out of turn")
        if not transcript:
            return claim(_least_free(s))
        shadow, extra = _extra_shadow(h, src.choose, transcript[:-1])
        wanted = ask(src, shadow + (transcript[-1],))
        if wanted.x == extra:
            return claim(_least_free(s))
        return wanted

    return StrategyOracle(MAKER_FIRST, h, Side.MAKER, choose, name=f"maker-first({src.name})")


ADAPTERS = {
    "smb->wc": (StottingMakerBreaker(), waiter_from_stotting_maker),
    "mb12->smb": (BIASED, stotting_maker_from_biased),
    "swc->mb": (StottingWaiterClient(), maker_from_stotting_waiter),
    "smb->mb": (StottingMakerBreaker(), maker_from_stotting_maker),
    "swc->wc": (StottingWaiterClient(), waiter_from_stotting_waiter),
}
