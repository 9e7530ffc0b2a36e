import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ALL_VARIANTS, H, random_hypergraphs
from stotting.errors import ContractViolation, InputError
from stotting.games import (
    BM,
    MB,
    MakerBreaker,
    Move,
    Side,
    StottingMakerBreaker,
    StottingWaiterClient,
    WaiterClient,
    add,
    announce,
    apply_move,
    claim,
    is_legal,
    legal_moves,
    new_game,
    offer,
    pick,
    replay,
    suggest,
)
from stotting.hypergraph import Hypergraph, contract, delete, reduce
from stotting.verify import EnumClass, enumerate_class


class TestPhases:
    def test_maker_breaker(self, triple):
        s = new_game(MakerBreaker(), triple)
        assert s.phase == ("claim", Side.BREAKER, 1)
        assert s.to_move is Side.BREAKER

    def test_biased(self, triple):
        s = new_game(MakerBreaker(1, 2), triple)
        s = apply_move(s, claim(1))
        assert s.phase == ("claim", Side.BREAKER, 1)
        s = apply_move(s, claim(2))
        assert s.phase == ("claim", Side.MAKER, 1)

    def test_waiter_client(self, triple):
        s = new_game(WaiterClient(), triple)
        assert s.phase == ("offer",) and s.to_move is Side.MAKER
        s = apply_move(s, offer(3, 1))
        assert s.phase == ("pick", 1, 3) and s.to_move is Side.BREAKER

    def test_stotting_maker_breaker(self, triple):
        s = new_game(StottingMakerBreaker(), triple)
        assert s.phase == ("announce",) and s.to_move is Side.BREAKER
        s = apply_move(s, announce(MB))
        assert s.phase == ("first", MB) and s.to_move is Side.MAKER
        s = apply_move(s, claim(1))
        assert s.terminal and s.winner() is Side.MAKER

    def test_stotting_waiter_client(self, triple):
        s = new_game(StottingWaiterClient(), triple)
        assert s.phase == ("suggest",) and s.to_move is Side.BREAKER
        s = apply_move(s, suggest(2))
        assert s.phase == ("add", 2) and s.to_move is Side.MAKER
        s = apply_move(s, add(1))
        assert s.phase == ("pick", 1, 2) and s.to_move is Side.BREAKER


class TestLegalMoves:
    def test_counts(self, triple):
        assert len(legal_moves(new_game(MakerBreaker(), triple))) == 3
        assert len(legal_moves(new_game(WaiterClient(), triple))) == 3
        assert legal_moves(new_game(StottingMakerBreaker(), triple)) == [announce(BM), announce(MB)]
        s = apply_move(new_game(StottingWaiterClient(), triple), suggest(2))
        assert legal_moves(s) == [add(1), add(3)]

    def test_terminal_raises(self):
        s = new_game(MakerBreaker(), H(2, []))
        assert s.terminal
        with pytest.raises(ContractViolation):
            legal_moves(s)

    def test_illegal_moves_rejected(self, triple):
        s = new_game(StottingWaiterClient(), triple)
        s = apply_move(s, suggest(2))
        assert not is_legal(s, add(2))
        assert not is_legal(s, add(4))
        assert not is_legal(s, claim(1))
        with pytest.raises(ContractViolation):
            apply_move(s, add(2))
        s = apply_move(new_game(MakerBreaker(), triple), claim(1))
        assert not is_legal(s, claim(1))

    @pytest.mark.parametrize("variant", ALL_VARIANTS, ids=lambda v: v.name)
    def test_legal_matches_is_legal(self, variant):
        h = H(4, [1, 2], [3, 4])
        universe = [Move(k, x, y) for k in ("claim", "offer", "suggest", "add", "pick")
                    for x in range(6) for y in range(6)] + [announce(BM), announce(MB)]

        def walk(s):
            if s.terminal:
                return
            legal = legal_moves(s)
            assert legal == sorted(legal)
            assert set(legal) == {m for m in universe if is_legal(s, m)}
            for m in legal:
                walk(apply_move(s, m))

        walk(new_game(variant, h))


class TestApply:
    def test_maker_breaker_example(self):
        s = replay(MakerBreaker(), H(3, [1, 2], [2, 3]), [claim(1), claim(2)])
        assert s.breaker == 0b001 and s.maker == 0b010
        assert s.live == (0b100,) and s.to_move is Side.BREAKER
        s = apply_move(s, claim(3))
        assert s.live == () and s.winner() is Side.BREAKER

    def test_waiter_client_example(self):
        s = replay(WaiterClient(), H(2, [1], [2]), [offer(1, 2), pick(1)])
        assert s.winner() is Side.MAKER
        assert s.trace_lines() == ["1 client:1", "1 waiter:2"]

    def test_lone_leftover_goes_to_client(self):
        s = replay(WaiterClient(), H(3, [3]), [offer(1, 2), pick(2)])
        assert s.terminal and s.breaker == 0b110 and s.winner() is Side.BREAKER
        s = replay(StottingWaiterClient(), H(3, [3]), [suggest(1), add(2), pick(1)])
        assert s.terminal and s.breaker == 0b101

    def test_stotting_second_claim_skipped_when_board_empty(self):
        s = replay(StottingMakerBreaker(), H(1, [1]), [announce(BM), claim(1)])
        assert s.terminal and s.winner() is Side.BREAKER

    def test_empty_set_is_immediate_win(self):
        for v in ALL_VARIANTS:
            s = new_game(v, Hypergraph(0, (0,)))
            assert s.terminal and s.winner() is Side.MAKER

    def test_board_limit(self):
        with pytest.raises(InputError):
            new_game(MakerBreaker(), Hypergraph(65, ()))


def _all_lines(variant, h):
    def walk(s, line):
        if s.terminal:
            yield line, s
            return
        for m in legal_moves(s):
            yield from walk(apply_move(s, m), line + (m,))

    yield from walk(new_game(variant, h), ())


def test_waiter_client_three_elements_oracle():
    """Independent playout: offer a pair, client keeps one, last element to client."""
    h = H(3, [1], [2, 3])
    expected = {}
    for a, b in [(1, 2), (1, 3), (2, 3)]:
        for take in (a, b):
            give = b if take == a else a
            expected[(offer(a, b), pick(take))] = Side.MAKER if give == 1 else Side.BREAKER
    got = {line: s.winner() for line, s in _all_lines(WaiterClient(), h)}
    assert got == expected


def _originally_won(h, maker):
    return any(s & maker == s for s in h.sets)


def _residual_by_operations(h, claims):
    """Apply plain delete/contract steps in claim order, tracking labels."""
    cur = Hypergraph(h.board_size, h.sets, tuple(range(1, h.board_size + 1)))
    for _, side, v in claims:
        i = cur.labels.index(v) + 1
        cur = contract(cur, i) if side is Side.MAKER else delete(cur, i)
    return reduce(cur)


SMALL_BOARDS = enumerate_class(EnumClass(4, 4, 3, pad_isolated=True)) + random_hypergraphs(7, 40, 5, 5, 4)


@pytest.mark.parametrize("variant", ALL_VARIANTS, ids=lambda v: v.name)
def test_playout_invariants(variant):
    for h in SMALL_BOARDS:
        for line, s in _all_lines(variant, h):
            assert s.maker & s.breaker == 0
            assert s.maker | s.breaker | s.unclaimed == h.full
            assert (0 in s.live) == _originally_won(h, s.maker)
            if s.winner() is Side.BREAKER:
                assert not _originally_won(h, s.maker)
            if not (0 in s.live):
                assert any(m & s.breaker == 0 for m in h.sets) == bool(s.live)


@pytest.mark.parametrize("variant", ALL_VARIANTS, ids=lambda v: v.name)
def test_residual_equals_delete_contract_sequence(variant):
    for h in SMALL_BOARDS[::3]:
        for line, s in _all_lines(variant, h):
            r = s.residual()
            expected = _residual_by_operations(h, s.claims)
            assert (r.board_size, r.sets) == (expected.board_size, expected.sets)


def test_parity_and_turns():
    h = H(6, [1, 2, 3], [4, 5, 6])
    for variant in (WaiterClient(), StottingWaiterClient()):
        for _, s in _all_lines(variant, h):
            m, b = bin(s.maker).count("1"), bin(s.breaker).count("1")
            assert b in (m, m + 1)
    for _, s in _all_lines(StottingMakerBreaker(), H(5, [1, 2], [3, 4, 5])):
        turns = [t for t, _, _ in s.claims]
        assert all(turns.count(t) <= 2 for t in turns)
        assert turns == sorted(turns)


@settings(max_examples=200)
@given(st.integers(0, 10**9), st.sampled_from(ALL_VARIANTS))
def test_random_playouts(seed, variant):
    import random

    rng = random.Random(seed)
    h = random_hypergraphs(seed, 1, 1, 10, 6)[0]
    s = new_game(variant, h)
    steps = 0
    while not s.terminal:
        s = apply_move(s, rng.choice(legal_moves(s)))
        steps += 1
        assert s.maker & s.breaker == 0
    assert steps <= 3 * h.board_size + 1
    assert s.winner() is (Side.MAKER if _originally_won(h, s.maker) else Side.BREAKER)


def test_move_text_round_trip():
    for m in [claim(3), announce(BM), announce(MB), offer(2, 5), suggest(1), add(4), pick(2)]:
        assert Move.parse(str(m)) == m
    with pytest.raises(InputError):
        Move.parse("offer 1")
    with pytest.raises(InputError):
        Move.parse("")
    assert offer(5, 2) == offer(2, 5)
    assert list(itertools.islice(sorted([claim(2), claim(1)]), 1)) == [claim(1)]
