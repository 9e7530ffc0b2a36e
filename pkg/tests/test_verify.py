import itertools

import pytest

from conftest import H
from stotting.errors import StrategyFault
from stotting.games import (
    BM,
    Side,
    StottingMakerBreaker,
    announce,
    claim,
)
from stotting.hypergraph import Hypergraph, bits, canonical_key
from stotting.naive import naive_solve
from stotting.solver import optimal_strategy
from stotting.strategy import StrategyOracle
from stotting.verify import (
    CONFIGS,
    EnumClass,
    check_implications,
    enumerate_class,
    search_separation,
    solve_all,
    verify_strategy,
)


def _iso_classes(n, max_sets, max_size):
    """Independent: antichains without isolated vertices, up to vertex permutation."""
    classes = set()
    for k in range(n + 1):
        cands = [frozenset(c) for s in range(1, max_size + 1) for c in itertools.combinations(range(k), s)]
        for m in range(max_sets + 1):
            for fam in itertools.combinations(cands, m):
                if any(a < b for a, b in itertools.permutations(fam, 2)):
                    continue
                if set().union(*fam) != set(range(k)):
                    continue
                form = min(
                    tuple(sorted(tuple(sorted(p[v] for v in f)) for f in fam))
                    for p in itertools.permutations(range(k))
                )
                classes.add((k, form))
    return classes


def _as_class(h: Hypergraph):
    k = h.board_size
    return k, min(
        tuple(sorted(tuple(sorted(p[v] for v in bits(m))) for m in h.sets))
        for p in itertools.permutations(range(k))
    )


class TestEnumerate:
    def test_tiny(self):
        assert enumerate_class(EnumClass(1, 1, 1)) == [Hypergraph(0, ()), H(1, [1])]
        assert len(enumerate_class(EnumClass(1, 1, 1, include_empty=False))) == 1

    def test_two_vertices(self):
        e = enumerate_class(EnumClass(2, 2, 2))
        assert len(e) == 4
        assert {_as_class(h) for h in e} == _iso_classes(2, 2, 2)

    def test_three_vertices(self):
        e = enumerate_class(EnumClass(3, 3, 2))
        assert len(e) == 10
        assert {_as_class(h) for h in e} == _iso_classes(3, 3, 2)

    def test_covers_every_isomorphism_type(self):
        e = enumerate_class(EnumClass(4, 3, 3))
        assert {_as_class(h) for h in e} == _iso_classes(4, 3, 3)

    def test_duplicate_free_and_deterministic(self):
        cls = EnumClass(4, 4, 3, pad_isolated=True)
        a, b = enumerate_class(cls), enumerate_class(cls)
        keys = [canonical_key(h) for h in a]
        assert a == b and len(keys) == len(set(keys)) and keys == sorted(keys)

    def test_padding_adds_isolated_vertices(self):
        e = enumerate_class(EnumClass(2, 2, 2, pad_isolated=True))
        assert Hypergraph(2, (1,)) in e and Hypergraph(2, ()) in e

    def test_bounds(self):
        with pytest.raises(ValueError):
            EnumClass(0, 1, 1)


class TestImplications:
    def test_single_singleton(self):
        r = solve_all(H(1, [1]))
        assert all(w is Side.BREAKER for w in r.values())

    def test_two_singletons(self):
        h = H(2, [1], [2])
        r = solve_all(h)
        assert r["swc"] is Side.MAKER and r["mb"] is Side.MAKER
        assert naive_solve(CONFIGS["swc"], h) == naive_solve(CONFIGS["mb"], h) == "maker"

    def test_small_class_clean(self):
        rep = check_implications(EnumClass(3, 3, 2, pad_isolated=True))
        assert rep.ok and len(rep.results) == 17
        assert rep.text() == check_implications(EnumClass(3, 3, 2, pad_isolated=True)).text()

    def test_parallel_matches_serial(self):
        cls = EnumClass(3, 3, 2)
        assert check_implications(cls, jobs=2).text() == check_implications(cls).text()

    def test_violation_is_reported(self):
        rep = check_implications(EnumClass(2, 2, 2))
        rep.violations["smb=>wc"].append((b"2:1,2", "vertices 2\nset 1\nset 2\n"))
        assert not rep.ok
        assert "VIOLATION smb=>wc 2:1,2" in rep.text()


class TestVerifyStrategy:
    def test_optimal_strategies_pass(self):
        for h in enumerate_class(EnumClass(4, 4, 3)):
            for name, v in CONFIGS.items():
                if naive_solve(v, h) == "maker":
                    assert verify_strategy(v, h, optimal_strategy(v, h)).ok, (name, str(h))

    def test_broken_oracle(self):
        h = H(3, [2], [3])
        v = StottingMakerBreaker()
        greedy = StrategyOracle(v, h, Side.MAKER, lambda t: claim(min(
            x for x in (1, 2, 3) if claim(x) not in t)), "least")
        res = verify_strategy(v, h, greedy)
        assert not res.ok
        assert res.line == (announce(BM), claim(2), claim(1), announce(BM), claim(3))

    def test_terminal_game(self):
        h = Hypergraph(0, (0,))
        res = verify_strategy(CONFIGS["smb"], h, StrategyOracle(CONFIGS["smb"], h, Side.MAKER, None))
        assert res.ok and res.leaves == 1

    def test_illegal_move_faults(self):
        h = H(2, [1], [2])
        v = StottingMakerBreaker()
        bad = StrategyOracle(v, h, Side.MAKER, lambda t: claim(9), "bad")
        with pytest.raises(StrategyFault):
            verify_strategy(v, h, bad)


class TestSeparation:
    def test_identical_is_empty(self):
        for name in CONFIGS:
            assert search_separation(EnumClass(3, 3, 2), name, name) == []

    def test_stotting_maker_never_beats_waiter(self):
        assert search_separation(EnumClass(4, 4, 3), "smb", "wc") == []

    def test_frozen_stotting_gap(self):
        assert search_separation(EnumClass(3, 3, 2), "mb", "smb") == []
        found = search_separation(EnumClass(4, 4, 3), "mb", "smb")
        assert [canonical_key(h) for h in found] == [b"4:3,5,a,c"]

    def test_no_maker_waiter_separation_at_small_scale(self):
        assert search_separation(EnumClass(4, 4, 3), "mb", "wc") == []
