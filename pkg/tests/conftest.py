import itertools
import random

import pytest

from stotting.games import (
    MakerBreaker,
    Side,
    StottingMakerBreaker,
    StottingWaiterClient,
    WaiterClient,
)
from stotting.hypergraph import Hypergraph, bits

ALL_VARIANTS = [
    MakerBreaker(1, 1, Side.BREAKER),
    MakerBreaker(1, 2, Side.BREAKER),
    MakerBreaker(1, 1, Side.MAKER),
    MakerBreaker(2, 1, Side.BREAKER),
    WaiterClient(),
    StottingMakerBreaker(),
    StottingWaiterClient(),
]


def H(n, *sets):
    return Hypergraph.from_sets(n, sets)


def isomorphic(a: Hypergraph, b: Hypergraph) -> bool:
    """Brute-force isomorphism test over all vertex permutations."""
    if a.board_size != b.board_size or len(a.sets) != len(b.sets):
        return False
    target = set(b.sets)
    for p in itertools.permutations(range(a.board_size)):
        if all(sum(1 << p[i] for i in bits(m)) in target for m in a.sets):
            return True
    return False


def random_hypergraphs(seed, count, min_n=1, max_n=6, max_sets=5):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(min_n, max_n)
        k = rng.randint(0, max_sets)
        out.append(Hypergraph(n, tuple({rng.randint(1, (1 << n) - 1) for _ in range(k)})))
    return out


@pytest.fixture
def triple():
    return H(3, [1], [2], [3])


_ACCEPTANCE: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
