"""Small matroids, symmetric base exchange, and the Lehman connectivity strategy.

Elements are integers and sets are frozensets.  Every concrete matroid has
ground set ``1..m``; :class:`Minor` keeps the original labels of what is
left after deleting and contracting.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ContractViolation, InputError, MatroidAxiomError
from .games import Side, StottingWaiterClient, add
from .hypergraph import Hypergraph, mask_of
from .strategy import StrategyOracle, state_after

MAX_BASIS_GROUND = 16


class Matroid:
    """Base class: subclasses provide ``ground`` and ``rank``."""

    ground: frozenset[int]

    def rank(self, s: Iterable[int]) -> int:
        raise NotImplementedError

    def _check(self, s: Iterable[int]) -> frozenset[int]:
        s = frozenset(s)
        bad = s - self.ground
        if bad:
            raise InputError(f"elements {sorted(bad)} not in the ground set")
        return s

    @functools.cached_property
    def full_rank(self) -> int:
        return self.rank(self.ground)

    def is_independent(self, s: Iterable[int]) -> bool:
        s = self._check(s)
        return self.rank(s) == len(s)

    def is_spanning(self, s: Iterable[int]) -> bool:
        return self.rank(self._check(s)) == self.full_rank

    def is_basis(self, s: Iterable[int]) -> bool:
        s = self._check(s)
        return len(s) == self.full_rank and self.rank(s) == len(s)

    def bases(self) -> list[frozenset[int]]:
        """All bases, in lexicographic order of their sorted elements."""
        return [
            frozenset(c)
            for c in itertools.combinations(sorted(self.ground), self.full_rank)
            if self.rank(c) == self.full_rank
        ]


class UniformMatroid(Matroid):
    def __init__(self, r: int, m: int):
        if not 0 <= r <= m:
            raise InputError(f"uniform matroid needs 0 <= r <= m, got r={r}, m={m}")
        self.r, self.m = r, m
        self.ground = frozenset(range(1, m + 1))

    def rank(self, s):
        return min(len(self._check(s)), self.r)

    def __repr__(self):
        return f"U({self.r},{self.m})"


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        while p != x:
            self.parent[x] = self.parent.setdefault(p, p)
            x, p = p, self.parent[p]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


class GraphicMatroid(Matroid):
    """Cycle matroid of a multigraph; edge ``i`` (1-based) is element ``i``."""

    def __init__(self, edges: Sequence[tuple[str, str]]):
        self.edges = tuple((str(u), str(v)) for u, v in edges)
        self.ground = frozenset(range(1, len(self.edges) + 1))

    def rank(self, s):
        uf = _UnionFind()
        return sum(uf.union(*self.edges[e - 1]) for e in self._check(s))

    def __repr__(self):
        return "Graphic(" + " ".join(f"{u}{v}" for u, v in self.edges) + ")"


class ExplicitMatroid(Matroid):
    """A matroid given by its list of bases, validated on construction."""

    def __init__(self, m: int, bases: Iterable[Iterable[int]]):
        self.m = m
        self.ground = frozenset(range(1, m + 1))
        family = {frozenset(b) for b in bases}
        if not family:
            raise MatroidAxiomError("a matroid has at least one basis")
        for b in family:
            self._check(b)
        sizes = {len(b) for b in family}
        if len(sizes) != 1:
            raise MatroidAxiomError(f"bases of different sizes {sorted(sizes)}")
        for b1, b2 in itertools.product(family, repeat=2):
            for e in b1 - b2:
                if not any((b1 - {e}) | {f} in family for f in b2 - b1):
                    raise MatroidAxiomError(
                        f"exchange fails for B={sorted(b1)}, B'={sorted(b2)}, e={e}"
                    )
        self._bases = family
        self._r = sizes.pop()

    @classmethod
    def from_matroid(cls, mat: Matroid) -> ExplicitMatroid:
        return cls(len(mat.ground), mat.bases())

    def rank(self, s):
        s = self._check(s)
        return max(len(s & b) for b in self._bases)

    def is_basis(self, s):
        return self._check(s) in self._bases

    def __repr__(self):
        return f"Explicit(m={self.m}, r={self._r}, {len(self._bases)} bases)"


class Restriction(Matroid):
    """``base`` restricted to ``elements``, renumbered ``1..k`` in sorted order."""

    def __init__(self, base: Matroid, elements: Iterable[int]):
        self.base = base
        self.elements = tuple(sorted(base._check(elements)))
        self.ground = frozenset(range(1, len(self.elements) + 1))
        self._index = {e: i for i, e in enumerate(self.elements, start=1)}

    def relabel(self, s: Iterable[int]) -> frozenset[int]:
        return frozenset(self._index[e] for e in s)

    def rank(self, s):
        return self.base.rank(self.elements[i - 1] for i in self._check(s))

    def __repr__(self):
        return f"{self.base!r}|{list(self.elements)}"


class Minor(Matroid):
    """``base`` with ``deleted`` removed and ``contracted`` contracted, labels kept."""

    def __init__(self, base: Matroid, contracted=frozenset(), deleted=frozenset()):
        self.base = base
        self.contracted = frozenset(contracted)
        self.deleted = frozenset(deleted)
        if self.contracted & self.deleted:
            raise InputError("cannot both delete and contract an element")
        self.ground = base.ground - self.contracted - self.deleted
        self._rc = base.rank(self.contracted)

    def rank(self, s):
        return self.base.rank(self._check(s) | self.contracted) - self._rc

    def delete_contract(self, deleted: int, contracted: int) -> Minor:
        return Minor(self.base, self.contracted | {contracted}, self.deleted | {deleted})


@dataclass(frozen=True)
class BasisPair:
    b1: frozenset[int]
    b2: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "b1", frozenset(self.b1))
        object.__setattr__(self, "b2", frozenset(self.b2))
        if self.b1 & self.b2:
            raise InputError("basis pair must be disjoint")

    def valid_in(self, mat: Matroid) -> bool:
        return (
            self.b1 | self.b2 == mat.ground
            and self.b1 <= mat.ground
            and mat.is_basis(self.b1)
            and mat.is_basis(self.b2)
        )

    def __str__(self):
        return f"B1={sorted(self.b1)} B2={sorted(self.b2)}"


def symmetric_base_exchange(mat: Matroid, b1, b2, e: int) -> int:
    """Least ``f`` in ``b2`` with ``b1 - e + f`` and ``b2 - f + e`` both bases."""
    b1, b2 = frozenset(b1), frozenset(b2)
    if not mat.is_basis(b1) or not mat.is_basis(b2):
        raise InputError("both sets must be bases")
    if e not in b1:
        raise InputError(f"{e} is not in the first basis")
    for f in sorted(b2):
        if mat.is_basis((b1 - {e}) | {f}) and mat.is_basis((b2 - {f}) | {e}):
            return f
    raise MatroidAxiomError(f"matroid axioms violated: no exchange for e={e}")


def find_two_disjoint_bases(mat: Matroid) -> BasisPair | None:
    """Lexicographically least pair of disjoint bases, by brute force."""
    bases = mat.bases()
    for i, b1 in enumerate(bases):
        for b2 in bases[i + 1 :]:
            if not b1 & b2:
                return BasisPair(b1, b2)
    if bases and bases[0] == frozenset():
        return BasisPair(frozenset(), frozenset())
    return None


def restrict_to(mat: Matroid, pair: BasisPair) -> tuple[Restriction, BasisPair]:
    """Restrict to ``b1 | b2`` so that the pair partitions the ground set."""
    r = Restriction(mat, pair.b1 | pair.b2)
    return r, BasisPair(r.relabel(pair.b1), r.relabel(pair.b2))


def matroid_to_hypergraph(mat: Matroid) -> Hypergraph:
    """Board = ground set, winning sets = bases (minimal spanning sets)."""
    m = len(mat.ground)
    if mat.ground != frozenset(range(1, m + 1)):
        raise InputError("ground set must be 1..m; restrict or relabel first")
    if m > MAX_BASIS_GROUND:
        raise InputError(f"basis enumeration is limited to {MAX_BASIS_GROUND} elements")
    return Hypergraph(m, tuple(mask_of(b) for b in mat.bases()))


# --- Lehman's connectivity game --------------------------------------------------


def lehman_waiter(mat: Matroid, pair: BasisPair) -> StrategyOracle:
    """Stotting Waiter for the connectivity game on ``mat``.

    When Client suggests ``e``, Waiter adds the symmetric exchange partner of
    ``e`` in the other basis.  Whoever gets which, the pair shrinks to
    ``(b1 - {e, f}, b2 - {e, f})`` and stays a pair of bases of the minor
    in which Client's element is deleted and Waiter's contracted.
    """
    if not pair.valid_in(mat):
        raise ContractViolation("pair must be two bases partitioning the ground set")
    h = matroid_to_hypergraph(mat)
    swc = StottingWaiterClient()

    @functools.lru_cache(maxsize=None)
    def position(rounds: tuple) -> tuple[Minor, BasisPair]:
        if not rounds:
            return Minor(mat), pair
        minor, cur = position(rounds[:-1])
        e, f, client = rounds[-1]
        waiter = f if client == e else e
        nxt = BasisPair(cur.b1 - {e, f}, cur.b2 - {e, f})
        minor = minor.delete_contract(client, waiter)
        if not nxt.valid_in(minor):
            raise ContractViolation(f"basis pair broken after round {rounds[-1]}")
        return minor, nxt

    def partner(minor: Minor, cur: BasisPair, e: int) -> int:
        if e in cur.b1:
            return symmetric_base_exchange(minor, cur.b1, cur.b2, e)
        return symmetric_base_exchange(minor, cur.b2, cur.b1, e)

    def choose(transcript):
        s = state_after(swc, h, transcript)
        if s.phase[0] != "add":
            raise ContractViolation("Lehman Waiter only chooses the added element")
        rounds = tuple(
            (transcript[i].x, transcript[i + 1].x, transcript[i + 2].x)
            for i in range(0, len(transcript) - 1, 3)
        )
        minor, cur = position(rounds)
        return add(partner(minor, cur, transcript[-1].x))

    return StrategyOracle(swc, h, Side.MAKER, choose, name="lehman-waiter")


# --- file format and catalog --------------------------------------------------------


def parse_edge_list(text: str) -> GraphicMatroid:
    edges = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        words = line.split()
        if len(words) != 2:
            raise InputError("expected 'u v'", lineno)
        edges.append((words[0], words[1]))
    return GraphicMatroid(edges)


def load_edge_list(path) -> GraphicMatroid:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def _canonical_graph(edges, n):
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or key < best:
            best = key
    return best


def simple_graphs(n: int = 5, max_edges: int = 8) -> list[tuple[tuple[int, int], ...]]:
    """Simple graphs on ``n`` vertices up to isomorphism, at most ``max_edges`` edges."""
    pairs = list(itertools.combinations(range(n), 2))
    seen: dict = {}
    for k in range(max_edges + 1):
        for edges in itertools.combinations(pairs, k):
            key = _canonical_graph(edges, n)
            seen.setdefault(key, key)
    return sorted(seen, key=lambda g: (len(g), g))


def _named(edges):
    return GraphicMatroid([("abcdefgh"[u], "abcdefgh"[v]) for u, v in edges])


MULTIGRAPHS = {
    "parallel-pair": "ab ab",
    "doubled-P3": "ab ab bc bc",
    "doubled-K3": "ab ab bc bc ac ac",
    "doubled-P4": "ab ab bc bc cd cd",
    "doubled-star3": "ab ab ac ac ad ad",
    "doubled-P5": "ab ab bc bc cd cd de de",
    "doubled-star4": "ab ab ac ac ad ad ae ae",
    "C4+3-parallel": "ab ab bc bc cd cd da",
    "K4+parallel": "ab ac ad bc bd cd ab",
    "triangle+loop": "ab bc ca aa",
    "theta": "ab ab ab bc bc",
}


def _multigraph(text: str) -> GraphicMatroid:
    return GraphicMatroid([(w[0], w[1]) for w in text.split()])


FANO_LINES = [
    {1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6},
]


def _fano(lines):
    return ExplicitMatroid(
        7, [c for c in itertools.combinations(range(1, 8), 3) if set(c) not in lines]
    )


def catalog(graphs: bool = True) -> Iterator[tuple[str, Matroid]]:
    """Uniform up to (3,6), graphic up to 5 vertices / 8 edges, validated explicit ones."""
    for m in range(1, 7):
        for r in range(0, min(3, m) + 1):
            yield f"U({r},{m})", UniformMatroid(r, m)
    if graphs:
        for edges in simple_graphs():
            name = "G[" + " ".join(f"{u}{v}" for u, v in edges) + "]"
            yield name, _named(edges)
    for name, text in MULTIGRAPHS.items():
        yield name, _multigraph(text)
    yield "fano", _fano(FANO_LINES)
    yield "non-fano", _fano(FANO_LINES[:-1])
    yield "explicit-U(2,4)", ExplicitMatroid.from_matroid(UniformMatroid(2, 4))
    yield "explicit-U(4,8)", ExplicitMatroid.from_matroid(UniformMatroid(4, 8))
    yield "explicit-U(5,10)", ExplicitMatroid.from_matroid(UniformMatroid(5, 10))
    yield "explicit-K4", ExplicitMatroid.from_matroid(_multigraph("ab ac ad bc bd cd"))
    yield "explicit-doubled-P6", ExplicitMatroid.from_matroid(
        _multigraph("ab ab bc bc cd cd de de ef ef")
    )
    yield "explicit-U(1,2)+U(2,4)", ExplicitMatroid(
        6,
        [
            {a, *b}
            for a in (1, 2)
            for b in itertools.combinations(range(3, 7), 2)
        ],
    )
