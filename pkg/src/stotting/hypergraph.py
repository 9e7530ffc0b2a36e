"""Hypergraph games: a board of vertices ``1..n`` and a family of winning sets.

Winning sets are stored as integer bitmasks, bit ``v - 1`` standing for
vertex ``v``.  The family is kept in lexicographic order of the sorted
vertex tuples, so two hypergraphs with the same sets compare equal no
matter how they were built.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InputError

MAX_SOLVER_BOARD = 64


def bits(mask: int) -> list[int]:
    """0-based indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def vertices_of(mask: int) -> tuple[int, ...]:
    """1-based vertices of a mask."""
    return tuple(b + 1 for b in bits(mask))


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def _lex_key(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


@dataclass(frozen=True)
class Hypergraph:
    """A board of ``board_size`` vertices and a family of winning sets.

    ``labels`` optionally records, for each vertex, the label it had in the
    hypergraph this one was derived from (see :func:`delete_contract` and
    :func:`reduce`).  It does not take part in equality.
    """

    board_size: int
    sets: tuple[int, ...] = ()
    labels: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.board_size < 0:
            raise InputError(f"negative board size {self.board_size}")
        full = (1 << self.board_size) - 1
        seen = set()
        for m in self.sets:
            if m < 0 or m & ~full:
                raise InputError(
                    f"winning set {list(vertices_of(m))} not inside board 1..{self.board_size}"
                )
            if m in seen:
                raise InputError(f"duplicate winning set {list(vertices_of(m))}")
            seen.add(m)
        object.__setattr__(self, "sets", tuple(sorted(self.sets, key=_lex_key)))

    @classmethod
    def from_sets(cls, board_size: int, sets: Iterable[Iterable[int]]) -> Hypergraph:
        masks = []
        for s in sets:
            s = list(s)
            for v in s:
                if not 1 <= v <= board_size:
                    raise InputError(f"vertex {v} out of range 1..{board_size}")
            masks.append(mask_of(s))
        return cls(board_size, tuple(masks))

    @property
    def full(self) -> int:
        return (1 << self.board_size) - 1

    @property
    def winning_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(vertices_of(m)) for m in self.sets)

    def used(self) -> int:
        """Mask of vertices lying in at least one winning set."""
        u = 0
        for m in self.sets:
            u |= m
        return u

    def is_won(self) -> bool:
        """True if the empty set is winning (the contracting side has won)."""
        return 0 in self.sets

    def is_dead(self) -> bool:
        return not self.sets

    def __str__(self):
        return serialize(self).rstrip("\n").replace("\n", "; ")


# --- deletion / contraction --------------------------------------------------


def _check_vertex(h: Hypergraph, v: int) -> None:
    if not 1 <= v <= h.board_size:
        raise InputError(f"vertex {v} out of range 1..{h.board_size}")


def delete_contract(h: Hypergraph, v1: int, v2: int) -> Hypergraph:
    """The residual game after ``v1`` goes to the antagonist and ``v2`` to the protagonist.

    Keeps every ``f`` with ``v1`` not in ``f`` such that ``f`` or ``f + v2`` is
    winning, on the board with both vertices removed.  Remaining vertices are
    renumbered ``1..n-2`` in increasing order; ``labels`` maps back.
    """
    if v1 == v2:
        raise InputError("v1 and v2 must differ")
    _check_vertex(h, v1)
    _check_vertex(h, v2)
    b1, b2 = 1 << (v1 - 1), 1 << (v2 - 1)
    residual = {m & ~b2 for m in h.sets if not m & b1}
    keep = [v for v in range(1, h.board_size + 1) if v not in (v1, v2)]
    return _renumber(residual, keep, h.labels)


def delete(h: Hypergraph, v: int) -> Hypergraph:
    """Residual after the antagonist takes ``v`` alone."""
    _check_vertex(h, v)
    b = 1 << (v - 1)
    keep = [u for u in range(1, h.board_size + 1) if u != v]
    return _renumber({m for m in h.sets if not m & b}, keep, h.labels)


def contract(h: Hypergraph, v: int) -> Hypergraph:
    """Residual after the protagonist takes ``v`` alone."""
    _check_vertex(h, v)
    b = 1 << (v - 1)
    keep = [u for u in range(1, h.board_size + 1) if u != v]
    return _renumber({m & ~b for m in h.sets}, keep, h.labels)


def _renumber(masks, keep: Sequence[int], labels) -> Hypergraph:
    index = {old: new for new, old in enumerate(keep, start=1)}
    out = []
    for m in masks:
        out.append(mask_of(index[v] for v in vertices_of(m)))
    new_labels = tuple(labels[v - 1] if labels else v for v in keep)
    return Hypergraph(len(keep), tuple(out), new_labels)


# --- reduction and canonical keys ---------------------------------------------


def minimal_sets(masks: Iterable[int]) -> list[int]:
    """Drop duplicates and every set that is a proper superset of another."""
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda x: (x.bit_count(), x)):
        if not any(s & m == s for s in kept):
            kept.append(m)
    return kept


def _relabel_once(masks):
    tuples = sorted(_lex_key(m) for m in masks)
    order: dict[int, int] = {}
    for t in tuples:
        for v in t:
            if v not in order:
                order[v] = len(order)
    out = []
    for t in tuples:
        m = 0
        for v in t:
            m |= 1 << order[v]
        out.append(m)
    return sorted(out, key=_lex_key), order


def reduce_masks(masks: Iterable[int]) -> tuple[tuple[int, ...], list[int]]:
    """Reduce a family given as 0-based bitmasks.

    Returns the canonical family (0-based masks over ``0..k-1``) and the list
    ``old`` with ``old[i]`` the original bit index of new vertex ``i``.
    An empty winning set is kept as the single set ``0``.
    """
    masks = minimal_sets(masks)
    if not masks:
        return (), []
    if masks[0] == 0:
        return (0,), []
    current, order = _relabel_once(masks)
    old = [0] * len(order)
    for v, i in order.items():
        old[i] = v
    # first-appearance relabelling is not always a fixpoint after one pass
    for _ in range(len(old) + 1):
        nxt, order = _relabel_once(current)
        if nxt == current:
            break
        old = [old[v] for v, _ in sorted(order.items(), key=lambda kv: kv[1])]
        current = nxt
    return tuple(current), old


def reduce(h: Hypergraph) -> Hypergraph:
    """Minimal winning sets only, isolated vertices dropped, vertices relabelled.

    Labels follow first appearance in the lexicographically sorted family.
    """
    masks, old = reduce_masks(h.sets)
    labels = tuple(h.labels[b] if h.labels else b + 1 for b in old)
    return Hypergraph(len(old), masks, labels)


def canonical_key(h: Hypergraph) -> bytes:
    """Transposition-table key: ASCII ``<board>:<hex mask>,<hex mask>,...``."""
    return (f"{h.board_size}:" + ",".join(f"{m:x}" for m in h.sets)).encode("ascii")


# --- .hg text format ------------------------------------------------------------


def serialize(h: Hypergraph) -> str:
    lines = [f"vertices {h.board_size}"]
    for m in h.sets:
        lines.append(" ".join(["set", *map(str, vertices_of(m))]))
    return "\n".join(lines) + "\n"


def parse(text: str) -> Hypergraph:
    n = None
    masks: list[int] = []
    seen: dict[int, int] = {}
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        words = line.split()
        if n is None:
            if words[0] != "vertices" or len(words) != 2:
                raise InputError("expected 'vertices <n>'", lineno)
            try:
                n = int(words[1])
            except ValueError:
                raise InputError(f"bad vertex count {words[1]!r}", lineno) from None
            if n < 0:
                raise InputError(f"negative vertex count {n}", lineno)
            continue
        if words[0] != "set":
            raise InputError(f"unknown directive {words[0]!r}", lineno)
        try:
            vs = [int(w) for w in words[1:]]
        except ValueError:
            raise InputError("vertex indices must be integers", lineno) from None
        for v in vs:
            if not 1 <= v <= n:
                raise InputError(f"vertex {v} out of range 1..{n}", lineno)
        if any(a >= b for a, b in zip(vs, vs[1:])):
            raise InputError("vertex indices must be strictly increasing", lineno)
        m = mask_of(vs)
        if m in seen:
            raise InputError(f"duplicate set (first on line {seen[m]})", lineno)
        seen[m] = lineno
        masks.append(m)
    if n is None:
        raise InputError("missing 'vertices <n>' line")
    return Hypergraph(n, tuple(masks))


def load(path) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# --- named families -----------------------------------------------------------


def complete_graph_edges(n: int) -> list[tuple[int, int]]:
    """Edges of K_n in lexicographic order; edge ``i`` is board vertex ``i + 1``."""
    return list(itertools.combinations(range(1, n + 1), 2))


def hamiltonicity_hypergraph(n: int) -> Hypergraph:
    """Board = edges of K_n, winning sets = Hamilton cycles."""
    if n < 3:
        raise InputError(f"Hamiltonicity game needs n >= 3, got {n}")
    index = {e: i for i, e in enumerate(complete_graph_edges(n))}
    cycles = set()
    for rest in itertools.permutations(range(2, n + 1)):
        if rest[0] > rest[-1]:
            continue  # each cycle once per direction
        tour = (1, *rest, 1)
        m = 0
        for a, b in zip(tour, tour[1:]):
            m |= 1 << index[(min(a, b), max(a, b))]
        cycles.add(m)
    return Hypergraph(len(index), tuple(cycles))
