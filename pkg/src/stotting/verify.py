"""Exhaustive checks over small hypergraphs.

The implication battery solves five game configurations on every member of
an enumeration class and lists each instance where a proved implication
between their outcomes fails.  Any such line is a bug somewhere.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import StrategyFault
from .games import (
    GameState,
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
)
from .hypergraph import Hypergraph, canonical_key, reduce, serialize
from .solver import Solver
from .strategy import StrategyOracle

CONFIGS = {
    "mb": MakerBreaker(1, 1, Side.BREAKER),
    "mb12": MakerBreaker(1, 2, Side.BREAKER),
    "wc": WaiterClient(),
    "smb": StottingMakerBreaker(),
    "swc": StottingWaiterClient(),
}

# (name, premise, conclusion): premise protagonist wins => conclusion protagonist wins
IMPLICATIONS = (
    ("smb=>wc", "smb", "wc"),
    ("mb12=>smb", "mb12", "smb"),
    ("swc=>mb", "swc", "mb"),
    ("smb=>mb", "smb", "mb"),
    ("swc=>wc", "swc", "wc"),
)


@dataclass(frozen=True)
class EnumClass:
    """Families of at most ``max_sets`` nonempty sets of size at most ``max_set_size``
    over at most ``max_vertices`` vertices.

    With ``pad_isolated`` every family also appears on each larger board up to
    ``max_vertices``, the extra vertices lying in no winning set.
    """

    max_vertices: int = 4
    max_sets: int = 4
    max_set_size: int = 3
    minimal_only: bool = True
    include_empty: bool = True
    pad_isolated: bool = False

    def __post_init__(self):
        if min(self.max_vertices, self.max_sets, self.max_set_size) < 1:
            raise ValueError("enumeration bounds must be at least 1")

    def __str__(self):
        return f"E({self.max_vertices},{self.max_sets},{self.max_set_size})"


def enumerate_class(cls: EnumClass) -> list[Hypergraph]:
    """Every family in the class once per canonical key, ordered by key."""
    n = cls.max_vertices
    candidates = [
        sum(1 << v for v in c)
        for size in range(1, min(cls.max_set_size, n) + 1)
        for c in itertools.combinations(range(n), size)
    ]
    found: dict[bytes, Hypergraph] = {}
    start = 0 if cls.include_empty else 1
    for k in range(start, cls.max_sets + 1):
        for fam in itertools.combinations(candidates, k):
            if cls.minimal_only and any(a & b == a for a, b in itertools.permutations(fam, 2)):
                continue
            r = reduce(Hypergraph(n, fam))
            r = Hypergraph(r.board_size, r.sets)
            found.setdefault(canonical_key(r), r)
    out = dict(found)
    if cls.pad_isolated:
        for h in found.values():
            for size in range(h.board_size + 1, n + 1):
                p = Hypergraph(size, h.sets)
                out.setdefault(canonical_key(p), p)
    return [out[k] for k in sorted(out)]


def solve_all(h: Hypergraph) -> dict[str, Side]:
    return {name: Solver(v).value(new_game(v, h)) for name, v in CONFIGS.items()}


def _solve_entry(h: Hypergraph):
    t0 = time.perf_counter()
    out = {}
    states = 0
    for name, v in CONFIGS.items():
        s = Solver(v)
        out[name] = s.value(new_game(v, h))
        states += s.states_visited
    return canonical_key(h), out, states, time.perf_counter() - t0


@dataclass
class ImplicationReport:
    enum_class: str
    results: list[tuple[bytes, dict[str, Side]]] = field(default_factory=list)
    violations: dict[str, list[tuple[bytes, str]]] = field(default_factory=dict)
    instances: dict[bytes, Hypergraph] = field(default_factory=dict)
    states: int = 0
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def win_counts(self) -> dict[str, int]:
        return {
            name: sum(r[name] is Side.MAKER for _, r in self.results) for name in CONFIGS
        }

    def lines(self, timing: bool = False) -> list[str]:
        """``RESULT``/``VIOLATION`` lines and a summary footer (M = Maker/Waiter wins)."""
        out = []
        for key, r in self.results:
            cols = " ".join(f"{n}={'M' if r[n] is Side.MAKER else 'B'}" for n in CONFIGS)
            out.append(f"RESULT {key.decode()} {cols}")
        for name, _, _ in IMPLICATIONS:
            for key, _ in self.violations.get(name, []):
                out.append(f"VIOLATION {name} {key.decode()}")
        counts = self.win_counts()
        out.append(f"# class {self.enum_class}: {len(self.results)} instances")
        out.append("# maker-side wins: " + " ".join(f"{n}={c}" for n, c in counts.items()))
        out.append(
            "# violations: "
            + " ".join(f"{name}={len(self.violations.get(name, []))}" for name, _, _ in IMPLICATIONS)
        )
        out.append(f"# states visited: {self.states}")
        if timing:
            out.append(f"# elapsed: {self.elapsed:.2f}s")
        for name, _, _ in IMPLICATIONS:
            for key, text in self.violations.get(name, []):
                out.append(f"# {name} {key.decode()}")
                out.extend(text.rstrip("\n").split("\n"))
        return out

    def text(self, timing: bool = False) -> str:
        return "\n".join(self.lines(timing)) + "\n"


def check_implications(cls: EnumClass = EnumClass(), jobs: int = 1) -> ImplicationReport:
    t0 = time.perf_counter()
    instances = enumerate_class(cls)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            entries = list(pool.map(_solve_entry, instances, chunksize=16))
    else:
        entries = [_solve_entry(h) for h in instances]
    report = ImplicationReport(str(cls))
    by_key = {canonical_key(h): h for h in instances}
    for key, r, states, _ in sorted(entries, key=lambda e: e[0]):
        report.results.append((key, r))
        report.instances[key] = by_key[key]
        report.states += states
        for name, prem, concl in IMPLICATIONS:
            report.violations.setdefault(name, [])
            if r[prem] is Side.MAKER and r[concl] is not Side.MAKER:
                report.violations[name].append((key, serialize(by_key[key])))
    report.elapsed = time.perf_counter() - t0
    return report


def search_separation(cls: EnumClass, premise: str, conclusion: str) -> list[Hypergraph]:
    """Instances where the premise protagonist wins but the conclusion one loses."""
    out = []
    pv, cv = CONFIGS[premise], CONFIGS[conclusion]
    for h in enumerate_class(cls):
        if Solver(pv).value(new_game(pv, h)) is Side.MAKER:
            if Solver(cv).value(new_game(cv, h)) is not Side.MAKER:
                out.append(h)
    return out


# --- exhaustive strategy verification ----------------------------------------


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    line: tuple[Move, ...] | None = None
    leaves: int = 0

    def __bool__(self):
        return self.ok


def verify_strategy(variant, h: Hypergraph, oracle: StrategyOracle, side: Side = Side.MAKER, check=None) -> VerifyResult:
    """Play ``oracle`` against every opponent line; ``side`` must win each leaf.

    Opponent moves are explored in sorted order, so a reported losing line
    is the lexicographically least one.  ``check(state)``, if given, is
    called on every reached state and must return True.
    """
    leaves = 0

    def walk(s: GameState, transcript: tuple[Move, ...]):
        nonlocal leaves
        if check is not None and not check(s, transcript):
            return transcript
        if s.terminal:
            leaves += 1
            return None if s.winner() is side else transcript
        if s.to_move is side:
            m = oracle(transcript)
            if not isinstance(m, Move) or not is_legal(s, m):
                raise StrategyFault(f"{oracle.name} returned illegal move {m}", transcript)
            return walk(apply_move(s, m), transcript + (m,))
        for m in legal_moves(s):
            bad = walk(apply_move(s, m), transcript + (m,))
            if bad is not None:
                return bad
        return None

    bad = walk(new_game(variant, h), ())
    return VerifyResult(bad is None, bad, leaves)
