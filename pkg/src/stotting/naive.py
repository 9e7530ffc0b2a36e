"""Plain minimax over claimed sets, used only to cross-check the solver.

No memoisation, no reduction, no residual families: a position is the pair
of claimed bitmasks and the win test is direct subset containment against
the original winning sets.
"""

from __future__ import annotations

from itertools import combinations

from .errors import InputError

NAIVE_MAX_BOARD = 10


def naive_solve(variant, h) -> str:
    """Return ``"maker"`` or ``"breaker"`` for the side that wins ``h``."""
    if h.board_size > NAIVE_MAX_BOARD:
        raise InputError(f"naive oracle is limited to {NAIVE_MAX_BOARD} elements")
    sets = list(h.sets)
    n = h.board_size
    name = type(variant).__name__

    def owned(p):
        return any(s & p == s for s in sets)

    def blocked(a):
        return all(s & a for s in sets)

    def free(p, a):
        return [1 << i for i in range(n) if not (p | a) >> i & 1]

    def settled(p, a):
        if owned(p):
            return True
        if blocked(a) or not free(p, a):
            return False
        return None

    if name == "MakerBreaker":
        quota = {True: variant.maker_quota, False: variant.breaker_quota}

        def mb(p, a, maker_to_move, left):
            r = settled(p, a)
            if r is not None:
                return r
            if left == 0:
                maker_to_move = not maker_to_move
                left = quota[maker_to_move]
            if maker_to_move:
                return any(mb(p | v, a, True, left - 1) for v in free(p, a))
            return all(mb(p, a | v, False, left - 1) for v in free(p, a))

        maker_first = variant.first.value == "maker"
        won = mb(0, 0, maker_first, quota[maker_first])

    elif name == "WaiterClient":

        def wc(p, a):
            r = settled(p, a)
            if r is not None:
                return r
            f = free(p, a)
            if len(f) == 1:
                return wc(p, a | f[0])
            return any(wc(p | y, a | x) and wc(p | x, a | y) for x, y in combinations(f, 2))

        won = wc(0, 0)

    elif name == "StottingMakerBreaker":

        def step(p, a, movers):
            r = settled(p, a)
            if r is not None:
                return r
            if not movers:
                return turn(p, a)
            if movers[0] == "M":
                return any(step(p | v, a, movers[1:]) for v in free(p, a))
            return all(step(p, a | v, movers[1:]) for v in free(p, a))

        def turn(p, a):
            return step(p, a, "BM") and step(p, a, "MB")

        won = turn(0, 0)

    elif name == "StottingWaiterClient":

        def swc(p, a):
            r = settled(p, a)
            if r is not None:
                return r
            f = free(p, a)
            if len(f) == 1:
                return swc(p, a | f[0])
            return all(
                any(swc(p | y, a | x) and swc(p | x, a | y) for y in f if y != x) for x in f
            )

        won = swc(0, 0)

    else:
        raise InputError(f"unknown variant {variant!r}")
    return "maker" if won else "breaker"
