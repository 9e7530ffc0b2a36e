"""Exact engine for Maker-Breaker, Waiter-Client and their stotting variants."""

from .errors import ContractViolation, InputError, MatroidAxiomError, StrategyFault
from .games import (
    GameState,
    MakerBreaker,
    Move,
    Side,
    StottingMakerBreaker,
    StottingWaiterClient,
    WaiterClient,
    apply_move,
    legal_moves,
    new_game,
    winner,
)
from .hypergraph import (
    Hypergraph,
    canonical_key,
    delete_contract,
    hamiltonicity_hypergraph,
    parse,
    reduce,
    serialize,
)
from .naive import naive_solve
from .solver import SolveReport, Solver, optimal_strategy, solve, solve_state
from .strategy import StrategyOracle

__version__ = "0.1.0"
