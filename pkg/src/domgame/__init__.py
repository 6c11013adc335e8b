"""Domination game toolkit: exact solver, potential-based Dominator strategy,
transversal-game reduction and a verification harness."""

from .graphs import Graph, GraphError, GraphFamily, ParseError, emit_edge_list, generate, min_degree, parse_edge_list
from .solver import CapacityError, Mover, SolveKey, game_value, optimal_move, remaining_value
from .state import Color, GameState, Ledger, MoveError, apply_move, compute_colors, legal_moves, potential
from .strategy import (
    Plan,
    Session,
    TerminalReport,
    check_main_bound,
    find_stable_plan,
    run_match,
    verify_terminal_structure,
)
from .trace import MatchTrace, audit_trace
from .transversal import Hypergraph, cnh, tau_g

__version__ = "0.1.0"
