"""Budgeted transit investment: bus stops on a line and discounted edges in a graph."""

from .budget_dijkstra import (BudgetMapping, BudgetTable, RoutingPair, budget_dijkstra,
                              budget_mapping, reconstruct)
from .core import (INF, NTPInstance, Objective, PTPInstance, Solution, decision_check, evaluate,
                   ntp_agent_cost, ptp_agent_cost, walking_cost)
from .errors import (InapplicableError, InstanceError, InvalidAgentError, InvalidVertexError,
                     NoPathError, TooLargeError, TransitError)
from .greedy import AdversarialParams, greedy_down, greedy_up, make_adversarial
from .jsonio import emit_instance, parse_instance
from .multi_agent import (merge_add, merge_max, solve_one_agent, solve_two_agents,
                          trivial_baseline)
from .oracles import OracleReport, oracle_ntp, oracle_paths, oracle_ptp
from .ptp_solvers import (TerminalSet, ptp_egalitarian_exact, ptp_utilitarian_dp,
                          restrict_to_terminals)
from .reductions import (RDPInstance, SetCoverInstance, VertexCoverInstance, ntp_to_rdp,
                         rdp_cost, setcover_to_ntp, vertexcover_to_ptp)

__version__ = "0.1.0"
