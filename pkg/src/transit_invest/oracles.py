"""Exhaustive ground-truth solvers.

Everything here enumerates; nothing samples.  A size cap guards each
enumeration and is a hard error when exceeded.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from .core import (NTPInstance, Objective, PTPInstance, agent_costs, selection_sort_key,
                   walking_cost)
from .errors import InvalidAgentError, TooLargeError

DEFAULT_CAP = 10**6
MAX_PATH_VERTICES = 12


def oracle_cap(cap=None):
    if cap is not None:
        return int(cap)
    env = os.environ.get("TRANSIT_ORACLE_CAP")
    return int(env) if env else DEFAULT_CAP


def subset_count(n, k):
    return sum(math.comb(n, i) for i in range(min(k, n) + 1))


@dataclass(frozen=True)
class OracleReport:
    optimum: Fraction
    witnesses: tuple  # optimal selections in lexicographic order
    explored: int
    objective: Objective


def _enumerate(instance, candidates, objective, cap, max_witnesses):
    objective = Objective.parse(objective)
    k = min(instance.beta, len(candidates))
    count = subset_count(len(candidates), k)
    limit = oracle_cap(cap)
    if count > limit:
        raise TooLargeError(count, limit)
    best = None
    witnesses = []
    explored = 0
    for size in range(k + 1):
        for combo in itertools.combinations(candidates, size):
            explored += 1
            selection = frozenset(combo)
            value = objective.aggregate(agent_costs(instance, selection))
            if best is None or value < best:
                best, witnesses = value, [selection]
            elif value == best:
                witnesses.append(selection)
    witnesses.sort(key=lambda sel: selection_sort_key(instance, sel))
    if max_witnesses is not None:
        witnesses = witnesses[:max_witnesses]
    return OracleReport(best, tuple(witnesses), explored, objective)


def oracle_ntp(instance: NTPInstance, objective=Objective.UTILITARIAN, cap=None,
               max_witnesses=None):
    """Optimum over every edge subset of size at most ``beta``."""
    return _enumerate(instance, instance.edge_list, objective, cap, max_witnesses)


def oracle_ptp(instance: PTPInstance, objective=Objective.UTILITARIAN, cap=None,
               max_witnesses=None):
    """Optimum over every stop subset of size at most ``beta``."""
    return _enumerate(instance, instance.stops, objective, cap, max_witnesses)


def oracle(instance, objective=Objective.UTILITARIAN, cap=None, max_witnesses=None):
    if isinstance(instance, PTPInstance):
        return oracle_ptp(instance, objective, cap, max_witnesses)
    return oracle_ntp(instance, objective, cap, max_witnesses)


def _graph(instance):
    g = nx.Graph()
    g.add_nodes_from(instance.vertices)
    for u, v, w in instance.edges:
        g.add_edge(u, v, weight=w)
    return g


def oracle_paths(instance: NTPInstance, agent, budget):
    """Cheapest simple path from ``s`` to ``t`` discounting at most ``budget`` of its edges.

    Every simple path and every small-enough subset of its edges is tried.
    """
    if len(instance.vertices) > MAX_PATH_VERTICES:
        raise TooLargeError(len(instance.vertices), MAX_PATH_VERTICES)
    s, t = agent
    if s not in instance.index or t not in instance.index:
        raise InvalidAgentError(f"agent {agent!r} has a terminal outside the graph")
    if s == t:
        return Fraction(0)
    g = _graph(instance)
    alpha = instance.alpha
    best = walking_cost(instance, agent)
    for nodes in nx.all_simple_paths(g, s, t):
        weights = [g[a][b]["weight"] for a, b in zip(nodes, nodes[1:])]
        full = sum(weights, Fraction(0))
        for size in range(min(budget, len(weights)) + 1):
            for picked in itertools.combinations(range(len(weights)), size):
                cost = full - sum(((1 - alpha) * weights[i] for i in picked), Fraction(0))
                if cost < best:
                    best = cost
    return best
