"""Exact NTP solvers for one and two agents, and the do-nothing baseline."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .budget_dijkstra import BudgetMapping, budget_dijkstra, budget_mapping, reconstruct
from .core import (NTPInstance, Objective, PTPInstance, agent_costs, make_solution,
                   walking_costs)
from .errors import InapplicableError, InstanceError


def _as_values(mu):
    return tuple(mu.values if isinstance(mu, BudgetMapping) else mu)


def _merge(mu1, mu2, beta, combine):
    """Best split of each budget ``b`` between two mappings.

    Returns the merged values and, per ``b``, the budget given to ``mu1``
    (the smallest one on ties).
    """
    a, c = _as_values(mu1), _as_values(mu2)
    if len(a) != len(c) or len(a) != beta + 1:
        raise ValueError(f"mappings must both cover budgets 0..{beta}")
    values, splits = [], []
    for b in range(beta + 1):
        best, arg = None, 0
        for left in range(b + 1):
            v = combine(a[left], c[b - left])
            if best is None or v < best:
                best, arg = v, left
        values.append(best)
        splits.append(arg)
    return tuple(values), tuple(splits)


def merge_add(mu1, mu2, beta) -> BudgetMapping:
    """``result(b) = min_{b'} mu1(b') + mu2(b - b')``."""
    return BudgetMapping(_merge(mu1, mu2, beta, lambda x, y: x + y)[0])


def merge_max(mu1, mu2, beta) -> BudgetMapping:
    """``result(b) = min_{b'} max(mu1(b'), mu2(b - b'))``."""
    return BudgetMapping(_merge(mu1, mu2, beta, max)[0])


@dataclass(frozen=True)
class BranchDecomposition:
    """Segment mappings for two agents sharing the stretch from ``p`` to ``q``."""

    p: object
    q: object
    mu_sp: BudgetMapping
    mu_qt: BudgetMapping
    mu_s2p: BudgetMapping
    mu_qt2: BudgetMapping
    mu_pq: BudgetMapping


# A small expression tree lets the winning candidate report how it split
# the budget, so each segment's path can be rebuilt afterwards.

class _Leaf:
    def __init__(self, mu, segment, times=1):
        self.values = tuple(times * v for v in _as_values(mu))
        self.segment = segment

    def allocate(self, b):
        return [(self.segment, b)]


class _Node:
    def __init__(self, left, right, beta, combine):
        self.left, self.right = left, right
        self.values, self.splits = _merge(left.values, right.values, beta, combine)

    def allocate(self, b):
        k = self.splits[b]
        return self.left.allocate(k) + self.right.allocate(b - k)


def _add(x, y, beta):
    return _Node(x, y, beta, lambda a, b: a + b)


def _max(x, y, beta):
    return _Node(x, y, beta, max)


class _Tables:
    """Budget tables from every vertex, computed on demand and cached."""

    def __init__(self, instance, beta):
        self.instance = instance
        self.beta = beta
        self._tables = {}

    def table(self, source):
        if source not in self._tables:
            self._tables[source] = budget_dijkstra(self.instance, source, beta=self.beta)
        return self._tables[source]

    def mapping(self, source, target):
        return budget_mapping(self.table(source), target)

    def leaf(self, source, target, times=1):
        return _Leaf(self.mapping(source, target), (source, target), times)


def solve_one_agent(instance: NTPInstance):
    """Optimal discount set for a single agent; both objectives coincide."""
    if len(instance.agents) != 1:
        raise InapplicableError(f"expected exactly one agent, got {len(instance.agents)}")
    s, t = instance.agents[0]
    table = budget_dijkstra(instance, s)
    _, discounted = reconstruct(table, t, instance.beta)
    chosen = frozenset(instance.edge(u, v) for u, v in discounted)
    costs = agent_costs(instance, chosen)
    return make_solution(instance, chosen, costs, Objective.UTILITARIAN)


def _candidates(tables, agents, objective, beta):
    (s, t), (s2, t2) = agents
    vertices = tables.instance.vertices
    eg = objective is Objective.EGALITARIAN
    combine = _max if eg else _add
    yield ("disjoint",), combine(tables.leaf(s, t), tables.leaf(s2, t2), beta)
    for p in vertices:
        for q in vertices:
            for order in range(4):
                # order bit 0 flips the first agent's direction through p..q,
                # bit 1 the second agent's
                a_in, a_out = (p, q) if order & 1 == 0 else (q, p)
                b_in, b_out = (p, q) if order & 2 == 0 else (q, p)
                first = _add(tables.leaf(s, a_in), tables.leaf(a_out, t), beta)
                second = _add(tables.leaf(s2, b_in), tables.leaf(b_out, t2), beta)
                if eg:
                    tree = _add(_max(first, second, beta), tables.leaf(p, q), beta)
                else:
                    tree = _add(_add(first, second, beta), tables.leaf(p, q, times=2), beta)
                yield ("shared", p, q, order), tree


def branch_decomposition(instance: NTPInstance, p, q, beta=None):
    """The five segment mappings for branch vertices ``p`` and ``q``."""
    if len(instance.agents) != 2:
        raise InapplicableError("branch decomposition needs exactly two agents")
    beta = instance.beta if beta is None else beta
    tables = _Tables(instance, beta)
    (s, t), (s2, t2) = instance.agents
    return BranchDecomposition(p, q, tables.mapping(s, p), tables.mapping(q, t),
                               tables.mapping(s2, p), tables.mapping(q, t2),
                               tables.mapping(p, q))


def solve_two_agents(instance: NTPInstance, objective=Objective.UTILITARIAN):
    """Optimal discount set for exactly two agents.

    Minimises over the disjoint case and every choice of shared stretch
    ``p..q`` with all four traversal orders.  The witness is the union of the
    segments' discounted edges, re-evaluated exactly.
    """
    objective = Objective.parse(objective)
    if len(instance.agents) != 2:
        raise InapplicableError(f"expected exactly two agents, got {len(instance.agents)}")
    beta = instance.beta
    tables = _Tables(instance, beta)
    scored = []
    for rank, (label, tree) in enumerate(_candidates(tables, instance.agents, objective, beta)):
        scored.append((tree.values[beta], rank, label, tree))
    scored.sort(key=lambda item: (item[0], item[1]))
    for value, _, label, tree in scored:
        chosen = set()
        for (src, dst), b in tree.allocate(beta):
            if src == dst:
                continue
            _, discounted = reconstruct(tables.table(src), dst, b)
            chosen.update(instance.edge(u, v) for u, v in discounted)
        if len(chosen) > beta:
            continue
        chosen = frozenset(chosen)
        costs = agent_costs(instance, chosen)
        return make_solution(instance, chosen, costs, objective)
    raise AssertionError("the disjoint candidate is always feasible")


def solve_exact(instance: NTPInstance, objective=Objective.UTILITARIAN):
    """Dispatch to the one- or two-agent solver."""
    objective = Objective.parse(objective)
    n = len(instance.agents)
    if n == 1:
        sol = solve_one_agent(instance)
        return make_solution(instance, sol.selection, sol.per_agent_costs, objective)
    if n == 2:
        return solve_two_agents(instance, objective)
    raise InapplicableError(f"exact NTP solving supports one or two agents, got {n}")


def trivial_baseline(instance, objective=Objective.UTILITARIAN):
    """Invest nothing; within a factor 1/alpha of optimal whenever alpha > 0."""
    if not isinstance(instance, (PTPInstance, NTPInstance)):
        raise InstanceError("baseline needs a PTP or NTP instance")
    return make_solution(instance, frozenset(), walking_costs(instance), objective)


def baseline_ratio_bound(instance):
    """The guarantee ``1/alpha`` (``None`` when alpha is 0)."""
    return None if instance.alpha == 0 else 1 / Fraction(instance.alpha)
