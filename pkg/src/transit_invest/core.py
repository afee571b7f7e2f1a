"""Instance data model and exact cost evaluation for both transit models.

All quantities are :class:`fractions.Fraction`; ``math.inf`` is the only
non-rational cost value and only shows up in the railway variant.
"""

from __future__ import annotations

import bisect
import enum
import heapq
import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .errors import InstanceError, InvalidAgentError, InvalidVertexError

INF = math.inf

Vertex = Hashable
Edge = tuple  # (u, v) with u before v in the instance's vertex order


def to_rational(value, name="value"):
    """Convert ``value`` to an exact Fraction.

    Strings may be ``"p/q"`` or decimals (``"0.1"`` becomes 1/10 exactly).
    Floats are read through their shortest repr for the same reason.
    """
    if isinstance(value, bool):
        raise InstanceError(f"expected a rational, got {value!r}", name)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise InstanceError(f"expected a finite rational, got {value!r}", name)
        return Fraction(repr(value))
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InstanceError(f"cannot parse {value!r} as a rational", name) from exc
    raise InstanceError(f"expected a rational, got {type(value).__name__}", name)


def format_rational(value):
    """Exact string form: ``"11/2"``, ``"3"`` or ``"inf"``."""
    if value == INF:
        return "inf"
    return str(Fraction(value))


class Objective(enum.Enum):
    EGALITARIAN = "eg"
    UTILITARIAN = "ut"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {"eg": cls.EGALITARIAN, "egalitarian": cls.EGALITARIAN, "max": cls.EGALITARIAN,
                   "ut": cls.UTILITARIAN, "utilitarian": cls.UTILITARIAN, "sum": cls.UTILITARIAN}
        if key not in aliases:
            raise ValueError(f"unknown objective {value!r}; use 'eg' or 'ut'")
        return aliases[key]

    def aggregate(self, costs):
        if self is Objective.EGALITARIAN:
            return max(costs, default=Fraction(0))
        return sum(costs, Fraction(0))

    @property
    def other(self):
        return Objective.UTILITARIAN if self is Objective.EGALITARIAN else Objective.EGALITARIAN


def _check_alpha(alpha):
    alpha = to_rational(alpha, "alpha")
    if not 0 <= alpha < 1:
        raise InstanceError("alpha must lie in [0,1)", "alpha")
    return alpha


def _check_beta(beta):
    if isinstance(beta, bool) or not isinstance(beta, int):
        if isinstance(beta, Fraction) and beta.denominator == 1:
            beta = int(beta)
        else:
            raise InstanceError("beta must be a non-negative integer", "beta")
    if beta < 0:
        raise InstanceError("beta must be a non-negative integer", "beta")
    return beta


@dataclass(frozen=True)
class PTPInstance:
    """Bus-stop placement on a line.

    ``stops`` is the finite candidate set, ``agents`` a multiset of
    terminal pairs ``(s, t)`` with ``s <= t``.
    """

    stops: tuple
    agents: tuple
    alpha: Fraction
    beta: int

    def __post_init__(self):
        stops = tuple(to_rational(x, f"stops[{i}]") for i, x in enumerate(self.stops))
        ordered = tuple(sorted(stops))
        for a, b in zip(ordered, ordered[1:]):
            if a == b:
                raise InstanceError(f"duplicate stop {a}", "stops")
        agents = []
        for i, pair in enumerate(self.agents):
            if len(pair) != 2:
                raise InstanceError("an agent is a pair (s, t)", f"agents[{i}]")
            s = to_rational(pair[0], f"agents[{i}][0]")
            t = to_rational(pair[1], f"agents[{i}][1]")
            if s > t:
                raise InstanceError("agent must satisfy s <= t", f"agents[{i}]")
            agents.append((s, t))
        object.__setattr__(self, "stops", ordered)
        object.__setattr__(self, "agents", tuple(agents))
        object.__setattr__(self, "alpha", _check_alpha(self.alpha))
        object.__setattr__(self, "beta", _check_beta(self.beta))

    @property
    def model(self):
        return "ptp"

    def replace(self, **changes):
        data = {"stops": self.stops, "agents": self.agents, "alpha": self.alpha, "beta": self.beta}
        data.update(changes)
        return PTPInstance(**data)


@dataclass(frozen=True)
class NTPInstance:
    """Edge discounting in an undirected, connected, weighted graph.

    Edges are stored canonically as ``(u, v, w)`` with ``u`` listed before
    ``v`` in ``vertices`` and sorted by that order.
    """

    vertices: tuple
    edges: tuple
    agents: tuple
    alpha: Fraction
    beta: int

    def __post_init__(self):
        vertices = tuple(self.vertices)
        index = {}
        for v in vertices:
            if v in index:
                raise InstanceError(f"duplicate vertex {v!r}", "vertices")
            index[v] = len(index)
        if not vertices:
            raise InstanceError("graph needs at least one vertex", "vertices")
        seen = set()
        edges = []
        for i, item in enumerate(self.edges):
            if len(item) != 3:
                raise InstanceError("an edge is a triple (u, v, w)", f"edges[{i}]")
            u, v, w = item
            for x in (u, v):
                if x not in index:
                    raise InstanceError(f"unknown vertex {x!r}", f"edges[{i}]")
            if u == v:
                raise InstanceError("self-loops are not allowed", f"edges[{i}]")
            if index[u] > index[v]:
                u, v = v, u
            if (u, v) in seen:
                raise InstanceError(f"parallel edge {u!r}-{v!r}", f"edges[{i}]")
            seen.add((u, v))
            w = to_rational(w, f"edges[{i}][2]")
            if w < 0:
                raise InstanceError("edge weights must be non-negative", f"edges[{i}]")
            edges.append((u, v, w))
        edges.sort(key=lambda e: (index[e[0]], index[e[1]]))
        agents = []
        for i, pair in enumerate(self.agents):
            if len(pair) != 2:
                raise InstanceError("an agent is a pair (s, t)", f"agents[{i}]")
            for x in pair:
                if x not in index:
                    raise InstanceError(f"terminal {x!r} is not a vertex", f"agents[{i}]")
            agents.append((pair[0], pair[1]))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "agents", tuple(agents))
        object.__setattr__(self, "alpha", _check_alpha(self.alpha))
        object.__setattr__(self, "beta", _check_beta(self.beta))
        if not self._connected():
            raise InstanceError("graph must be connected", "edges")

    @classmethod
    def from_edges(cls, edges, agents, alpha, beta, vertices=None):
        """Build an instance, inferring the vertex order from ``edges`` if needed."""
        if vertices is None:
            order = {}
            for u, v, _ in edges:
                order.setdefault(u, None)
                order.setdefault(v, None)
            for s, t in agents:
                order.setdefault(s, None)
                order.setdefault(t, None)
            vertices = tuple(order)
        return cls(tuple(vertices), tuple(edges), tuple(agents), alpha, beta)

    @property
    def model(self):
        return "ntp"

    def replace(self, **changes):
        data = {"vertices": self.vertices, "edges": self.edges, "agents": self.agents,
                "alpha": self.alpha, "beta": self.beta}
        data.update(changes)
        return NTPInstance(**data)

    @cached_property
    def index(self):
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def weights(self):
        return {(u, v): w for u, v, w in self.edges}

    @cached_property
    def edge_list(self):
        return tuple((u, v) for u, v, _ in self.edges)

    @cached_property
    def adjacency(self):
        adj = {v: [] for v in self.vertices}
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        return adj

    def edge(self, u, v):
        """Canonical key of the edge joining ``u`` and ``v``."""
        if u not in self.index or v not in self.index:
            raise InvalidVertexError(f"no such vertex among {u!r}, {v!r}")
        key = (u, v) if self.index[u] < self.index[v] else (v, u)
        if key not in self.weights:
            raise InstanceError(f"{u!r}-{v!r} is not an edge", "selection")
        return key

    def edge_key(self, e):
        return (self.index[e[0]], self.index[e[1]])

    def canonical_selection(self, selection):
        return frozenset(self.edge(u, v) for u, v in selection)

    def _connected(self):
        adj = {v: set() for v in self.vertices}
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        start = self.vertices[0]
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(self.vertices)

    @cached_property
    def _scaled(self):
        # Integer weights under a common denominator keep Dijkstra exact and fast.
        denom = 1
        for _, _, w in self.edges:
            denom = math.lcm(denom, w.denominator, (self.alpha * w).denominator)
        adj = {v: [] for v in self.vertices}
        for u, v, w in self.edges:
            full = int(w * denom)
            cheap = int(self.alpha * w * denom)
            adj[u].append((v, full, cheap, (u, v)))
            adj[v].append((u, full, cheap, (u, v)))
        return denom, adj


@dataclass(frozen=True)
class Solution:
    selection: frozenset
    per_agent_costs: tuple
    total: Fraction
    max: Fraction
    feasible: bool
    objective: Objective = Objective.UTILITARIAN
    warnings: tuple = field(default=())

    @property
    def cost(self):
        """Headline cost under ``objective``."""
        return self.max if self.objective is Objective.EGALITARIAN else self.total

    def cost_for(self, objective):
        return self.max if Objective.parse(objective) is Objective.EGALITARIAN else self.total


def _check_agent_ntp(instance, agent):
    s, t = agent
    if s not in instance.index or t not in instance.index:
        raise InvalidAgentError(f"agent {agent!r} has a terminal outside the graph")


def _dijkstra_int(adj, source, selection, targets):
    dist = {source: 0}
    done = set()
    remaining = set(targets)
    remaining.discard(source)
    heap = [(0, 0, source)]
    tick = 0
    while heap and remaining:
        d, _, x = heapq.heappop(heap)
        if x in done:
            continue
        done.add(x)
        remaining.discard(x)
        for y, full, cheap, e in adj[x]:
            nd = d + (cheap if e in selection else full)
            if nd < dist.get(y, nd + 1):
                dist[y] = nd
                tick += 1
                heapq.heappush(heap, (nd, tick, y))
    return dist


def ntp_costs(instance: NTPInstance, selection, agents=None):
    """Discounted shortest-path cost of every agent under ``selection``."""
    agents = instance.agents if agents is None else agents
    for a in agents:
        _check_agent_ntp(instance, a)
    selection = selection if isinstance(selection, (set, frozenset)) else set(selection)
    denom, adj = instance._scaled
    # group agents under as few Dijkstra sources as possible
    freq = {}
    for s, t in agents:
        if s != t:
            freq[s] = freq.get(s, 0) + 1
            freq[t] = freq.get(t, 0) + 1
    plan = {}
    for s, t in agents:
        if s == t or s in plan or t in plan:
            continue
        plan[s if freq[s] >= freq[t] else t] = None
    wanted = {src: set() for src in plan}
    for s, t in agents:
        if s == t:
            continue
        if s in wanted:
            wanted[s].add(t)
        else:
            wanted[t].add(s)
    dist = {src: _dijkstra_int(adj, src, selection, tg) for src, tg in wanted.items()}
    out = []
    for s, t in agents:
        if s == t:
            out.append(Fraction(0))
        elif s in dist and t in dist[s]:
            out.append(Fraction(dist[s][t], denom))
        else:
            out.append(Fraction(dist[t][s], denom))
    return tuple(out)


def ptp_agent_cost(instance: PTPInstance, selection, agent):
    """Bus cost of one agent: board and alight at opened stops, or walk.

    Only the opened stops adjacent to each terminal can be optimal boarding
    and alighting points, so four combinations are checked.
    """
    s, t = agent
    stops = selection if isinstance(selection, tuple) else tuple(sorted(selection))
    walk = t - s
    if len(stops) < 2:
        return walk
    alpha = instance.alpha
    best = walk
    for v1 in _neighbours(stops, s):
        for v2 in _neighbours(stops, t):
            c = abs(s - v1) + alpha * abs(v2 - v1) + abs(t - v2)
            if c < best:
                best = c
    return best


def _neighbours(stops, x):
    i = bisect.bisect_left(stops, x)
    out = []
    if i < len(stops):
        out.append(stops[i])
    if i > 0:
        out.append(stops[i - 1])
    return out


def ptp_costs(instance: PTPInstance, selection):
    stops = tuple(sorted(selection))
    return tuple(ptp_agent_cost(instance, stops, a) for a in instance.agents)


def walking_cost(instance, agent):
    if isinstance(instance, PTPInstance):
        s, t = (to_rational(x) for x in agent)
        return t - s
    _check_agent_ntp(instance, agent)
    return ntp_costs(instance, frozenset(), [tuple(agent)])[0]


def walking_costs(instance):
    if isinstance(instance, PTPInstance):
        return tuple(t - s for s, t in instance.agents)
    return ntp_costs(instance, frozenset())


def ntp_agent_cost(instance: NTPInstance, selection, agent):
    _check_agent_ntp(instance, agent)
    return ntp_costs(instance, instance.canonical_selection(selection), [tuple(agent)])[0]


def canonical_selection(instance, selection):
    if isinstance(instance, PTPInstance):
        chosen = frozenset(to_rational(x, "selection") for x in selection)
        allowed = set(instance.stops)
        for x in chosen:
            if x not in allowed:
                raise InstanceError(f"{x} is not a candidate stop", "selection")
        return chosen
    return instance.canonical_selection(selection)


def make_solution(instance, selection, costs, objective=Objective.UTILITARIAN, warnings=()):
    return Solution(
        selection=frozenset(selection),
        per_agent_costs=tuple(costs),
        total=sum(costs, Fraction(0)),
        max=max(costs, default=Fraction(0)),
        feasible=len(selection) <= instance.beta,
        objective=Objective.parse(objective),
        warnings=tuple(warnings),
    )


def agent_costs(instance, selection):
    """Per-agent costs for an already canonical selection."""
    if isinstance(instance, PTPInstance):
        return ptp_costs(instance, selection)
    return ntp_costs(instance, selection)


def evaluate(instance, selection, objective=Objective.UTILITARIAN):
    """Evaluate ``selection`` (stops or edges) under both objectives."""
    chosen = canonical_selection(instance, selection)
    return make_solution(instance, chosen, agent_costs(instance, chosen), objective)


def decision_check(instance, objective, kappa, cap=None):
    """Is there a feasible selection with headline cost at most ``kappa``?

    Returns ``(answer, witness)``; the witness is ``None`` on a No answer.
    """
    from .oracles import oracle  # oracles evaluates through this module

    report = oracle(instance, objective, cap=cap)
    if report.optimum <= to_rational(kappa, "kappa"):
        return True, report.witnesses[0]
    return False, None


def selection_sort_key(instance, selection):
    """Lexicographic key of a selection, used for deterministic tie-breaks."""
    if isinstance(instance, PTPInstance):
        return tuple(sorted(selection))
    return tuple(sorted(instance.edge_key(e) for e in selection))


def sorted_selection(instance, selection) -> Sequence:
    if isinstance(instance, PTPInstance):
        return sorted(selection)
    return sorted(selection, key=instance.edge_key)


__all__ = [
    "INF", "Objective", "PTPInstance", "NTPInstance", "Solution", "to_rational", "format_rational",
    "walking_cost", "walking_costs", "ptp_agent_cost", "ntp_agent_cost", "ntp_costs", "ptp_costs",
    "evaluate", "decision_check", "make_solution", "agent_costs", "canonical_selection",
    "selection_sort_key", "sorted_selection",
]
