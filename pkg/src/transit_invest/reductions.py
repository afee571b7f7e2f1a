"""Hardness gadgets as instance generators, plus the railway (RDP) variant."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import INF, NTPInstance, Objective, PTPInstance, to_rational
from .errors import InapplicableError, InstanceError


@dataclass(frozen=True)
class SetCoverInstance:
    universe: tuple
    subsets: tuple  # tuple of tuples, input order preserved
    rho: int

    def __post_init__(self):
        universe = tuple(self.universe)
        if len(set(universe)) != len(universe):
            raise InstanceError("duplicate items", "universe")
        known = set(universe)
        subsets = []
        for i, sub in enumerate(self.subsets):
            sub = tuple(sub)
            if len(set(sub)) != len(sub):
                raise InstanceError("duplicate items in subset", f"subsets[{i}]")
            if not set(sub) <= known:
                raise InstanceError("subset is not contained in the universe", f"subsets[{i}]")
            subsets.append(sub)
        if isinstance(self.rho, bool) or not isinstance(self.rho, int) or self.rho < 0:
            raise InstanceError("rho must be a non-negative integer", "rho")
        if self.rho > len(subsets):
            raise InstanceError("rho cannot exceed the number of subsets", "rho")
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "subsets", tuple(subsets))

    @property
    def model(self):
        return "setcover"


@dataclass(frozen=True)
class VertexCoverInstance:
    vertices: tuple
    edges: tuple
    rho: int

    def __post_init__(self):
        vertices = tuple(self.vertices)
        if len(set(vertices)) != len(vertices):
            raise InstanceError("duplicate vertices", "vertices")
        known = set(vertices)
        seen = set()
        edges = []
        for i, (u, v) in enumerate(self.edges):
            if u not in known or v not in known:
                raise InstanceError("edge endpoint is not a vertex", f"edges[{i}]")
            if u == v:
                raise InstanceError("self-loops are not allowed", f"edges[{i}]")
            key = frozenset((u, v))
            if key in seen:
                raise InstanceError("parallel edge", f"edges[{i}]")
            seen.add(key)
            edges.append((u, v))
        if isinstance(self.rho, bool) or not isinstance(self.rho, int) or self.rho < 0:
            raise InstanceError("rho must be a non-negative integer", "rho")
        if self.rho > len(vertices):
            raise InstanceError("rho cannot exceed the number of vertices", "rho")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(edges))

    @property
    def model(self):
        return "vertexcover"


def has_set_cover(sc: SetCoverInstance) -> bool:
    """Brute force: do at most ``rho`` subsets cover the universe?"""
    need = set(sc.universe)
    if not need:
        return True
    for k in range(1, sc.rho + 1):
        for combo in itertools.combinations(sc.subsets, k):
            if need <= set().union(*map(set, combo)):
                return True
    return False


def has_vertex_cover(vc: VertexCoverInstance) -> bool:
    """Brute force: do at most ``rho`` vertices touch every edge?"""
    for k in range(vc.rho + 1):
        for combo in itertools.combinations(vc.vertices, k):
            picked = set(combo)
            if all(u in picked or v in picked for u, v in vc.edges):
                return True
    return False


def setcover_to_ntp(sc: SetCoverInstance, alpha):
    """Incidence graph of items and subsets, all hanging off one target ``t``.

    Returns ``(instance, kappa_eg, kappa_ut)`` with ``kappa_eg = 2 alpha``
    and ``kappa_ut = 2 alpha |U|``.  Vertices are named ``x<i>`` for items,
    ``y<j>`` for subsets (input order) and ``t``.
    """
    alpha = to_rational(alpha, "alpha")
    covered = set().union(*map(set, sc.subsets)) if sc.subsets else set()
    stray = [u for u in sc.universe if u not in covered]
    if stray:
        raise InapplicableError(f"items {stray!r} lie in no subset; the graph would be disconnected")
    items = {u: f"x{i}" for i, u in enumerate(sc.universe)}
    vertices = list(items.values()) + [f"y{j}" for j in range(len(sc.subsets))] + ["t"]
    edges = []
    for j, sub in enumerate(sc.subsets):
        for u in sub:
            edges.append((items[u], f"y{j}", 1))
    edges.extend((f"y{j}", "t", 1) for j in range(len(sc.subsets)))
    agents = tuple((items[u], "t") for u in sc.universe)
    instance = NTPInstance(tuple(vertices), tuple(edges), agents, alpha,
                           len(sc.universe) + sc.rho)
    return instance, 2 * alpha, 2 * alpha * len(sc.universe)


def vertexcover_to_ptp(vc: VertexCoverInstance):
    """Line instance with vertex, detour and constraint stops at ``alpha = 0``.

    Returns ``(instance, kappa)`` with ``kappa = 1/10``; vertex ``i`` (input
    order) sits at position ``i + 1``.
    """
    n = len(vc.vertices)
    tenth = Fraction(1, 10)
    pos = {v: Fraction(i + 1) for i, v in enumerate(vc.vertices)}
    end = Fraction(n + 1)
    stops = list(pos.values()) + [p + tenth for p in pos.values()] + [end + tenth]
    edge_agents = [tuple(sorted((pos[u], pos[v]))) for u, v in vc.edges]
    constraint_agents = [(p + tenth, end) for p in pos.values()]
    instance = PTPInstance(tuple(stops), tuple(edge_agents + constraint_agents), 0,
                           n + 1 + vc.rho)
    return instance, tenth


def _pair(u, v):
    return (u, v) if repr(u) <= repr(v) else (v, u)


@dataclass(frozen=True)
class RDPInstance:
    """Railway design: kept edges cost their weight, the rest ``zeta`` times it.

    ``demand`` maps unordered vertex pairs to trip counts; the budget limits
    the total weight of kept edges.
    """

    vertices: tuple
    edges: tuple
    demand: dict
    zeta: object  # Fraction > 1 or INF
    budget: Fraction

    def __post_init__(self):
        base = NTPInstance(tuple(self.vertices), tuple(self.edges), (), 0, 0)
        demand = {}
        for key, value in dict(self.demand).items():
            u, v = tuple(key)
            if u not in base.index or v not in base.index:
                raise InstanceError(f"demand pair {u!r}-{v!r} is not in the graph", "demand")
            if u == v:
                if value:
                    raise InstanceError("demand on the diagonal must be zero", "demand")
                continue
            value = int(value)
            if value < 0:
                raise InstanceError("demand must be non-negative", "demand")
            pair = _pair(u, v)
            if pair in demand and demand[pair] != value:
                raise InstanceError(f"asymmetric demand for {u!r}-{v!r}", "demand")
            if value:
                demand[pair] = value
        zeta = self.zeta if self.zeta == INF else to_rational(self.zeta, "zeta")
        if zeta != INF and zeta <= 1:
            raise InstanceError("zeta must exceed 1", "zeta")
        object.__setattr__(self, "vertices", base.vertices)
        object.__setattr__(self, "edges", base.edges)
        object.__setattr__(self, "demand", demand)
        object.__setattr__(self, "zeta", zeta)
        object.__setattr__(self, "budget", to_rational(self.budget, "budget"))
        object.__setattr__(self, "_graph", base)

    @property
    def model(self):
        return "rdp"

    def tau(self, u, v):
        return self.demand.get(_pair(u, v), 0)

    def edge(self, u, v):
        return self._graph.edge(u, v)

    def weight_of(self, selection):
        return sum((self._graph.weights[self.edge(u, v)] for u, v in selection), Fraction(0))

    def feasible(self, selection):
        return self.weight_of(selection) <= self.budget


def ntp_to_rdp(ntp: NTPInstance) -> RDPInstance:
    """Same graph, agent multiplicities as demand, ``zeta = 1/alpha``, same budget."""
    for u, v, w in ntp.edges:
        if w != 1:
            raise InapplicableError(f"edge {u!r}-{v!r} has weight {w}; conversion needs unit weights")
    demand = {}
    for s, t in ntp.agents:
        if s != t:
            pair = _pair(s, t)
            demand[pair] = demand.get(pair, 0) + 1
    zeta = INF if ntp.alpha == 0 else 1 / ntp.alpha
    return RDPInstance(ntp.vertices, ntp.edges, demand, zeta, Fraction(ntp.beta))


def _rdp_distances(rdp, kept, source):
    zeta = rdp.zeta
    dist = {source: Fraction(0)}
    done = set()
    heap = [(Fraction(0), 0, source)]
    tick = 0
    adj = rdp._graph.adjacency
    while heap:
        d, _, x = heapq.heappop(heap)
        if x in done:
            continue
        done.add(x)
        for y, w in adj[x]:
            e = rdp.edge(x, y)
            if e in kept or w == 0:
                step = w
            else:
                step = INF if zeta == INF else zeta * w
            if step == INF:
                continue
            nd = d + step
            if nd < dist.get(y, INF):
                dist[y] = nd
                tick += 1
                heapq.heappush(heap, (nd, tick, y))
    return dist


def rdp_cost(rdp: RDPInstance, selection, objective=Objective.UTILITARIAN):
    """Demand-weighted travel cost; infinite when a demanded pair is cut off."""
    objective = Objective.parse(objective)
    kept = {rdp.edge(u, v) for u, v in selection}
    cache = {}
    parts = []
    for (u, v), tau in rdp.demand.items():
        if u not in cache:
            cache[u] = _rdp_distances(rdp, kept, u)
        pi = cache[u].get(v, INF)
        parts.append(INF if pi == INF else tau * pi)
    if objective is Objective.EGALITARIAN:
        return max(parts, default=Fraction(0))
    # one term per unordered pair is the halved sum over ordered pairs
    total = Fraction(0)
    for p in parts:
        total = total + p
    return total
