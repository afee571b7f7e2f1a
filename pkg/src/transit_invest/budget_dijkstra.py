"""Shortest paths over routing pairs ``(vertex, budget)``.

A routing pair ``(v, b)`` stands for "at ``v`` having discounted at most
``b`` edges".  One run from a source fills the whole ``dist[v, b]`` table,
so every target and every budget up to ``beta`` is answered at once.
"""

from __future__ import annotations

import csv
import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .core import INF, NTPInstance
from .errors import InstanceError, InvalidVertexError, NoPathError

NON_REDUCING = "non-reducing"
REDUCING = "reducing"
BUDGET_INCREASING = "budget-increasing"


class RoutingPair(NamedTuple):
    vertex: object
    budget: int


@dataclass(frozen=True)
class BudgetMapping:
    """Optimal source-target cost as a function of the budget, ``values[b]``."""

    values: tuple

    def __post_init__(self):
        values = tuple(self.values)
        if any(b > a for a, b in zip(values, values[1:])):
            raise InstanceError("a budget mapping must be non-increasing", "values")
        object.__setattr__(self, "values", values)

    @property
    def beta(self):
        return len(self.values) - 1

    def __getitem__(self, b):
        return self.values[min(b, self.beta)]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def scaled(self, factor):
        return BudgetMapping(tuple(factor * v for v in self.values))


@dataclass
class TraceStep:
    """One extraction: the pivot pair and the cells it changed."""

    iteration: int
    pivot: RoutingPair
    distance: Fraction
    updates: list = field(default_factory=list)  # (RoutingPair, new value, kind)


@dataclass
class BudgetTable:
    source: object
    vertices: tuple
    beta: int
    requested_beta: int
    dist: dict
    pred: dict
    pivots: list
    trace: list | None = None

    def get(self, vertex, budget):
        if vertex not in self._known:
            raise InvalidVertexError(f"{vertex!r} is not a vertex")
        if vertex == self.source:
            return Fraction(0)
        return self.dist.get((vertex, min(budget, self.beta)), INF)

    @property
    def _known(self):
        return set(self.vertices)

    def row(self, vertex):
        return tuple(self.get(vertex, b) for b in range(self.requested_beta + 1))


def budget_dijkstra(instance: NTPInstance, source, beta=None, record_trace=False):
    """Fill ``dist[v, b]`` for every routing pair reachable from ``(source, 0)``.

    ``beta`` defaults to the instance budget and is clamped to the number of
    edges.  Extraction order is by distance, then budget, then vertex order.
    """
    if source not in instance.index:
        raise InvalidVertexError(f"source {source!r} is not a vertex")
    requested = instance.beta if beta is None else beta
    limit = min(requested, len(instance.edges))
    alpha = instance.alpha
    order = instance.index
    adj = instance.adjacency

    dist = {(source, 0): Fraction(0)}
    pred = {}
    done = set()
    pivots = []
    trace = [] if record_trace else None
    heap = [(Fraction(0), 0, order[source], source)]

    def relax(pair, value, origin, discounted, kind, step):
        if value < dist.get(pair, INF):
            dist[pair] = value
            pred[pair] = (origin, discounted)
            heapq.heappush(heap, (value, pair[1], order[pair[0]], pair[0]))
            if step is not None:
                step.updates.append((RoutingPair(*pair), value, kind))

    while heap:
        d, b, _, v = heapq.heappop(heap)
        if (v, b) in done or d > dist[(v, b)]:
            continue
        done.add((v, b))
        pivot = RoutingPair(v, b)
        pivots.append((pivot, d))
        step = TraceStep(len(pivots), pivot, d) if record_trace else None
        for u, w in adj[v]:
            if u == source:
                continue
            relax((u, b), d + w, pivot, False, NON_REDUCING, step)
            if b < limit:
                relax((u, b + 1), d + alpha * w, pivot, True, REDUCING, step)
        if v != source and b < limit:
            relax((v, b + 1), d, pivot, None, BUDGET_INCREASING, step)
        if step is not None:
            trace.append(step)

    return BudgetTable(source, instance.vertices, limit, requested, dist, pred, pivots, trace)


def budget_mapping(table: BudgetTable, target) -> BudgetMapping:
    """``mu(b) = dist[target, b]`` for ``b = 0..beta``; all zeros at the source."""
    if target not in table._known:
        raise InvalidVertexError(f"target {target!r} is not a vertex")
    return BudgetMapping(table.row(target))


def reconstruct(table: BudgetTable, target, budget):
    """Recover a path achieving ``dist[target, budget]``.

    Returns ``(path, discounted)``: the edge sequence from the source (each
    edge as a ``(from, to)`` pair in travel order) and the set of edges
    discounted along it.
    """
    if target not in table._known:
        raise InvalidVertexError(f"target {target!r} is not a vertex")
    if target == table.source:
        return [], set()
    pair = (target, min(budget, table.beta))
    if pair not in table.dist:
        raise NoPathError(f"no path to {target!r} within budget {budget}")
    path = []
    discounted = set()
    while pair != (table.source, 0):
        origin, flag = table.pred[pair]
        if flag is not None:
            step = (origin.vertex, pair[0])
            path.append(step)
            if flag:
                discounted.add(step)
        pair = (origin.vertex, origin.budget)
    path.reverse()
    return path, discounted


def path_cost(instance: NTPInstance, path, discounted):
    """Cost of ``path`` when exactly the edges in ``discounted`` are reduced."""
    cut = {instance.edge(u, v) for u, v in discounted}
    total = Fraction(0)
    for u, v in path:
        e = instance.edge(u, v)
        w = instance.weights[e]
        total += instance.alpha * w if e in cut else w
    return total


TRACE_FIELDS = ["iteration", "pivot_vertex", "pivot_budget", "vertex", "budget", "value", "changed"]


def trace_rows(instance: NTPInstance, table: BudgetTable, include_source=False):
    """Snapshot rows : one row per cell per iteration.

    ``value`` is empty for infinite cells, ``changed`` marks cells updated by
    the pivot of that iteration.
    """
    if table.trace is None:
        raise ValueError("table was computed without record_trace=True")
    current = {}
    rows = []
    vertices = [v for v in instance.vertices if include_source or v != table.source]
    for step in table.trace:
        changed = set()
        for pair, value, _ in step.updates:
            current[(pair.vertex, pair.budget)] = value
            changed.add((pair.vertex, pair.budget))
        for v in vertices:
            for b in range(table.beta + 1):
                value = current.get((v, b))
                rows.append({
                    "iteration": step.iteration,
                    "pivot_vertex": step.pivot.vertex,
                    "pivot_budget": step.pivot.budget,
                    "vertex": v,
                    "budget": b,
                    "value": "" if value is None else str(value),
                    "changed": int((v, b) in changed),
                })
    return rows


def write_trace_csv(rows, stream):
    writer = csv.DictWriter(stream, fieldnames=TRACE_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
