"""Solvers for bus-stop placement on a line.

The utilitarian solver is a dynamic program over opened stops.  An agent
only ever boards at an opened stop next to its origin and alights at one
next to its destination, so its cost splits into pieces that each depend
on a single pair of consecutive opened stops ``h < k``.  Summing those
pieces over agents gives a gap cost ``C(h, k)``, and the total cost of a
stop set is the sum of its gap costs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Objective, PTPInstance, make_solution, ptp_costs
from .errors import InapplicableError


@dataclass(frozen=True)
class TerminalSet:
    positions: tuple


def terminal_set(instance: PTPInstance) -> TerminalSet:
    points = {x for pair in instance.agents for x in pair}
    return TerminalSet(tuple(sorted(points)))


def restrict_to_terminals(instance: PTPInstance) -> PTPInstance:
    """Keep only agent terminals as candidate stops.

    This preserves the utilitarian optimum but not the egalitarian one.
    """
    terminals = terminal_set(instance).positions
    missing = set(terminals) - set(instance.stops)
    if missing:
        raise InapplicableError(
            f"terminals {sorted(str(x) for x in missing)} are not candidate stops")
    return instance.replace(stops=terminals)


def _gap_cost(instance, h, k):
    """Summed agent cost attributable to the stretch between opened stops h and k.

    ``h is None`` means no stop to the left, ``k is None`` none to the right.
    """
    alpha = instance.alpha
    total = Fraction(0)
    for s, t in instance.agents:
        if s == t:
            continue
        s_here = (h is None or h <= s) and (k is None or s < k)
        t_here = (h is None or h < t) and (k is None or t <= k)
        if s_here and t_here:
            walk = t - s
            if h is None or k is None:
                total += walk
            else:
                total += min(walk, (s - h) + alpha * (k - h) + (k - t))
        elif s_here:
            # ride leaves this gap at k
            total += (k - s) if h is None else min(s - h + alpha * (k - h), k - s)
        elif t_here:
            # ride enters this gap at h
            total += (t - h) if k is None else min(t - h, alpha * (k - h) + k - t)
        elif h is not None and k is not None and s < h and t > k:
            total += alpha * (k - h)
    return total


def gap_costs(instance: PTPInstance):
    """Return ``(first, inner, last)`` gap-cost tables over stop indices."""
    stops = instance.stops
    m = len(stops)
    first = [_gap_cost(instance, None, stops[i]) for i in range(m)]
    last = [_gap_cost(instance, stops[i], None) for i in range(m)]
    inner = {(i, j): _gap_cost(instance, stops[i], stops[j])
             for i in range(m) for j in range(i + 1, m)}
    return first, inner, last


def ptp_utilitarian_dp(instance: PTPInstance):
    """Optimal utilitarian stop set (lexicographically smallest among optima)."""
    stops = instance.stops
    m = len(stops)
    beta = min(instance.beta, m)
    walking = sum((t - s for s, t in instance.agents), Fraction(0))
    if beta == 0 or m == 0:
        return make_solution(instance, frozenset(), ptp_costs(instance, ()), Objective.UTILITARIAN)
    first, inner, last = gap_costs(instance)

    # suffix[c][i]: cheapest cost of the gaps from stop i rightwards when i is
    # open and at most c further stops may be opened after it
    suffix = [[last[i] for i in range(m)]]
    for c in range(1, beta):
        row = []
        prev = suffix[c - 1]
        for i in range(m):
            best = last[i]
            for j in range(i + 1, m):
                v = inner[(i, j)] + prev[j]
                if v < best:
                    best = v
            row.append(best)
        suffix.append(row)

    optimum = walking
    for i in range(m):
        optimum = min(optimum, first[i] + suffix[beta - 1][i])

    chosen = []
    if optimum != walking:
        i = next(i for i in range(m) if first[i] + suffix[beta - 1][i] == optimum)
        chosen.append(i)
        need = optimum - first[i]
        c = beta - 1
        while need != last[i]:
            j = next(j for j in range(i + 1, m) if inner[(i, j)] + suffix[c - 1][j] == need)
            need -= inner[(i, j)]
            chosen.append(j)
            i, c = j, c - 1
    selection = frozenset(stops[i] for i in chosen)
    costs = ptp_costs(instance, selection)
    return make_solution(instance, selection, costs, Objective.UTILITARIAN)


def ptp_egalitarian_exact(instance: PTPInstance):
    """Optimal egalitarian stop set by exhaustive search.

    Subsets are visited depth-first in lexicographic order; the search stops
    once the incumbent reaches the lower bound ``alpha * max walking cost``,
    so the first optimum found is the lexicographically smallest.
    """
    stops = instance.stops
    beta = min(instance.beta, len(stops))
    walks = [t - s for s, t in instance.agents]
    bound = instance.alpha * max(walks, default=Fraction(0))
    best_value = max(walks, default=Fraction(0))
    best = ()
    explored = 0

    def visit(prefix, start):
        nonlocal best_value, best, explored
        if best_value <= bound:
            return True
        for i in range(start, len(stops)):
            chosen = prefix + (stops[i],)
            explored += 1
            value = max(ptp_costs(instance, chosen), default=Fraction(0))
            if value < best_value:
                best_value, best = value, chosen
                if best_value <= bound:
                    return True
            if len(chosen) < beta and visit(chosen, i + 1):
                return True
        return False

    visit((), 0)
    selection = frozenset(best)
    return make_solution(instance, selection, ptp_costs(instance, selection),
                         Objective.EGALITARIAN)


def solve_ptp(instance: PTPInstance, objective=Objective.UTILITARIAN):
    objective = Objective.parse(objective)
    if objective is Objective.UTILITARIAN:
        return ptp_utilitarian_dp(instance)
    return ptp_egalitarian_exact(instance)
