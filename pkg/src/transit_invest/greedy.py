"""Bottom-up and top-down greedy discounting, and the motorway family that defeats both."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .core import NTPInstance, Objective, make_solution, ntp_costs, to_rational
from .errors import InstanceError

log = logging.getLogger(__name__)


def _score(instance, selection, objective):
    costs = ntp_costs(instance, selection)
    return objective.aggregate(costs), objective.other.aggregate(costs), costs


def _pick(instance, options):
    # options: (primary, secondary, edge, costs); secondary cost breaks
    # primary ties, then the smallest edge in vertex order
    return min(options, key=lambda o: (o[0], o[1], instance.edge_key(o[2])))


def greedy_up(instance: NTPInstance, objective=Objective.UTILITARIAN, trajectory=None):
    """Add, ``beta`` times, the edge whose discount lowers the cost most.

    If ``trajectory`` is a list, the cost after every step is appended to it
    (starting with the empty selection).
    """
    objective = Objective.parse(objective)
    chosen = set()
    primary, _, costs = _score(instance, chosen, objective)
    if trajectory is not None:
        trajectory.append(primary)
    for _ in range(min(instance.beta, len(instance.edges))):
        options = []
        for e in instance.edge_list:
            if e in chosen:
                continue
            chosen.add(e)
            options.append((*_score(instance, chosen, objective)[:2], e,
                            None))
            chosen.discard(e)
        primary, _, e, _ = _pick(instance, options)
        chosen.add(e)
        if trajectory is not None:
            trajectory.append(primary)
    selection = frozenset(chosen)
    return make_solution(instance, selection, ntp_costs(instance, selection), objective)


def greedy_down(instance: NTPInstance, objective=Objective.UTILITARIAN, trajectory=None):
    """Start from every edge and drop the least harmful one until ``beta`` remain.

    Only agents with a shortest path through the dropped edge are re-solved;
    all others keep their cost exactly.
    """
    objective = Objective.parse(objective)
    warnings = ()
    chosen = set(instance.edge_list)
    if instance.beta >= len(chosen):
        if instance.beta > len(chosen):
            warnings = (f"beta={instance.beta} exceeds the {len(chosen)} edges; returning all",)
            log.warning(warnings[0])
        selection = frozenset(chosen)
        return make_solution(instance, selection, ntp_costs(instance, selection), objective,
                             warnings)
    costs = ntp_costs(instance, chosen)
    if trajectory is not None:
        trajectory.append(objective.aggregate(costs))
    while len(chosen) > instance.beta:
        users = _edge_users(instance, chosen, costs)
        options = []
        for e in instance.edge_list:
            if e not in chosen:
                continue
            affected = users.get(e, ())
            if affected:
                chosen.discard(e)
                fresh = ntp_costs(instance, chosen, [instance.agents[i] for i in affected])
                chosen.add(e)
                trial = list(costs)
                for i, c in zip(affected, fresh):
                    trial[i] = c
            else:
                trial = costs
            options.append((objective.aggregate(trial), objective.other.aggregate(trial), e,
                            tuple(trial)))
        primary, _, e, costs = _pick(instance, options)
        chosen.discard(e)
        if trajectory is not None:
            trajectory.append(primary)
    selection = frozenset(chosen)
    return make_solution(instance, selection, costs, objective, warnings)


def _edge_users(instance, selection, costs):
    """Map each edge to the agents having some shortest path through it."""
    from .core import _dijkstra_int

    denom, adj = instance._scaled
    every = set(instance.vertices)
    users = {}
    for i, (s, t) in enumerate(instance.agents):
        if s == t:
            continue
        ds = _dijkstra_int(adj, s, selection, every)
        dt = _dijkstra_int(adj, t, selection, every)
        target = costs[i] * denom
        for u, v, w in instance.edges:
            e = (u, v)
            cheap = instance.alpha * w * denom if e in selection else w * denom
            if ds[u] + cheap + dt[v] == target or ds[v] + cheap + dt[u] == target:
                users.setdefault(e, []).append(i)
    return users


@dataclass(frozen=True)
class AdversarialParams:
    alpha: Fraction
    beta: int
    epsilons: tuple

    def __post_init__(self):
        alpha = to_rational(self.alpha, "alpha")
        if not 0 <= alpha < 1:
            raise InstanceError("alpha must lie in [0,1)", "alpha")
        if isinstance(self.beta, bool) or not isinstance(self.beta, int) or self.beta < 1:
            raise InstanceError("beta must be a positive integer", "beta")
        eps = tuple(to_rational(x, "epsilons") for x in self.epsilons)
        if len(eps) != self.beta + 1:
            raise InstanceError(f"need beta+1 = {self.beta + 1} epsilons", "epsilons")
        cap = min(Fraction(1), 1 / alpha - 1) if alpha > 0 else Fraction(1)
        if eps[0] <= 0:
            raise InstanceError("epsilon_0 must be positive", "epsilons")
        if any(b <= a for a, b in zip(eps, eps[1:])):
            raise InstanceError("epsilons must be strictly increasing", "epsilons")
        if eps[-1] >= cap:
            raise InstanceError(f"every epsilon must stay below {cap}", "epsilons")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "epsilons", eps)

    @classmethod
    def canonical(cls, alpha, beta):
        """``eps_i = (i+1) c / (beta+2)`` with ``c`` half the admissible bound."""
        alpha = to_rational(alpha, "alpha")
        c = (min(Fraction(1), 1 / alpha - 1) if alpha > 0 else Fraction(1)) / 2
        return cls(alpha, beta, tuple(Fraction(i + 1, beta + 2) * c for i in range(beta + 1)))


@dataclass(frozen=True)
class AdversarialInstance:
    instance: NTPInstance
    greedy_solution: frozenset  # the heavy first edge of agents 1..beta
    motorway_solution: frozenset  # the first beta motorway edges
    params: AdversarialParams


def make_adversarial(params: AdversarialParams) -> AdversarialInstance:
    """Direct routes ``s_i - v_i^1 - ... - v_i^beta - t_i`` plus a shared motorway.

    Every agent can also walk ``s_i - q``, along ``q - q_1 - ... - q_beta - q'``
    and then ``q' - t_i``.
    """
    beta = params.beta
    vertices = []
    edges = []
    for i in range(beta + 1):
        route = [f"s{i}"] + [f"v{i}_{j}" for j in range(1, beta + 1)] + [f"t{i}"]
        vertices.extend(route)
        for j, (a, b) in enumerate(zip(route, route[1:])):
            edges.append((a, b, 1 + params.epsilons[i] if j == 0 else Fraction(1)))
    motorway = ["q"] + [f"q{j}" for j in range(1, beta + 1)] + ["q'"]
    vertices.extend(motorway)
    for i in range(beta + 1):
        edges.append((f"s{i}", "q", Fraction(1)))
        edges.append((f"t{i}", "q'", Fraction(1)))
    for a, b in zip(motorway, motorway[1:]):
        edges.append((a, b, Fraction(1)))
    agents = tuple((f"s{i}", f"t{i}") for i in range(beta + 1))
    instance = NTPInstance(tuple(vertices), tuple(edges), agents, params.alpha, beta)
    heavy = frozenset(instance.edge(f"s{i}", f"v{i}_1") for i in range(1, beta + 1))
    fast = frozenset(instance.edge(a, b) for a, b in zip(motorway[:beta], motorway[1:beta + 1]))
    return AdversarialInstance(instance, heavy, fast, params)


RATIO_FIELDS = ["beta", "alpha", "epsilon_0", "greedy_up_eg", "greedy_down_eg", "greedy_eg",
                "motorway_eg", "ratio", "ratio_bound", "up_is_reference", "down_is_reference"]


def greedy_ratio_rows(alpha, betas, objective=Objective.EGALITARIAN):
    """Greedy versus motorway cost on the canonical family, one row per budget."""
    from .core import evaluate

    objective = Objective.parse(objective)
    rows = []
    for beta in betas:
        params = AdversarialParams.canonical(alpha, beta)
        adv = make_adversarial(params)
        up = greedy_up(adv.instance, objective)
        down = greedy_down(adv.instance, objective)
        reference = evaluate(adv.instance, adv.greedy_solution, objective)
        motorway = evaluate(adv.instance, adv.motorway_solution, objective)
        rows.append({
            "beta": beta,
            "alpha": params.alpha,
            "epsilon_0": params.epsilons[0],
            "greedy_up_eg": up.max,
            "greedy_down_eg": down.max,
            "greedy_eg": reference.max,
            "motorway_eg": motorway.max,
            "ratio": motorway.max / reference.max,
            "ratio_bound": (3 + params.alpha * beta) / beta,
            "up_is_reference": up.selection == adv.greedy_solution,
            "down_is_reference": down.selection == adv.greedy_solution,
        })
    return rows
