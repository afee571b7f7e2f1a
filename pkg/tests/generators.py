"""Seeded random instance generators shared by the test modules."""

import random
from fractions import Fraction

from transit_invest import NTPInstance, PTPInstance, SetCoverInstance, VertexCoverInstance


def rand_graph(rng: random.Random, nmax=7, emax=10, wmax=10, unit=False):
    """Connected simple graph: a random spanning tree plus extra edges."""
    n = rng.randint(2, nmax)
    vertices = list(range(n))
    order = vertices[:]
    rng.shuffle(order)
    edges = {}
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges[(min(u, v), max(u, v))] = 1 if unit else rng.randint(0, wmax)
    spare = [(u, v) for u in vertices for v in vertices if u < v and (u, v) not in edges]
    extra = rng.randint(0, max(0, min(emax - len(edges), len(spare))))
    for pair in rng.sample(spare, extra):
        edges[pair] = 1 if unit else rng.randint(0, wmax)
    return vertices, [(u, v, w) for (u, v), w in edges.items()]


def rand_ntp(rng, agents=1, alphas=(0, Fraction(1, 4), Fraction(1, 2)), betas=range(4),
             unit=False, **graph):
    vertices, edges = rand_graph(rng, unit=unit, **graph)
    pairs = tuple((rng.choice(vertices), rng.choice(vertices)) for _ in range(agents))
    return NTPInstance(tuple(vertices), tuple(edges), pairs, Fraction(rng.choice(alphas)),
                       rng.choice(list(betas)))


def rand_ptp(rng, mmax=8, nmax=5, bmax=4, alphas=(0, Fraction(1, 2), Fraction(3, 4))):
    grid = [Fraction(k, 2) for k in range(21)]
    stops = sorted(rng.sample(grid, rng.randint(1, mmax)))
    agents = []
    for _ in range(rng.randint(1, nmax)):
        a, b = rng.choice(grid), rng.choice(grid)
        agents.append((min(a, b), max(a, b)))
    return PTPInstance(tuple(stops), tuple(agents), Fraction(rng.choice(alphas)),
                       rng.randint(0, bmax))


def rand_setcover(rng, umax=6, smax=5, rhomax=3, max_edges=16):
    """Every item lies in some subset; incidence plus target edges stay <= max_edges."""
    while True:
        universe = [chr(ord("a") + i) for i in range(rng.randint(1, umax))]
        k = rng.randint(1, smax)
        subsets = [sorted(rng.sample(universe, rng.randint(1, len(universe)))) for _ in range(k)]
        covered = set().union(*map(set, subsets))
        if covered != set(universe):
            continue
        if sum(map(len, subsets)) + k > max_edges:
            continue
        return SetCoverInstance(tuple(universe), tuple(map(tuple, subsets)),
                                rng.randint(0, min(rhomax, k)))


def rand_vertexcover(rng, nmax=5):
    n = rng.randint(1, nmax)
    vertices = list(range(n))
    pairs = [(u, v) for u in vertices for v in vertices if u < v]
    edges = [p for p in pairs if rng.random() < 0.5]
    return VertexCoverInstance(tuple(vertices), tuple(edges), rng.randint(0, n))
