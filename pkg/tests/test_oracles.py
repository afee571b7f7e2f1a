import math
import random
from fractions import Fraction

import pytest
from conftest import four_agent_line, six_vertex
from generators import rand_ntp

from transit_invest import (InvalidAgentError, NTPInstance, Objective, PTPInstance, TooLargeError,
                            evaluate, oracle_ntp, oracle_paths, oracle_ptp, setcover_to_ntp,
                            solve_one_agent, walking_cost)
from transit_invest.oracles import oracle_cap, subset_count
from transit_invest.reductions import SetCoverInstance

F = Fraction
EG, UT = Objective.EGALITARIAN, Objective.UTILITARIAN


def test_six_vertex_optimum():
    report = oracle_ntp(six_vertex(), UT)
    assert report.optimum == F(11, 2)
    assert report.explored == 1 + 6 + 15


def test_zero_budget():
    inst = six_vertex(beta=0)
    report = oracle_ntp(inst, EG)
    assert report.optimum == 10 and report.witnesses == (frozenset(),) and report.explored == 1


def test_four_item_setcover():
    sc = SetCoverInstance(("a", "b", "c", "d"), (("a", "b"), ("b", "c"), ("c", "d")), 2)
    inst, kappa_eg, _ = setcover_to_ntp(sc, F(1, 2))
    assert oracle_ntp(inst, EG).optimum == kappa_eg == 1


def test_four_agent():
    assert oracle_ptp(four_agent_line(), UT).optimum == F(23, 2)
    assert oracle_ptp(four_agent_line(), EG).optimum == F(7, 2)


def test_four_agent_utilitarian_witnesses():
    report = oracle_ptp(four_agent_line(), UT)
    assert report.witnesses == (frozenset({1, 4}), frozenset({1, 5}))


def test_single_agent_both_terminals():
    inst = PTPInstance((0, 1), ((0, 1),), 0, 2)
    assert oracle_ptp(inst, EG).optimum == 0


def test_witnesses_all_optimal_and_capped():
    rng = random.Random(51)
    for _ in range(20):
        inst = rand_ntp(rng, agents=2)
        report = oracle_ntp(inst, UT)
        for w in report.witnesses:
            assert evaluate(inst, w, UT).cost == report.optimum
        capped = oracle_ntp(inst, UT, max_witnesses=1)
        assert capped.witnesses == report.witnesses[:1]
        n, k = len(inst.edges), min(inst.beta, len(inst.edges))
        assert report.explored == sum(math.comb(n, i) for i in range(k + 1))


def test_cap_is_a_hard_error(monkeypatch):
    with pytest.raises(TooLargeError):
        oracle_ptp(four_agent_line(), UT, cap=5)
    monkeypatch.setenv("TRANSIT_ORACLE_CAP", "3")
    assert oracle_cap() == 3
    with pytest.raises(TooLargeError):
        oracle_ntp(six_vertex(), UT)
    assert subset_count(6, 2) == 22


def test_paths_examples():
    g = six_vertex()
    assert oracle_paths(g, ("s", "t"), 1) == F(13, 2)
    assert oracle_paths(g, ("s", "t"), 0) == walking_cost(g, ("s", "t"))
    # enough budget to discount a whole path
    assert oracle_paths(g, ("s", "t"), 6) == F(1, 2) * 10


def test_paths_guards():
    with pytest.raises(InvalidAgentError):
        oracle_paths(six_vertex(), ("s", "x"), 1)
    big = NTPInstance(tuple(range(13)), tuple((i, i + 1, 1) for i in range(12)), (), 0, 0)
    with pytest.raises(TooLargeError):
        oracle_paths(big, (0, 12), 1)


def test_single_agent_oracle_matches_solver():
    rng = random.Random(52)
    for _ in range(40):
        inst = rand_ntp(rng)
        assert oracle_ntp(inst, UT).optimum == solve_one_agent(inst).cost
        assert oracle_paths(inst, inst.agents[0], inst.beta) == solve_one_agent(inst).cost
