import io
import random
from fractions import Fraction

import networkx as nx
import pytest
from generators import rand_ntp

from transit_invest import (INF, InvalidVertexError, NTPInstance, budget_dijkstra,
                            budget_mapping, evaluate, reconstruct)
from transit_invest.budget_dijkstra import (TRACE_FIELDS, BudgetMapping, path_cost, trace_rows,
                                            write_trace_csv)

F = Fraction


def test_first_iteration_cells(six):
    table = budget_dijkstra(six, "s", record_trace=True)
    step = table.trace[0]
    assert step.iteration == 1 and step.pivot == ("s", 0)
    cells = {(p.vertex, p.budget): v for p, v, _ in step.updates}
    assert cells == {("v1", 0): 1, ("v1", 1): F(1, 2), ("v2", 0): 5, ("v2", 1): F(5, 2)}


def test_mappings(six):
    table = budget_dijkstra(six, "s")
    assert tuple(budget_mapping(table, "t")) == (10, F(13, 2), F(11, 2))
    assert tuple(budget_mapping(table, "v4")) == (5, 4, 3)
    assert tuple(budget_mapping(table, "s")) == (0, 0, 0)


def test_zero_budget_is_plain_dijkstra():
    rng = random.Random(3)
    for _ in range(30):
        inst = rand_ntp(rng).replace(beta=0)
        g = nx.Graph()
        g.add_weighted_edges_from(inst.edges)
        g.add_nodes_from(inst.vertices)
        source = inst.vertices[0]
        expected = nx.single_source_dijkstra_path_length(g, source)
        table = budget_dijkstra(inst, source)
        for v in inst.vertices:
            assert table.get(v, 0) == expected[v]


def test_reconstruct_examples(six):
    table = budget_dijkstra(six, "s")
    path, discounted = reconstruct(table, "t", 2)
    assert path == [("s", "v1"), ("v1", "v2"), ("v2", "t")]
    assert discounted == {("v1", "v2"), ("v2", "t")}
    assert path_cost(six, path, discounted) == F(11, 2)
    path, discounted = reconstruct(table, "t", 0)
    assert path == [("s", "v1"), ("v1", "v2"), ("v2", "t")] and discounted == set()
    assert reconstruct(table, "s", 0) == ([], set())


def test_unknown_source(six):
    with pytest.raises(InvalidVertexError):
        budget_dijkstra(six, "nowhere")


def test_unknown_target(six):
    with pytest.raises(InvalidVertexError):
        reconstruct(budget_dijkstra(six, "s"), "nowhere", 1)


def test_beta_clamped_to_edge_count():
    inst = NTPInstance(("a", "b"), (("a", "b", 4),), (("a", "b"),), F(1, 2), 5)
    table = budget_dijkstra(inst, "a")
    assert table.beta == 1
    assert table.row("b") == (4, 2, 2, 2, 2, 2)


def test_mapping_invariants():
    mu = BudgetMapping((F(3), F(2), F(2)))
    assert mu.beta == 2 and mu[7] == 2
    with pytest.raises(ValueError):
        BudgetMapping((F(1), F(2)))


def test_properties_on_random_graphs():
    rng = random.Random(11)
    for _ in range(80):
        inst = rand_ntp(rng)
        source = rng.choice(inst.vertices)
        table = budget_dijkstra(inst, source, record_trace=True)
        distances = [d for _, d in table.pivots]
        assert distances == sorted(distances)
        for v in inst.vertices:
            row = table.row(v)
            assert all(b <= a for a, b in zip(row, row[1:]))
            assert row[-1] >= inst.alpha * row[0]
            for b, value in enumerate(row):
                path, discounted = reconstruct(table, v, b)
                assert len(discounted) <= b
                assert path_cost(inst, path, discounted) == value
                if path:
                    one = inst.replace(agents=((source, v),))
                    assert evaluate(one, {inst.edge(*e) for e in discounted}).total <= value


def test_trace_csv(six):
    table = budget_dijkstra(six, "s", record_trace=True)
    rows = trace_rows(six, table)
    buffer = io.StringIO()
    write_trace_csv(rows, buffer)
    lines = buffer.getvalue().splitlines()
    assert lines[0] == ",".join(TRACE_FIELDS)
    last = [r for r in rows if r["iteration"] == rows[-1]["iteration"] and r["vertex"] == "t"]
    assert [r["value"] for r in last] == ["10", "13/2", "11/2"]
    with pytest.raises(ValueError):
        trace_rows(six, budget_dijkstra(six, "s"))


def test_single_run_answers_all_targets(six):
    table = budget_dijkstra(six, "s")
    assert all(table.get(v, b) < INF for v in six.vertices for b in range(3))
