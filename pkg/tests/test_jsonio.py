import json
import random
from fractions import Fraction

import pytest
from conftest import INSTANCES, four_agent_line, six_vertex
from generators import rand_ntp, rand_ptp, rand_setcover, rand_vertexcover

from transit_invest import (INF, InstanceError, NTPInstance, PTPInstance, RDPInstance,
                            SetCoverInstance, VertexCoverInstance, evaluate, ntp_to_rdp)
from transit_invest.jsonio import (emit_instance, instance_id, load_instance, parse_instance,
                                   result_record)

F = Fraction


def test_bundled_files():
    line4 = load_instance(INSTANCES / "four_agent_ptp.json")
    assert isinstance(line4, PTPInstance) and len(line4.agents) == 4 and len(line4.stops) == 7
    assert line4 == four_agent_line()
    graph = load_instance(INSTANCES / "six_vertex_ntp.json")
    assert isinstance(graph, NTPInstance)
    assert len(graph.vertices) == 6 and len(graph.edges) == 6
    assert graph == six_vertex()
    assert isinstance(load_instance(INSTANCES / "four_item_setcover.json"), SetCoverInstance)
    assert isinstance(load_instance(INSTANCES / "triangle_vertexcover.json"), VertexCoverInstance)


def test_decimals_are_exact():
    text = '{"model": "ptp", "stops": [0, 0.1, "3/10"], "agents": [[0.1, 0.3]], ' \
           '"alpha": 0.5, "beta": 2}'
    inst = parse_instance(text)
    assert inst.stops == (0, F(1, 10), F(3, 10))
    assert inst.agents == ((F(1, 10), F(3, 10)),)
    assert inst.alpha == F(1, 2)


@pytest.mark.parametrize("text, field", [
    ('{"model": "ptp", "stops": [0], "agents": [], "alpha": "1", "beta": 1}', "ptp.alpha"),
    ('{"model": "ptp", "stops": [0], "agents": [], "alpha": 0, "beta": 1, "x": 1}', "ptp.x"),
    ('{"model": "ptp", "stops": [0], "agents": [], "alpha": 0}', "ptp.beta"),
    ('{"model": "ptp", "stops": [0], "agents": [[0]], "alpha": 0, "beta": 1}', "ptp.agents[0]"),
    ('{"model": "ptp", "stops": 3, "agents": [], "alpha": 0, "beta": 1}', "ptp.stops"),
    ('{"model": "ptp", "stops": [0], "agents": [], "alpha": 0, "beta": true}', "ptp.beta"),
    ('{"model": "bus"}', "model"),
    ('{"model": "ntp", "vertices": ["a", "b", "c"], "edges": [["a", "b", 1]], "agents": [],'
     ' "alpha": 0, "beta": 0}', "ntp.edges"),
])
def test_diagnostics_name_the_field(text, field):
    with pytest.raises(InstanceError) as info:
        parse_instance(text)
    assert info.value.field == field


def test_alpha_message():
    with pytest.raises(InstanceError, match=r"alpha must lie in \[0,1\)"):
        parse_instance('{"model": "ptp", "stops": [0], "agents": [], "alpha": "1", "beta": 1}')


def test_malformed_input():
    with pytest.raises(InstanceError):
        parse_instance("{not json")
    with pytest.raises(InstanceError):
        parse_instance(b"\xff\xfe")
    with pytest.raises(InstanceError):
        parse_instance("[1, 2]")


def _samples():
    rng = random.Random(71)
    yield four_agent_line()
    yield six_vertex()
    yield ntp_to_rdp(NTPInstance(("a", "b", "c"), (("a", "b", 1), ("b", "c", 1)),
                                 (("a", "c"), ("c", "a")), 0, 1))
    yield RDPInstance(("a", "b"), (("a", "b", F(3, 2)),), {("a", "b"): 2}, F(5, 2), F(1, 3))
    for _ in range(10):
        yield rand_ptp(rng)
        yield rand_ntp(rng, agents=2)
        yield rand_setcover(rng)
        yield rand_vertexcover(rng)


@pytest.mark.parametrize("instance", list(_samples()), ids=lambda i: type(i).__name__)
def test_round_trip(instance):
    text = emit_instance(instance)
    assert parse_instance(text) == instance
    assert parse_instance(text.encode()) == instance
    assert emit_instance(parse_instance(text)) == text


def test_infinite_zeta_round_trip():
    rdp = ntp_to_rdp(NTPInstance(("a", "b"), (("a", "b", 1),), (("a", "b"),), 0, 1))
    assert rdp.zeta == INF
    assert json.loads(emit_instance(rdp))["zeta"] == "inf"
    assert parse_instance(emit_instance(rdp)) == rdp


def test_instance_id_is_content_hash():
    assert instance_id(four_agent_line()) == instance_id(four_agent_line())
    assert instance_id(four_agent_line()) != instance_id(four_agent_line(beta=3))
    assert instance_id(four_agent_line()).startswith("ptp-")


def test_result_record_certifies_costs():
    inst = four_agent_line()
    record = result_record(inst, evaluate(inst, {5, 1}), "manual")
    assert record["cost"] == "23/2" and record["selection"] == ["1", "5"]
    assert record["per_agent_costs"] == ["4", "3", "5/2", "2"]
    assert list(record) == ["instance", "solver", "objective", "cost", "selection",
                            "per_agent_costs", "total", "max", "feasible"]
