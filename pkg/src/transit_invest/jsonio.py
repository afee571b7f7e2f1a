"""JSON instance files and result records.

Rationals are written as exact strings (``"1/2"``, ``"7"``); on input,
integers, ``"p/q"`` strings and decimals are all read exactly.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .core import (INF, NTPInstance, Objective, PTPInstance, Solution, agent_costs,
                   format_rational, sorted_selection, to_rational)
from .errors import InstanceError
from .reductions import RDPInstance, SetCoverInstance, VertexCoverInstance

FIELDS = {
    "ptp": ("stops", "agents", "alpha", "beta"),
    "ntp": ("vertices", "edges", "agents", "alpha", "beta"),
    "rdp": ("vertices", "edges", "demand", "zeta", "budget"),
    "setcover": ("universe", "subsets", "rho"),
    "vertexcover": ("vertices", "edges", "rho"),
}
OPTIONAL = ("id",)


def _load_json(data):
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InstanceError(f"input is not UTF-8: {exc}") from exc
    try:
        return json.loads(data, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed JSON: {exc}") from exc


def _vertex(value, where):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise InstanceError("vertex ids must be strings or integers", where)
    return value


def _list(payload, key, model):
    value = payload[key]
    if not isinstance(value, list):
        raise InstanceError("expected a list", f"{model}.{key}")
    return value


def _int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceError("expected an integer", where)
    return value


def _pairs(items, where, convert):
    out = []
    for i, item in enumerate(items):
        if not isinstance(item, list) or len(item) != 2:
            raise InstanceError("expected a pair", f"{where}[{i}]")
        out.append((convert(item[0], f"{where}[{i}][0]"), convert(item[1], f"{where}[{i}][1]")))
    return out


def _triples(items, where):
    out = []
    for i, item in enumerate(items):
        if not isinstance(item, list) or len(item) != 3:
            raise InstanceError("expected a triple [u, v, value]", f"{where}[{i}]")
        out.append((_vertex(item[0], f"{where}[{i}][0]"), _vertex(item[1], f"{where}[{i}][1]"),
                    item[2]))
    return out


def from_dict(payload):
    """Build a domain instance from decoded JSON, naming the offending field on error."""
    try:
        return _build(payload)
    except InstanceError as exc:
        model = payload.get("model") if isinstance(payload, dict) else None
        if exc.field and model and not exc.field.startswith(f"{model}.") and exc.field != "model":
            message = str(exc)[len(exc.field) + 2:]
            raise InstanceError(message, f"{model}.{exc.field}") from None
        raise


def _build(payload):
    if not isinstance(payload, dict):
        raise InstanceError("top level must be a JSON object")
    model = payload.get("model")
    if model not in FIELDS:
        raise InstanceError(f"unknown model {model!r}; expected one of {sorted(FIELDS)}", "model")
    expected = FIELDS[model]
    extra = sorted(set(payload) - set(expected) - {"model", *OPTIONAL})
    if extra:
        raise InstanceError(f"unknown field(s) {extra}", f"{model}.{extra[0]}")
    missing = [k for k in expected if k not in payload]
    if missing:
        raise InstanceError("missing field", f"{model}.{missing[0]}")

    if model == "ptp":
        return PTPInstance(
            stops=tuple(to_rational(x, f"ptp.stops[{i}]")
                        for i, x in enumerate(_list(payload, "stops", model))),
            agents=tuple(_pairs(_list(payload, "agents", model), "ptp.agents", to_rational)),
            alpha=payload["alpha"],
            beta=_int(payload["beta"], "ptp.beta"),
        )
    if model == "ntp":
        vertices = tuple(_vertex(v, f"ntp.vertices[{i}]")
                         for i, v in enumerate(_list(payload, "vertices", model)))
        return NTPInstance(
            vertices=vertices,
            edges=tuple(_triples(_list(payload, "edges", model), "ntp.edges")),
            agents=tuple(_pairs(_list(payload, "agents", model), "ntp.agents", _vertex)),
            alpha=payload["alpha"],
            beta=_int(payload["beta"], "ntp.beta"),
        )
    if model == "rdp":
        zeta = payload["zeta"]
        if isinstance(zeta, str) and zeta.strip().lower() in ("inf", "infinity"):
            zeta = INF
        demand = {}
        for u, v, d in _triples(_list(payload, "demand", model), "rdp.demand"):
            demand[(u, v)] = _int(d, "rdp.demand")
        return RDPInstance(
            vertices=tuple(_vertex(v, f"rdp.vertices[{i}]")
                           for i, v in enumerate(_list(payload, "vertices", model))),
            edges=tuple(_triples(_list(payload, "edges", model), "rdp.edges")),
            demand=demand,
            zeta=zeta,
            budget=payload["budget"],
        )
    if model == "setcover":
        subsets = []
        for i, sub in enumerate(_list(payload, "subsets", model)):
            if not isinstance(sub, list):
                raise InstanceError("expected a list of items", f"setcover.subsets[{i}]")
            subsets.append(tuple(_vertex(x, f"setcover.subsets[{i}]") for x in sub))
        return SetCoverInstance(
            universe=tuple(_vertex(x, "setcover.universe")
                           for x in _list(payload, "universe", model)),
            subsets=tuple(subsets),
            rho=_int(payload["rho"], "setcover.rho"),
        )
    return VertexCoverInstance(
        vertices=tuple(_vertex(v, "vertexcover.vertices")
                       for v in _list(payload, "vertices", model)),
        edges=tuple(_pairs(_list(payload, "edges", model), "vertexcover.edges", _vertex)),
        rho=_int(payload["rho"], "vertexcover.rho"),
    )


def parse_instance(data):
    """Parse UTF-8 JSON (``bytes`` or ``str``) into a validated instance."""
    return from_dict(_load_json(data))


def load_instance(path):
    with open(path, "rb") as fh:
        return parse_instance(fh.read())


def to_dict(instance):
    r = format_rational
    if isinstance(instance, PTPInstance):
        return {"model": "ptp", "stops": [r(x) for x in instance.stops],
                "agents": [[r(s), r(t)] for s, t in instance.agents],
                "alpha": r(instance.alpha), "beta": instance.beta}
    if isinstance(instance, NTPInstance):
        return {"model": "ntp", "vertices": list(instance.vertices),
                "edges": [[u, v, r(w)] for u, v, w in instance.edges],
                "agents": [[s, t] for s, t in instance.agents],
                "alpha": r(instance.alpha), "beta": instance.beta}
    if isinstance(instance, RDPInstance):
        return {"model": "rdp", "vertices": list(instance.vertices),
                "edges": [[u, v, r(w)] for u, v, w in instance.edges],
                "demand": [[u, v, d] for (u, v), d in sorted(instance.demand.items(),
                                                               key=lambda kv: repr(kv[0]))],
                "zeta": r(instance.zeta), "budget": r(instance.budget)}
    if isinstance(instance, SetCoverInstance):
        return {"model": "setcover", "universe": list(instance.universe),
                "subsets": [list(s) for s in instance.subsets], "rho": instance.rho}
    if isinstance(instance, VertexCoverInstance):
        return {"model": "vertexcover", "vertices": list(instance.vertices),
                "edges": [[u, v] for u, v in instance.edges], "rho": instance.rho}
    raise TypeError(f"cannot serialise {type(instance).__name__}")


def dumps(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def emit_instance(instance):
    return dumps(to_dict(instance))


def instance_id(instance):
    digest = hashlib.sha256(json.dumps(to_dict(instance), sort_keys=True).encode()).hexdigest()
    return f"{to_dict(instance)['model']}-{digest[:12]}"


def selection_to_json(instance, selection):
    ordered = sorted_selection(instance, selection)
    if isinstance(instance, PTPInstance):
        return [format_rational(x) for x in ordered]
    return [[u, v] for u, v in ordered]


def result_record(instance, solution: Solution, solver, objective=None, instance_name=None):
    """Self-certifying record: the cost is recomputed from the selection."""
    objective = solution.objective if objective is None else Objective.parse(objective)
    costs = agent_costs(instance, solution.selection)
    if tuple(costs) != tuple(solution.per_agent_costs):
        raise AssertionError(f"{solver} reported costs that do not re-evaluate")
    record = {
        "instance": instance_name or instance_id(instance),
        "solver": solver,
        "objective": objective.value,
        "cost": format_rational(solution.cost_for(objective)),
        "selection": selection_to_json(instance, solution.selection),
        "per_agent_costs": [format_rational(c) for c in costs],
        "total": format_rational(solution.total),
        "max": format_rational(solution.max),
        "feasible": solution.feasible,
    }
    if solution.warnings:
        record["warnings"] = list(solution.warnings)
    return record
