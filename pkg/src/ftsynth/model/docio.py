"""Versioned JSON documents for timed systems, fault models and template pools.

Rationals are written as ints or strings ("99.5", "5/4"); float literals are
rejected to keep every run exactly reproducible.
"""

import json
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ParseError
from ..expr import Expr, parse_guard
from ..rational import rat_str, to_rational
from .core import (
    Assign,
    FaultEntry,
    FaultModel,
    Network,
    NullOp,
    Process,
    Receive,
    Send,
    TimedAction,
    TimedSystem,
    VarDecl,
)

FORMAT_SYSTEM = "timed-system"
FORMAT_TEMPLATES = "ft-templates"


@dataclass
class ModelDoc:
    system: TimedSystem
    faults: FaultModel
    goal: Expr | None
    can_profile: dict | None


@dataclass(frozen=True)
class SlotSpec:
    """One requested repair slot: a gap in a process plus candidate patterns."""

    process: str
    between: tuple[int, int]
    candidates: tuple[tuple[object, Fraction], ...]  # (pattern, wcet)


def _require(mapping, key, where):
    if key not in mapping:
        raise ParseError(f"{where}: missing required key {key!r}")
    return mapping[key]


def _parse_vars(raw, where):
    out = []
    for name, spec in (raw or {}).items():
        if isinstance(spec, int) and not isinstance(spec, bool):
            out.append(VarDecl(name=name, init=spec))
        elif isinstance(spec, dict):
            lo, hi = spec.get("range", [0, 1])
            out.append(VarDecl(name=name, init=int(spec.get("init", 0)), lo=int(lo), hi=int(hi)))
        else:
            raise ParseError(f"{where}: bad variable spec for {name!r}")
    return tuple(out)


def parse_pattern(raw, where, process_names=None):
    kind = _require(raw, "kind", where)
    guard = parse_guard(raw.get("guard"))
    if kind == "assign":
        return Assign(target=_require(raw, "target", where), expr=Expr(str(_require(raw, "expr", where))), guard=guard)
    if kind == "receive":
        return Receive(var=_require(raw, "var", where), guard=guard)
    if kind == "nullop":
        return NullOp(guard=guard)
    if kind == "send":
        dest = _require(raw, "dest", where)
        if isinstance(dest, str):
            if not process_names or dest not in process_names:
                raise ParseError(f"{where}: unknown destination process {dest!r}")
            dest = process_names.index(dest) + 1
        return Send(
            network=int(_require(raw, "network", where)),
            index=int(_require(raw, "msg", where)),
            dest=int(dest),
            remote_var=_require(raw, "var", where),
            content=_require(raw, "content", where),
            guard=guard,
        )
    raise ParseError(f"{where}: unknown action kind {kind!r}")


def _parse_action(raw, position, where, process_names):
    pattern = parse_pattern(raw, where, process_names)
    index = to_rational(raw.get("index", position), f"{where} index")
    return TimedAction(
        index=index,
        pattern=pattern,
        release=to_rational(_require(raw, "release", where), f"{where} release"),
        deadline=to_rational(_require(raw, "deadline", where), f"{where} deadline"),
    )


def model_from_doc(doc) -> ModelDoc:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"not valid JSON: {exc}") from exc
    if doc.get("format") != FORMAT_SYSTEM:
        raise ParseError(f'expected document format "{FORMAT_SYSTEM}"')
    if int(doc.get("version", 0)) != 1:
        raise ParseError("unsupported document version")

    process_names = [p.get("name", f"P{i+1}") for i, p in enumerate(doc.get("processes", []))]
    processes = []
    for pi, raw in enumerate(doc.get("processes", [])):
        name = process_names[pi]
        actions = tuple(
            _parse_action(a, k + 1, f"process {name} action {k + 1}", process_names)
            for k, a in enumerate(raw.get("actions", []))
        )
        processes.append(
            Process(
                name=name,
                variables=_parse_vars(raw.get("variables"), f"process {name}"),
                env_variables=_parse_vars(raw.get("env_variables"), f"process {name}"),
                actions=actions,
            )
        )

    networks = []
    for ni, raw in enumerate(doc.get("networks", []), start=1):
        count = int(_require(raw, "message_count", f"network {ni}"))
        wcmtt = tuple(
            (int(k), to_rational(v, f"network {ni} wcmtt[{k}]"))
            for k, v in _require(raw, "wcmtt", f"network {ni}").items()
        )
        best = tuple(
            (int(k), to_rational(v, f"network {ni} best_case[{k}]"))
            for k, v in raw.get("best_case", {}).items()
        )
        networks.append(Network(message_count=count, wcmtt=wcmtt, best_case=best))

    entries = []
    for raw in doc.get("faults", []):
        effect = raw.get("effect", {})
        entries.append(
            FaultEntry(
                fault_type=_require(raw, "type", "fault"),
                max_per_period=int(raw.get("max_per_period", 1)),
                component=effect.get("component", "network"),
                network=int(effect.get("network", 1)),
                kind=effect.get("kind", "message_loss"),
            )
        )

    goal = Expr(doc["goal"]) if doc.get("goal") else None
    system = TimedSystem(
        period=to_rational(_require(doc, "period", "document"), "period"),
        processes=tuple(processes),
        networks=tuple(networks),
    )
    return ModelDoc(system=system, faults=FaultModel(tuple(entries)), goal=goal, can_profile=doc.get("can_profile"))


def pattern_to_doc(pattern, system=None):
    guard = {} if pattern.guard.text == "1" else {"guard": pattern.guard.text}
    if isinstance(pattern, Assign):
        return {"kind": "assign", "target": pattern.target, "expr": pattern.expr.text, **guard}
    if isinstance(pattern, Receive):
        return {"kind": "receive", "var": pattern.var, **guard}
    if isinstance(pattern, NullOp):
        return {"kind": "nullop", **guard}
    dest = pattern.dest if system is None else system.process(pattern.dest).name
    return {
        "kind": "send",
        "network": pattern.network,
        "msg": pattern.index,
        "dest": dest,
        "var": pattern.remote_var,
        "content": pattern.content,
        **guard,
    }


def _rat_doc(q):
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else rat_str(q)


def _vars_to_doc(decls):
    return {v.name: {"init": v.init, "range": [v.lo, v.hi]} for v in decls}


def model_to_doc(system: TimedSystem, faults: FaultModel = FaultModel(), goal: Expr | None = None, can_profile=None):
    doc = {
        "format": FORMAT_SYSTEM,
        "version": 1,
        "period": _rat_doc(system.period),
        "processes": [
            {
                "name": p.name,
                "variables": _vars_to_doc(p.variables),
                "env_variables": _vars_to_doc(p.env_variables),
                "actions": [
                    {
                        **pattern_to_doc(a.pattern, system),
                        "index": _rat_doc(a.index),
                        "release": _rat_doc(a.release),
                        "deadline": _rat_doc(a.deadline),
                    }
                    for a in p.actions
                ],
            }
            for p in system.processes
        ],
        "networks": [
            {
                "message_count": n.message_count,
                "wcmtt": {str(i): _rat_doc(v) for i, v in n.wcmtt},
                **({"best_case": {str(i): _rat_doc(v) for i, v in n.best_case}} if n.best_case else {}),
            }
            for n in system.networks
        ],
    }
    if faults.entries:
        doc["faults"] = [
            {
                "type": e.fault_type,
                "max_per_period": e.max_per_period,
                "effect": {"component": e.component, "network": e.network, "kind": e.kind},
            }
            for e in faults.entries
        ]
    if goal is not None:
        doc["goal"] = goal.text
    if can_profile is not None:
        doc["can_profile"] = can_profile
    return doc


def dump_model(system, faults=FaultModel(), goal=None, can_profile=None):
    return json.dumps(model_to_doc(system, faults, goal, can_profile), indent=2, sort_keys=False) + "\n"


def templates_from_doc(doc, process_names) -> list[SlotSpec]:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"not valid JSON: {exc}") from exc
    if doc.get("format") != FORMAT_TEMPLATES:
        raise ParseError(f'expected document format "{FORMAT_TEMPLATES}"')
    if int(doc.get("version", 0)) != 1:
        raise ParseError("unsupported document version")
    out = []
    for i, raw in enumerate(doc.get("templates", []), start=1):
        where = f"template {i}"
        process = _require(raw, "process", where)
        between = _require(raw, "between", where)
        if len(between) != 2:
            raise ParseError(f"{where}: 'between' must be [c, d]")
        candidates = tuple(
            (
                parse_pattern(_require(c, "pattern", where), where, process_names),
                to_rational(c.get("wcet", 1), f"{where} wcet"),
            )
            for c in _require(raw, "candidates", where)
        )
        out.append(SlotSpec(process=process, between=(int(between[0]), int(between[1])), candidates=candidates))
    return out
