"""JSON document form of abstracted (PC-window) systems.

The synthesis pipeline emits the synthesized abstraction in this format so
the timing stage can be re-run standalone on it.
"""

import json

from ..errors import ParseError
from ..model.docio import _parse_vars, _vars_to_doc, parse_pattern, pattern_to_doc
from ..rational import rat_str, to_rational
from .bounds import PcAction, PcBox, PcNetwork, PcProcess, PcSystem

FORMAT_PC = "pc-system"


def _box_to_doc(box: PcBox):
    return {"lo": [rat_str(x) for x in box.lo], "up": [rat_str(x) for x in box.up]}


def _box_from_doc(raw, where):
    lo = tuple(to_rational(x, f"{where} lo") for x in raw["lo"])
    up = tuple(to_rational(x, f"{where} up") for x in raw["up"])
    return PcBox(lo, up)


def pc_system_to_doc(pc_system: PcSystem, system=None):
    return {
        "format": FORMAT_PC,
        "version": 1,
        "processes": [
            {
                "name": p.name,
                "variables": _vars_to_doc(p.variables),
                "env_variables": _vars_to_doc(p.env_variables),
                "actions": [
                    {
                        "index": rat_str(a.index),
                        "box": _box_to_doc(a.box),
                        **(
                            {
                                "candidates": [
                                    {"pattern": pattern_to_doc(pat, system), "wcet": rat_str(w)}
                                    for pat, w in a.candidates
                                ]
                            }
                            if a.is_slot
                            else {}
                        ),
                        **({"pattern": pattern_to_doc(a.pattern, system)} if a.pattern is not None else {}),
                        **({"chosen": [rat_str(x) for x in a.chosen]} if a.chosen is not None else {}),
                    }
                    for a in p.actions
                ],
            }
            for p in pc_system.processes
        ],
        "networks": [
            {
                "message_count": n.message_count,
                "boxes": {str(i): _box_to_doc(b) for i, b in n.boxes},
            }
            for n in pc_system.networks
        ],
    }


def dump_pc_system(pc_system, system=None):
    return json.dumps(pc_system_to_doc(pc_system, system), indent=2) + "\n"


def pc_system_from_doc(doc) -> PcSystem:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"not valid JSON: {exc}") from exc
    if doc.get("format") != FORMAT_PC:
        raise ParseError(f'expected document format "{FORMAT_PC}"')
    process_names = [p.get("name", f"P{i+1}") for i, p in enumerate(doc.get("processes", []))]
    processes = []
    for pi, raw in enumerate(doc.get("processes", [])):
        name = process_names[pi]
        actions = []
        for k, araw in enumerate(raw.get("actions", []), start=1):
            where = f"process {name} action {k}"
            pattern = (
                parse_pattern(araw["pattern"], where, process_names) if "pattern" in araw else None
            )
            candidates = tuple(
                (parse_pattern(c["pattern"], where, process_names), to_rational(c.get("wcet", 1), where))
                for c in araw.get("candidates", [])
            )
            chosen = (
                tuple(to_rational(x, where) for x in araw["chosen"]) if "chosen" in araw else None
            )
            actions.append(
                PcAction(
                    index=to_rational(araw["index"], where),
                    box=_box_from_doc(araw["box"], where),
                    pattern=pattern,
                    candidates=candidates,
                    chosen=chosen,
                )
            )
        processes.append(
            PcProcess(
                name=name,
                variables=_parse_vars(raw.get("variables"), name),
                env_variables=_parse_vars(raw.get("env_variables"), name),
                actions=tuple(actions),
            )
        )
    networks = []
    for ni, raw in enumerate(doc.get("networks", []), start=1):
        boxes = tuple(
            (int(i), _box_from_doc(b, f"network {ni}")) for i, b in raw.get("boxes", {}).items()
        )
        networks.append(PcNetwork(message_count=int(raw["message_count"]), boxes=boxes))
    return PcSystem(processes=tuple(processes), networks=tuple(networks))
