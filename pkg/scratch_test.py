import json
from fractions import Fraction

from ftsynth.model.docio import model_from_doc, templates_from_doc
from ftsynth.model.core import validate
from ftsynth.translate.bounds import compute_pc_bounds, to_pc_system
from ftsynth.translate.slots import insert_slots
from ftsynth.translate.build import build_game
from ftsynth.game.expand import expand_game
from ftsynth.solver.search import forward_search
from ftsynth.timing.canbus import check_can_conditions, profile_from_parts

MODEL = {
    "format": "timed-system",
    "version": 1,
    "period": 100,
    "processes": [
        {
            "name": "A",
            "variables": {"m": 0, "out": 0, "req": 0, "req_v": 0, "rsp": 0},
            "env_variables": {"v": {"init": 1, "range": [0, 1]}},
            "actions": [
                {"kind": "assign", "target": "m", "expr": "v", "release": 0, "deadline": 40},
                {"kind": "send", "network": 1, "msg": 1, "dest": "B", "var": "m",
                 "content": "m", "release": 0, "deadline": 40},
                {"kind": "assign", "target": "out", "expr": "m", "release": 99, "deadline": "199/2"},
            ],
        },
        {
            "name": "B",
            "variables": {"m": 0, "m_v": 0, "out": 0, "req": 0, "rsp": 0},
            "env_variables": {},
            "actions": [
                {"kind": "receive", "var": "m", "release": 60, "deadline": 99},
                {"kind": "assign", "target": "out", "expr": "m", "release": 99, "deadline": "199/2"},
            ],
        },
    ],
    "networks": [{"message_count": 3, "wcmtt": {"1": 3, "2": 3, "3": 3}}],
    "faults": [{"type": "MsgLoss", "max_per_period": 1,
                "effect": {"component": "network", "network": 1, "kind": "message_loss"}}],
    "goal": "A.out == B.out",
    "can_profile": {"reserved_priority": 3, "reserved_size": 8, "sizes": {"1": 8, "2": 8, "3": 8}},
}

TEMPLATES = {
    "format": "ft-templates",
    "version": 1,
    "templates": [
        {"process": "A", "between": [2, 3],
         "candidates": [{"pattern": {"kind": "receive", "var": "req"}, "wcet": 1}]},
        {"process": "A", "between": [2, 3],
         "candidates": [{"pattern": {"kind": "assign", "target": "rsp", "expr": "m", "guard": "req_v != 0"}, "wcet": 1}]},
        {"process": "A", "between": [2, 3],
         "candidates": [{"pattern": {"kind": "send", "network": 1, "msg": 3, "dest": "B", "var": "rsp",
                                      "content": "rsp", "guard": "req_v != 0"}, "wcet": 1}]},
        {"process": "B", "between": [1, 2],
         "candidates": [{"pattern": {"kind": "assign", "target": "req", "expr": "1", "guard": "m_v == 0"}, "wcet": 1}]},
        {"process": "B", "between": [1, 2],
         "candidates": [{"pattern": {"kind": "send", "network": 1, "msg": 2, "dest": "A", "var": "req",
                                      "content": "req", "guard": "m_v == 0"}, "wcet": 1}]},
        {"process": "B", "between": [1, 2],
         "candidates": [{"pattern": {"kind": "assign", "target": "m", "expr": "rsp", "guard": "m_v == 0"}, "wcet": 1}]},
    ],
}

doc = model_from_doc(MODEL)
print("validate:", validate(doc.system, doc.faults))

bounds = compute_pc_bounds(doc.system)
box = bounds.action_box(1, Fraction(1))
print("A action1 box lo:", box.lo, "up:", box.up)

pc = to_pc_system(doc.system, bounds)
specs = templates_from_doc(TEMPLATES, [p.name for p in doc.system.processes])
pcf = insert_slots(pc, specs)
for p in pcf.processes:
    print(p.name, [str(a.index) for a in p.actions])
    for a in p.actions:
        print("   ", a.index, "box", [(str(l), str(u)) for l, u in zip(a.box.lo, a.box.up)],
              "slot" if a.is_slot else "")

profile = profile_from_parts(doc.can_profile, {1}, {2, 3})
verdict = check_can_conditions(profile)
print("can:", verdict)

game = build_game(pcf, doc.faults, doc.goal, can_verdict=verdict)
for point in sorted(game.choices, key=lambda p: (p[0], p[1])):
    print("choices", point, len(game.choices[point]))

arena = expand_game(game)
print("arena vertices:", arena.n_vertices(), "goal:", len(arena.goal))

import time
t0 = time.time()
res = forward_search(arena)
print("search:", res.status, "nodes:", res.nodes, "time:", round(time.time() - t0, 2))
if res.strategy:
    print(res.strategy.describe(game))
