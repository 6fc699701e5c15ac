"""Insertion of repair slots at fractional indices between host actions.

A slot sits between two consecutive original actions c and c+1; several slots
in the same gap get evenly spaced indices c + t/(k+1), t = 1..k.  Every
existing PC window (actions and messages) is carried over to the refined
index set, and each slot receives its legal window: in foreign dimensions it
may fire any time from the earlier host's lower bound to the later host's
upper bound; in its own dimension it fires between its own index and the
later host.
"""

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from ..errors import EmptyCandidateSet, NotConsecutive
from .bounds import PcAction, PcBox, PcNetwork, PcProcess, PcSystem, remap_box


@dataclass(frozen=True)
class SlotPlan:
    """How many slots each (process, gap-after-action) pair receives."""

    counts: tuple  # of ((process_name, gap_start), count)

    def count(self, process_name, gap_start):
        for (p, c), k in self.counts:
            if p == process_name and c == gap_start:
                return k
        return 0


def slot_plan(specs) -> SlotPlan:
    counts = {}
    for spec in specs:
        key = (spec.process, spec.between[0])
        counts[key] = counts.get(key, 0) + 1
    return SlotPlan(tuple(sorted(counts.items())))


def slot_box(c_action: PcAction, d_action: PcAction, position: Fraction, own_process: int, n_processes: int) -> PcBox:
    """Legal PC window of a slot between consecutive actions c and d.

    `own_process` is 1-based.  Requires floor(position) == c.index and
    ceil(position) == d.index.
    """
    c_idx, d_idx = c_action.index, d_action.index
    if Fraction(math.floor(position)) != c_idx or Fraction(math.ceil(position)) != d_idx:
        raise NotConsecutive(
            f"slot {position} does not lie between consecutive actions {c_idx} and {d_idx}"
        )
    lo, up = [], []
    for j in range(n_processes):
        if j == own_process - 1:
            lo.append(position)
            up.append(Fraction(d_idx))
        else:
            lo.append(c_action.box.lo[j])
            up.append(d_action.box.up[j])
    return PcBox(tuple(lo), tuple(up))


def _bound_domain(process: PcProcess):
    return process.pc_values() + (process.end_index + 1,)


def insert_slots(pc_system: PcSystem, specs) -> PcSystem:
    """Insert the requested slots; returns a new abstracted system.

    `specs` is a sequence of SlotSpec (process name, between=(c, c+1),
    candidates).  Slot positions are assigned evenly spaced in gap order.
    """
    if not specs:
        return pc_system

    for spec in specs:
        if not spec.candidates:
            raise EmptyCandidateSet(f"slot in {spec.process} between {spec.between} has no candidates")
        c, d = spec.between
        if d != c + 1:
            raise NotConsecutive(f"slot in {spec.process}: {c} and {d} are not consecutive")

    plan = slot_plan(specs)

    # Pass 1: assign fractional positions per gap, in spec order.
    placed = {}  # (process_name, gap_start) -> list of (position, candidates)
    seen = {}
    for spec in specs:
        key = (spec.process, spec.between[0])
        k = plan.count(*key)
        t = seen.get(key, 0) + 1
        seen[key] = t
        position = Fraction(spec.between[0]) + Fraction(t, k + 1)
        placed.setdefault(key, []).append((position, spec.candidates))

    old_domains = [_bound_domain(p) for p in pc_system.processes]

    # Pass 2: build the refined index sets.
    new_processes_indices = []
    for p in pc_system.processes:
        indices = [a.index for a in p.actions]
        hosts = {a.index for a in p.actions if a.index == int(a.index)}
        for (pname, c), entries in placed.items():
            if pname != p.name:
                continue
            if Fraction(c) not in hosts or Fraction(c + 1) not in hosts:
                raise NotConsecutive(
                    f"slot in {pname}: no host action pair ({c}, {c + 1})"
                )
            indices.extend(pos for pos, _ in entries)
        new_processes_indices.append(sorted(indices))

    new_domains = []
    for p, idxs in zip(pc_system.processes, new_processes_indices):
        end = p.end_index
        new_domains.append(tuple(idxs) + (end, end + 1))

    # Pass 3: remap every existing box, then add slot actions with their boxes.
    processes = []
    for pnum, p in enumerate(pc_system.processes, start=1):
        remapped = {
            a.index: replace(a, box=remap_box(a.box, old_domains, new_domains))
            for a in p.actions
        }
        new_actions = dict(remapped)
        for (pname, c), entries in placed.items():
            if pname != p.name:
                continue
            c_action = remapped[Fraction(c)]
            d_action = remapped[Fraction(c + 1)]
            for position, candidates in entries:
                box = slot_box(c_action, d_action, position, pnum, len(pc_system.processes))
                new_actions[position] = PcAction(
                    index=position, box=box, candidates=tuple(candidates)
                )
        processes.append(
            replace(p, actions=tuple(new_actions[i] for i in sorted(new_actions)))
        )

    networks = tuple(
        PcNetwork(
            message_count=net.message_count,
            boxes=tuple((i, remap_box(box, old_domains, new_domains)) for i, box in net.boxes),
        )
        for net in pc_system.networks
    )
    return PcSystem(processes=tuple(processes), networks=networks)
