"""Timing abstraction: release/deadline windows to program-counter windows.

With a globally synchronized clock, "action a's window lies wholly after
action b's" turns into an ordering fact: whenever a fires, b has already
fired.  We record such facts as, per action (and per network message), one
half-open PC interval per process; the concrete windows are then no longer
needed to reason about interleavings.
"""

from dataclasses import dataclass, replace
from fractions import Fraction

from ..errors import DuplicateMessageIndex
from ..model.core import Send, TimedSystem


@dataclass(frozen=True)
class PcBox:
    """One half-open interval [lo, up) per process, over PC values."""

    lo: tuple[Fraction, ...]
    up: tuple[Fraction, ...]

    def contains(self, pcs):
        return all(l <= pc < u for l, pc, u in zip(self.lo, pcs, self.up))

    def dim(self, j):
        """0-based dimension access."""
        return self.lo[j], self.up[j]


@dataclass
class PcBounds:
    """Lower/upper PC bound arrays keyed by action or by network message."""

    actions: dict  # (process_number, index) -> PcBox
    messages: dict  # (network_number, message_index) -> PcBox

    def action_box(self, pnum, index):
        return self.actions[(pnum, index)]

    def message_box(self, nnum, index):
        return self.messages[(nnum, index)]


def _succ(process, value):
    """Smallest PC value of `process` strictly above `value`."""
    return process.next_pc(value)


def _top(process):
    """One past the end marker: the never-restricting upper bound."""
    return process.end_index + 1


def compute_pc_bounds(system: TimedSystem) -> PcBounds:
    """Derive PC windows for every action and every message of the system.

    Raises DuplicateMessageIndex when one (network, index) pair is sent by
    more than one action, since the message would need two windows.
    """
    n = len(system.processes)
    action_boxes = {}
    for i, p in enumerate(system.processes, start=1):
        for a in p.actions:
            lo = [Fraction(1)] * n
            up = [_top(q) for q in system.processes]
            lo[i - 1] = a.index
            up[i - 1] = _succ(p, a.index)
            for j, q in enumerate(system.processes, start=1):
                if j == i:
                    continue
                for b in q.actions:
                    if a.release > b.deadline:
                        lo[j - 1] = max(lo[j - 1], _succ(q, b.index))
                    if a.deadline < b.release:
                        up[j - 1] = min(up[j - 1], _succ(q, b.index))
            action_boxes[(i, a.index)] = PcBox(tuple(lo), tuple(up))

    message_boxes = {}
    for i, p in enumerate(system.processes, start=1):
        for a in p.actions:
            if not isinstance(a.pattern, Send):
                continue
            key = (a.pattern.network, a.pattern.index)
            if key in message_boxes:
                raise DuplicateMessageIndex(
                    f"message {key[1]} of network {key[0]} is sent more than once per period"
                )
            net = system.network(a.pattern.network)
            best = net.best_case_of(a.pattern.index)
            worst = net.wcmtt_of(a.pattern.index)
            lo = [Fraction(1)] * n
            up = [_top(q) for q in system.processes]
            lo[i - 1] = _succ(p, a.index)  # strictly after the send itself
            for j, q in enumerate(system.processes, start=1):
                for b in q.actions:
                    if a.release + best > b.deadline:
                        lo[j - 1] = max(lo[j - 1], _succ(q, b.index))
                    if a.deadline + worst < b.release:
                        up[j - 1] = min(up[j - 1], _succ(q, b.index))
            message_boxes[key] = PcBox(tuple(lo), tuple(up))
    return PcBounds(actions=action_boxes, messages=message_boxes)


@dataclass(frozen=True)
class PcAction:
    """An action of the abstracted system.

    Host actions carry the single original pattern; repair slots carry a
    candidate set and get their pattern chosen by synthesis.  `box` is the
    legal PC window; `chosen` (a full PC tuple, own position included) is the
    synthesized firing point for slots.
    """

    index: Fraction
    box: PcBox
    pattern: object = None
    candidates: tuple = ()  # of (pattern, wcet)
    chosen: tuple | None = None

    @property
    def is_slot(self):
        return bool(self.candidates)


@dataclass(frozen=True)
class PcProcess:
    name: str
    variables: tuple
    env_variables: tuple
    actions: tuple  # of PcAction

    def var_names(self):
        return [v.name for v in self.variables]

    def env_names(self):
        return [v.name for v in self.env_variables]

    def var_decl(self, name):
        for v in list(self.variables) + list(self.env_variables):
            if v.name == name:
                return v
        raise KeyError(name)

    @property
    def end_index(self):
        ints = [a.index for a in self.actions if a.index == int(a.index)]
        return Fraction(int(max(ints)) + 1) if ints else Fraction(1)

    def pc_values(self):
        return tuple(a.index for a in self.actions) + (self.end_index,)

    def next_pc(self, pc):
        candidates = [x for x in self.pc_values() if x > pc]
        return min(candidates) if candidates else self.end_index

    def action_at(self, pc):
        for a in self.actions:
            if a.index == pc:
                return a
        return None


@dataclass(frozen=True)
class PcNetwork:
    message_count: int
    boxes: tuple  # of (message_index, PcBox)

    def box_of(self, index):
        for i, box in self.boxes:
            if i == index:
                return box
        raise KeyError(index)


@dataclass(frozen=True)
class PcSystem:
    processes: tuple  # of PcProcess
    networks: tuple  # of PcNetwork

    def process(self, number):
        return self.processes[number - 1]

    def process_number(self, name):
        for i, p in enumerate(self.processes, start=1):
            if p.name == name:
                return i
        raise KeyError(name)


def to_pc_system(system: TimedSystem, bounds: PcBounds | None = None) -> PcSystem:
    """Assemble the abstracted system from computed PC bounds."""
    if bounds is None:
        bounds = compute_pc_bounds(system)
    processes = []
    for i, p in enumerate(system.processes, start=1):
        actions = tuple(
            PcAction(index=a.index, box=bounds.action_box(i, a.index), pattern=a.pattern)
            for a in p.actions
        )
        processes.append(
            PcProcess(
                name=p.name,
                variables=p.variables,
                env_variables=p.env_variables,
                actions=actions,
            )
        )
    networks = []
    for nnum, net in enumerate(system.networks, start=1):
        boxes = tuple(
            (ind, bounds.messages[(nnum, ind)])
            for ind in range(1, net.message_count + 1)
            if (nnum, ind) in bounds.messages
        )
        networks.append(PcNetwork(message_count=net.message_count, boxes=boxes))
    return PcSystem(processes=tuple(processes), networks=tuple(networks))


def remap_bound(old_values, new_values, value):
    """Carry a PC bound over to a refined index set.

    A bound encodes "strictly after x" where x is the bound's predecessor in
    the old index set; the carried bound is the smallest new index above x.
    """
    older = [v for v in old_values if v < value]
    x = max(older) if older else Fraction(0)
    later = [v for v in new_values if v > x]
    return min(later) if later else value


def remap_box(box: PcBox, old_pc_sets, new_pc_sets) -> PcBox:
    lo = tuple(
        remap_bound(old_pc_sets[j], new_pc_sets[j], box.lo[j]) for j in range(len(box.lo))
    )
    up = tuple(
        remap_bound(old_pc_sets[j], new_pc_sets[j], box.up[j]) for j in range(len(box.up))
    )
    return PcBox(lo, up)
