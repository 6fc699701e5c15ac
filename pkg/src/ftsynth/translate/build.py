"""Game construction: abstracted system + fault hypothesis -> symbolic game.

States are full variable valuations plus PC vector, network occupancy and
fault bookkeeping.  The environment owns message delivery, fault activation
and the period restart; processes own their action choices.  A control choice
is one candidate pattern together with one concrete PC tuple drawn from the
action's legal window, so a positional strategy is exactly a per-(process, PC)
pick of pattern and firing point.
"""

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction

from ..errors import CanCheckFailed, DuplicateMessageIndex
from ..expr import Expr
from ..model.core import Assign, FaultModel, NullOp, Receive, Send, TimedSystem
from ..rational import rat_str
from .bounds import PcBox, PcSystem


@dataclass(frozen=True)
class SdgState:
    pcs: tuple
    vars: tuple  # per process: tuple of ints, declared order
    envs: tuple  # per process: tuple of ints
    nets: tuple  # per network: None or (index, dest, remote_var, content)
    faults: tuple  # per fault entry: flag or counter value

    def pretty(self, game):
        bits = []
        for pnum, p in enumerate(game.pc_system.processes, start=1):
            bits.append(f"{p.name}@{rat_str(self.pcs[pnum - 1])}")
        for nnum, slot in enumerate(self.nets, start=1):
            bits.append(f"n{nnum}:" + ("-" if slot is None else f"m{slot[0]}"))
        if self.faults:
            bits.append("f:" + ",".join(map(str, self.faults)))
        return " ".join(bits)


@dataclass(frozen=True)
class ChoiceAction:
    """One control option: fire `pattern` when the global PC vector equals `requires`."""

    pattern: object
    requires: tuple  # full PC tuple, own position included
    wcet: Fraction | None = None

    def describe(self):
        pcs = ",".join(rat_str(x) for x in self.requires)
        return f"{self.pattern.describe()} <{pcs}>"


@dataclass(frozen=True)
class WovenVariant:
    """One delivery transition of a network after fault weaving."""

    kind: str  # "normal" | "fault"
    fault_type: str | None
    pre: int | None  # required fault slot value (None = any)
    post: int | None  # resulting fault slot value (None = unchanged)


class SymbolicGame:
    """Distributed game over the variables of the abstracted system."""

    mode = "interleaving"

    def __init__(self, pc_system, faults, goal, init_state, choices, message_boxes, variants, env_domains):
        self.pc_system = pc_system
        self.faults = faults
        self.goal = goal
        self.init_state = init_state
        self.choices = choices  # (pnum, pc) -> tuple[ChoiceAction]
        self.message_boxes = message_boxes  # (net, index) -> PcBox
        self.variants = variants  # net -> tuple[WovenVariant]
        self.env_domains = env_domains  # per-period environment input combinations
        self._ends = tuple(p.end_index for p in pc_system.processes)

    def initial_states(self):
        return [self.init_state]

    # -- predicates ---------------------------------------------------------

    def is_period_end(self, state):
        return all(pc == end for pc, end in zip(state.pcs, self._ends)) and all(
            slot is None for slot in state.nets
        )

    def is_env(self, state):
        """Environment moves exactly when a network is busy or the period ended."""
        return any(slot is not None for slot in state.nets) or self.is_period_end(state)

    def qualified_env(self, state):
        env = {}
        for pnum, p in enumerate(self.pc_system.processes, start=1):
            for name, value in zip(p.var_names(), state.vars[pnum - 1]):
                env[f"{p.name}.{name}"] = value
            for name, value in zip(p.env_names(), state.envs[pnum - 1]):
                env[f"{p.name}.{name}"] = value
        return env

    def is_goal(self, state):
        return self.is_period_end(state) and bool(self.goal.eval(self.qualified_env(state)))

    # -- environment moves --------------------------------------------------

    def _fault_entry_pos(self, fault_type):
        for k, e in enumerate(self.faults.entries):
            if e.fault_type == fault_type:
                return k
        raise KeyError(fault_type)

    def env_successors(self, state):
        """(label, successor) pairs for an environment turn."""
        out = []
        busy = [n for n, slot in enumerate(state.nets, start=1) if slot is not None]
        if busy:
            for nnum in busy:
                index, dest, remote_var, content = state.nets[nnum - 1]
                box = self.message_boxes.get((nnum, index))
                if box is not None and not box.contains(state.pcs):
                    continue
                for variant in self.variants[nnum]:
                    if variant.kind == "fault":
                        pos = self._fault_entry_pos(variant.fault_type)
                        if state.faults[pos] != variant.pre:
                            continue
                        succ = self._deliver(state, nnum, update=False)
                        fvals = list(succ.faults)
                        fvals[pos] = variant.post
                        succ = replace(succ, faults=tuple(fvals))
                        out.append((f"net{nnum}: deliver m{index} lost({variant.fault_type})", succ))
                    else:
                        if variant.pre is not None:
                            pos = self._fault_entry_pos(variant.fault_type)
                            if state.faults[pos] != variant.pre:
                                continue
                        succ = self._deliver(state, nnum, update=True)
                        label = f"net{nnum}: deliver m{index}"
                        if (label, succ) not in out:
                            out.append((label, succ))
            return out
        if self.is_period_end(state):
            # A period that ends off-goal is a failure, not a fresh start:
            # restarting would accept repairs that only converge periods later.
            if not self.is_goal(state):
                return out
            base = replace(
                state,
                pcs=tuple(Fraction(1) for _ in state.pcs),
                faults=tuple(0 for _ in state.faults),
            )
            for combo in self.env_domains:
                out.append(("period: restart", replace(base, envs=combo)))
            return out
        return out

    def _deliver(self, state, nnum, update):
        index, dest, remote_var, content = state.nets[nnum - 1]
        nets = list(state.nets)
        nets[nnum - 1] = None
        state = replace(state, nets=tuple(nets))
        if not update:
            return state
        p = self.pc_system.process(dest)
        names = p.var_names()
        vals = list(state.vars)
        row = list(vals[dest - 1])
        row[names.index(remote_var)] = content
        flag = f"{remote_var}_v"
        if flag in names:
            row[names.index(flag)] = 1
        vals[dest - 1] = tuple(row)
        return replace(state, vars=tuple(vals))

    # -- control moves ------------------------------------------------------

    def movers(self, state):
        out = []
        for pnum, p in enumerate(self.pc_system.processes, start=1):
            pc = state.pcs[pnum - 1]
            if pc != p.end_index:
                out.append((pnum, pc))
        return out

    def point_options(self, point):
        return self.choices.get(point, ())

    def apply_choice(self, state, point, choice_idx):
        """Apply one choice action; None when its PC requirement fails."""
        pnum, pc = point
        if state.pcs[pnum - 1] != pc:
            return None
        choice = self.choices[point][choice_idx]
        if state.pcs != choice.requires:
            return None
        p = self.pc_system.process(pnum)
        env = dict(zip(p.var_names(), state.vars[pnum - 1]))
        env.update(zip(p.env_names(), state.envs[pnum - 1]))
        pat = choice.pattern
        if isinstance(pat, Assign) and pat.guard.eval(env):
            decl = p.var_decl(pat.target)
            value = max(decl.lo, min(decl.hi, pat.expr.eval(env)))
            vals = list(state.vars)
            row = list(vals[pnum - 1])
            row[p.var_names().index(pat.target)] = value
            vals[pnum - 1] = tuple(row)
            state = replace(state, vars=tuple(vals))
        elif isinstance(pat, Send) and pat.guard.eval(env):
            # A control turn implies every network is free.
            nets = list(state.nets)
            nets[pat.network - 1] = (pat.index, pat.dest, pat.remote_var, env[pat.content])
            state = replace(state, nets=tuple(nets))
        elif isinstance(pat, (Receive, NullOp)):
            pat.guard.eval(env)
        pcs = list(state.pcs)
        pcs[pnum - 1] = p.next_pc(pc)
        return replace(state, pcs=tuple(pcs))

    def control_moves(self, state):
        """(selection, successor) pairs; one process moves per control turn."""
        out = []
        for point in self.movers(state):
            for idx in range(len(self.choices.get(point, ()))):
                succ = self.apply_choice(state, point, idx)
                if succ is not None:
                    out.append((((point, idx),), succ))
        return out

    def describe_choice(self, point, idx):
        pnum, pc = point
        name = self.pc_system.process(pnum).name
        return f"{name}@{rat_str(pc)}: {self.choices[point][idx].describe()}"

    def all_points(self):
        return [point for point in self.choices if self.choices[point]]

    def describe_state(self, state):
        return state.pretty(self)

    def describe_point(self, point):
        pnum, pc = point
        return f"{self.pc_system.process(pnum).name}@{rat_str(pc)}"

    def describe_option(self, point, idx):
        return self.choices[point][idx].describe()


def _enumerate_box_values(process_domains, box, own_dim, own_value):
    """Concrete PC tuples inside `box`, own dimension pinned to the action's index."""
    axes = []
    for j, values in enumerate(process_domains):
        if j == own_dim:
            axes.append([own_value])
        else:
            lo, up = box.lo[j], box.up[j]
            axes.append([v for v in values if lo <= v < up])
    return [tuple(t) for t in itertools.product(*axes)]


def build_game(
    pc_system: PcSystem,
    faults: FaultModel,
    goal: Expr,
    init_vars=None,
    init_envs=None,
    can_verdict=None,
    can_override=False,
) -> SymbolicGame:
    """Weave faults into the abstracted system and produce the symbolic game.

    `can_verdict` is the result of the bus profile check; it must be safe (or
    overridden) before repair slots that send new messages are admitted.
    """
    n = len(pc_system.processes)
    ft_sends = [
        (pnum, a.index, pat)
        for pnum, p in enumerate(pc_system.processes, start=1)
        for a in p.actions
        if a.is_slot
        for pat, _w in a.candidates
        if isinstance(pat, Send)
    ]
    if ft_sends and not can_override:
        if can_verdict is None:
            raise CanCheckFailed(
                "repair templates introduce messages but no bus profile was checked"
            )
        if not can_verdict.safe:
            raise CanCheckFailed(
                "bus profile check failed for the repair messages", can_verdict.violations
            )

    domains = [p.pc_values() for p in pc_system.processes]

    choices = {}
    for pnum, p in enumerate(pc_system.processes, start=1):
        for a in p.actions:
            patterns = [pat for pat, _w in a.candidates] if a.is_slot else [a.pattern]
            wcets = [w for _p, w in a.candidates] if a.is_slot else [None]
            opts = []
            for pat, wcet in zip(patterns, wcets):
                for tup in _enumerate_box_values(domains, a.box, pnum - 1, a.index):
                    opts.append(ChoiceAction(pattern=pat, requires=tup, wcet=wcet))
            choices[(pnum, a.index)] = tuple(opts)

    # Message windows: carried-over ones for host messages, plus one per new
    # repair message (constrained only to follow its own send).
    message_boxes = {}
    for nnum, net in enumerate(pc_system.networks, start=1):
        for ind, box in net.boxes:
            message_boxes[(nnum, ind)] = box
    host_sends = {
        (a.pattern.network, a.pattern.index)
        for p in pc_system.processes
        for a in p.actions
        if not a.is_slot and isinstance(a.pattern, Send)
    }
    for pnum, index, pat in ft_sends:
        key = (pat.network, pat.index)
        if key in host_sends:
            raise DuplicateMessageIndex(
                f"repair message {key[1]} on network {key[0]} already sent by a host action"
            )
        owner = pc_system.process(pnum)
        lo = [Fraction(1)] * n
        up = [p.end_index + 1 for p in pc_system.processes]
        lo[pnum - 1] = owner.next_pc(index)
        existing = message_boxes.get(key)
        box = PcBox(tuple(lo), tuple(up))
        if existing is not None and existing != box and existing.lo[pnum - 1] != box.lo[pnum - 1]:
            raise DuplicateMessageIndex(
                f"repair message {key[1]} on network {key[0]} sent from two different slots"
            )
        message_boxes[key] = box

    # Fault weaving: a flag (budget 1) or a counter (budget k) per fault type;
    # each delivery gains per-value normal variants plus budgeted fault variants.
    variants = {}
    for nnum, net in enumerate(pc_system.networks, start=1):
        vs = []
        entries_here = [e for e in faults.entries if e.component == "network" and e.network == nnum]
        if not entries_here:
            vs.append(WovenVariant(kind="normal", fault_type=None, pre=None, post=None))
        for e in entries_here:
            top = 1 if e.max_per_period <= 1 else e.max_per_period
            for value in range(top + 1):
                vs.append(WovenVariant(kind="normal", fault_type=e.fault_type, pre=value, post=value))
            for value in range(e.max_per_period):
                vs.append(WovenVariant(kind="fault", fault_type=e.fault_type, pre=value, post=value + 1))
        variants[nnum] = tuple(vs)

    init_state = SdgState(
        pcs=tuple(Fraction(1) for _ in pc_system.processes),
        vars=init_vars
        if init_vars is not None
        else tuple(tuple(v.init for v in p.variables) for p in pc_system.processes),
        envs=init_envs
        if init_envs is not None
        else tuple(tuple(v.init for v in p.env_variables) for p in pc_system.processes),
        nets=tuple(None for _ in pc_system.networks),
        faults=tuple(0 for _ in faults.entries),
    )

    env_domains = []
    per_process = [
        [tuple(c) for c in itertools.product(*[list(v.domain) for v in p.env_variables])]
        if p.env_variables
        else [()]
        for p in pc_system.processes
    ]
    for combo in itertools.product(*per_process):
        env_domains.append(tuple(combo))

    return SymbolicGame(
        pc_system=pc_system,
        faults=faults,
        goal=goal,
        init_state=init_state,
        choices=choices,
        message_boxes=message_boxes,
        variants=variants,
        env_domains=tuple(env_domains),
    )
