"""Timed system model: periodic processes with release/deadline windows.

A system is a set of processes running action sequences against a shared
period, plus networks that carry single messages with a worst-case
transmission time per message index.  All times are exact rationals.
Action indices are rationals too so that repair actions inserted between two
original actions (index 5/4 between 1 and 2, say) live in the same structures.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from ..expr import TRUE, Expr


@dataclass(frozen=True)
class VarDecl:
    """A bounded integer variable with an explicit initial value."""

    name: str
    init: int = 0
    lo: int = 0
    hi: int = 1

    @property
    def domain(self):
        return range(self.lo, self.hi + 1)


@dataclass(frozen=True)
class Assign:
    target: str
    expr: Expr
    guard: Expr = TRUE

    def describe(self):
        g = "" if self.guard is TRUE or self.guard.text == "1" else f"if({self.guard.text}) "
        return f"{g}{self.target} := {self.expr.text}"


@dataclass(frozen=True)
class Send:
    """Send the value of `content` to variable `remote_var` of process `dest`.

    `network` and `dest` are 1-based indices; `index` is the message slot (and
    bus priority) used on the network.  Delivery also raises `<remote_var>_v`
    in the destination when such a flag variable is declared.
    """

    network: int
    index: int
    dest: int
    remote_var: str
    content: str
    guard: Expr = TRUE

    def describe(self):
        g = "" if self.guard is TRUE or self.guard.text == "1" else f"if({self.guard.text}) "
        return f"{g}send#{self.network}.{self.index}({self.content} -> p{self.dest}.{self.remote_var})"


@dataclass(frozen=True)
class Receive:
    """A pairing marker for an incoming message; executing it only advances the PC."""

    var: str
    guard: Expr = TRUE

    def describe(self):
        return f"recv({self.var})"


@dataclass(frozen=True)
class NullOp:
    guard: Expr = TRUE

    def describe(self):
        return "nullop"


Pattern = Assign | Send | Receive | NullOp


@dataclass(frozen=True)
class TimedAction:
    index: Fraction
    pattern: Pattern
    release: Fraction
    deadline: Fraction

    def describe(self):
        return f"[{self.index}] {self.pattern.describe()} @[{self.release},{self.deadline})"


@dataclass(frozen=True)
class Process:
    name: str
    variables: tuple[VarDecl, ...]
    env_variables: tuple[VarDecl, ...]
    actions: tuple[TimedAction, ...]

    def var_names(self):
        return [v.name for v in self.variables]

    def env_names(self):
        return [v.name for v in self.env_variables]

    def declared(self):
        return {v.name for v in self.variables} | {v.name for v in self.env_variables}

    def var_decl(self, name):
        for v in self.variables:
            if v.name == name:
                return v
        for v in self.env_variables:
            if v.name == name:
                return v
        raise KeyError(name)

    @property
    def end_index(self):
        """PC value meaning 'all actions of this cycle done'."""
        if not self.actions:
            return Fraction(1)
        return Fraction(int(self.actions[-1].index) + 1)

    def pc_values(self):
        """All PC values the process can take: action indices plus the end marker."""
        return tuple(a.index for a in self.actions) + (self.end_index,)

    def action_at(self, pc):
        for a in self.actions:
            if a.index == pc:
                return a
        return None

    def next_pc(self, pc):
        """Smallest PC value strictly above `pc`."""
        candidates = [x for x in self.pc_values() if x > pc]
        return min(candidates) if candidates else self.end_index


@dataclass(frozen=True)
class Network:
    """Single-message channel: wcmtt maps message index -> worst transit time."""

    message_count: int
    wcmtt: tuple[tuple[int, Fraction], ...]
    best_case: tuple[tuple[int, Fraction], ...] = ()

    def wcmtt_of(self, index):
        for i, value in self.wcmtt:
            if i == index:
                return value
        raise KeyError(index)

    def best_case_of(self, index):
        for i, value in self.best_case:
            if i == index:
                return value
        return Fraction(0)


@dataclass(frozen=True)
class TimedSystem:
    period: Fraction
    processes: tuple[Process, ...]
    networks: tuple[Network, ...]

    def process(self, number):
        """1-based access, matching indices used inside send actions."""
        return self.processes[number - 1]

    def process_number(self, name):
        for i, p in enumerate(self.processes, start=1):
            if p.name == name:
                return i
        raise KeyError(name)

    def network(self, number):
        return self.networks[number - 1]


@dataclass(frozen=True)
class FaultEntry:
    fault_type: str
    max_per_period: int
    component: str  # currently only "network"
    network: int
    kind: str  # currently only "message_loss"


@dataclass(frozen=True)
class FaultModel:
    entries: tuple[FaultEntry, ...] = field(default=())

    def for_network(self, number):
        return [e for e in self.entries if e.component == "network" and e.network == number]


def _check_expr_names(diags, where, expr, allowed):
    for name in expr.names:
        if name not in allowed:
            diags.append(f"{where}: reads undeclared variable {name!r}")


def validate(system: TimedSystem, faults: FaultModel | None = None):
    """Return a list of diagnostics; empty iff the model is well formed."""
    diags = []
    if system.period <= 0:
        diags.append("period must be > 0")
    names = set()
    for p in system.processes:
        if p.name in names:
            diags.append(f"process {p.name}: duplicate process name")
        names.add(p.name)

    for pnum, p in enumerate(system.processes, start=1):
        declared = set()
        for v in list(p.variables) + list(p.env_variables):
            if v.name in declared:
                diags.append(f"process {p.name}: duplicate variable {v.name!r}")
            declared.add(v.name)
            if not (v.lo <= v.init <= v.hi):
                diags.append(f"process {p.name}: variable {v.name!r} initial value outside its range")
            if v.lo > v.hi:
                diags.append(f"process {p.name}: variable {v.name!r} has an empty range")

        last_index = Fraction(0)
        for a in p.actions:
            where = f"process {p.name} action {a.index}"
            if a.index <= last_index:
                diags.append(f"{where}: action indices must be strictly increasing")
            last_index = a.index
            if not (0 <= a.release < a.deadline):
                diags.append(f"{where}: need 0 <= release < deadline")
            if a.deadline >= system.period:
                diags.append(f"{where}: deadline must be < period")
            pat = a.pattern
            _check_expr_names(diags, where, pat.guard, p.declared())
            if isinstance(pat, Assign):
                if pat.target not in {v.name for v in p.variables}:
                    diags.append(f"{where}: assignment target {pat.target!r} is not a process variable")
                _check_expr_names(diags, where, pat.expr, p.declared())
            elif isinstance(pat, Receive):
                if pat.var not in {v.name for v in p.variables}:
                    diags.append(f"{where}: receive variable {pat.var!r} is not a process variable")
            elif isinstance(pat, Send):
                if not 1 <= pat.network <= len(system.networks):
                    diags.append(f"{where}: network {pat.network} out of range")
                    continue
                net = system.network(pat.network)
                if not 1 <= pat.index <= net.message_count:
                    diags.append(f"{where}: message index {pat.index} out of range for network {pat.network}")
                else:
                    if a.deadline + net.wcmtt_of(pat.index) >= system.period:
                        diags.append(
                            f"{where}: deadline + worst transmission time must be < period"
                        )
                if not 1 <= pat.dest <= len(system.processes):
                    diags.append(f"{where}: destination process {pat.dest} out of range")
                else:
                    dest = system.process(pat.dest)
                    if pat.remote_var not in {v.name for v in dest.variables}:
                        diags.append(
                            f"{where}: remote variable {pat.remote_var!r} not declared in process {dest.name}"
                        )
                if pat.content not in {v.name for v in p.variables}:
                    diags.append(f"{where}: content variable {pat.content!r} is not a process variable")
        if p.actions and p.actions[-1].index != int(p.actions[-1].index):
            diags.append(f"process {p.name}: last action index must be an integer")

    for nnum, net in enumerate(system.networks, start=1):
        have = {i for i, _ in net.wcmtt}
        want = set(range(1, net.message_count + 1))
        if have != want:
            diags.append(f"network {nnum}: wcmtt must be defined exactly on 1..{net.message_count}")
        for i, value in net.wcmtt:
            if value < 0:
                diags.append(f"network {nnum}: wcmtt of message {i} must be >= 0")
        for i, value in net.best_case:
            if i not in want:
                diags.append(f"network {nnum}: best_case index {i} out of range")
            elif value < 0 or value > net.wcmtt_of(i):
                diags.append(f"network {nnum}: best_case of message {i} must be in [0, wcmtt]")

    if faults is not None:
        for e in faults.entries:
            if e.max_per_period < 0:
                diags.append(f"fault {e.fault_type}: max_per_period must be >= 0")
            if e.component != "network":
                diags.append(f"fault {e.fault_type}: unknown component {e.component!r}")
            elif not 1 <= e.network <= len(system.networks):
                diags.append(f"fault {e.fault_type}: network {e.network} out of range")
            if e.kind != "message_loss":
                diags.append(f"fault {e.fault_type}: unknown effect kind {e.kind!r}")
    return diags
