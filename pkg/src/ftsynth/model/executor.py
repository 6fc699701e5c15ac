"""Small-step executor for timed systems.

Discrete moves fire at the current instant; time advances separately and only
to "interesting" instants (releases, deadlines, transit expiries, period end),
which keeps exhaustive exploration finitely branching.  A pending action is
mandatory: time may not pass its deadline, and a configuration where the only
way forward would do so is a stuck configuration.
"""

from dataclasses import dataclass, replace
from fractions import Fraction

from ..errors import IllegalMove
from .core import Assign, NullOp, Process, Receive, Send, TimedSystem


@dataclass(frozen=True)
class NetState:
    """An occupied network: one message in transit."""

    source: int
    dest: int
    remote_var: str
    content: int
    index: int
    sent_at: Fraction


@dataclass(frozen=True)
class Config:
    valuations: tuple[tuple[int, ...], ...]      # per process, declared order
    env_valuations: tuple[tuple[int, ...], ...]  # per process, declared order
    pcs: tuple[Fraction, ...]
    nets: tuple[NetState | None, ...]
    time: Fraction

    def value(self, system, pnum, name):
        p = system.process(pnum)
        names = p.var_names()
        if name in names:
            return self.valuations[pnum - 1][names.index(name)]
        env = p.env_names()
        if name in env:
            return self.env_valuations[pnum - 1][env.index(name)]
        raise KeyError(f"{p.name}.{name}")

    def env_of(self, system, pnum):
        """Evaluation environment for expressions local to process `pnum`."""
        p = system.process(pnum)
        env = dict(zip(p.var_names(), self.valuations[pnum - 1]))
        env.update(zip(p.env_names(), self.env_valuations[pnum - 1]))
        return env

    def qualified_env(self, system):
        env = {}
        for pnum, p in enumerate(system.processes, start=1):
            for name, value in zip(p.var_names(), self.valuations[pnum - 1]):
                env[f"{p.name}.{name}"] = value
            for name, value in zip(p.env_names(), self.env_valuations[pnum - 1]):
                env[f"{p.name}.{name}"] = value
        return env


class _Blocked:
    """Marker returned by `step` when a send finds its network busy."""

    def __repr__(self):
        return "BLOCKED"


BLOCKED = _Blocked()


@dataclass(frozen=True)
class ExecuteLocal:
    process: int

    def describe(self, system):
        return f"{system.process(self.process).name}: local"


@dataclass(frozen=True)
class SendToNetwork:
    process: int

    def describe(self, system):
        return f"{system.process(self.process).name}: send"


@dataclass(frozen=True)
class ReceiveMove:
    process: int

    def describe(self, system):
        return f"{system.process(self.process).name}: receive"


@dataclass(frozen=True)
class ProcessMessage:
    network: int

    def describe(self, system):
        return f"net{self.network}: deliver"


@dataclass(frozen=True)
class RepeatCycle:
    def describe(self, system):
        return "period: restart"


def initial_config(system: TimedSystem) -> Config:
    return Config(
        valuations=tuple(tuple(v.init for v in p.variables) for p in system.processes),
        env_valuations=tuple(tuple(v.init for v in p.env_variables) for p in system.processes),
        pcs=tuple(Fraction(1) for _ in system.processes),
        nets=tuple(None for _ in system.networks),
        time=Fraction(0),
    )


def pending_action(system, config, pnum):
    p = system.process(pnum)
    pc = config.pcs[pnum - 1]
    if pc == p.end_index:
        return None
    return p.action_at(pc)


def _advance_pc(system, config, pnum):
    p = system.process(pnum)
    pcs = list(config.pcs)
    pcs[pnum - 1] = p.next_pc(pcs[pnum - 1])
    return replace(config, pcs=tuple(pcs))


def _set_var(config, pnum, pos, value):
    vals = list(config.valuations)
    row = list(vals[pnum - 1])
    row[pos] = value
    vals[pnum - 1] = tuple(row)
    return replace(config, valuations=tuple(vals))


def _in_window(action, t):
    return action.release <= t < action.deadline


def deliverable(system, config, nnum):
    """Whether network `nnum` may complete its transmission at the current instant."""
    ns = config.nets[nnum - 1]
    if ns is None:
        return False
    wcmtt = system.network(nnum).wcmtt_of(ns.index)
    transit = config.time - ns.sent_at
    # A zero worst-case transit means delivery happens at the send instant.
    if wcmtt == 0:
        return transit == 0
    return transit < wcmtt


def apply_delivery(system, config, nnum, update_destination=True):
    """Clear the network; write content (and the `_v` flag) unless suppressed."""
    ns = config.nets[nnum - 1]
    nets = list(config.nets)
    nets[nnum - 1] = None
    config = replace(config, nets=tuple(nets))
    if not update_destination:
        return config
    dest = system.process(ns.dest)
    names = dest.var_names()
    config = _set_var(config, ns.dest, names.index(ns.remote_var), ns.content)
    flag = f"{ns.remote_var}_v"
    if flag in names:
        config = _set_var(config, ns.dest, names.index(flag), 1)
    return config


def step(system: TimedSystem, config: Config, move):
    """Apply one discrete move; pure in (system, config, move).

    Returns the successor configuration, or BLOCKED for a send that finds its
    network occupied.  Raises IllegalMove when the enabling condition fails.
    """
    if isinstance(move, RepeatCycle):
        if config.time != system.period:
            raise IllegalMove(f"period restart requires t == {system.period}, got {config.time}")
        return replace(
            config,
            pcs=tuple(Fraction(1) for _ in system.processes),
            time=Fraction(0),
        )

    if isinstance(move, ProcessMessage):
        if not deliverable(system, config, move.network):
            raise IllegalMove(f"network {move.network} has no deliverable message")
        return apply_delivery(system, config, move.network)

    pnum = move.process
    action = pending_action(system, config, pnum)
    if action is None:
        raise IllegalMove(f"process {pnum} has finished its cycle")
    if not _in_window(action, config.time):
        raise IllegalMove(
            f"process {pnum} action {action.index} not in window at t={config.time}"
        )
    pat = action.pattern
    env = config.env_of(system, pnum)

    if isinstance(move, ExecuteLocal):
        if not isinstance(pat, (Assign, NullOp)):
            raise IllegalMove(f"process {pnum}: pending action is not a local one")
        if isinstance(pat, Assign) and pat.guard.eval(env):
            p = system.process(pnum)
            value = pat.expr.eval(env)
            decl = p.var_decl(pat.target)
            value = max(decl.lo, min(decl.hi, value))
            config = _set_var(config, pnum, p.var_names().index(pat.target), value)
        return _advance_pc(system, config, pnum)

    if isinstance(move, ReceiveMove):
        if not isinstance(pat, Receive):
            raise IllegalMove(f"process {pnum}: pending action is not a receive")
        pat.guard.eval(env)  # name hygiene only; a receive never writes
        return _advance_pc(system, config, pnum)

    if isinstance(move, SendToNetwork):
        if not isinstance(pat, Send):
            raise IllegalMove(f"process {pnum}: pending action is not a send")
        if pat.guard.eval(env):
            if config.nets[pat.network - 1] is not None:
                return BLOCKED
            nets = list(config.nets)
            nets[pat.network - 1] = NetState(
                source=pnum,
                dest=pat.dest,
                remote_var=pat.remote_var,
                content=env[pat.content],
                index=pat.index,
                sent_at=config.time,
            )
            config = replace(config, nets=tuple(nets))
        return _advance_pc(system, config, pnum)

    raise IllegalMove(f"unknown move {move!r}")


def enabled_moves(system, config):
    """Discrete moves with a successor at the current instant (faults excluded)."""
    moves = []
    if config.time == system.period:
        return [RepeatCycle()]
    for pnum in range(1, len(system.processes) + 1):
        action = pending_action(system, config, pnum)
        if action is None or not _in_window(action, config.time):
            continue
        pat = action.pattern
        if isinstance(pat, (Assign, NullOp)):
            moves.append(ExecuteLocal(pnum))
        elif isinstance(pat, Receive):
            moves.append(ReceiveMove(pnum))
        elif isinstance(pat, Send):
            env = config.env_of(system, pnum)
            if not pat.guard.eval(env) or config.nets[pat.network - 1] is None:
                moves.append(SendToNetwork(pnum))
            # else: blocked; it may become enabled after a delivery
    for nnum in range(1, len(system.networks) + 1):
        if deliverable(system, config, nnum):
            moves.append(ProcessMessage(nnum))
    return moves


def obligations(system, config):
    """Deadlines that time may not cross: (deadline, who) pairs."""
    out = []
    for pnum in range(1, len(system.processes) + 1):
        action = pending_action(system, config, pnum)
        if action is not None and config.time >= action.release:
            out.append((action.deadline, f"process {system.process(pnum).name} action {action.index}"))
    for nnum, ns in enumerate(config.nets, start=1):
        if ns is not None:
            expiry = ns.sent_at + system.network(nnum).wcmtt_of(ns.index)
            out.append((expiry, f"network {nnum} message {ns.index}"))
    return out


def next_instant(system, config):
    """The next interesting instant after the current time (None past period end)."""
    t = config.time
    candidates = [system.period]
    for pnum in range(1, len(system.processes) + 1):
        action = pending_action(system, config, pnum)
        if action is None:
            continue
        if t < action.release:
            candidates.append(action.release)
        candidates.append(action.deadline)
    for nnum, ns in enumerate(config.nets, start=1):
        if ns is not None:
            candidates.append(ns.sent_at + system.network(nnum).wcmtt_of(ns.index))
    future = [c for c in candidates if c > t]
    return min(future) if future else None


def advance_time(system, config):
    """Advance to the next instant, or return None when a deadline bars the way."""
    target = next_instant(system, config)
    if target is None or target > system.period:
        return None
    for deadline, _who in obligations(system, config):
        if deadline <= target:
            return None
    return replace(config, time=target)
