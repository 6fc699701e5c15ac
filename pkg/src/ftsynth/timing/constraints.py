"""Linear timing repair: give every synthesized repair action a concrete
release/deadline window without rescheduling untouched actions.

Per gap that received repair actions, either the idle interval between the
two host actions is partitioned (case 1, preferred when the gap is non-empty)
or the earlier host's window is split (case 2): the host keeps its release,
its deadline becomes a variable, the first repair action starts exactly
there, and the last one inherits the host's original deadline.  Constraint
tags: A = within-process structure (rules 1-5 plus gap anchors and the
period guard for sends), B = cross-process ordering read off the PC windows
(rules 6-11; constants for untouched actions, variables otherwise), C =
message-arrival dependencies (rule 12).  Rules 9m/12m are the optional
arrival-margin variants that also cover windows that merely touch.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import MissingWcet
from ..model.core import Receive, Send, TimedSystem
from ..rational import rat_str
from ..translate.bounds import PcSystem


@dataclass(frozen=True)
class TimingVariable:
    process: str
    index: Fraction
    role: str  # "release" | "deadline"

    @property
    def name(self):
        prefix = "alpha" if self.role == "release" else "beta"
        return f"{prefix}[{self.process}@{rat_str(self.index)}]"


@dataclass(frozen=True)
class Constraint:
    tag: str  # A | B | C
    rule: str  # producing rule, e.g. "4", "9", "12m"
    terms: tuple  # of (Fraction coefficient, variable name)
    op: str  # "<" | "<=" | "=="
    rhs: Fraction
    display: str

    def satisfied_by(self, assignment):
        lhs = sum(coef * assignment[var] for coef, var in self.terms)
        if self.op == "<":
            return lhs < self.rhs
        if self.op == "<=":
            return lhs <= self.rhs
        return lhs == self.rhs

    def render(self):
        return f"{self.tag}({self.rule}): {self.display}"


@dataclass
class WcetTable:
    """Worst-case execution times; transmission times live on the networks."""

    default: Fraction | None = Fraction(1)
    overrides: dict = field(default_factory=dict)  # (process_name, index) -> Fraction

    def of(self, process_name, index, slot_wcet=None):
        if slot_wcet is not None:
            return slot_wcet
        key = (process_name, index)
        if key in self.overrides:
            return self.overrides[key]
        if self.default is None:
            raise MissingWcet(f"no worst-case execution time for {process_name}@{rat_str(index)}")
        return self.default


def wcet_from_doc(doc) -> "WcetTable":
    """Parse {"format": "wcet-table", "default": 1, "overrides": {proc: {index: ms}}}."""
    from ..rational import to_rational

    default = doc.get("default")
    table = WcetTable(default=None if default is None else to_rational(default, "wcet default"))
    for pname, entries in doc.get("overrides", {}).items():
        for index, value in entries.items():
            table.overrides[(pname, to_rational(index, "wcet index"))] = to_rational(
                value, f"wcet {pname}@{index}"
            )
    return table


@dataclass
class TimingConstraintSystem:
    variables: dict  # name -> TimingVariable
    constraints: list
    prefer: dict  # name -> preferred value (least-modification hint)

    def dump(self):
        lines = [c.render() for c in self.constraints]
        return "\n".join(lines) + "\n"

    def violated_by(self, assignment):
        return [c for c in self.constraints if not c.satisfied_by(assignment)]

    def with_pins(self, pins):
        """A copy with extra equality constraints fixing chosen variables."""
        extra = [
            Constraint(
                tag="A",
                rule="pin",
                terms=((Fraction(1), name),),
                op="==",
                rhs=Fraction(value),
                display=f"{name} = {rat_str(value)}",
            )
            for name, value in pins.items()
        ]
        return TimingConstraintSystem(
            variables=dict(self.variables),
            constraints=list(self.constraints) + extra,
            prefer=dict(self.prefer),
        )


def _self_box_dim(process, index):
    return index, process.next_pc(index)


def _chosen_box_dim(pc_system, slot_action, dim):
    """The synthesized firing window of a slot in dimension `dim` (0-based)."""
    value = slot_action.chosen[dim]
    return value, pc_system.processes[dim].next_pc(value)


def _reads(pattern):
    names = set(pattern.guard.names)
    if hasattr(pattern, "expr"):
        names |= set(pattern.expr.names)
    if isinstance(pattern, Receive):
        names.add(pattern.var)
    if isinstance(pattern, Send):
        names.add(pattern.content)
    return names


class _Builder:
    def __init__(self):
        self.variables = {}
        self.constraints = []
        self.prefer = {}

    def var(self, process_name, index, role):
        tv = TimingVariable(process=process_name, index=index, role=role)
        self.variables[tv.name] = tv
        return tv.name

    def add(self, tag, rule, terms, op, rhs, display):
        self.constraints.append(
            Constraint(tag=tag, rule=rule, terms=tuple(terms), op=op, rhs=Fraction(rhs), display=display)
        )

    # readable helpers; every relation is normalized to <, <= or ==
    def lt(self, tag, rule, lesser, greater, gap=Fraction(0), strict=True):
        """lesser + gap  <  greater   (terms are (coef, var) lists; consts allowed)."""
        terms = {}
        rhs = Fraction(0) - gap

        def put(entry, sign):
            nonlocal rhs
            for coef, var in entry:
                if var is None:
                    rhs -= sign * coef
                else:
                    terms[var] = terms.get(var, Fraction(0)) + sign * coef

        put(lesser, Fraction(1))
        put(greater, Fraction(-1))

        def side(entry, extra=Fraction(0)):
            bits = []
            for coef, var in entry:
                if var is None:
                    extra += coef
                    continue
                if coef == 1:
                    bits.append(var)
                elif coef == -1:
                    bits.append(f"-{var}")
                else:
                    bits.append(f"{rat_str(coef)}*{var}")
            if extra:
                bits.append(rat_str(extra))
            return " + ".join(bits) if bits else "0"

        op = "<" if strict else "<="
        display = f"{side(lesser, gap)} {op} {side(greater)}"
        self.add(tag, rule, [(c, v) for v, c in terms.items()], op, rhs, display)

    def eq(self, tag, rule, left, right):
        terms = {}
        rhs = Fraction(0)
        for coef, var in left:
            if var is None:
                rhs -= coef
            else:
                terms[var] = terms.get(var, Fraction(0)) + coef
        for coef, var in right:
            if var is None:
                rhs += coef
            else:
                terms[var] = terms.get(var, Fraction(0)) - coef

        def side(entry):
            bits = []
            for coef, var in entry:
                if var is None:
                    bits.append(rat_str(coef))
                elif coef == 1:
                    bits.append(var)
                else:
                    bits.append(f"{rat_str(coef)}*{var}")
            return " + ".join(bits) if bits else "0"

        self.add(tag, rule, [(c, v) for v, c in terms.items()], "==", rhs, f"{side(left)} = {side(right)}")


def generate_ltm(
    original: TimedSystem,
    synthesized: PcSystem,
    wcet: WcetTable,
    arrival_margins: bool = False,
) -> TimingConstraintSystem:
    """Derive the linear constraint system for the synthesized repair actions."""
    b = _Builder()
    n = len(synthesized.processes)
    original_by = {}
    for pnum, p in enumerate(original.processes, start=1):
        for a in p.actions:
            original_by[(p.name, a.index)] = a

    # Released/split bookkeeping: (process name, index) -> variable names.
    alpha_var = {}
    beta_var = {}

    slots_by_gap = {}
    for pnum, p in enumerate(synthesized.processes, start=1):
        for a in p.actions:
            if a.is_slot:
                if a.pattern is None or a.chosen is None:
                    raise MissingWcet(
                        f"slot {p.name}@{rat_str(a.index)} has no synthesized pattern/window yet"
                    )
                gap = (p.name, Fraction(math.floor(a.index)))
                slots_by_gap.setdefault(gap, []).append((pnum, a))

    def slot_wcet_of(p, a):
        for pat, w in a.candidates:
            if pat == a.pattern:
                return wcet.of(p.name, a.index, slot_wcet=w)
        return wcet.of(p.name, a.index)

    # ---- Type A: per-gap structure ---------------------------------------
    for (pname, c), entries in sorted(slots_by_gap.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        entries.sort(key=lambda e: e[1].index)
        pnum = entries[0][0]
        p = synthesized.process(pnum)
        host_c = original_by[(pname, c)]
        host_d = original_by[(pname, c + 1)]
        gap_len = host_d.release - host_c.deadline
        case_split = gap_len <= 0

        slot_vars = []
        for _pn, a in entries:
            av = b.var(pname, a.index, "release")
            bv = b.var(pname, a.index, "deadline")
            alpha_var[(pname, a.index)] = av
            beta_var[(pname, a.index)] = bv
            slot_vars.append((a, av, bv))
            w = slot_wcet_of(p, a)
            b.lt("A", "4", [(Fraction(1), av)], [(Fraction(1), bv)], gap=w, strict=True)
            pat = a.pattern
            if isinstance(pat, Send):
                wcmtt = original.network(pat.network).wcmtt_of(pat.index)
                b.lt(
                    "A",
                    "p",
                    [(Fraction(1), bv)],
                    [(original.period, None)],
                    gap=wcmtt,
                    strict=True,
                )

        if case_split:
            hb = b.var(pname, c, "deadline")
            beta_var[(pname, Fraction(c))] = hb
            self_w = wcet.of(pname, Fraction(c))
            b.lt("A", "5", [(host_c.release + self_w, None)], [(Fraction(1), hb)], strict=True)
            b.eq("A", "1", [(Fraction(1), slot_vars[0][1])], [(Fraction(1), hb)])
            b.eq("A", "3", [(Fraction(1), slot_vars[-1][2])], [(host_c.deadline, None)])
            b.prefer[hb] = host_c.deadline
        else:
            b.lt(
                "A",
                "1",
                [(host_c.deadline, None)],
                [(Fraction(1), slot_vars[0][1])],
                strict=False,
            )
            b.lt(
                "A",
                "3",
                [(Fraction(1), slot_vars[-1][2])],
                [(host_d.release, None)],
                strict=False,
            )
        for (a_prev, _av0, bv0), (a_next, av1, _bv1) in zip(slot_vars, slot_vars[1:]):
            b.lt("A", "1+", [(Fraction(1), bv0)], [(Fraction(1), av1)], strict=False)

    # ---- reference helpers for type B/C -----------------------------------
    def alpha_ref(proc_name, index):
        key = (proc_name, index)
        if key in alpha_var:
            return [(Fraction(1), alpha_var[key])], True
        return [(original_by[key].release, None)], False

    def beta_ref(proc_name, index):
        key = (proc_name, index)
        if key in beta_var:
            return [(Fraction(1), beta_var[key])], True
        return [(original_by[key].deadline, None)], False

    # ---- Types B and C -----------------------------------------------------
    margin_rules = arrival_margins
    for pnum, p in enumerate(synthesized.processes, start=1):
        for f in p.actions:
            if not f.is_slot:
                continue
            fa = alpha_var[(p.name, f.index)]
            fb = beta_var[(p.name, f.index)]
            f_reads = _reads(f.pattern)
            for jnum, q in enumerate(synthesized.processes, start=1):
                if jnum == pnum:
                    continue
                f_lo, f_up = _chosen_box_dim(synthesized, f, jnum - 1)
                for dact in q.actions:
                    d_lo, d_up = _self_box_dim(q, dact.index)
                    d_beta, d_beta_isvar = beta_ref(q.name, dact.index)
                    d_alpha, _ = alpha_ref(q.name, dact.index)
                    rule_before = "9" if d_beta_isvar else "6"
                    rule_after = "10" if d_beta_isvar else "7"
                    rule_send = "11" if d_beta_isvar else "8"
                    if d_up < f_lo:
                        b.lt("B", rule_before, d_beta, [(Fraction(1), fa)], strict=True)
                    if d_lo > f_up:
                        b.lt("B", rule_after, [(Fraction(1), fb)], d_alpha, strict=True)
                        if isinstance(f.pattern, Send):
                            wcmtt = original.network(f.pattern.network).wcmtt_of(f.pattern.index)
                            b.lt("B", rule_send, [(Fraction(1), fb)], d_alpha, gap=wcmtt, strict=True)
                    # Message-arrival dependencies: d sends a variable f reads.
                    dpat = dact.pattern
                    if (
                        isinstance(dpat, Send)
                        and dpat.dest == pnum
                        and (dpat.remote_var in f_reads or f"{dpat.remote_var}_v" in f_reads)
                    ):
                        wcmtt = original.network(dpat.network).wcmtt_of(dpat.index)
                        if d_up < f_lo:
                            b.lt("C", "12", d_beta, [(Fraction(1), fa)], gap=wcmtt, strict=True)
                        elif margin_rules and d_up == f_lo:
                            b.lt("C", "12m", d_beta, [(Fraction(1), fa)], gap=wcmtt, strict=True)

    return TimingConstraintSystem(variables=b.variables, constraints=b.constraints, prefer=b.prefer)
