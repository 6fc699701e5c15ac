"""Write a solved timing assignment back into a concrete timed system."""

from dataclasses import replace
from fractions import Fraction

from ..errors import RefinementViolation
from ..model.core import Process, TimedAction, TimedSystem, validate
from ..rational import rat_str
from ..translate.bounds import PcSystem, compute_pc_bounds


def _var(role, process_name, index):
    prefix = "alpha" if role == "release" else "beta"
    return f"{prefix}[{process_name}@{rat_str(index)}]"


def apply_timing(
    original: TimedSystem, synthesized: PcSystem, assignment, check: bool = True
) -> TimedSystem:
    """Concrete system with repair actions scheduled per `assignment`.

    Split host actions take their new deadlines; untouched actions keep their
    original windows verbatim.  With `check`, the result must validate and its
    recomputed PC windows must imply the synthesized ones.
    """
    processes = []
    for pnum, p in enumerate(synthesized.processes, start=1):
        orig = original.process(pnum)
        actions = []
        for a in p.actions:
            if a.is_slot:
                alpha = assignment[_var("release", p.name, a.index)]
                beta = assignment[_var("deadline", p.name, a.index)]
                actions.append(
                    TimedAction(index=a.index, pattern=a.pattern, release=Fraction(alpha), deadline=Fraction(beta))
                )
            else:
                host = next(x for x in orig.actions if x.index == a.index)
                beta_name = _var("deadline", p.name, a.index)
                beta = Fraction(assignment[beta_name]) if beta_name in assignment else host.deadline
                actions.append(replace(host, deadline=beta))
        processes.append(
            Process(
                name=p.name,
                variables=p.variables,
                env_variables=p.env_variables,
                actions=tuple(sorted(actions, key=lambda x: x.index)),
            )
        )
    result = TimedSystem(period=original.period, processes=tuple(processes), networks=original.networks)
    if check:
        diags = validate(result)
        if diags:
            raise RefinementViolation("scheduled system fails validation: " + "; ".join(diags))
        check_refinement(result, synthesized)
    return result


def check_refinement(result: TimedSystem, synthesized: PcSystem):
    """Recomputed PC windows must fit inside the synthesized legal windows."""
    bounds = compute_pc_bounds(result)
    for pnum, p in enumerate(synthesized.processes, start=1):
        for a in p.actions:
            new_box = bounds.action_box(pnum, a.index)
            for j in range(len(synthesized.processes)):
                if not (new_box.lo[j] >= a.box.lo[j] and new_box.up[j] <= a.box.up[j]):
                    raise RefinementViolation(
                        f"{p.name}@{rat_str(a.index)} dimension {j + 1}: concrete window "
                        f"[{rat_str(new_box.lo[j])},{rat_str(new_box.up[j])}) leaves the "
                        f"synthesized window [{rat_str(a.box.lo[j])},{rat_str(a.box.up[j])})",
                        action=(p.name, a.index),
                        dimension=j + 1,
                    )
    for nnum, net in enumerate(synthesized.networks, start=1):
        for ind, box in net.boxes:
            if (nnum, ind) not in bounds.messages:
                continue
            new_box = bounds.messages[(nnum, ind)]
            for j in range(len(synthesized.processes)):
                if not (new_box.lo[j] >= box.lo[j] and new_box.up[j] <= box.up[j]):
                    raise RefinementViolation(
                        f"message {ind} of network {nnum} dimension {j + 1}: concrete window "
                        f"leaves the synthesized window",
                        action=("message", nnum, ind),
                        dimension=j + 1,
                    )
