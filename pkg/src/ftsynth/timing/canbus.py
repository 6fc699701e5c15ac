"""Bus admission check for newly introduced repair messages.

On a priority bus (message index = priority), existing worst-case
transmission times stay valid when (1) the designated priority level k is not
used by any existing message, (2) the payload size reserved at level k is at
least every existing size at levels 1..k-1, and (3) every repair message uses
priority at most k with payload at most the reserved size.  Condition (1)
keeps level k free of pre-existing blocking, (2) makes the reserved slot the
worst blocker anyone already accounted for, and (3) keeps newcomers inside
that envelope.
"""

from dataclasses import dataclass

from ..errors import ParseError


@dataclass(frozen=True)
class CanBusProfile:
    existing: tuple  # of (priority, size)
    ft: tuple  # of (priority, size)
    reserved_priority: int
    reserved_size: int


@dataclass(frozen=True)
class CanVerdict:
    safe: bool
    violations: tuple  # of (condition_number, message)


def check_can_conditions(profile: CanBusProfile) -> CanVerdict:
    """Pure verdict; listing order of messages never matters."""
    violations = []
    k = profile.reserved_priority
    for priority, _size in sorted(profile.existing):
        if priority == k:
            violations.append((1, f"existing message already uses reserved priority {k}"))
            break
    for priority, size in sorted(profile.existing):
        if priority < k and size > profile.reserved_size:
            violations.append(
                (2, f"existing message at priority {priority} has size {size} > reserved {profile.reserved_size}")
            )
            break
    for priority, size in sorted(profile.ft):
        if priority > k:
            violations.append((3, f"repair message priority {priority} exceeds reserved level {k}"))
            break
        if size > profile.reserved_size:
            violations.append(
                (3, f"repair message at priority {priority} has size {size} > reserved {profile.reserved_size}")
            )
            break
    return CanVerdict(safe=not violations, violations=tuple(violations))


def profile_from_parts(can_doc, existing_indices, ft_indices) -> CanBusProfile:
    """Assemble a profile from the model document section and the used indices."""
    if can_doc is None:
        raise ParseError("no bus profile section in the model document")
    k = int(can_doc.get("reserved_priority", 0))
    if k <= 0:
        raise ParseError("bus profile needs a positive reserved_priority")
    sizes = {int(i): int(s) for i, s in can_doc.get("sizes", {}).items()}
    reserved_size = int(can_doc.get("reserved_size", sizes.get(k, 0)))
    if reserved_size <= 0:
        raise ParseError("bus profile needs a positive reserved_size")

    def size_of(index):
        if index not in sizes:
            raise ParseError(f"bus profile has no size for message index {index}")
        return sizes[index]

    existing = tuple(sorted((i, size_of(i)) for i in existing_indices))
    ft = tuple(sorted((i, size_of(i)) for i in ft_indices))
    return CanBusProfile(existing=existing, ft=ft, reserved_priority=k, reserved_size=reserved_size)
