"""Exact feasibility over the rationals for the timing constraint systems.

Equalities are eliminated by substitution, inequalities by Fourier-Motzkin
elimination with strictness carried through every combination, so open
constraints are decided exactly rather than through a tolerance.  A concrete
witness is then rebuilt by back-substitution; inside an open interval the
midpoint is taken (an explicit rational slack, never an endpoint), and
preferred values - the original deadlines of split host actions - are kept
whenever the final interval allows them, which realizes the least-modification
preference.  Feasibility, not the particular witness, is the contract.
"""

from fractions import Fraction

from .constraints import TimingConstraintSystem


class _Row:
    """sum(coeffs) <= / < rhs."""

    __slots__ = ("coeffs", "rhs", "strict")

    def __init__(self, coeffs, rhs, strict):
        self.coeffs = coeffs
        self.rhs = rhs
        self.strict = strict

    def without(self, var):
        return {v: c for v, c in self.coeffs.items() if v != var}


def _rows_from(system: TimingConstraintSystem):
    equalities = []
    rows = []
    for c in system.constraints:
        coeffs = {}
        for coef, var in c.terms:
            coeffs[var] = coeffs.get(var, Fraction(0)) + coef
        coeffs = {v: k for v, k in coeffs.items() if k != 0}
        if c.op == "==":
            equalities.append((coeffs, c.rhs))
        else:
            rows.append(_Row(coeffs, c.rhs, c.op == "<"))
    return equalities, rows


def _substitute_eqs(equalities, rows, prefer):
    """Gaussian elimination on the equalities; returns (defs, rows) or None."""
    defs = []  # (var, coeffs-of-others, const): var = const - sum(coeffs)
    eqs = [(dict(c), r) for c, r in equalities]
    while eqs:
        coeffs, rhs = eqs.pop(0)
        coeffs = {v: k for v, k in coeffs.items() if k != 0}
        if not coeffs:
            if rhs != 0:
                return None
            continue
        # Eliminate a non-preferred variable when possible.
        names = sorted(coeffs)
        var = next((v for v in names if v not in prefer), names[0])
        k = coeffs[var]
        expr = {v: c / k for v, c in coeffs.items() if v != var}
        const = rhs / k
        defs.append((var, expr, const))

        def subst_into(target_coeffs, target_rhs):
            if var not in target_coeffs:
                return target_coeffs, target_rhs
            factor = target_coeffs.pop(var)
            for v, c in expr.items():
                target_coeffs[v] = target_coeffs.get(v, Fraction(0)) - factor * c
                if target_coeffs[v] == 0:
                    del target_coeffs[v]
            return target_coeffs, target_rhs - factor * const

        eqs = [subst_into(dict(c), r) for c, r in eqs]
        new_rows = []
        for row in rows:
            coeffs2, rhs2 = subst_into(dict(row.coeffs), row.rhs)
            new_rows.append(_Row(coeffs2, rhs2, row.strict))
        rows = new_rows
    return defs, rows


def _pick(lo, lo_strict, hi, hi_strict, prefer):
    if lo is None and hi is None:
        return prefer if prefer is not None else Fraction(0)
    if lo is None:
        if prefer is not None and (prefer < hi or (not hi_strict and prefer == hi)):
            return prefer
        return hi - 1 if hi_strict else hi
    if hi is None:
        if prefer is not None and (prefer > lo or (not lo_strict and prefer == lo)):
            return prefer
        return lo + 1 if lo_strict else lo
    if prefer is not None:
        above = prefer > lo or (not lo_strict and prefer == lo)
        below = prefer < hi or (not hi_strict and prefer == hi)
        if above and below:
            return prefer
    if lo == hi:
        return lo  # only reachable when both bounds are non-strict
    return (lo + hi) / 2


def solve_ltm(system: TimingConstraintSystem, prefer=None):
    """A satisfying rational assignment, or None when the system is infeasible."""
    prefer = dict(system.prefer if prefer is None else prefer)
    equalities, rows = _rows_from(system)
    out = _substitute_eqs(equalities, rows, prefer)
    if out is None:
        return None
    defs, rows = out

    remaining = sorted({v for row in rows for v in row.coeffs})
    # Eliminate preferred variables last so they are chosen first and freely.
    order = [v for v in remaining if v not in prefer] + [v for v in remaining if v in prefer]

    stages = []  # (var, lower rows, upper rows) in elimination order
    for var in order:
        lows, ups, rest = [], [], []
        for row in rows:
            k = row.coeffs.get(var, Fraction(0))
            if k == 0:
                rest.append(row)
            elif k > 0:
                ups.append(row)
            else:
                lows.append(row)
        stages.append((var, lows, ups))
        combined = list(rest)
        for lo_row in lows:
            for up_row in ups:
                kl = -lo_row.coeffs[var]
                ku = up_row.coeffs[var]
                coeffs = {}
                for v, c in lo_row.coeffs.items():
                    if v != var:
                        coeffs[v] = coeffs.get(v, Fraction(0)) + c / kl
                for v, c in up_row.coeffs.items():
                    if v != var:
                        coeffs[v] = coeffs.get(v, Fraction(0)) + c / ku
                coeffs = {v: c for v, c in coeffs.items() if c != 0}
                combined.append(
                    _Row(coeffs, lo_row.rhs / kl + up_row.rhs / ku, lo_row.strict or up_row.strict)
                )
        rows = combined

    for row in rows:  # only constants remain
        if row.coeffs:
            raise AssertionError("elimination left a variable behind")
        if row.strict and not (0 < row.rhs):
            return None
        if not row.strict and not (0 <= row.rhs):
            return None

    assignment = {}
    for var, lows, ups in reversed(stages):
        lo = hi = None
        lo_strict = hi_strict = False
        for row in lows:
            k = -row.coeffs[var]
            value = (sum(c * assignment[v] for v, c in row.coeffs.items() if v != var) - row.rhs) / k
            if lo is None or value > lo:
                lo, lo_strict = value, row.strict
            elif value == lo and row.strict:
                lo_strict = True
        for row in ups:
            k = row.coeffs[var]
            value = (row.rhs - sum(c * assignment[v] for v, c in row.coeffs.items() if v != var)) / k
            if hi is None or value < hi:
                hi, hi_strict = value, row.strict
            elif value == hi and row.strict:
                hi_strict = True
        assignment[var] = _pick(lo, lo_strict, hi, hi_strict, prefer.get(var))

    # Variables only mentioned through equalities get their defaults first so
    # the definition chain below always evaluates over known values.
    for _var, expr, _const in defs:
        for v in expr:
            if v not in assignment and all(v != dv for dv, _e, _c in defs):
                assignment[v] = prefer.get(v, Fraction(0))
    for var, expr, const in reversed(defs):
        assignment[var] = const - sum(c * assignment[v] for v, c in expr.items())

    for name in system.variables:
        assignment.setdefault(name, prefer.get(name, Fraction(0)))
    return assignment
