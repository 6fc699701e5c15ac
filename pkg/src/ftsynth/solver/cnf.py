"""Complete propositional satisfiability: embedded CDCL plus an external hook.

The embedded solver is a conflict-driven clause learner with two watched
literals per clause, first-UIP learning, activity-based decisions with decay,
phase saving and geometric restarts.  It is deterministic.
"""

from .encode import CnfInstance
from ..errors import BackendUnavailable


class _Cdcl:
    def __init__(self, nvars, clauses):
        self.nvars = nvars
        self.assign = [0] * (nvars + 1)  # 0 unknown, 1 true, -1 false
        self.level = [0] * (nvars + 1)
        self.reason = [None] * (nvars + 1)
        self.phase = [False] * (nvars + 1)
        self.activity = [0.0] * (nvars + 1)
        self.bump = 1.0
        self.clauses = []
        self.watches = {}  # literal -> list of clause indices watching it
        self.trail = []
        self.trail_lim = []
        self.prop_head = 0
        self.ok = True
        self.units = []
        for clause in clauses:
            lits = sorted(set(clause), key=abs)
            if any(-l in lits for l in lits):
                continue  # tautology
            if not lits:
                self.ok = False
                return
            if len(lits) == 1:
                self.units.append(lits[0])
            else:
                self._add_watched(lits)

    def _add_watched(self, lits):
        idx = len(self.clauses)
        self.clauses.append(lits)
        self.watches.setdefault(lits[0], []).append(idx)
        self.watches.setdefault(lits[1], []).append(idx)
        return idx

    def _value(self, lit):
        v = self.assign[abs(lit)]
        if v == 0:
            return 0
        return v if lit > 0 else -v

    def _enqueue(self, lit, reason):
        var = abs(lit)
        self.assign[var] = 1 if lit > 0 else -1
        self.level[var] = len(self.trail_lim)
        self.reason[var] = reason
        self.phase[var] = lit > 0
        self.trail.append(lit)

    def _propagate(self):
        while self.prop_head < len(self.trail):
            lit = self.trail[self.prop_head]
            self.prop_head += 1
            falsified = -lit
            watchlist = self.watches.get(falsified, [])
            kept = []
            i = 0
            while i < len(watchlist):
                ci = watchlist[i]
                i += 1
                clause = self.clauses[ci]
                if clause[0] == falsified:
                    clause[0], clause[1] = clause[1], clause[0]
                # clause[1] == falsified now
                if self._value(clause[0]) == 1:
                    kept.append(ci)
                    continue
                moved = False
                for k in range(2, len(clause)):
                    if self._value(clause[k]) != -1:
                        clause[1], clause[k] = clause[k], clause[1]
                        self.watches.setdefault(clause[1], []).append(ci)
                        moved = True
                        break
                if moved:
                    continue
                kept.append(ci)
                first = self._value(clause[0])
                if first == -1:
                    kept.extend(watchlist[i:])
                    self.watches[falsified] = kept
                    return ci
                if first == 0:
                    self._enqueue(clause[0], ci)
            self.watches[falsified] = kept
        return None

    def _analyze(self, conflict_ci):
        # First-UIP learning: resolve backwards over the trail until exactly
        # one literal of the current decision level remains.
        learned = []
        seen = [False] * (self.nvars + 1)
        counter = 0
        resolving = None  # literal whose reason clause is being expanded
        ci = conflict_ci
        pos = len(self.trail) - 1
        current_level = len(self.trail_lim)
        while True:
            for q in self.clauses[ci]:
                if resolving is not None and q == resolving:
                    continue
                var = abs(q)
                if not seen[var] and self.level[var] > 0:
                    seen[var] = True
                    self.activity[var] += self.bump
                    if self.level[var] >= current_level:
                        counter += 1
                    else:
                        learned.append(q)
            while not seen[abs(self.trail[pos])]:
                pos -= 1
            resolving = self.trail[pos]
            var = abs(resolving)
            seen[var] = False
            pos -= 1
            counter -= 1
            if counter == 0:
                break
            ci = self.reason[var]
        learned.insert(0, -resolving)
        if len(learned) == 1:
            return learned, 0
        back = max(self.level[abs(q)] for q in learned[1:])
        return learned, back

    def _backjump(self, level):
        while len(self.trail_lim) > level:
            lim = self.trail_lim.pop()
            while len(self.trail) > lim:
                lit = self.trail.pop()
                self.assign[abs(lit)] = 0
                self.reason[abs(lit)] = None
        self.prop_head = min(self.prop_head, len(self.trail))

    def _decide(self):
        best, best_act = 0, -1.0
        for var in range(1, self.nvars + 1):
            if self.assign[var] == 0 and self.activity[var] > best_act:
                best, best_act = var, self.activity[var]
        if best == 0:
            return 0
        return best if self.phase[best] else -best

    def solve(self):
        if not self.ok:
            return None
        for lit in self.units:
            if self._value(lit) == -1:
                return None
            if self._value(lit) == 0:
                self._enqueue(lit, None)
        conflicts_until_restart = 128
        conflicts = 0
        while True:
            conflict = self._propagate()
            if conflict is not None:
                if not self.trail_lim:
                    return None
                conflicts += 1
                learned, back = self._analyze(conflict)
                self._backjump(back)
                if len(learned) == 1:
                    if self._value(learned[0]) == -1:
                        return None
                    if self._value(learned[0]) == 0:
                        self._enqueue(learned[0], None)
                else:
                    # Watch the asserting literal and one literal from the backjump level.
                    for k in range(1, len(learned)):
                        if self.level[abs(learned[k])] == back:
                            learned[1], learned[k] = learned[k], learned[1]
                            break
                    ci = self._add_watched(learned)
                    self._enqueue(learned[0], ci)
                self.bump *= 1.05
                if self.bump > 1e100:
                    self.activity = [a / self.bump for a in self.activity]
                    self.bump = 1.0
                if conflicts >= conflicts_until_restart:
                    conflicts = 0
                    conflicts_until_restart = int(conflicts_until_restart * 1.5)
                    self._backjump(0)
            else:
                lit = self._decide()
                if lit == 0:
                    return {v: self.assign[v] == 1 for v in range(1, self.nvars + 1)}
                self.trail_lim.append(len(self.trail))
                self._enqueue(lit, None)


def solve_cnf(instance, backend="embedded", command=None):
    """Solve a CnfInstance or (nvars, clauses) pair.

    Returns a total model as {var: bool}, or None when unsatisfiable.  The
    external backend shells out to `command` on a DIMACS file.
    """
    if isinstance(instance, CnfInstance):
        nvars, clauses = instance.nvars, instance.clauses
    else:
        nvars, clauses = instance
    if backend == "embedded":
        return _Cdcl(nvars, clauses).solve()
    if backend == "external":
        from .dimacs import run_external

        if not command:
            raise BackendUnavailable("external backend requested but no solver command given")
        return run_external(command, nvars, clauses)
    raise BackendUnavailable(f"unknown backend {backend!r}")
