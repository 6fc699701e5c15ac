"""DIMACS CNF export/import, the sidecar variable map, and external solving.

The external protocol is plain: the solver command is run with the CNF path
as its last argument and must print either the SAT-competition format
("s SATISFIABLE" plus "v ..." lines) or a bare "SAT\\n<model> 0" / "UNSAT".
"""

import shlex
import subprocess
import tempfile
from pathlib import Path

from ..errors import BackendUnavailable, MalformedDimacs
from .encode import CnfInstance


def dump_dimacs(instance) -> str:
    if isinstance(instance, CnfInstance):
        nvars, clauses = instance.nvars, instance.clauses
    else:
        nvars, clauses = instance
    lines = [f"p cnf {nvars} {len(clauses)}"]
    for clause in clauses:
        lines.append(" ".join(str(l) for l in clause) + " 0")
    return "\n".join(lines) + "\n"


def dump_varmap(instance: CnfInstance) -> str:
    """Sidecar text mapping DIMACS indices to vertex/edge labels."""
    lines = []
    for var in range(1, instance.nvars + 1):
        label = instance.labels.get(var, "?")
        lines.append(f"{var} {label}")
    return "\n".join(lines) + "\n"


def load_dimacs(text: str):
    """Parse DIMACS back into (nvars, clauses)."""
    nvars = None
    nclauses = None
    clauses = []
    current = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise MalformedDimacs(f"bad problem line: {raw!r}")
            nvars, nclauses = int(parts[2]), int(parts[3])
            continue
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError as exc:
                raise MalformedDimacs(f"bad literal {tok!r}") from exc
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if current:
        raise MalformedDimacs("final clause is not 0-terminated")
    if nvars is None:
        raise MalformedDimacs("missing 'p cnf' problem line")
    if nclauses is not None and nclauses != len(clauses):
        raise MalformedDimacs(f"header declares {nclauses} clauses, found {len(clauses)}")
    for clause in clauses:
        for lit in clause:
            if abs(lit) > nvars:
                raise MalformedDimacs(f"literal {lit} exceeds declared variable count {nvars}")
    return nvars, clauses


def parse_solver_output(text: str, nvars: int):
    """Interpret a solver's stdout; returns a model dict or None for unsat."""
    status = None
    lits = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("s ") or line in ("SAT", "SATISFIABLE", "UNSAT", "UNSATISFIABLE"):
            token = line[2:] if line.startswith("s ") else line
            if token.startswith("SATISFIABLE") or token == "SAT":
                status = True
            elif token.startswith("UNSAT") or token == "UNSATISFIABLE":
                status = False
            continue
        if line.startswith("v "):
            line = line[2:]
        if status is not False and all(
            t.lstrip("-").isdigit() for t in line.split()
        ) and line.split():
            lits.extend(int(t) for t in line.split())
    if status is None:
        raise MalformedDimacs("solver output carries no SAT/UNSAT verdict")
    if status is False:
        return None
    model = {v: False for v in range(1, nvars + 1)}
    for lit in lits:
        if lit == 0:
            continue
        if abs(lit) > nvars:
            raise MalformedDimacs(f"model literal {lit} out of range")
        model[abs(lit)] = lit > 0
    return model


def run_external(command, nvars, clauses):
    """Round-trip through DIMACS and an external solver command."""
    with tempfile.TemporaryDirectory(prefix="ftsynth-cnf-") as tmp:
        cnf_path = Path(tmp) / "instance.cnf"
        cnf_path.write_text(dump_dimacs((nvars, clauses)))
        argv = shlex.split(command) + [str(cnf_path)]
        try:
            proc = subprocess.run(argv, capture_output=True, text=True, timeout=600)
        except FileNotFoundError as exc:
            raise BackendUnavailable(f"cannot run external solver {argv[0]!r}") from exc
        except OSError as exc:
            raise BackendUnavailable(f"cannot run external solver: {exc}") from exc
        return parse_solver_output(proc.stdout, nvars)
