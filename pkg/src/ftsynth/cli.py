"""Batch front door.

Subcommands: synthesize (the full pipeline), verify (strategy against an
explicit game file), reduce3sat (emit the hardness game for a DIMACS CNF),
simulate (one-period fault simulation), ltm (standalone timing repair).
Exit codes: 0 success / positive verdict, 1 negative verdict, 2 usage or
parse error, 3 state budget exceeded.
"""

import argparse
import json
import sys
from pathlib import Path

from . import errors
from .game.arena import materialize
from .game.gameio import dump_game, load_game, load_strategy_for_game
from .game.sat3 import Cnf3, reduce_3sat
from .game.strategy import verify_strategy
from .model.core import validate
from .model.docio import model_from_doc
from .model.simulate import ExhaustivePolicy, RandomPolicy, simulate
from .pipeline import PipelineConfig, SynthesisResult, synthesize, write_outputs
from .rational import rat_str
from .solver.dimacs import load_dimacs
from .timing.constraints import WcetTable, generate_ltm, wcet_from_doc
from .timing.solve import solve_ltm
from .translate.io import pc_system_from_doc

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise errors.ParseError(f"cannot read {path}: {exc}") from exc


def _load_model(args):
    doc = model_from_doc(_read(args.model))
    if getattr(args, "faults", None):
        fault_doc = json.loads(_read(args.faults))
        full = json.loads(_read(args.model))
        full["faults"] = fault_doc.get("faults", fault_doc if isinstance(fault_doc, list) else [])
        doc = model_from_doc(full)
    return doc


def cmd_synthesize(args):
    doc = _load_model(args)
    templates = _read(args.templates)
    wcet = WcetTable()
    if args.wcet:
        wcet = wcet_from_doc(json.loads(_read(args.wcet)))
    config = PipelineConfig(
        solver=args.solver,
        depth=args.depth,
        state_cap=args.state_cap,
        seed=args.seed,
        can_override=args.can_override,
        emit_dimacs=args.emit_dimacs,
        emit_game=args.emit_game,
        wcet=wcet,
    )
    try:
        result = synthesize(doc, templates, config)
    except (errors.SynthesisFailed, errors.CanCheckFailed) as exc:
        failed = exc.stage if isinstance(exc, errors.SynthesisFailed) else "bus-check"
        print(json.dumps({"verdict": "failed", "stage": failed, "reason": str(exc)}, indent=2))
        return EXIT_NEGATIVE
    write_outputs(result, args.out_dir, config)
    print(json.dumps(result.report.to_doc(), indent=2))
    return EXIT_OK


def cmd_verify(args):
    game = load_game(_read(args.game))
    diags = game.validate()
    if diags:
        raise errors.ParseError("; ".join(diags))
    arena = materialize(game, cap=args.state_cap)
    strategy = load_strategy_for_game(game, _read(args.strategy))
    ok = verify_strategy(arena, strategy)
    print(json.dumps({"winning": ok}))
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_reduce3sat(args):
    nvars, clauses = load_dimacs(_read(args.cnf))
    cnf = Cnf3(n_vars=nvars, clauses=tuple(tuple(c) for c in clauses))
    game = reduce_3sat(cnf)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "game.txt"
    path.write_text(dump_game(game))
    sizes = [len(g.v0) + len(g.v1) for g in game.locals]
    print(
        json.dumps(
            {"game": str(path), "local_sizes": sizes, "product_vertices": game.product_size()}
        )
    )
    return EXIT_OK


def cmd_simulate(args):
    doc = _load_model(args)
    diags = validate(doc.system, doc.faults)
    if diags:
        raise errors.ParseError("; ".join(diags))
    if doc.goal is None:
        raise errors.ParseError("the model document declares no goal")
    if args.mode == "random":
        policy = RandomPolicy(seed=args.seed, samples=args.samples)
    else:
        policy = ExhaustivePolicy(state_cap=args.state_cap)
    verdict = simulate(doc.system, doc.faults, doc.goal, policy)
    if verdict.always_reached:
        print(json.dumps({"verdict": "always-reached", "explored": verdict.explored}))
        return EXIT_OK
    print(json.dumps({"verdict": "counterexample", "explored": verdict.explored}))
    print(verdict.counterexample.render(), file=sys.stderr)
    if args.trace_out:
        Path(args.trace_out).write_text(verdict.counterexample.render() + "\n")
    return EXIT_NEGATIVE


def cmd_ltm(args):
    doc = model_from_doc(_read(args.model))
    synthesized = pc_system_from_doc(_read(args.synthesized))
    wcet = WcetTable()
    if args.wcet:
        wcet = wcet_from_doc(json.loads(_read(args.wcet)))
    system_c = generate_ltm(doc.system, synthesized, wcet, arrival_margins=args.arrival_margins)
    sys.stdout.write(system_c.dump())
    assignment = solve_ltm(system_c)
    if assignment is None:
        print(json.dumps({"feasible": False}))
        return EXIT_NEGATIVE
    for name, value in sorted(assignment.items()):
        print(f"{name} = {rat_str(value)}")
    print(json.dumps({"feasible": True}))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="ftsynth", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synthesize", help="run the full synthesis pipeline")
    p.add_argument("--model", required=True)
    p.add_argument("--templates", required=True)
    p.add_argument("--faults", help="separate fault hypothesis document (overrides the model's)")
    p.add_argument("--wcet", help="worst-case execution time table")
    p.add_argument("--solver", default="search", choices=["search", "sat-simultaneous", "sat-interleaved"])
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--state-cap", type=int, default=500_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--can-override", action="store_true")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--emit-dimacs", action="store_true")
    p.add_argument("--emit-game", action="store_true")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("verify", help="check a strategy against an explicit game")
    p.add_argument("--game", required=True)
    p.add_argument("--strategy", required=True)
    p.add_argument("--state-cap", type=int, default=500_000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce3sat", help="emit the strategy-existence game of a 3-CNF")
    p.add_argument("--cnf", required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_reduce3sat)

    p = sub.add_parser("simulate", help="one-period fault simulation")
    p.add_argument("--model", required=True)
    p.add_argument("--faults")
    p.add_argument("--mode", default="exhaustive", choices=["exhaustive", "random"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--state-cap", type=int, default=500_000)
    p.add_argument("--trace-out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("ltm", help="standalone timing repair")
    p.add_argument("--model", required=True, help="the original concrete system")
    p.add_argument("--synthesized", required=True, help="the synthesized abstraction document")
    p.add_argument("--wcet")
    p.add_argument("--arrival-margins", action="store_true")
    p.set_defaults(func=cmd_ltm)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except errors.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except errors.StateCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except errors.FtsynthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
