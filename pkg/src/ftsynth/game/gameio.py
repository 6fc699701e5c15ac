"""Text formats: explicit product games, strategies, and arena dumps."""

import json

from ..errors import ParseError
from .distributed import DistributedGame
from .local import LocalGame
from .strategy import Strategy

GAME_HEADER = "distributed-game v1"


def dump_game(game: DistributedGame) -> str:
    lines = [GAME_HEADER, f"mode {game.mode}", f"locals {len(game.locals)}"]
    for k, g in enumerate(game.locals):
        lines.append(f"local {k}")
        lines.append("  v0 " + " ".join(str(x) for x in g.v0))
        lines.append("  v1 " + " ".join(str(x) for x in g.v1))
        for u, v in g.edges:
            lines.append(f"  edge {u} {v}")
    for source, targets in game.env_edges.items():
        for t in targets:
            lines.append("env " + ",".join(source) + " -> " + ",".join(t))
    for s in game.init:
        lines.append("init " + ",".join(s))
    for s in game.goal:
        lines.append("goal " + ",".join(s))
    return "\n".join(lines) + "\n"


def load_game(text: str) -> DistributedGame:
    lines = [ln.rstrip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != GAME_HEADER:
        raise ParseError(f"expected header {GAME_HEADER!r}")
    mode = "simultaneous"
    locals_ = []
    env_edges = {}
    init, goal = [], []
    current = None
    for ln in lines[1:]:
        stripped = ln.strip()
        if stripped.startswith("mode "):
            mode = stripped.split()[1]
        elif stripped.startswith("locals "):
            continue
        elif stripped.startswith("local "):
            current = {"v0": (), "v1": (), "edges": []}
            locals_.append(current)
        elif stripped.startswith("v0"):
            current["v0"] = tuple(stripped.split()[1:])
        elif stripped.startswith("v1"):
            current["v1"] = tuple(stripped.split()[1:])
        elif stripped.startswith("edge "):
            _kw, u, v = stripped.split()
            current["edges"].append((u, v))
        elif stripped.startswith("env "):
            body = stripped[4:]
            src, _, dst = body.partition(" -> ")
            env_edges.setdefault(tuple(src.split(",")), []).append(tuple(dst.split(",")))
        elif stripped.startswith("init "):
            init.append(tuple(stripped.split()[1].split(",")))
        elif stripped.startswith("goal "):
            goal.append(tuple(stripped.split()[1].split(",")))
        else:
            raise ParseError(f"unrecognized line in game file: {ln!r}")
    games = [LocalGame(d["v0"], d["v1"], tuple(d["edges"])) for d in locals_]
    return DistributedGame(locals=games, env_edges=env_edges, init=tuple(init), goal=tuple(goal), mode=mode)


def dump_strategy(game, strategy: Strategy) -> str:
    """Strategies serialize per selection point; points never mention other
    components' state, so the file doubles as a locality witness."""
    points = []
    for point, idx in strategy.items():
        points.append(
            {
                "point": list(point) if isinstance(point, tuple) else point,
                "point_label": game.describe_point(point),
                "option": idx,
                "option_label": game.describe_option(point, idx),
            }
        )
    points.sort(key=lambda e: e["point_label"])
    return json.dumps({"format": "strategy", "version": 1, "points": points}, indent=2) + "\n"


def load_strategy_for_game(game: DistributedGame, text: str) -> Strategy:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"strategy file is not valid JSON: {exc}") from exc
    if doc.get("format") != "strategy":
        raise ParseError('expected document format "strategy"')
    choices = {}
    for entry in doc.get("points", []):
        raw = entry["point"]
        point = (int(raw[0]), raw[1])
        choices[point] = int(entry["option"])
    return Strategy(choices)


def dump_arena(arena) -> str:
    """Flat debug dump: one vertex per line with its turn tag, then edges."""
    lines = [f"arena vertices={arena.n_vertices()} mode={arena.mode}"]
    for v in arena.vertices():
        tag = "env" if arena.is_env[v] else "ctl"
        marks = []
        if v in arena.goal:
            marks.append("goal")
        if v in arena.init:
            marks.append("init")
        suffix = (" [" + ",".join(marks) + "]") if marks else ""
        lines.append(f"v{v} {tag} {arena.describe(v)}{suffix}")
    for v in arena.vertices():
        if arena.is_env[v]:
            for s in arena.env_succ[v]:
                lines.append(f"e v{v} -> v{s} (env)")
        else:
            for selection, s in arena.moves[v]:
                label = "+".join(
                    arena.game.describe_option(point, idx) for point, idx in selection
                )
                lines.append(f"e v{v} -> v{s} ({label})")
    return "\n".join(lines) + "\n"
