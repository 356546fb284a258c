"""Command-line interface: run tasks, compare grammars, replay, render, inspect URDF, serve."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..planner import ProviderConfig, TranscriptStore
from ..render import Viewpoint, frame_stack, render_view
from ..robot import parse_urdf, reach_check, summary_text, to_mermaid
from ..world import load_world
from ..worlds import BUILTIN_WORLDS, builtin_world
from .tasks import (
    EvalResult,
    compare_strategies,
    comparison_csv,
    load_task,
    run_task,
)


def load_config(path: str | None) -> ProviderConfig | None:
    if not path:
        return None
    data = json.loads(Path(path).read_text())
    p = data.get("provider", data)
    return ProviderConfig(
        endpoint=p["endpoint"],
        model=p["model"],
        credential_env=p.get("credential_env", "LANGARM_API_KEY"),
        timeout_s=float(p.get("timeout_s", 30.0)),
        max_retries=int(p.get("max_retries", 2)),
    )


def _print_result(result: EvalResult) -> None:
    print(
        f"task={result.task_id} success={result.success} "
        f"error_m={result.final_error_m:.3f} time_s={result.generation_time_s:.3f} "
        f"collisions={result.collision_count}"
    )
    for v in result.verdicts:
        print(f"  [{v.severity}] {v.summary} {v.reason}")


def _resolve_world_arg(name: str):
    if name in BUILTIN_WORLDS:
        return builtin_world(name)
    return load_world(name)


def cmd_run(args) -> int:
    spec = load_task(args.task)
    if args.planner:
        spec = spec.__class__(**{**spec.__dict__, "planner": args.planner})
    if args.strategy:
        spec = spec.__class__(**{**spec.__dict__, "strategy": args.strategy})
    store = TranscriptStore(args.transcript) if args.transcript else None
    result = run_task(spec, provider=load_config(args.config), store=store)
    _print_result(result)
    return 0 if result.success else 1


def cmd_compare(args) -> int:
    specs = [load_task(p) for p in args.tasks]
    rows = compare_strategies(specs, runs=args.runs, seed=args.seed)
    print(f"{'task':<12} {'strategy':<10} {'time_s':>8} {'error_m':>9} {'success':>8}")
    for r in rows:
        print(
            f"{r['task']:<12} {r['strategy']:<10} {r['mean_time_s']:>8.3f} "
            f"{r['mean_error_m']:>9.4f} {r['success_rate']:>8.2f}"
        )
    if args.out:
        Path(args.out).write_text(comparison_csv(rows))
        print(f"wrote {args.out}")
    return 0


def cmd_replay(args) -> int:
    store = TranscriptStore(args.corpus)
    failures = 0
    for path in args.tasks:
        spec = load_task(path)
        spec = spec.__class__(**{**spec.__dict__, "planner": "replay"})
        result = run_task(spec, store=store)
        _print_result(result)
        failures += 0 if result.success else 1
    return 0 if failures == 0 else 1


def cmd_render(args) -> int:
    world = _resolve_world_arg(args.world)
    view = Viewpoint(args.view, scale=args.scale)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.stride:
        stack = frame_stack([world], args.stride, [view])
        manifest = stack.write_manifest(out)
        print(f"wrote {manifest}")
    else:
        img = render_view(world, view)
        target = out / "scene.ppm"
        img.save_ppm(target)
        print(f"wrote {target}")
    return 0


def cmd_urdf(args) -> int:
    model = parse_urdf(Path(args.file).read_text())
    if args.mermaid:
        print(to_mermaid(model))
    if args.reach:
        x, y, z = (float(v) for v in args.reach.split(","))
        result = reach_check(model, (0.0, 0.0, 0.0), (x, y, z))
        if result.status == "out_of_reach":
            print(f"out_of_reach deficit_mm={result.deficit_mm:.1f}")
        elif result.status == "near_singularity":
            print(f"near_singularity margin_mm={result.margin_mm:.1f}")
        else:
            print("reachable")
    if not args.mermaid and not args.reach:
        print(summary_text(model))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(provider=load_config(args.config))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="langarm",
        description="Natural-language control patterns with a deterministic desk simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one task file and print its evaluation")
    p.add_argument("task", help="task JSON file")
    p.add_argument("--planner", choices=["mock", "remote", "replay"])
    p.add_argument("--strategy", choices=["improved", "baseline"])
    p.add_argument("--transcript", help="record/replay transcript JSONL path")
    p.add_argument("--config", help="provider config JSON (remote planner)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("compare", help="compare both grammars over repeated runs")
    p.add_argument("tasks", nargs="+", help="task JSON files")
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write CSV here")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("replay", help="re-run tasks against a recorded corpus")
    p.add_argument("corpus", help="transcript JSONL file")
    p.add_argument("tasks", nargs="+", help="task JSON files")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("render", help="render a world to image files")
    p.add_argument("world", help="builtin world name or world JSON file")
    p.add_argument("--view", default="top", choices=["top", "front", "side"])
    p.add_argument("--scale", type=float, default=0.2)
    p.add_argument("--stride", type=int, default=0)
    p.add_argument("--out", default="frames")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("urdf", help="inspect a URDF file")
    p.add_argument("file")
    p.add_argument("--mermaid", action="store_true", help="print the hierarchy flowchart")
    p.add_argument("--reach", help="check a target, e.g. --reach 800,0,0")
    p.set_defaults(func=cmd_urdf)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8321)
    p.add_argument("--config", help="provider config JSON (remote planner)")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
