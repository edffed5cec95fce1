"""Command-line interface.

Subcommands: simulate, serve, analyze, viz, replay-study. The data
directory defaults to $MOODS_DATA_DIR when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import analysis
from .dataset import StudyDataset
from .sim import SimConfig, paper_calibrated_config, simulate
from .storage import write_jsonl
from .viz import assemble_bundle, write_bundle


def _data_dir(value: str | None) -> Path:
    path = value or os.environ.get("MOODS_DATA_DIR")
    if not path:
        raise SystemExit("no data directory: pass --data or set MOODS_DATA_DIR")
    return Path(path)


def _write_json(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=1, sort_keys=True), encoding="utf-8")


def cmd_simulate(args) -> int:
    if args.config:
        config = SimConfig.from_file(args.config)
    else:
        config = paper_calibrated_config()
    if args.seed is not None:
        config.seed = args.seed
    result = simulate(config)
    out = Path(args.out)
    data_dir = out / "data"
    result.dataset.save(data_dir)
    _write_json(out / "truths.json", result.truths)
    (out / "config.json").write_text(config.to_json(), encoding="utf-8")
    exports = out / "exports"
    write_jsonl(exports / "events.jsonl",
                (e.to_record() for e in sorted(result.dataset.events.values(),
                                               key=lambda e: (e.start, e.event_id))))
    write_jsonl(exports / "annotations.jsonl",
                (a.to_record() for a in sorted(result.dataset.annotations.values(),
                                               key=lambda a: (a.created_at, a.event_id))))
    write_jsonl(exports / "surveys.jsonl", (s.to_record() for s in result.dataset.surveys))
    print(f"simulated {len(result.dataset.participants)} participants -> {data_dir}")
    print(f"events={len(result.dataset.events)} annotations={len(result.dataset.annotations)} "
          f"surveys={len(result.dataset.surveys)}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    tokens = {}
    if args.tokens:
        tokens = json.loads(Path(args.tokens).read_text(encoding="utf-8"))
    app = create_app(str(_data_dir(args.data)), tokens=tokens)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def cmd_analyze(args) -> int:
    ds = StudyDataset.load(_data_dir(args.input))
    n_weeks = args.weeks
    if args.kind == "trends":
        report = analysis.trends_report(ds, n_weeks)
    elif args.kind == "lmm":
        report = {
            "intensity": analysis.intensity_lmm(ds, n_weeks).to_record(),
            "frequency": analysis.frequency_lmm(ds, n_weeks).to_record(),
        }
    elif args.kind == "its":
        report = analysis.its_report(ds).to_record()
    elif args.kind == "retention":
        report = analysis.retention_report(ds)
    else:  # argparse choices guard this
        raise SystemExit(f"unknown analysis: {args.kind}")
    _write_json(Path(args.out), report)
    print(f"wrote {args.kind} report -> {args.out}")
    return 0


def cmd_viz(args) -> int:
    ds = StudyDataset.load(_data_dir(args.data))
    bundle = assemble_bundle(ds, args.participant, args.week)
    manifest = write_bundle(bundle, Path(args.out))
    print(f"wrote {len(bundle.charts)} charts -> {manifest.parent}")
    return 0


def cmd_replay_study(args) -> int:
    started = time.perf_counter()
    config = SimConfig.from_file(args.config) if args.config else paper_calibrated_config()
    out = Path(args.out)
    result = simulate(config)
    data_dir = out / "data"
    result.dataset.save(data_dir)
    _write_json(out / "truths.json", result.truths)
    (out / "config.json").write_text(config.to_json(), encoding="utf-8")

    ds = StudyDataset.load(data_dir)  # read back through the storage layer
    weekly_dir = out / "bundles"
    per_week = {}
    for pid, info in sorted(ds.participants.items()):
        final_week = min(config.n_weeks, max(1, (info.days_active or 1) // 7))
        per_week[pid] = final_week
    sample = sorted(ds.participants)[0]
    for week in range(1, per_week[sample] + 1):  # full schedule for one participant
        write_bundle(assemble_bundle(ds, sample, week), weekly_dir / sample / f"week{week:02d}")
    for pid, week in per_week.items():
        if pid == sample:
            continue
        write_bundle(assemble_bundle(ds, pid, week), weekly_dir / pid / f"week{week:02d}")

    report = analysis.full_report(ds, config.n_weeks)
    report["runtime_s"] = round(time.perf_counter() - started, 2)
    _write_json(out / "report.json", report)
    trend_i = report["intensity"]["trend"]
    trend_f = report["frequency"]["trend"]
    print(f"intensity: m={trend_i['slope']:.4f} b={trend_i['intercept']:.3f} p={trend_i['p_value']:.4g}")
    print(f"frequency: m={trend_f['slope']:.4f} b={trend_f['intercept']:.3f} p={trend_f['p_value']:.4g}")
    eng = report["engagement"]
    print(f"prompts/day={eng['prompts_per_day']:.2f} response={eng['response_fraction']:.0%} "
          f"stressors/day={eng['stressors_per_day']:.2f}")
    print(f"day-30 retention={report['retention']['day30_rate']:.0%}")
    print(f"report -> {out / 'report.json'} ({report['runtime_s']}s)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moods",
        description="Stress logging platform: simulation, service, analysis, charts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="generate a synthetic cohort dataset")
    p_sim.add_argument("--config", help="SimConfig JSON file (default: paper-calibrated)")
    p_sim.add_argument("--out", required=True, help="output directory")
    p_sim.add_argument("--seed", type=int, default=None)
    p_sim.set_defaults(func=cmd_simulate)

    p_serve = sub.add_parser("serve", help="run the HTTP API")
    p_serve.add_argument("--data", help="data directory (or MOODS_DATA_DIR)")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--tokens", help="JSON file mapping bearer token -> participant id")
    p_serve.set_defaults(func=cmd_serve)

    p_an = sub.add_parser("analyze", help="run a statistical analysis over a data directory")
    p_an.add_argument("kind", choices=("trends", "lmm", "its", "retention"))
    p_an.add_argument("--in", dest="input", help="data directory (or MOODS_DATA_DIR)")
    p_an.add_argument("--out", required=True, help="report JSON path")
    p_an.add_argument("--weeks", type=int, default=14)
    p_an.set_defaults(func=cmd_analyze)

    p_viz = sub.add_parser("viz", help="visualization bundles")
    viz_sub = p_viz.add_subparsers(dest="viz_command", required=True)
    p_build = viz_sub.add_parser("build", help="build one participant-week bundle")
    p_build.add_argument("--participant", required=True)
    p_build.add_argument("--week", type=int, required=True)
    p_build.add_argument("--data", help="data directory (or MOODS_DATA_DIR)")
    p_build.add_argument("--out", required=True)
    p_build.set_defaults(func=cmd_viz)

    p_replay = sub.add_parser(
        "replay-study",
        help="end-to-end: simulate, ingest, weekly bundles, analysis report",
    )
    p_replay.add_argument("--config", help="SimConfig JSON (default: paper-calibrated)")
    p_replay.add_argument("--out", required=True)
    p_replay.set_defaults(func=cmd_replay_study)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
