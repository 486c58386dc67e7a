"""Command line front end.

Four subcommands: ``solve`` scores one DMU under a chosen model, ``pps``
explores the integer production set (closure, gap, membership), ``paper``
runs the built-in scenarios and optionally writes their artifacts, and
``plot`` renders a dataset to SVG.  All output on stdout is JSON except for
the one-line summaries that ``paper --out`` prints next to the files it
writes.

Exit codes: 0 on success, 1 when a scenario assertion fails, 2 on input
errors (malformed CSV, unknown names, dimension mismatches).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from .core import BoundingBox, Dataset, Point, load_csv, rational
from .models import ModelSpec, solve_model
from .ppslab import AxiomOrder, axiom_closure, generation_gap, membership_integer_vrs
from .plotting import render, render_scenario, save_svg
from .reporting import dumps_report, encode_point, encode_points, encode_result
from .scenarios import SCENARIO_ORDER, FigureSpec, run_scenario

__all__ = ["main", "build_parser"]


def _parse_values(text: str, data: Dataset, label: str) -> tuple[list, list]:
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != data.m + data.p:
        raise ValueError(
            f"{label} needs {data.m + data.p} comma-separated values "
            f"({data.m} inputs then {data.p} outputs), got {len(parts)}"
        )
    return parts[: data.m], parts[data.m :]


def _parse_box(text: str, data: Dataset) -> BoundingBox:
    ins, outs = _parse_values(text, data, "--box")
    try:
        return BoundingBox(tuple(int(v) for v in ins), tuple(int(v) for v in outs))
    except ValueError as exc:
        raise ValueError(f"--box values must be integers: {exc}") from None


def _parse_point(text: str, data: Dataset) -> Point:
    ins, outs = _parse_values(text, data, "--point")
    return Point(tuple(rational(v) for v in ins), tuple(rational(v) for v in outs))


def _warnings(data: Dataset) -> list[str]:
    return [f"zero input in {name} at position {i + 1}" for name, i in data.zero_input_cells()]


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _cmd_solve(args: argparse.Namespace) -> int:
    data = load_csv(args.csv)
    spec = ModelSpec.named(args.model)
    result = solve_model(spec, data, args.dmu)
    _print_json({"result": encode_result(result), "warnings": _warnings(data)})
    return 0


def _cmd_pps(args: argparse.Namespace) -> int:
    data = load_csv(args.csv)
    box = _parse_box(args.box, data) if args.box else BoundingBox.from_dataset(data)
    if args.action == "closure":
        order = AxiomOrder(iterate_to_fixpoint=args.fixpoint)
        state = axiom_closure(data, box, order)
        log = [
            {
                "point": encode_point(point),
                "rule": prov.rule,
                "generation": prov.generation,
                "parents": encode_points(prov.parents),
                "weight": list(prov.weight) if prov.weight else None,
            }
            for point, prov in state.log()
        ]
        _print_json(
            {
                "action": "closure",
                "fixpoint": args.fixpoint,
                "box": {"input_max": list(box.input_max), "output_max": list(box.output_max)},
                "size": len(state.points),
                "points": encode_points(state.points),
                "generations": state.generations,
                "log": log,
                "warnings": _warnings(data),
            }
        )
        return 0
    if args.action == "gap":
        if args.fixpoint:
            raise ValueError("--fixpoint applies to the closure action only")
        gap = generation_gap(data, box)
        _print_json(
            {
                "action": "gap",
                "box": {"input_max": list(box.input_max), "output_max": list(box.output_max)},
                "size": len(gap),
                "points": encode_points(gap),
                "warnings": _warnings(data),
            }
        )
        return 0
    if args.point is None:
        raise ValueError("the member action needs --point")
    candidate = _parse_point(args.point, data)
    member = membership_integer_vrs(data, candidate, box=box, method=args.method)
    _print_json(
        {
            "action": "member",
            "candidate": encode_point(candidate),
            "method": args.method,
            "member": member,
            "warnings": _warnings(data),
        }
    )
    return 0


def _compact(value) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def _assertions_csv(report: dict, path: Path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["assertion", "expected", "actual", "pass"])
        for entry in report["assertions"]:
            writer.writerow(
                [entry["name"], _compact(entry["expected"]), _compact(entry["actual"]), entry["pass"]]
            )


def _cmd_paper(args: argparse.Namespace) -> int:
    names = list(SCENARIO_ORDER) if args.all else [args.scenario]
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(run_scenario, names))
    else:
        reports = [run_scenario(name) for name in names]
    all_pass = all(entry["pass"] for report in reports for entry in report["assertions"])

    if args.out is None:
        if args.all:
            _print_json(reports)
        else:
            _print_json(reports[0])
        return 0 if all_pass else 1

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, report in zip(names, reports):
        json_path = out_dir / f"{name}.json"
        json_path.write_text(dumps_report(report))
        _assertions_csv(report, out_dir / f"{name}.csv")
        save_svg(render_scenario(name), out_dir / f"{name}.svg")
        passed = sum(1 for entry in report["assertions"] if entry["pass"])
        total = len(report["assertions"])
        verdict = "PASS" if passed == total else "FAIL"
        print(f"{name}: {verdict} ({passed}/{total} assertions) -> {json_path}")
    return 0 if all_pass else 1


def _cmd_plot(args: argparse.Namespace) -> int:
    data = load_csv(args.csv)
    if args.project:
        axes = tuple(part.strip() for part in args.project.split(","))
        if len(axes) != 2:
            raise ValueError("--project needs two comma-separated axis names, e.g. x1,x2")
    else:
        if data.m != 1 or data.p != 1:
            raise ValueError(
                "dataset has more than one input or output; pick two axes with --project"
            )
        axes = ("x1", "y1")
    box = _parse_box(args.box, data) if args.box else None
    spec = FigureSpec(
        dataset=data,
        title=Path(args.csv).stem,
        overlays=(args.overlay,) if args.overlay else (),
        box=box,
        fixpoint=args.fixpoint,
        axes=axes,
    )
    save_svg(render(spec), args.out)
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dealab",
        description="Exact rational arithmetic laboratory for integer DEA.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="score one DMU under a model")
    solve.add_argument(
        "--model", required=True, choices=["ccr", "vrs", "lvm", "kkm", "additive"]
    )
    solve.add_argument("--dmu", required=True, help="name of the DMU to evaluate")
    solve.add_argument("csv", help="dataset CSV (header dmu,x1,...,y1,...)")
    solve.set_defaults(func=_cmd_solve)

    pps = sub.add_parser("pps", help="explore the integer production set")
    pps.add_argument("action", choices=["closure", "gap", "member"])
    pps.add_argument(
        "--box",
        help="bounding box as comma-separated integers, inputs then outputs (e.g. 5,9)",
    )
    pps.add_argument(
        "--fixpoint",
        action="store_true",
        help="iterate the axiom sequence until nothing new appears (closure only)",
    )
    pps.add_argument(
        "--point",
        help="candidate point as comma-separated values, inputs then outputs (member only)",
    )
    pps.add_argument(
        "--method",
        choices=["generators", "identity"],
        default="generators",
        help="membership test: search disposal generators, or test the real set",
    )
    pps.add_argument("csv")
    pps.set_defaults(func=_cmd_pps)

    paper = sub.add_parser("paper", help="run built-in scenarios")
    which = paper.add_mutually_exclusive_group(required=True)
    which.add_argument("--scenario", choices=list(SCENARIO_ORDER))
    which.add_argument("--all", action="store_true", help="run every scenario")
    paper.add_argument("--out", help="directory for per-scenario JSON, CSV and SVG files")
    paper.add_argument(
        "--jobs", type=int, default=1, help="run scenario computations concurrently"
    )
    paper.set_defaults(func=_cmd_paper)

    plot = sub.add_parser("plot", help="render a dataset to SVG")
    plot.add_argument("--overlay", choices=["closure", "gap", "frontier"])
    plot.add_argument("--out", required=True, help="output SVG path")
    plot.add_argument("--box", help="bounding box, comma-separated, inputs then outputs")
    plot.add_argument("--fixpoint", action="store_true", help="fixpoint closure overlay")
    plot.add_argument(
        "--project",
        help="two axis names to plot for multi-dimensional data, e.g. x1,x2",
    )
    plot.add_argument("csv")
    plot.set_defaults(func=_cmd_plot)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except KeyError as exc:
        print(f"error: unknown name {exc.args[0]!r}" if exc.args else "error", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
