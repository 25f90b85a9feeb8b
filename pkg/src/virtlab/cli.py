"""Batch front door: list, inspect and build scenarios, run sweeps, serve.

Exit codes: 0 success, 1 usage error, 2 compute error. Diagnostics go to
stderr; written artifacts are byte-deterministic.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import scenarios
from .export import dump_json, write_frame_sequence, write_svg_polar, write_vrml
from .scenarios import ConfigError
from .patterns import AntiResonantLength

FORMATS = ("vrml", "svg", "json")


class UsageError(Exception):
    pass


def _default_out() -> str:
    return os.environ.get("VIRTLAB_OUT", "./out")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="virtlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list catalog scenario ids and titles")

    show = sub.add_parser("show", help="print one scenario spec as JSON")
    show.add_argument("id")

    build = sub.add_parser("build", help="build a scenario and write artifacts")
    build.add_argument("target", help="catalog id or path to a .json config")
    build.add_argument("--out", default=None, help="output directory (default $VIRTLAB_OUT or ./out)")
    build.add_argument("--formats", default="vrml,json", help="comma list of vrml,svg,json")
    build.add_argument("--frames", type=int, default=None, help="emit a per-frame .wrl sequence of N frames")
    build.add_argument("--grid", default=None, help="pattern grid override, e.g. 181x360")

    sweep = sub.add_parser("sweep", help="dipole characteristics sweep as JSON")
    sweep.add_argument("--l-min", type=float, required=True)
    sweep.add_argument("--l-max", type=float, required=True)
    sweep.add_argument("--steps", type=int, default=100)
    sweep.add_argument("--out", default=None, help="output file (default stdout)")

    serve = sub.add_parser("serve", help="start the HTTP compute service")
    serve.add_argument("--port", type=int, default=8080)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--ui", default=None, help="serve a built explorer UI directory at /ui")
    return parser


def _load_spec(target: str, grid: str | None) -> scenarios.ScenarioSpec:
    if target.endswith(".json"):
        path = Path(target)
        if not path.is_file():
            raise UsageError(f"config file not found: {target}")
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise UsageError(f"malformed JSON in {target}: {exc}")
        spec = scenarios.parse_config(doc)
    else:
        spec = scenarios.catalog_by_id().get(target)
        if spec is None:
            raise UsageError(f"unknown scenario {target!r}")
    if grid is not None:
        try:
            n_theta, n_phi = (int(x) for x in grid.lower().split("x"))
        except ValueError:
            raise UsageError("--grid must look like 181x360")
        if "grid" not in scenarios.PARAM_SCHEMAS[spec.kind]:
            raise UsageError(f"--grid is not supported for kind {spec.kind!r}")
        doc = scenarios.spec_to_jsonable(spec)
        doc["params"]["grid"] = [n_theta, n_phi]
        spec = scenarios.parse_config(doc)
    return spec


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="")


def _cmd_build(args) -> int:
    formats = [f.strip() for f in args.formats.split(",") if f.strip()]
    for f in formats:
        if f not in FORMATS:
            raise UsageError(f"unknown format {f!r} (expected vrml,svg,json)")
    spec = _load_spec(args.target, args.grid)
    out_dir = Path(args.out or _default_out())
    result = scenarios.build(spec)

    written = []
    if "vrml" in formats:
        path = out_dir / f"{spec.id}.wrl"
        _write(path, write_vrml(result.scene))
        written.append(path)
    if "svg" in formats:
        if result.cuts is None:
            print(f"note: scenario {spec.id!r} has no plane cuts; skipping svg", file=sys.stderr)
        else:
            path = out_dir / f"{spec.id}_cuts.svg"
            _write(path, write_svg_polar(result.cuts))
            written.append(path)
    if "json" in formats:
        path = out_dir / f"{spec.id}.json"
        _write(path, dump_json({"spec": scenarios.spec_to_jsonable(spec), "data": result.data}))
        written.append(path)
    if args.frames is not None:
        if args.frames < 1:
            raise UsageError("--frames must be >= 1")
        frame_dir = out_dir / f"{spec.id}_frames"
        written.extend(write_frame_sequence(result.scene, args.frames, frame_dir))

    for path in written:
        print(path)
    return 0


def _cmd_sweep(args) -> int:
    if not 0.0 < args.l_min < args.l_max:
        raise UsageError("need 0 < --l-min < --l-max")
    if args.steps < 2:
        raise UsageError("--steps must be >= 2")
    from .patterns import characteristics_sweep

    rows = characteristics_sweep(args.l_min, args.l_max, args.steps)
    table = [
        {
            "length_wl": r.length,
            "theta_max_deg": r.theta_max_deg,
            "directivity": r.directivity,
            "r_in_ohm": r.r_in,
            "anti_resonant": r.anti_resonant,
        }
        for r in rows
    ]
    text = dump_json({"rows": table})
    if args.out:
        _write(Path(args.out), text)
        print(args.out)
    else:
        print(text)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(ui_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        if args.command == "list":
            for spec in scenarios.catalog():
                print(f"{spec.id}\t{spec.title}")
            return 0
        if args.command == "show":
            spec = scenarios.catalog_by_id().get(args.id)
            if spec is None:
                raise UsageError(f"unknown scenario {args.id!r}")
            print(dump_json(scenarios.spec_to_jsonable(spec)))
            return 0
        if args.command == "build":
            return _cmd_build(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "serve":
            return _cmd_serve(args)
        raise UsageError(f"unknown command {args.command!r}")
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (AntiResonantLength, ValueError) as exc:
        print(f"compute error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
