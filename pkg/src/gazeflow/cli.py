"""Command-line client for the analysis service.

By default the service runs in-process; ``--server URL`` targets a running
instance instead.  Exit codes: 0 success, 1 usage error, 2 data error,
3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import httpx

from . import __version__
from .config import PipelineConfig
from .reports import ComparisonReport, SessionReport, emit_report

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


_CONFIG_FLAGS = [
    ("chunk-seconds", float),
    ("segment-seconds", float),
    ("chunk-eps-px", float),
    ("chunk-min-pts", int),
    ("meta-eps-px", float),
    ("meta-min-pts", int),
    ("fixation-min-duration-ms", float),
    ("fixation-max-dispersion-deg", float),
    ("bin-width-deg", float),
    ("min-confidence", float),
    ("max-assign-distance-px", float),
    ("frame-width-px", float),
    ("frame-height-px", float),
]


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="CFG_JSON",
                        help="JSON config file; CLI flags win on conflict")
    for flag, typ in _CONFIG_FLAGS:
        parser.add_argument(f"--{flag}", type=typ, default=None)
    parser.add_argument("--angles-from-samples", action="store_true",
                        default=None,
                        help="summarize angles over raw samples, not fixations")
    parser.add_argument("--meta-cluster-labels", metavar="JSON", default=None,
                        help='e.g. \'{"0": "road", "1": "mirror"}\'')


def _build_config(args) -> PipelineConfig:
    data: dict = {}
    if args.config:
        path = Path(args.config)
        if not path.is_file():
            _usage_fail(f"config file not found: {path}")
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            _usage_fail(f"config file is not valid JSON: {exc}")
    for flag, _ in _CONFIG_FLAGS:
        value = getattr(args, flag.replace("-", "_"))
        if value is not None:
            data[flag.replace("-", "_")] = value
    if args.angles_from_samples:
        data["angles_from_fixations"] = False
    if args.meta_cluster_labels is not None:
        try:
            data["meta_cluster_labels"] = json.loads(args.meta_cluster_labels)
        except json.JSONDecodeError as exc:
            _usage_fail(f"--meta-cluster-labels is not valid JSON: {exc}")
    try:
        return PipelineConfig(**data)
    except Exception as exc:
        _usage_fail(f"invalid configuration: {exc}")


def _usage_fail(message: str):
    print(f"error: {message}", file=sys.stderr)
    sys.exit(EXIT_USAGE)


def _client(args) -> httpx.Client:
    if args.server:
        return httpx.Client(base_url=args.server, timeout=300.0)
    from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def _post(client: httpx.Client, endpoint: str, payload: dict) -> dict:
    try:
        resp = client.post(endpoint, json=payload)
    except httpx.HTTPError as exc:
        print(f"error: cannot reach service: {exc}", file=sys.stderr)
        sys.exit(EXIT_INTERNAL)
    if resp.status_code == 200:
        return resp.json()
    try:
        body = resp.json()
    except ValueError:
        body = {}
    detail = body.get("detail", resp.text)
    print(f"error: {detail}", file=sys.stderr)
    if resp.status_code == 422 and "error_class" in body:
        sys.exit(EXIT_DATA)
    if resp.status_code in (400, 422):
        sys.exit(EXIT_USAGE)
    sys.exit(EXIT_INTERNAL)


def _read_input(path_str: str) -> str:
    path = Path(path_str)
    if not path.is_file():
        _usage_fail(f"input file not found: {path}")
    return path.read_text(encoding="utf-8")


def _cmd_analyze(args) -> int:
    config = _build_config(args)
    payload = {
        "csv_text": _read_input(args.input),
        "label": args.label or Path(args.input).stem,
        "config": config.model_dump(mode="json"),
    }
    with _client(args) as client:
        data = _post(client, "/analyze", payload)
    report = SessionReport.model_validate(data)
    written = emit_report(report, args.out)
    print(f"wrote {len(written)} files to {args.out}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    config = _build_config(args)
    payload = {
        "csv_a": _read_input(args.input_a),
        "csv_b": _read_input(args.input_b),
        "label_a": args.label_a or Path(args.input_a).stem,
        "label_b": args.label_b or Path(args.input_b).stem,
        "config": config.model_dump(mode="json"),
    }
    with _client(args) as client:
        data = _post(client, "/compare", payload)
    report = ComparisonReport.model_validate(data)
    written = emit_report(report, args.out)
    print(f"wrote {len(written)} files to {args.out}")
    return EXIT_OK


def _cmd_synth(args) -> int:
    scenario_path = Path(args.scenario)
    if not scenario_path.is_file():
        _usage_fail(f"scenario file not found: {scenario_path}")
    try:
        scenario = json.loads(scenario_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        _usage_fail(f"scenario file is not valid JSON: {exc}")
    payload = {"scenario": scenario, "seed": args.seed}
    with _client(args) as client:
        data = _post(client, "/synth", payload)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(data["csv_text"], encoding="utf-8")
    truth_path = out.with_suffix(out.suffix + ".truth.json")
    truth_path.write_text(
        json.dumps(data["truth"], indent=2, sort_keys=True) + "\n",
        encoding="utf-8")
    print(f"wrote {out} and {truth_path}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("gazeflow.service:app", host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gazeflow",
                     description="Gaze-session clustering and comparison")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--server", metavar="URL", default=None,
                        help="base URL of a running service; default in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze one recording")
    p.add_argument("input", help="gaze CSV file")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--label", default=None)
    _add_config_flags(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("compare", help="compare two recordings")
    p.add_argument("input_a")
    p.add_argument("input_b")
    p.add_argument("--out", required=True)
    p.add_argument("--label-a", default=None)
    p.add_argument("--label-b", default=None)
    _add_config_flags(p)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("synth", help="generate a synthetic session")
    p.add_argument("scenario", help="scenario JSON file")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # pragma: no cover - safety net
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
