"""Command-line front end and machine-readable verification reports.

Subcommands:

    verify    run lemma certifications (--lemma ID ... or --all)
    eval      print exact chart quantities at a rational point
    isolate   print the certified critical interval on the k=2 diagonal
    fixtures  check every shipped fixture against the pipeline
    report    run everything (all lemmas plus fixtures) and emit a report

Exact rationals cross this boundary as ``p/q`` strings only; decimal input is
rejected.  Exit code 0 means every non-NOTE item passed, 1 means some item
failed or mismatched, 2 means a usage or I/O error.  With ``--no-timing`` the
JSON report is byte-identical across runs of the same configuration.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .certify import (
    DEFAULT_ISOLATION_WIDTH,
    LEMMA_IDS,
    LemmaReport,
    check_all_fixtures,
    run_lemma,
)
from .delpezzo import CHARTS
from .functional import build_bundle, bundle_summary, restrict_diagonal
from .sampling import DEFAULT_SEED
from .sturm import sturm_isolate


def parse_rational(text: str) -> Fraction:
    """Exact ``p/q`` or integer; decimals are rejected, never rounded."""
    text = text.strip()
    if re.fullmatch(r"-?\d+", text):
        return Fraction(int(text))
    match = re.fullmatch(r"(-?\d+)\s*/\s*(\d+)", text)
    if match is None:
        raise argparse.ArgumentTypeError(
            f"expected an exact rational like 3/4 or 2, got {text!r}"
        )
    return Fraction(int(match.group(1)), int(match.group(2)))


def parse_point(text: str) -> tuple[Fraction, ...]:
    return tuple(parse_rational(part) for part in text.split(","))


@dataclass
class RunConfig:
    tasks: list[str] = field(default_factory=lambda: ["all"])
    sample_count: int = 100
    isolation_width: Fraction = DEFAULT_ISOLATION_WIDTH
    jobs: int = 1
    format: str = "json"
    fixtures_dir: str | None = None
    seed: int = DEFAULT_SEED
    include_timing: bool = True

    def __post_init__(self) -> None:
        if self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")
        if self.isolation_width <= 0:
            raise ValueError("isolation_width must be positive")

    def as_dict(self) -> dict:
        return {
            "tasks": list(self.tasks),
            "sample_count": self.sample_count,
            "isolation_width": str(self.isolation_width),
            "jobs": self.jobs,
            "format": self.format,
            "fixtures_dir": self.fixtures_dir,
            "seed": self.seed,
        }


@dataclass
class Report:
    version: str
    config: RunConfig
    lemmas: list[LemmaReport]
    fixtures: list[tuple[str, object]]
    total_seconds: float
    bundles: list[dict] = field(default_factory=list)

    @property
    def aggregate(self) -> str:
        for lemma in self.lemmas:
            if lemma.status == "FAIL":
                return "FAIL"
        for _, verdict in self.fixtures:
            if verdict.kind not in ("EXACT", "SCALED"):
                return "FAIL"
        return "PASS"


def _truncate_terms(text: str, limit: int = 40) -> str:
    parts = re.split(r"(?= [+-] )", text)
    if len(parts) <= limit:
        return text
    return "".join(parts[:limit]) + f" ...({len(parts) - limit} more terms)"


def _json_report(report: Report) -> dict:
    include_timing = report.config.include_timing
    out: dict = {
        "version": report.version,
        "config": report.config.as_dict(),
        "lemmas": [l.as_dict(include_timing) for l in report.lemmas],
        "fixtures": [
            {"name": name, **verdict.as_dict()} for name, verdict in report.fixtures
        ],
        "aggregate": report.aggregate,
    }
    if report.bundles:
        out["bundles"] = report.bundles
    if include_timing:
        out["total_seconds"] = round(report.total_seconds, 3)
    return out


def emit_report(report: Report, fmt: str | None = None) -> str:
    fmt = fmt or report.config.format
    payload = _json_report(report)
    if fmt == "json":
        return json.dumps(payload, indent=2)
    lines = ["# verification report", ""]
    lines.append(f"- version: {payload['version']}")
    lines.append(f"- aggregate: **{payload['aggregate']}**")
    if "total_seconds" in payload:
        lines.append(f"- total seconds: {payload['total_seconds']}")
    lines.append("")
    lines.append("## configuration")
    lines.append("")
    for key, value in payload["config"].items():
        lines.append(f"- {key}: {value}")
    if payload["lemmas"]:
        lines.append("")
        lines.append("## lemmas")
        lines.append("")
        lines.append("| id | status |" + (" seconds |" if report.config.include_timing else ""))
        lines.append("|----|--------|" + ("---------|" if report.config.include_timing else ""))
        for item in payload["lemmas"]:
            row = f"| {item['id']} | {item['status']} |"
            if report.config.include_timing:
                row += f" {item['seconds']} |"
            lines.append(row)
        for item in payload["lemmas"]:
            lines.append("")
            lines.append(f"### {item['id']}")
            lines.append("")
            lines.append("```")
            text = json.dumps(item["witnesses"], indent=2)
            lines.extend(_truncate_terms(line) for line in text.splitlines())
            lines.append("```")
    if payload["fixtures"]:
        lines.append("")
        lines.append("## fixtures")
        lines.append("")
        lines.append("| name | verdict | constant |")
        lines.append("|------|---------|----------|")
        for item in payload["fixtures"]:
            lines.append(
                f"| {item['name']} | {item['verdict']} | {item.get('constant', '')} |"
            )
    if payload.get("bundles"):
        lines.append("")
        lines.append("## chart summaries")
        for summary in payload["bundles"]:
            lines.append("")
            lines.append(f"### {summary['chart']}")
            lines.append("")
            lines.append("```")
            text = json.dumps(summary, indent=2)
            lines.extend(_truncate_terms(line) for line in text.splitlines())
            lines.append("```")
    lines.append("")
    return "\n".join(lines)


def _load_env_config() -> dict:
    path = os.environ.get("KCERT_CONFIG")
    if not path:
        return {}
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _config_from_args(args: argparse.Namespace, tasks: list[str]) -> RunConfig:
    base = _load_env_config()
    config = RunConfig(tasks=tasks)
    for key in ("sample_count", "jobs", "format", "fixtures_dir", "seed"):
        if key in base:
            setattr(config, key, base[key])
    if "isolation_width" in base:
        config.isolation_width = parse_rational(str(base["isolation_width"]))
    if getattr(args, "samples", None) is not None:
        config.sample_count = args.samples
    if getattr(args, "width", None) is not None:
        config.isolation_width = args.width
    if getattr(args, "jobs", None) is not None:
        config.jobs = args.jobs
    if getattr(args, "format", None) is not None:
        config.format = args.format
    if getattr(args, "fixtures_dir", None) is not None:
        config.fixtures_dir = args.fixtures_dir
    if getattr(args, "seed", None) is not None:
        config.seed = args.seed
    if getattr(args, "no_timing", False):
        config.include_timing = False
    config.__post_init__()
    return config


def _run_lemmas(config: RunConfig, lemma_ids: list[str]) -> list[LemmaReport]:
    def one(lemma_id: str) -> LemmaReport:
        return run_lemma(
            lemma_id,
            sample_count=config.sample_count,
            isolation_width=config.isolation_width,
            seed=config.seed,
            fixtures_dir=Path(config.fixtures_dir) if config.fixtures_dir else None,
        )

    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(one, lemma_ids))
    else:
        results = [one(lemma_id) for lemma_id in lemma_ids]
    # deterministic merge regardless of completion order
    order = {lemma_id: i for i, lemma_id in enumerate(LEMMA_IDS)}
    return sorted(results, key=lambda r: order.get(r.lemma_id, len(order)))


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.all:
        lemma_ids = list(LEMMA_IDS)
    elif args.lemma:
        lemma_ids = list(dict.fromkeys(args.lemma))
        unknown = [l for l in lemma_ids if l not in LEMMA_IDS]
        if unknown:
            print(f"unknown lemma ids: {', '.join(unknown)}", file=sys.stderr)
            return 2
    else:
        print("verify requires --lemma ID or --all", file=sys.stderr)
        return 2
    config = _config_from_args(args, lemma_ids)
    start = time.perf_counter()
    lemmas = _run_lemmas(config, lemma_ids)
    report = Report(__version__, config, lemmas, [], time.perf_counter() - start)
    print(emit_report(report))
    return 0 if report.aggregate == "PASS" else 1


def _cmd_fixtures(args: argparse.Namespace) -> int:
    if args.action != "check":
        print(f"unknown fixtures action {args.action!r}", file=sys.stderr)
        return 2
    config = _config_from_args(args, ["fixtures"])
    start = time.perf_counter()
    try:
        results = check_all_fixtures(config.fixtures_dir)
    except FileNotFoundError as exc:
        print(f"missing fixture: {exc}", file=sys.stderr)
        return 2
    report = Report(__version__, config, [], results, time.perf_counter() - start)
    print(emit_report(report))
    return 0 if report.aggregate == "PASS" else 1


def _cmd_report(args: argparse.Namespace) -> int:
    config = _config_from_args(args, ["all"])
    start = time.perf_counter()
    lemmas = _run_lemmas(config, list(LEMMA_IDS))
    results = check_all_fixtures(config.fixtures_dir)
    summaries = [bundle_summary(CHARTS[c]) for c in ("k2", "k3")]
    report = Report(
        __version__, config, lemmas, results, time.perf_counter() - start, summaries
    )
    print(emit_report(report))
    return 0 if report.aggregate == "PASS" else 1


def _cmd_eval(args: argparse.Namespace) -> int:
    chart = CHARTS[args.chart]
    point = args.point
    if len(point) != len(chart.variables):
        print(
            f"chart {args.chart} expects {len(chart.variables)} coordinates",
            file=sys.stderr,
        )
        return 2
    bundle = build_bundle(chart)
    what = args.what
    if what == "V":
        print(bundle.volume.evaluate(point))
    elif what in ("F1", "F2"):
        print((bundle.f1 if what == "F1" else bundle.f2).evaluate(point))
    elif what in ("A", "B", "C"):
        value = {"A": bundle.a, "B": bundle.b, "C": bundle.c}[what].evaluate(point)
        print(value.render())
    elif what == "calA":
        print(bundle.calA.evaluate(point))
    else:  # pragma: no cover - argparse restricts choices
        return 2
    return 0


def _cmd_isolate(args: argparse.Namespace) -> int:
    if args.chart != "k2":
        print("only the k2 diagonal critical point is isolated", file=sys.stderr)
        return 2
    width = args.width if args.width is not None else DEFAULT_ISOLATION_WIDTH
    diag = restrict_diagonal()
    intervals, _ = sturm_isolate(diag.p, (Fraction(0), Fraction(2)), width)
    if len(intervals) != 1:
        print(f"expected one critical interval, found {len(intervals)}", file=sys.stderr)
        return 1
    lo, hi = intervals[0]
    print(f"[{lo}, {hi}]")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kcert",
        description="exact certification of convexity and critical-point claims "
        "on del Pezzo Kahler cones",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--samples", type=int, help="sample count (default 100)")
        p.add_argument("--width", type=parse_rational, help="isolation width (p/q)")
        p.add_argument("--jobs", type=int, help="worker threads (default 1)")
        p.add_argument("--format", choices=("json", "markdown"))
        p.add_argument("--fixtures-dir", dest="fixtures_dir")
        p.add_argument("--seed", type=int)
        p.add_argument("--no-timing", action="store_true", dest="no_timing")

    verify = sub.add_parser("verify", help="run lemma certifications")
    verify.add_argument("--lemma", action="append", metavar="ID")
    verify.add_argument("--all", action="store_true")
    add_common(verify)
    verify.set_defaults(func=_cmd_verify)

    evaluate = sub.add_parser("eval", help="print exact chart quantities")
    evaluate.add_argument("--chart", choices=("k2", "k3"), required=True)
    evaluate.add_argument("--point", type=parse_point, required=True)
    evaluate.add_argument(
        "--what", choices=("V", "F1", "F2", "A", "B", "C", "calA"), required=True
    )
    evaluate.set_defaults(func=_cmd_eval)

    isolate = sub.add_parser("isolate", help="certified critical interval (k2)")
    isolate.add_argument("--chart", choices=("k2",), default="k2")
    isolate.add_argument("--width", type=parse_rational)
    isolate.set_defaults(func=_cmd_isolate)

    fixtures = sub.add_parser("fixtures", help="fixture management")
    fixtures.add_argument("action", choices=("check",))
    add_common(fixtures)
    fixtures.set_defaults(func=_cmd_fixtures)

    report = sub.add_parser("report", help="run everything and emit a report")
    add_common(report)
    report.set_defaults(func=_cmd_report)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
