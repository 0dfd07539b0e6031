"""Command-line front door.

    cellscope analyze         per-session metrics CSV
    cellscope coverage-report HTML heatmap + coverage CSV
    cellscope compare         group statistics table + regression
    cellscope simulate        synthetic canonical session logs
    cellscope import          Figure-style dump CSV -> canonical log
    cellscope serve           HTTP session service for the grid UI

Group tags travel in each session log's header; `--group` on simulate
stamps them at generation time.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

from . import events as ev
from . import logfmt, reports
from .analytics import AnalysisConfig, DwellMode, coverage_per_cell
from .corrections import score_corrections
from .errors import CellscopeError
from .feedback import highlight_timeline
from .importer import import_tcat_dump
from .simulate import Archetype, SimProfile, simulate_population
from .workbook import Workbook, load_workbook


@dataclass
class RunManifest:
    """Everything one batch command needs; validated before any output."""

    workbook_path: str
    log_paths: list[str] = field(default_factory=list)
    out_dir: str = "."
    config: AnalysisConfig = field(default_factory=AnalysisConfig)

    def validate(self) -> None:
        missing = [p for p in [self.workbook_path, *self.log_paths] if not os.path.exists(p)]
        if missing:
            raise CellscopeError(f"missing input file(s): {', '.join(missing)}")

    def load(self) -> tuple[Workbook, list[ev.Session]]:
        self.validate()
        workbook = load_workbook(self.workbook_path)
        sessions = []
        for path in self.log_paths:
            with open(path, encoding="utf-8") as fh:
                sessions.append(logfmt.parse_log(fh))
        return workbook, sessions


def _config_from_args(args) -> AnalysisConfig:
    return AnalysisConfig(
        inspect_threshold=ev.as_seconds(args.threshold),
        dwell_mode=DwellMode(args.dwell_mode),
    )


def _manifest_from_args(args) -> RunManifest:
    return RunManifest(
        workbook_path=args.workbook,
        log_paths=list(args.log or []),
        out_dir=getattr(args, "out", ".") or ".",
        config=_config_from_args(args),
    )


def _ensure_out(manifest: RunManifest) -> str:
    os.makedirs(manifest.out_dir, exist_ok=True)
    return manifest.out_dir


def cmd_analyze(args) -> int:
    manifest = _manifest_from_args(args)
    workbook, sessions = manifest.load()
    rows = reports.metrics_rows(workbook, sessions, manifest.config)
    out_dir = _ensure_out(manifest)
    path = os.path.join(out_dir, "metrics.csv")
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        reports.write_metrics_csv(rows, fh)
    os.replace(tmp, path)
    print(path)
    return 0


def cmd_coverage_report(args) -> int:
    manifest = _manifest_from_args(args)
    workbook, sessions = manifest.load()
    if not sessions:
        raise CellscopeError("coverage-report needs at least one session log")
    coverage = coverage_per_cell(sessions, workbook, manifest.config)
    out_dir = _ensure_out(manifest)
    csv_path = os.path.join(out_dir, "coverage.csv")
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        reports.coverage_csv(coverage, workbook, fh)
    html_path = os.path.join(out_dir, "coverage.html")
    with open(html_path, "w", encoding="utf-8") as fh:
        fh.write(reports.coverage_heatmap_html(coverage, workbook))
    print(csv_path)
    print(html_path)
    return 0


def cmd_compare(args) -> int:
    manifest = _manifest_from_args(args)
    workbook, sessions = manifest.load()
    by_group: dict[str, list] = {}
    for session in sessions:
        by_group.setdefault(session.group or "", []).append(
            score_corrections(workbook, session)
        )
    for tag in (args.group_a, args.group_b):
        if tag not in by_group:
            raise CellscopeError(f"no sessions carry group tag {tag!r}")
    rows = reports.comparison_rows(workbook, args.group_a, args.group_b, by_group)
    regression = (
        reports.coverage_regression(workbook, sessions, manifest.config)
        if len(sessions) >= 3
        else None
    )
    out_dir = _ensure_out(manifest)
    path = os.path.join(out_dir, "compare.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        reports.write_comparison(rows, regression, fh)
    timelines = [
        (s.session_id, highlight_timeline(s)) for s in sessions if highlight_timeline(s)
    ]
    if timelines:
        tpath = os.path.join(out_dir, "highlight_timelines.csv")
        with open(tpath, "w", encoding="utf-8", newline="") as fh:
            reports.timeline_csv(timelines, fh)
    print(path)
    return 0


def cmd_simulate(args) -> int:
    workbook = load_workbook(args.workbook)
    profile = SimProfile(
        archetype=Archetype(args.profile),
        mean_dwell=args.mean_dwell,
        edit_probability=args.edit_probability,
        seed=args.seed,
    )
    config = _config_from_args(args)
    sessions = simulate_population(
        workbook, profile, args.n, group=args.group, id_prefix=args.prefix, config=config
    )
    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)
    for session in sessions:
        path = os.path.join(out_dir, f"{session.session_id}.log")
        with open(path, "w", encoding="utf-8") as fh:
            logfmt.serialize_log(session, fh)
        print(path)
    return 0


def cmd_import(args) -> int:
    with open(args.dump, encoding="utf-8") as fh:
        result = import_tcat_dump(
            fh,
            session_id=args.session_id,
            participant=args.participant,
            group=args.group,
        )
    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"{args.session_id}.log")
    with open(path, "w", encoding="utf-8") as fh:
        logfmt.serialize_log(result.session, fh)
    report_path = os.path.join(out_dir, f"{args.session_id}.import-report.txt")
    with open(report_path, "w", encoding="utf-8") as fh:
        fh.write(f"rows rejected: {len(result.issues)}\n")
        for issue in result.issues:
            fh.write(f"row {issue.row} [{issue.column}] {issue.text!r}: {issue.message}\n")
    print(path)
    print(report_path)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    workbook = load_workbook(args.workbook)
    app = create_app(workbook, _config_from_args(args), log_dir=args.out or ".")
    host, _, port = args.bind.partition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000), log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cellscope")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, logs=True):
        p.add_argument("--workbook", required=True, help="workbook JSON document")
        if logs:
            p.add_argument("--log", action="append", help="canonical session log (repeatable)")
        p.add_argument("--threshold", default="0.3", help="inspection threshold in seconds")
        p.add_argument("--dwell-mode", default="per_visit", choices=[m.value for m in DwellMode])
        p.add_argument("--out", default=".", help="output directory")

    p = sub.add_parser("analyze", help="per-session metrics CSV")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("coverage-report", help="coverage heatmap + CSV")
    common(p)
    p.set_defaults(func=cmd_coverage_report)

    p = sub.add_parser("compare", help="group comparison statistics")
    common(p)
    p.add_argument("group_a")
    p.add_argument("group_b")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("simulate", help="generate synthetic session logs")
    common(p, logs=False)
    p.add_argument("--profile", default="full-sweep", choices=[a.value for a in Archetype])
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--group", default=None)
    p.add_argument("--prefix", default="sim")
    p.add_argument("--mean-dwell", type=float, default=1.0)
    p.add_argument("--edit-probability", type=float, default=0.8)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("import", help="import a recorded dump CSV")
    p.add_argument("dump")
    p.add_argument("--session-id", default="imported")
    p.add_argument("--participant", default="")
    p.add_argument("--group", default=None)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_import)

    p = sub.add_parser("serve", help="run the HTTP session service")
    common(p, logs=False)
    p.add_argument("--bind", default="127.0.0.1:8000")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CellscopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
