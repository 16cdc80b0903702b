"""Command-line entry points: run, verify, stats, ttest, compare."""

from __future__ import annotations

import argparse
import json
import sys

from .agent.config import ASI, MODES, AgentConfig
from .agent.library import SkillLibrary
from .harness.analytics import skill_stats
from .harness.config import RunConfig
from .harness.importer import import_library
from .harness.report import (
    METRICS,
    aggregate_rows,
    compare_runs,
    load_rows,
    render_comparison,
    ttest_runs,
)
from .harness.runner import run_online
from .harness.stats import DegenerateSample
from .induction.inducer import load_candidate
from .llm.backend import make_backend
from .llm.errors import BackendError
from .sim.spec import load_site_spec
from .sim.tasks import load_tasks
from .verification.judge import AUTO, JUDGE_MODES
from .verification.verify import verify_candidate


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="webskill",
        description="Web agents that grow their own action space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a task sequence online")
    run.add_argument("--site", required=True, help="site spec JSON")
    run.add_argument("--tasks", required=True, help="task file JSON")
    run.add_argument("--mode", choices=MODES, default=ASI)
    run.add_argument("--backend", required=True,
                     help="scripted:FILE or http:URL")
    run.add_argument("--max-steps", type=int, default=None,
                     help="override every task's step budget")
    run.add_argument("--verify", choices=("on", "off"), default="on",
                     help="gate inductions by re-execution")
    run.add_argument("--import-library", default=None, help="library JSONL to reuse")
    run.add_argument("--allow-update", action="store_true",
                     help="let re-inductions shadow imported skills")
    run.add_argument("--judge", choices=JUDGE_MODES, default=AUTO)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--out", default=None, help="artifact directory")

    verify = sub.add_parser("verify", help="verify one induction candidate")
    verify.add_argument("--candidate", required=True, help="candidate JSON file")
    verify.add_argument("--site", required=True)
    verify.add_argument("--tasks", required=True)
    verify.add_argument("--task-id", default=None,
                        help="defaults to the candidate's source episode")
    verify.add_argument("--backend", required=True)
    verify.add_argument("--library", default=None, help="library JSONL to verify against")
    verify.add_argument("--max-steps", type=int, default=None)
    verify.add_argument("--judge", choices=JUDGE_MODES, default=AUTO)

    stats = sub.add_parser("stats", help="skill analytics for a run directory")
    stats.add_argument("run_dir")

    ttest = sub.add_parser("ttest", help="Welch t-test between two runs")
    ttest.add_argument("--a", required=True, dest="dir_a")
    ttest.add_argument("--b", required=True, dest="dir_b")
    ttest.add_argument("--metric", choices=METRICS, required=True)

    compare = sub.add_parser("compare", help="diff two run directories")
    compare.add_argument("dir_a")
    compare.add_argument("dir_b")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "stats":
            return _cmd_stats(args)
        if args.command == "ttest":
            return _cmd_ttest(args)
        return _cmd_compare(args)
    except (OSError, ValueError, BackendError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _cmd_run(args) -> int:
    config = RunConfig(
        site=args.site,
        tasks=args.tasks,
        mode=args.mode,
        verify_induction=args.verify == "on",
        backend=args.backend,
        max_steps=args.max_steps,
        import_library=args.import_library,
        allow_update=args.allow_update,
        out_dir=args.out,
        seed=args.seed,
        judge=args.judge,
    )
    result = run_online(config)
    payload = {
        "aggregates": result.report.aggregates,
        "aborted": result.report.aborted,
        "skills": sorted(result.library.names()),
    }
    print(json.dumps(payload, sort_keys=True, indent=2))
    return 1 if result.report.aborted else 0


def _cmd_verify(args) -> int:
    site = load_site_spec(args.site)
    tasks = {t.task_id: t for t in load_tasks(args.tasks)}
    if args.library:
        library = import_library(args.library, site.site_id)
    else:
        library = SkillLibrary(namespace=site.site_id)
    candidate = load_candidate(args.candidate, library)
    task_id = args.task_id or candidate.episode_id
    if task_id not in tasks:
        print(f"error: no task '{task_id}' in {args.tasks}", file=sys.stderr)
        return 2
    task = tasks[task_id]
    if candidate.void:
        print(json.dumps({
            "passed": False,
            "void": True,
            "diagnostics": candidate.diagnostics,
        }, sort_keys=True, indent=2))
        return 1
    config = AgentConfig(
        max_steps=args.max_steps if args.max_steps else task.max_steps,
    )
    report = verify_candidate(
        task, site, config, library, candidate, make_backend(args.backend),
        args.judge,
    )
    print(json.dumps({
        "passed": report.passed,
        "correctness": report.correctness,
        "skill_usage": report.skill_usage,
        "skill_validity": report.skill_validity,
        "called_names": list(report.called_names),
        "diagnostics": report.diagnostics,
    }, sort_keys=True, indent=2))
    return 0 if report.passed else 1


def _cmd_stats(args) -> int:
    rows = load_rows(args.run_dir)
    print(json.dumps({
        "skill_stats": skill_stats(rows),
        "aggregates": aggregate_rows(rows),
    }, sort_keys=True, indent=2))
    return 0


def _cmd_ttest(args) -> int:
    try:
        r = ttest_runs(args.dir_a, args.dir_b, args.metric)
    except DegenerateSample as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps({
        "metric": args.metric,
        "t": r.t_stat,
        "df": r.degrees_of_freedom,
        "p": r.p_value,
        "n_a": r.n_a,
        "n_b": r.n_b,
        "mean_a": r.mean_a,
        "mean_b": r.mean_b,
        "significant": r.significant,
    }, sort_keys=True, indent=2))
    return 0


def _cmd_compare(args) -> int:
    print(render_comparison(compare_runs(args.dir_a, args.dir_b)))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
