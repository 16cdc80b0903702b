"""Online runs, metrics, statistics, and report files."""

from .analytics import skill_stats
from .config import RunConfig, VALID_CELLS, config_hash, config_record
from .importer import import_library, updatable_names
from .report import (
    EPISODES_FILE,
    EPISODES_SCHEMA,
    LIBRARY_FILE,
    MEMORY_FILE,
    METRICS,
    REPLAY_FILE,
    ROWS_FILE,
    ROWS_SCHEMA,
    SUMMARY_FILE,
    SUMMARY_SCHEMA,
    ReportFormatError,
    RunReport,
    TaskRow,
    aggregate_rows,
    build_report,
    compare_runs,
    export_report,
    load_rows,
    load_summary,
    metric_values,
    render_comparison,
    ttest_runs,
)
from .runner import OnlineResult, run_online
from .stats import (
    DegenerateSample,
    TTestResult,
    regularized_incomplete_beta,
    student_t_two_sided,
    welch_t_test,
)

__all__ = [
    "DegenerateSample",
    "EPISODES_FILE",
    "EPISODES_SCHEMA",
    "LIBRARY_FILE",
    "MEMORY_FILE",
    "METRICS",
    "OnlineResult",
    "REPLAY_FILE",
    "ROWS_FILE",
    "ROWS_SCHEMA",
    "ReportFormatError",
    "RunConfig",
    "RunReport",
    "SUMMARY_FILE",
    "SUMMARY_SCHEMA",
    "TTestResult",
    "TaskRow",
    "VALID_CELLS",
    "aggregate_rows",
    "build_report",
    "compare_runs",
    "config_hash",
    "config_record",
    "export_report",
    "import_library",
    "load_rows",
    "load_summary",
    "metric_values",
    "regularized_incomplete_beta",
    "render_comparison",
    "run_online",
    "skill_stats",
    "student_t_two_sided",
    "ttest_runs",
    "updatable_names",
    "welch_t_test",
]
