"""Verification run engine: run logging, worker pool and exit codes."""

import logging
import time
import uuid
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime
from pathlib import Path
from typing import Callable, Optional

from verify_models import CheckResult, CheckStatus, RunConfig, RunSummary
from verify_storage import ReportSink, add_run_history, load_mzv_cache, save_mzv_cache
from verify_suites import SuiteTask, TaskOptions, build_tasks, run_task
from zeta_numeric import configure, default_engine

# Run logs directory
RUN_LOGS_DIR = Path.home() / ".zeta_hopf" / "logs"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


class RunLogger:
    """Per-run file logger."""

    def __init__(self, run_id: str, logs_dir: Optional[Path] = None):
        self.run_id = run_id
        self.logs_dir = Path(logs_dir) if logs_dir else RUN_LOGS_DIR
        self.log_file = self.logs_dir / f"{run_id}.log"
        self._ensure_log_dir()
        self._setup_logger()

    def _ensure_log_dir(self):
        """Ensure log directory exists."""
        self.logs_dir.mkdir(parents=True, exist_ok=True)

    def _setup_logger(self):
        """Set up file logger for this run."""
        self.logger = logging.getLogger(f"run.{self.run_id}")
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False
        self.logger.handlers.clear()  # Remove any existing handlers

        # File handler with detailed format
        handler = logging.FileHandler(self.log_file, mode='a', encoding="utf-8")
        handler.setLevel(logging.DEBUG)
        formatter = logging.Formatter(
            '%(asctime)s | %(levelname)-7s | %(message)s',
            datefmt='%H:%M:%S'
        )
        handler.setFormatter(formatter)
        self.logger.addHandler(handler)

    def info(self, msg: str):
        self.logger.info(msg)

    def debug(self, msg: str):
        self.logger.debug(msg)

    def warning(self, msg: str):
        self.logger.warning(msg)

    def error(self, msg: str):
        self.logger.error(msg)

    def check_event(self, check_id: str, event: str, details: str = ""):
        """Log a check-specific event."""
        msg = f"[{check_id}] {event}"
        if details:
            msg += f" - {details}"
        self.logger.info(msg)

    def close(self):
        for handler in list(self.logger.handlers):
            handler.close()
            self.logger.removeHandler(handler)

    @classmethod
    def read_log(cls, run_id: str, tail_lines: int = 100, logs_dir: Optional[Path] = None) -> str:
        """Read last N lines from a run log."""
        log_file = (Path(logs_dir) if logs_dir else RUN_LOGS_DIR) / f"{run_id}.log"
        if not log_file.exists():
            return "No logs yet."
        try:
            lines = log_file.read_text(encoding="utf-8").splitlines()
            if tail_lines and len(lines) > tail_lines:
                lines = lines[-tail_lines:]
            return "\n".join(lines)
        except IOError:
            return "Error reading log file."


def new_run_id() -> str:
    return f"{datetime.now():%Y%m%d-%H%M%S}-{str(uuid.uuid4())[:4]}"


def _timed(task: SuiteTask, options: TaskOptions) -> tuple[CheckStatus, dict, float]:
    started = time.perf_counter()
    try:
        status, details = run_task(task, options)
    except Exception as exc:  # reported as an ERROR line, the run continues
        status, details = CheckStatus.ERROR, {"error": f"{type(exc).__name__}: {exc}"}
    return status, details, (time.perf_counter() - started) * 1000


def _init_worker(options: TaskOptions, cache_path: Optional[str]):
    configure(dps=options.working_dps, budget=options.mzv_iteration_budget)
    if cache_path:
        load_mzv_cache(default_engine(), Path(cache_path))


class VerificationRunner:
    """Runs the tasks of a configuration and streams one result per check."""

    def __init__(self, config: RunConfig, sink: ReportSink,
                 on_result: Optional[Callable[[CheckResult], None]] = None,
                 logs_dir: Optional[Path] = None):
        self.config = config
        self.sink = sink
        self.on_result = on_result
        self.run_id = new_run_id()
        self.log = RunLogger(self.run_id, logs_dir)
        self.options = TaskOptions.from_config(config)

    def _emit(self, task: SuiteTask, status: CheckStatus, details: dict, elapsed_ms: float,
              summary: RunSummary) -> CheckResult:
        result = CheckResult(task.suite, task.check, status, details, elapsed_ms)
        summary.add(result)
        self.log.check_event(f"{task.suite}/{task.check}", status.value, f"{elapsed_ms:.0f} ms")
        if status != CheckStatus.PASSED:
            self.log.warning(f"{task.suite}/{task.check}: {details}")
        self.sink.write(result.to_dict())
        if self.on_result:
            self.on_result(result)
        return result

    def run(self) -> RunSummary:
        config = self.config
        tasks = build_tasks(config)
        summary = RunSummary(self.run_id)
        started = time.perf_counter()
        self.log.info(f"run {self.run_id}: {len(tasks)} checks, jobs={config.jobs}")
        self.log.debug(f"config: {config.to_dict()}")

        configure(dps=config.working_dps, budget=config.mzv_iteration_budget)
        if config.cache_path:
            loaded = load_mzv_cache(default_engine(), Path(config.cache_path))
            self.log.info(f"loaded {loaded} cached MZV values from {config.cache_path}")

        if config.jobs == 1:
            for task in tasks:
                self._emit(task, *_timed(task, self.options), summary)
        else:
            with ProcessPoolExecutor(max_workers=config.jobs, initializer=_init_worker,
                                     initargs=(self.options, config.cache_path)) as pool:
                futures = [pool.submit(_timed, task, self.options) for task in tasks]
                # Results are written in task order so reports do not depend on scheduling.
                for task, future in zip(tasks, futures):
                    self._emit(task, *future.result(), summary)

        summary.elapsed_ms = (time.perf_counter() - started) * 1000
        if config.cache_path:
            save_mzv_cache(default_engine(), Path(config.cache_path))
        self.sink.write(summary.to_dict())
        if not add_run_history(summary, [s.value for s in config.suites]):
            self.log.warning("run history not written")
        self.log.info(f"run {self.run_id} finished: {summary.passed}/{summary.total} passed "
                      f"in {summary.elapsed_ms / 1000:.1f}s")
        self.log.close()
        return summary


def run_verification(config: RunConfig, sink: ReportSink,
                     on_result: Optional[Callable[[CheckResult], None]] = None,
                     logs_dir: Optional[Path] = None) -> int:
    """Run every selected check and return the process exit code."""
    summary = VerificationRunner(config, sink, on_result, logs_dir).run()
    return EXIT_OK if summary.exit_code == 0 else EXIT_FAILED
