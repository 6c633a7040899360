"""Storage and persistence for verification runs."""

import json
import logging
import threading
from fractions import Fraction
from pathlib import Path
from typing import Optional, TextIO
from datetime import datetime

from index_core import ConfigError
from verify_models import CheckResult, RunConfig, RunSummary
from zeta_numeric import MZVEngine

logger = logging.getLogger(__name__)

# Storage file paths (same directory as script)
SCRIPT_DIR = Path(__file__).parent
CONFIG_FILE = SCRIPT_DIR / ".zeta_config.json"
HISTORY_FILE = SCRIPT_DIR / ".zeta_history.json"

DEFAULT_CONFIG = RunConfig().to_dict()


def load_config(path: Optional[Path] = None) -> RunConfig:
    """Load defaults overridden by the config file, if it exists; a file that does not parse is a ConfigError."""
    config_file = Path(path) if path else CONFIG_FILE
    data = dict(DEFAULT_CONFIG)
    if path and not config_file.exists():
        raise ConfigError(f"config file not found: {config_file}")
    if config_file.exists():
        try:
            with open(config_file, encoding="utf-8") as f:
                overrides = json.load(f)
        except (json.JSONDecodeError, IOError) as exc:
            raise ConfigError(f"cannot parse config file {config_file}: {exc}") from exc
        if not isinstance(overrides, dict):
            raise ConfigError(f"config file {config_file} must hold a JSON object")
        data.update(overrides)
    return RunConfig.from_dict(data)


def save_config(config: RunConfig, path: Optional[Path] = None):
    """Save configuration to file."""
    config_file = Path(path) if path else CONFIG_FILE
    with open(config_file, "w", encoding="utf-8") as f:
        json.dump(config.to_dict(), f, indent=2)


def parse_samples(text: str) -> tuple[list[tuple], list[tuple]]:
    """Parse sample lines `x,y` or `x,y,A,B` into (x, y) points and (A, B) points."""
    xy_points, ab_points = [], []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values = tuple(Fraction(part.strip()) for part in line.split(","))
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"line {number}: not a tuple of rationals: {raw!r}") from None
        if len(values) not in (2, 4):
            raise ConfigError(f"line {number}: expected 2 or 4 values, got {len(values)}")
        if values[:2] not in xy_points:
            xy_points.append(values[:2])
        if len(values) == 4 and values[2:] not in ab_points:
            ab_points.append(values[2:])
    return xy_points, ab_points


def load_samples(path: Path) -> tuple[list[tuple], list[tuple]]:
    """Read a samples file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except IOError as exc:
        raise ConfigError(f"cannot read samples file {path}: {exc}") from exc
    return parse_samples(text)


# ---- MZV cache ----

def load_mzv_cache(engine: MZVEngine, path: Path) -> int:
    """Seed the engine from a JSON-lines cache file; returns the number of entries read."""
    cache_file = Path(path)
    if not cache_file.exists():
        return 0
    entries = []
    try:
        with open(cache_file, encoding="utf-8") as f:
            for line in f:
                line = line.strip()
                if line:
                    try:
                        entries.append(json.loads(line))
                    except json.JSONDecodeError:
                        continue
    except IOError:
        return 0
    engine.load(entries)
    return len(entries)


def save_mzv_cache(engine: MZVEngine, path: Path):
    """Write the engine's cache, one entry per line, sorted by weight then index."""
    with open(path, "w", encoding="utf-8") as f:
        for entry in engine.dump():
            f.write(json.dumps(entry, sort_keys=False) + "\n")


# ---- reports ----

class ReportSink:
    """Single writer for JSON-lines results; stdout and an optional file."""

    def __init__(self, stream: Optional[TextIO] = None, output_path: Optional[Path] = None):
        self.stream = stream
        self.output_path = Path(output_path) if output_path else None
        self._file = open(self.output_path, "w", encoding="utf-8") if self.output_path else None
        self._lock = threading.Lock()

    def write(self, payload: dict):
        line = json.dumps(payload, ensure_ascii=False)
        with self._lock:
            if self.stream is not None:
                self.stream.write(line + "\n")
                self.stream.flush()
            if self._file is not None:
                self._file.write(line + "\n")
                self._file.flush()

    def close(self):
        if self._file is not None:
            self._file.close()
            self._file = None

    def __enter__(self) -> "ReportSink":
        return self

    def __exit__(self, *exc):
        self.close()


def load_report(path: Path) -> tuple[list[CheckResult], Optional[dict]]:
    """Read a JSON-lines report back into check results and the summary, if present."""
    results, summary = [], None
    try:
        with open(path, encoding="utf-8") as f:
            for line in f:
                line = line.strip()
                if not line:
                    continue
                try:
                    data = json.loads(line)
                except json.JSONDecodeError:
                    continue
                if "summary" in data:
                    summary = data["summary"]
                else:
                    results.append(CheckResult.from_dict(data))
    except IOError:
        pass
    return results, summary


# ---- run history ----

def _load_history() -> list[dict]:
    if HISTORY_FILE.exists():
        try:
            with open(HISTORY_FILE, encoding="utf-8") as f:
                return json.load(f)
        except (json.JSONDecodeError, IOError):
            pass
    return []


def add_run_history(summary: RunSummary, suites: list[str]) -> bool:
    """Add a finished run to history; False when the history file cannot be written."""
    history = _load_history()
    history.append({
        "run_id": summary.run_id,
        "suites": suites,
        "passed": summary.passed,
        "total": summary.total,
        "exit_code": summary.exit_code,
        "duration_ms": round(summary.elapsed_ms, 3),
        "timestamp": datetime.now().isoformat(),
    })
    # Keep last 50 entries
    try:
        with open(HISTORY_FILE, "w", encoding="utf-8") as f:
            json.dump(history[-50:], f, indent=2)
    except IOError as exc:
        logger.warning("cannot write run history %s: %s", HISTORY_FILE, exc)
        return False
    return True


def get_run_history(limit: int = 20) -> list[dict]:
    """Get recent runs, newest first."""
    return list(reversed(_load_history()[-limit:]))
