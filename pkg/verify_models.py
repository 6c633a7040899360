"""Data models for verification runs."""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional
import uuid
from datetime import datetime

from index_core import ConfigError
from numeric_identities import DEFAULT_AB_POINTS, DEFAULT_XY_POINTS


class SuiteName(Enum):
    """Verification suites selectable with --suite."""
    HOPF = "hopf"                              # Hopf-algebra axioms on the index algebra
    GENFUNC_EXACT = "genfunc-exact"            # Exact generating functions over I
    SCHUR = "schur"                            # Anti-hook expansion, compatibility, antipode
    KEY_LEMMA = "key-lemma"                    # Alternating and key lemmas
    GENFUNC_NUMERIC = "genfunc-numeric"        # Generating functions after applying Z
    SUM_FORMULAS = "sum-formulas"              # MZV, star and Schur sum formulas
    MAIN_THEOREM = "main-theorem"              # Main theorem, corollaries, relation formulas
    REMARK_COUNTEREXAMPLE = "remark-counterexample"

    @classmethod
    def parse(cls, names: list[str]) -> list["SuiteName"]:
        """Resolve suite names; 'all' selects every suite in declaration order."""
        if not names or "all" in names:
            return list(cls)
        suites = []
        for name in names:
            try:
                suite = cls(name)
            except ValueError:
                choices = ", ".join(s.value for s in cls)
                raise ConfigError(f"unknown suite: {name} (choose from all, {choices})") from None
            if suite not in suites:
                suites.append(suite)
        return suites


class CheckStatus(Enum):
    """Outcome of a single check."""
    PASSED = "passed"
    FAILED = "failed"
    INCONCLUSIVE = "inconclusive"   # Search found nothing within its bound
    ERROR = "error"                 # Check raised


def _fraction_text(value) -> str:
    return str(Fraction(value))


@dataclass
class RunConfig:
    """Settings for one verification run."""
    max_weight: int = 6
    tolerance: float = 1e-8
    mzv_tolerance: float = 1e-10
    sample_points: list[tuple[Fraction, Fraction]] = field(default_factory=list)   # (x, y); empty = defaults
    ab_points: list[tuple[Fraction, Fraction]] = field(default_factory=list)       # (A, B); empty = defaults
    suites: list[SuiteName] = field(default_factory=lambda: list(SuiteName))
    jobs: int = 1
    output_path: Optional[str] = None
    cache_path: Optional[str] = None
    format: str = "json"
    working_dps: int = 30
    exact_order_single: int = 10
    exact_order_multi: int = 8
    numeric_order: int = 6
    mzv_iteration_budget: int = 20_000

    def validate(self) -> "RunConfig":
        """Raise ConfigError on out-of-range settings."""
        if self.max_weight < 2:
            raise ConfigError(f"max_weight must be at least 2, got {self.max_weight}")
        if not self.tolerance > 0 or not self.mzv_tolerance > 0:
            raise ConfigError("tolerances must be positive")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be at least 1, got {self.jobs}")
        if self.format not in ("json", "text"):
            raise ConfigError(f"unknown format: {self.format}")
        if self.working_dps < 15:
            raise ConfigError("working_dps below double precision")
        for name in ("exact_order_single", "exact_order_multi", "numeric_order"):
            if getattr(self, name) < 2:
                raise ConfigError(f"{name} must be at least 2")
        return self

    def samples(self) -> list[dict]:
        """Sample dicts for numeric identities: every (x, y) point with every (A, B) point."""
        xy = self.sample_points or DEFAULT_XY_POINTS
        ab = self.ab_points or DEFAULT_AB_POINTS
        return [
            {"x": Fraction(x), "y": Fraction(y), "A": Fraction(a), "B": Fraction(b)}
            for x, y in xy for a, b in ab
        ]

    def to_dict(self) -> dict:
        """Serialize to dictionary."""
        return {
            "max_weight": self.max_weight,
            "tolerance": self.tolerance,
            "mzv_tolerance": self.mzv_tolerance,
            "sample_points": [[_fraction_text(v) for v in p] for p in self.sample_points],
            "ab_points": [[_fraction_text(v) for v in p] for p in self.ab_points],
            "suites": [s.value for s in self.suites],
            "jobs": self.jobs,
            "output_path": self.output_path,
            "cache_path": self.cache_path,
            "format": self.format,
            "working_dps": self.working_dps,
            "exact_order_single": self.exact_order_single,
            "exact_order_multi": self.exact_order_multi,
            "numeric_order": self.numeric_order,
            "mzv_iteration_budget": self.mzv_iteration_budget,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        """Deserialize from dictionary; missing keys take defaults."""
        defaults = cls()
        try:
            return cls(
                max_weight=int(data.get("max_weight", defaults.max_weight)),
                tolerance=float(data.get("tolerance", defaults.tolerance)),
                mzv_tolerance=float(data.get("mzv_tolerance", defaults.mzv_tolerance)),
                sample_points=[tuple(Fraction(v) for v in p) for p in data.get("sample_points", [])],
                ab_points=[tuple(Fraction(v) for v in p) for p in data.get("ab_points", [])],
                suites=SuiteName.parse(data.get("suites", ["all"])),
                jobs=int(data.get("jobs", defaults.jobs)),
                output_path=data.get("output_path"),
                cache_path=data.get("cache_path"),
                format=data.get("format", defaults.format),
                working_dps=int(data.get("working_dps", defaults.working_dps)),
                exact_order_single=int(data.get("exact_order_single", defaults.exact_order_single)),
                exact_order_multi=int(data.get("exact_order_multi", defaults.exact_order_multi)),
                numeric_order=int(data.get("numeric_order", defaults.numeric_order)),
                mzv_iteration_budget=int(data.get("mzv_iteration_budget", defaults.mzv_iteration_budget)),
            )
        except ConfigError:
            raise
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"invalid configuration value: {exc}") from exc


@dataclass
class CheckResult:
    """One line of a verification report."""
    suite: str
    check: str
    status: CheckStatus = CheckStatus.PASSED
    details: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0
    id: str = field(default_factory=lambda: str(uuid.uuid4())[:8])
    finished_at: str = field(default_factory=lambda: datetime.now().isoformat())

    @property
    def holds(self) -> bool:
        return self.status == CheckStatus.PASSED

    @property
    def duration_str(self) -> str:
        """Human-readable duration."""
        if self.elapsed_ms < 1000:
            return f"{self.elapsed_ms:.0f}ms"
        mins, secs = divmod(self.elapsed_ms / 1000, 60)
        if mins >= 1:
            return f"{int(mins)}m {int(secs)}s"
        return f"{secs:.1f}s"

    def to_dict(self) -> dict:
        """Report line; keys in a fixed order, no timestamps."""
        return {
            "suite": self.suite,
            "check": self.check,
            "holds": self.holds,
            "status": self.status.value,
            "details": self.details,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CheckResult":
        """Deserialize a report line."""
        status = data.get("status")
        if status is None:
            status = "passed" if data.get("holds") else "failed"
        return cls(
            suite=data.get("suite", ""),
            check=data.get("check", ""),
            status=CheckStatus(status),
            details=data.get("details", {}),
            elapsed_ms=float(data.get("elapsed_ms", 0.0)),
        )


@dataclass
class RunSummary:
    """Totals for a finished run."""
    run_id: str
    total: int = 0
    passed: int = 0
    failed: int = 0
    inconclusive: int = 0
    errors: int = 0
    elapsed_ms: float = 0.0

    def add(self, result: CheckResult):
        self.total += 1
        if result.status == CheckStatus.PASSED:
            self.passed += 1
        elif result.status == CheckStatus.FAILED:
            self.failed += 1
        elif result.status == CheckStatus.INCONCLUSIVE:
            self.inconclusive += 1
        else:
            self.errors += 1

    @property
    def exit_code(self) -> int:
        return 0 if self.total == self.passed else 1

    def to_dict(self) -> dict:
        return {"summary": {
            "run_id": self.run_id,
            "total": self.total,
            "passed": self.passed,
            "failed": self.failed,
            "inconclusive": self.inconclusive,
            "errors": self.errors,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }}


# Status display helpers
STATUS_ICONS = {
    CheckStatus.PASSED: "✅",
    CheckStatus.FAILED: "❌",
    CheckStatus.INCONCLUSIVE: "❔",
    CheckStatus.ERROR: "💥",
}

STATUS_COLORS = {
    CheckStatus.PASSED: "green",
    CheckStatus.FAILED: "red",
    CheckStatus.INCONCLUSIVE: "yellow",
    CheckStatus.ERROR: "magenta",
}
