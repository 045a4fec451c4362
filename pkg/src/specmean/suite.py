"""Run the check registry over seeded instances and fold the results into a report.

Report schema (``SuiteReport.to_dict``), stable across versions::

    {
      "schema": "specmean.suite/1",
      "config": {"seed", "trials", "dims", "ts", "rs", "tol", "checks", "falsify_draws"},
      "failures": int,              # failing trials, falsification-mode checks excluded
      "discrepancies": int,         # failing trials of falsification-mode checks
      "numeric_failures": int,      # trials aborted by a NumericFailure
      "checks": [
        {"id", "statement", "kind", "falsification": bool,
         "trials", "failures", "reevaluated", "numeric_failures",
         "min_margin", "median_margin", "min_relative_margin",
         "worst_instance": {...}}    # digest of the trial with smallest margin/scale
      ],
      "findings": [                 # wide random sweeps of falsification-mode checks
        {"id", "draws", "violations", "min_relative_margin", "worst_instance"}
      ]
    }

Floats are emitted with ``repr`` precision. Aggregates are min, median and
counts, so they do not depend on evaluation order.
"""

from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass, field
from typing import Sequence

from .checks import REGISTRY, SUITE_R, CheckResult, iter_ids, run_check, sample_instance, scalar_points
from .exceptions import NumericFailure
from .rng import SplitMix64, derive_seed

__all__ = ["SuiteConfig", "CheckSummary", "Finding", "SuiteReport", "run_suite", "falsify", "trial_params"]

SCHEMA = "specmean.suite/1"


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 42
    trials: int = 200
    dims: tuple[int, ...] = (2, 3, 5, 8)
    ts: tuple[float, ...] = (0.1, 0.3, 0.5, 0.7, 0.9)
    rs: tuple[float, ...] = (0.1, 0.3, 0.5, 0.7, 0.9)
    tol: float = 1e-8
    checks: tuple[str, ...] | None = None
    falsify_draws: int = 200

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.dims or any(d < 1 for d in self.dims):
            raise ValueError(f"dims must be a non-empty list of positive integers, got {self.dims}")
        if not self.ts or any(not 0.0 <= t <= 1.0 for t in self.ts):
            raise ValueError(f"ts must lie in [0, 1], got {self.ts}")
        if not self.rs or any(not 0.0 <= r <= 1.0 for r in self.rs):
            raise ValueError(f"rs must lie in [0, 1], got {self.rs}")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.falsify_draws < 0:
            raise ValueError("falsify_draws must be non-negative")
        if self.checks is not None:
            iter_ids(self.checks)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "dims": list(self.dims),
            "ts": list(self.ts),
            "rs": list(self.rs),
            "tol": self.tol,
            "checks": None if self.checks is None else list(self.checks),
            "falsify_draws": self.falsify_draws,
        }


@dataclass
class CheckSummary:
    id: str
    results: list[CheckResult] = field(default_factory=list)
    numeric_failures: int = 0

    @property
    def check(self):
        return REGISTRY[self.id]

    @property
    def trials(self) -> int:
        return len(self.results) + self.numeric_failures

    @property
    def failures(self) -> int:
        return sum(not r.passed for r in self.results)

    def to_dict(self) -> dict:
        margins = [r.margin for r in self.results]
        worst = min(self.results, key=lambda r: (r.relative_margin, r.instance_digest["seed"]), default=None)
        return {
            "id": self.id,
            "statement": self.check.statement,
            "kind": self.check.kind,
            "falsification": self.check.falsification,
            "trials": self.trials,
            "failures": self.failures,
            "reevaluated": sum(r.reevaluated for r in self.results),
            "numeric_failures": self.numeric_failures,
            "min_margin": min(margins) if margins else None,
            "median_margin": statistics.median(margins) if margins else None,
            "min_relative_margin": worst.relative_margin if worst else None,
            "worst_instance": worst.instance_digest if worst else None,
        }


@dataclass
class Finding:
    id: str
    draws: int
    violations: int
    min_relative_margin: float
    worst_instance: dict | None

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "draws": self.draws,
            "violations": self.violations,
            "min_relative_margin": self.min_relative_margin,
            "worst_instance": self.worst_instance,
        }


@dataclass
class SuiteReport:
    config: SuiteConfig
    summaries: list[CheckSummary]
    findings: list[Finding]

    def summary(self, check_id: str) -> CheckSummary:
        for s in self.summaries:
            if s.id == check_id:
                return s
        raise KeyError(check_id)

    @property
    def failures(self) -> int:
        return sum(s.failures for s in self.summaries if not s.check.falsification)

    @property
    def discrepancies(self) -> int:
        return sum(s.failures for s in self.summaries if s.check.falsification)

    @property
    def numeric_failures(self) -> int:
        return sum(s.numeric_failures for s in self.summaries)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "config": self.config.to_dict(),
            "failures": self.failures,
            "discrepancies": self.discrepancies,
            "numeric_failures": self.numeric_failures,
            "checks": [s.to_dict() for s in self.summaries],
            "findings": [f.to_dict() for f in self.findings],
        }

    def to_json(self) -> str:
        return json.dumps(_finite(self.to_dict()), indent=2, sort_keys=False) + "\n"


def _finite(obj):
    # JSON has no inf/nan
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    return obj


def trial_params(config: SuiteConfig, check_id: str, i: int) -> tuple[int, int, float, float | None]:
    """Deterministic ``(seed, dim, t, r)`` for trial ``i``; cycles dims fastest, then t, then r."""
    nd, nt = len(config.dims), len(config.ts)
    dim = config.dims[i % nd]
    t = config.ts[(i // nd) % nt]
    r = config.rs[(i // (nd * nt)) % len(config.rs)] if REGISTRY[check_id].r_values is SUITE_R else None
    return derive_seed(config.seed, check_id, i), dim, t, r


def _run_operator(config: SuiteConfig, check_id: str) -> CheckSummary:
    summary = CheckSummary(check_id)
    for i in range(config.trials):
        seed, dim, t, r = trial_params(config, check_id, i)
        try:
            inst = sample_instance(check_id, seed, dim, t, r)
            summary.results.append(run_check(check_id, inst, config.tol))
        except NumericFailure:
            summary.numeric_failures += 1
    return summary


def _run_scalar(config: SuiteConfig, check_id: str) -> CheckSummary:
    summary = CheckSummary(check_id)
    for inst in scalar_points(check_id, derive_seed(config.seed, check_id), config.trials):
        summary.results.append(run_check(check_id, inst, config.tol))
    return summary


def falsify(check_id: str, draws: int, seed: int, tol: float = 1e-8) -> Finding:
    """Wide random sweep of one operator check: dims 1-8, t and r uniform, ratios up to 1000."""
    check = REGISTRY[check_id]
    rng = SplitMix64(derive_seed(seed, "falsify", check_id))
    violations = 0
    worst: CheckResult | None = None
    done = 0
    for i in range(draws):
        dim = rng.integers(1, 9)
        t = rng.uniform(0.01, 0.99)
        r = rng.uniform(0.01, 0.99) if check.r_values is SUITE_R else None
        try:
            inst = sample_instance(check_id, derive_seed(seed, "falsify", check_id, i), dim, t, r, wide=True)
            res = run_check(check_id, inst, tol)
        except NumericFailure:
            continue
        done += 1
        violations += not res.passed
        if worst is None or res.relative_margin < worst.relative_margin:
            worst = res
    return Finding(
        check_id,
        done,
        violations,
        worst.relative_margin if worst else math.nan,
        worst.instance_digest if worst else None,
    )


def run_suite(config: SuiteConfig = SuiteConfig()) -> SuiteReport:
    """Evaluate every selected check; the result depends only on ``config``."""
    summaries = []
    for check_id in iter_ids(config.checks):
        if REGISTRY[check_id].kind == "operator":
            summaries.append(_run_operator(config, check_id))
        else:
            summaries.append(_run_scalar(config, check_id))
    findings = []
    if config.falsify_draws:
        for s in summaries:
            if s.check.falsification:
                findings.append(falsify(s.id, config.falsify_draws, config.seed, config.tol))
    return SuiteReport(config, summaries, findings)


def run_ids(ids: Sequence[str], **kwargs) -> SuiteReport:
    return run_suite(SuiteConfig(checks=tuple(ids), **kwargs))
