"""
Self-checking invariant suites.

Each suite draws its own inputs from a seeded numpy generator, so a run is
fully determined by (suite, seed, trials). A suite returns a SuiteResult; it
never raises on a failed check.
"""

from collections.abc import Callable
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, Field

from gdap.core.models import ComponentMatrix, EmbeddingConfig, TimeSeries, validate_config
from gdap.decomposition.core import decompose_series
from gdap.diophantine.core import (
    Rectangle,
    count_solutions,
    solve_constrained,
    unit_delay_cardinality,
    unit_delay_solutions,
)
from gdap.embedding.core import (
    corollary_bounds,
    embed,
    occurrence_oracle,
    pull_back,
    q_bounds,
)
from gdap.embedding.legacy import legacy_dap
from gdap.utils.logger import get_logger
from gdap.verification.reference import example_table, misprinted_rows, reference_rows

logger = get_logger(__name__)

MAX_N = 256
MAX_D = 16
MAX_TAU = 8
ROUND_TRIP_TOL = 1e-12
CONSERVATION_TOL = 1e-10
DIVERGENCE_FACTOR = 0.01


class SuiteResult(BaseModel):
    """
    Outcome of one suite.

    Attributes:
        name: Suite name
        passed: Whether every check passed
        checks: Number of individual checks run
        failures: Number of failed checks
        detail: Suite-specific figures (worst errors, first failure)
    """

    name: str
    passed: bool
    checks: int = Field(default=0, ge=0)
    failures: int = Field(default=0, ge=0)
    detail: dict[str, Any] = Field(default_factory=dict)


def random_config(rng: np.random.Generator, s: Optional[int] = None) -> EmbeddingConfig:
    """Draw a valid configuration with N <= 256, d <= 16, tau <= 8."""
    d = int(rng.integers(1, MAX_D + 1))
    tau = int(rng.integers(1, MAX_TAU + 1))
    # rows must overlap or touch: m >= tau once there is more than one row
    n_min = 1 if d == 1 else d * tau
    N = int(rng.integers(n_min, MAX_N + 1))
    flag = int(rng.integers(0, 2)) if s is None else s
    return validate_config(N, d, tau, flag)


def _random_series(rng: np.random.Generator, config: EmbeddingConfig) -> TimeSeries:
    return TimeSeries(values=rng.standard_normal(config.N), convention=config.convention)


def oracle_agreement(rng: np.random.Generator, trials: int, **_: Any) -> SuiteResult:
    """Closed-form solution sets and row bounds against an exhaustive scan."""
    checks = failures = 0
    first: dict[str, Any] = {}
    for _trial in range(trials):
        config = random_config(rng)
        rect = Rectangle.for_embedding(config.d, config.m, config.s)
        for n in range(config.first_index, config.last_index + 1):
            checks += 1
            solved = solve_constrained(n, config.tau, config.s, rect)
            oracle = occurrence_oracle(n, config)
            b = q_bounds(n, config)
            ok = (
                solved.as_set() == oracle
                and len(solved) == count_solutions(n, config.tau, config.s, rect)
                and (b.q_min, b.q_max) == (solved.x_min, solved.x_max)
                and corollary_bounds(n, config) == (b.q_min, b.q_max)
            )
            if not ok:
                failures += 1
                first = first or {"config": config.summary(), "n": n}
    return SuiteResult(
        name="oracle-agreement",
        passed=failures == 0,
        checks=checks,
        failures=failures,
        detail={"first_failure": first} if first else {},
    )


def round_trip(rng: np.random.Generator, trials: int, **_: Any) -> SuiteResult:
    """pull_back(embed(X)) reproduces X sample by sample."""
    worst = 0.0
    failures = 0
    for _trial in range(trials):
        config = random_config(rng)
        series = _random_series(rng, config)
        rebuilt = pull_back(ComponentMatrix.from_trajectory(embed(series, config.d, config.tau)))
        x, y = series.values, rebuilt.values
        scale = np.where(x != 0.0, np.abs(x), 1.0)
        err = float(np.max(np.abs(y - x) / scale))
        worst = max(worst, err)
        if err > ROUND_TRIP_TOL:
            failures += 1
    return SuiteResult(
        name="round-trip",
        passed=failures == 0,
        checks=trials,
        failures=failures,
        detail={"max_relative_error": worst},
    )


def legacy_equivalence(rng: np.random.Generator, trials: int, **_: Any) -> SuiteResult:
    """Legacy and generalized rules agree for (s, tau) = (1, 1)."""
    worst = 0.0
    failures = 0
    wide = tall = 0
    for _trial in range(max(trials, 100)):
        d = int(rng.integers(1, MAX_D + 1))
        m = int(rng.integers(1, MAX_D + 1))
        config = validate_config(d + m - 1, d, 1, 1)
        wide += d < m
        tall += d >= m
        comp = ComponentMatrix(data=rng.standard_normal((d, m)), config=config)
        err = float(np.max(np.abs(legacy_dap(comp).values - pull_back(comp).values)))
        worst = max(worst, err)
        if err > ROUND_TRIP_TOL:
            failures += 1
    return SuiteResult(
        name="legacy-equivalence",
        passed=failures == 0 and wide > 0 and tall > 0,
        checks=wide + tall,
        failures=failures,
        detail={"max_abs_error": worst, "d_lt_m": wide, "d_ge_m": tall},
    )


def legacy_divergence(rng: np.random.Generator, trials: int, **_: Any) -> SuiteResult:
    """
    The legacy rule breaks for tau > 1 while pull-back stays exact.

    Uses (N, d, tau, s) = (27, 7, 3, 1); passing means divergence was seen.
    """
    failures = 0
    worst_legacy = 0.0
    worst_pull_back = 0.0
    runs = min(trials, 20)
    config = validate_config(27, 7, 3, 1)
    for _trial in range(runs):
        series = _random_series(rng, config)
        comp = ComponentMatrix.from_trajectory(embed(series, config.d, config.tau))
        scale = float(np.max(np.abs(series.values)))
        legacy_err = float(np.max(np.abs(legacy_dap(comp, force=True).values - series.values)))
        exact_err = float(np.max(np.abs(pull_back(comp).values - series.values)))
        worst_legacy = max(worst_legacy, legacy_err / scale)
        worst_pull_back = max(worst_pull_back, exact_err / scale)
        if legacy_err <= DIVERGENCE_FACTOR * scale or exact_err > ROUND_TRIP_TOL * scale:
            failures += 1
    return SuiteResult(
        name="legacy-divergence",
        passed=failures == 0,
        checks=runs,
        failures=failures,
        detail={
            "config": config.summary(),
            "legacy_max_deviation_rel": worst_legacy,
            "pull_back_max_deviation_rel": worst_pull_back,
        },
    )


def unit_cardinality(
    rng: np.random.Generator,
    trials: int,
    d: Optional[int] = None,
    m: Optional[int] = None,
    **_: Any,
) -> SuiteResult:
    """Unit-delay cardinality: n, then plateau d*, then N - n + 1."""
    if d is not None and m is not None:
        shapes = [(d, m)]
    else:
        shapes = [(dd, mm) for dd in range(1, MAX_D + 1) for mm in range(1, MAX_D + 1)]
    checks = failures = 0
    first: dict[str, Any] = {}
    for dd, mm in shapes:
        rect = Rectangle(alpha1=1, alpha2=dd, beta1=1, beta2=mm)
        d_star, total = min(dd, mm), dd + mm - 1
        for n in range(1, total + 1):
            checks += 1
            count = count_solutions(n, 1, 1, rect)
            allowed = {n, d_star, total - n + 1}
            ok = (
                count == unit_delay_cardinality(n, dd, mm)
                and count in allowed
                and unit_delay_solutions(n, dd, mm).as_set()
                == solve_constrained(n, 1, 1, rect).as_set()
            )
            if not ok:
                failures += 1
                first = first or {"d": dd, "m": mm, "n": n, "count": count}
    return SuiteResult(
        name="unit-cardinality",
        passed=failures == 0,
        checks=checks,
        failures=failures,
        detail={"shapes": len(shapes), **({"first_failure": first} if first else {})},
    )


def reference_tables(rng: np.random.Generator, trials: int, **_: Any) -> SuiteResult:
    """Every listed reference row of both example tables is reproduced."""
    checks = failures = 0
    mismatched: list[str] = []
    for s in (0, 1):
        table = {row.n: row for row in example_table(s)}
        for n, points in reference_rows(s).items():
            checks += 1
            if table[n].points != points:
                failures += 1
                mismatched.append(f"type{s}:n={n}")
        for n, printed in misprinted_rows(s).items():
            checks += 1
            if table[n].points == printed:
                failures += 1
                mismatched.append(f"type{s}:n={n}:misprint-reproduced")
    return SuiteResult(
        name="reference-tables",
        passed=failures == 0,
        checks=checks,
        failures=failures,
        detail={"mismatched": mismatched} if mismatched else {},
    )


def conservation(rng: np.random.Generator, trials: int, **_: Any) -> SuiteResult:
    """Component series from SVD + pull-back add up to the input."""
    failures = 0
    worst = 0.0
    runs = min(trials, 50)
    configs = [validate_config(27, 7, 3, 0)] + [random_config(rng) for _ in range(runs - 1)]
    for config in configs:
        series = _random_series(rng, config)
        parts = decompose_series(series, config.d, config.tau)
        total = np.sum([p.values for p in parts], axis=0)
        err = float(np.max(np.abs(total - series.values)))
        worst = max(worst, err)
        if err > CONSERVATION_TOL:
            failures += 1
    return SuiteResult(
        name="conservation",
        passed=failures == 0,
        checks=len(configs),
        failures=failures,
        detail={"max_abs_error": worst},
    )


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "oracle-agreement": oracle_agreement,
    "round-trip": round_trip,
    "legacy-equivalence": legacy_equivalence,
    "legacy-divergence": legacy_divergence,
    "unit-cardinality": unit_cardinality,
    "reference-tables": reference_tables,
    "conservation": conservation,
}


def run_suites(
    names: Optional[list[str]],
    seed: int,
    trials: int,
    **params: Any,
) -> list[SuiteResult]:
    """
    Run the named suites (all when names is empty) with one seeded generator each.

    Args:
        names: Suite names, or None for every suite
        seed: Base seed
        trials: Random configurations per suite
        **params: Extra suite parameters (d, m for unit-cardinality)

    Returns:
        One result per suite, in the requested order
    """
    selected = names or list(SUITES)
    results = []
    for name in selected:
        rng = np.random.default_rng(seed)
        result = SUITES[name](rng, trials, **params)
        logger.info(
            "suite_finished",
            suite=name,
            passed=result.passed,
            checks=result.checks,
            failures=result.failures,
        )
        results.append(result)
    return results
