"""Closed-form success probabilities and robust-vs-oscillatory comparisons.

The closed forms take the marked fraction(s) and evaluate Chebyshev values at
arguments x / gamma; when the step count is below the bound those arguments
exceed 1 and the probability legitimately falls below the floor -- that is
reported as-is, not treated as an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .chebyshev import chebyshev_t, gamma_params
from .reduced import build_model, run_reduced
from .schedule import (
    DEFAULT_CONVENTION,
    build_schedule,
    oscillatory_schedule,
    scenario_from_counts,
    step_bound,
)


def closed_form_ph_one_side(h: int, epsilon: float, ratio_l: float) -> float:
    """Success probability after h steps with marked fraction ratio_l on one side.

    Odd h:  1 - eps T_h(x/gamma)^2 with x = sqrt(1 - ratio).
    Even h: 1 - eps/2 [T_{h+1}(x/gamma_1)^2 + T_{h-1}(x/gamma_2)^2].
    """
    if h < 3:
        raise ValueError(f"closed forms need h >= 3, got {h}")
    if not 0.0 < ratio_l <= 1.0:
        raise ValueError(f"marked fraction must be in (0, 1], got {ratio_l}")
    x = math.sqrt(1.0 - ratio_l)
    if h % 2 == 1:
        g = gamma_params(h, epsilon)
        return 1.0 - epsilon * chebyshev_t(h, x * g.inv_gamma) ** 2
    g1 = gamma_params(h + 1, epsilon)
    g2 = gamma_params(h - 1, epsilon)
    return 1.0 - epsilon / 2.0 * (
        chebyshev_t(h + 1, x * g1.inv_gamma) ** 2 + chebyshev_t(h - 1, x * g2.inv_gamma) ** 2
    )


def closed_form_ph_two_sides(h: int, epsilon: float, ratio_l: float, ratio_r: float) -> float:
    """Success probability with marked fractions on both sides.

    Odd h:  1 - eps^2 T_h(x_l/gamma)^2 T_h(x_r/gamma)^2.
    Even h: 1 - eps^2/2 [T_{h+1}(x_l/g1)^2 T_{h-1}(x_r/g2)^2
                         + T_{h+1}(x_r/g1)^2 T_{h-1}(x_l/g2)^2].
    """
    if h < 3:
        raise ValueError(f"closed forms need h >= 3, got {h}")
    for r in (ratio_l, ratio_r):
        if not 0.0 < r <= 1.0:
            raise ValueError(f"marked fractions must be in (0, 1], got {r}")
    x_l = math.sqrt(1.0 - ratio_l)
    x_r = math.sqrt(1.0 - ratio_r)
    if h % 2 == 1:
        g = gamma_params(h, epsilon)
        return 1.0 - epsilon**2 * (
            chebyshev_t(h, x_l * g.inv_gamma) ** 2 * chebyshev_t(h, x_r * g.inv_gamma) ** 2
        )
    g1 = gamma_params(h + 1, epsilon)
    g2 = gamma_params(h - 1, epsilon)
    return 1.0 - epsilon**2 / 2.0 * (
        chebyshev_t(h + 1, x_l * g1.inv_gamma) ** 2 * chebyshev_t(h - 1, x_r * g2.inv_gamma) ** 2
        + chebyshev_t(h + 1, x_r * g1.inv_gamma) ** 2 * chebyshev_t(h - 1, x_l * g2.inv_gamma) ** 2
    )


def closed_form_ph(h: int, epsilon: float, N_l: int, N_r: int, n_l: int, n_r: int) -> float:
    """Dispatch on the marking pattern implied by the counts."""
    if n_l >= 1 and n_r >= 1:
        return closed_form_ph_two_sides(h, epsilon, n_l / N_l, n_r / N_r)
    if n_l >= 1:
        return closed_form_ph_one_side(h, epsilon, n_l / N_l)
    if n_r >= 1:
        return closed_form_ph_one_side(h, epsilon, n_r / N_r)
    raise ValueError("at least one marked vertex is required")


@dataclass
class RobustnessReport:
    """Floor check over a step-count range."""

    floor: float
    h_start: int
    h_max: int
    min_p: float
    min_h: int
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def robustness_check(
    N_l: int,
    N_r: int,
    n_l: int,
    n_r: int,
    epsilon: float,
    h_max: int,
    convention: str = DEFAULT_CONVENTION,
) -> RobustnessReport:
    """Run the robust schedule for every h from the step bound to h_max and
    assert the 1 - epsilon floor (with 1e-9 slack)."""
    bound = step_bound(N_l, N_r, scenario_from_counts(n_l, n_r), epsilon)
    h_start = max(bound, 3)
    if h_max < h_start:
        raise ValueError(f"h_max {h_max} is below the step bound {h_start}")
    model = build_model(N_l, N_r, n_l, n_r)
    floor = 1.0 - epsilon
    min_p, min_h = 2.0, h_start
    violations = []
    for h in range(h_start, h_max + 1):
        _, series = run_reduced(model, build_schedule(h, epsilon, convention))
        p = series.final()
        if p < min_p:
            min_p, min_h = p, h
        if p < floor - 1e-9:
            violations.append(h)
    return RobustnessReport(floor, h_start, h_max, min_p, min_h, violations)


@dataclass(frozen=True)
class CompareRow:
    h: int
    p_robust: float
    p_oscillatory: float
    p_closed_form: float


def compare_series(
    N_l: int,
    N_r: int,
    n_l: int,
    n_r: int,
    epsilon: float,
    h_max: int,
    convention: str = DEFAULT_CONVENTION,
) -> list[CompareRow]:
    """Per-h success probabilities under both schedules plus the closed form.

    Each robust point is a fresh h-step run (the schedule depends on h); the
    oscillatory points come from a single trajectory since its angles are
    constant.
    """
    if h_max < 3:
        raise ValueError(f"h_max must be >= 3, got {h_max}")
    model = build_model(N_l, N_r, n_l, n_r)
    _, osc = run_reduced(model, oscillatory_schedule(h_max))
    osc_p = dict(osc.entries)
    rows = []
    for h in range(3, h_max + 1):
        _, robust = run_reduced(model, build_schedule(h, epsilon, convention))
        rows.append(
            CompareRow(
                h=h,
                p_robust=robust.final(),
                p_oscillatory=osc_p[h],
                p_closed_form=closed_form_ph(h, epsilon, N_l, N_r, n_l, n_r),
            )
        )
    return rows
