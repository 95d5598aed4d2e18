"""Grid scan over the high level H to pick the best (L, H) operating point."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .analysis import ber_total
from .core import DEFAULT_HIGH_FACTOR, Policy, PowerPair, power_pair_for

DEFAULT_SNR_GRID_DB = (0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0)

# stop the scan when H^2 comes within this margin of the budget: the
# implied L would be numerically meaningless beyond it
BUDGET_MARGIN = 1e-6


def mean_ber_objective(snr_db_grid=DEFAULT_SNR_GRID_DB) -> Callable[[PowerPair], float]:
    """Default objective: mean closed-form ber_total over an SNR grid."""
    snrs = 10.0 ** (np.asarray(snr_db_grid, dtype=np.float64) / 10.0)
    if snrs.size == 0:
        raise ValueError("snr grid must not be empty")

    def objective(pair: PowerPair) -> float:
        return float(np.mean([ber_total(s, pair) for s in snrs]))

    return objective


@dataclass(eq=False)
class ScanResult:
    """Winning pair plus the full scan trace for inspection or plotting."""

    pair: PowerPair
    objective: float
    trace_high: np.ndarray = field(repr=False)
    trace_low: np.ndarray = field(repr=False)
    trace_objective: np.ndarray = field(repr=False)


def scan_levels(
    policy: Policy,
    objective: Callable[[PowerPair], float] | None = None,
    h_start: float = 1.05,
    h_step: float = 0.01,
    eb: float = 1.0,
) -> ScanResult:
    """Walk H upward in fixed steps and return the objective's argmin.

    Candidates are H = h_start + k*h_step for k = 0, 1, ... while
    H^2 < budget - 1e-6. Steps whose implied L would not satisfy
    0 < L < H are skipped (the low end of the walk can be infeasible
    under the larger budget); the scan fails only when no candidate at
    all is feasible. Ties resolve to the smaller H. The objective is
    deterministic by default (closed form), so the result is too.
    """
    if h_start <= 0 or h_step <= 0:
        raise ValueError("h_start and h_step must be positive")
    if objective is None:
        objective = mean_ber_objective()
    budget = policy.budget * eb
    highs, lows, values = [], [], []
    k = 0
    while True:
        h = h_start + h_step * k
        k += 1
        if h * h >= budget - BUDGET_MARGIN:
            break
        low_sq = budget - h * h
        if low_sq >= h * h:  # L >= H, not a usable pair yet
            continue
        pair = PowerPair(low=float(np.sqrt(low_sq)), high=float(h), budget=budget)
        highs.append(pair.high)
        lows.append(pair.low)
        values.append(float(objective(pair)))
    if not values:
        raise ValueError(
            f"no feasible (L, H) candidate with h_start={h_start!r}, "
            f"h_step={h_step!r} under budget {budget!r}"
        )
    values_arr = np.asarray(values)
    best = int(np.argmin(values_arr))  # first minimum = smallest H on ties
    winner = PowerPair(low=lows[best], high=highs[best], budget=budget)
    return ScanResult(
        pair=winner,
        objective=values[best],
        trace_high=np.asarray(highs),
        trace_low=np.asarray(lows),
        trace_objective=values_arr,
    )


def reference_pair(policy: Policy, eb: float = 1.0) -> PowerPair:
    """The documented operating point for a policy (see core.DEFAULT_HIGH_FACTOR)."""
    return power_pair_for(policy, DEFAULT_HIGH_FACTOR[policy], eb)
