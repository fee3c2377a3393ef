"""Geometric time grid underlying the interval-indexed formulation.

The horizon is cut into geometrically growing intervals.  The first interval
is the closed singleton ``[kappa, kappa]`` where ``kappa = rho_min / sigma_max``
is the earliest any job can complete; interval ``t >= 2`` is the half-open
``(tau_{t-1}, tau_t]`` with ``tau_t = kappa * (1 + epsilon)**(t-1)``.  The grid
extends just far enough to hold every job at the slowest speed after the last
release.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

from .instance import Instance


@dataclass(frozen=True)
class TimeGrid:
    kappa: float
    tau: tuple       # boundaries tau[0] .. tau[T]; tau[0] == tau[1] == kappa
    epsilon: float

    @property
    def T(self) -> int:
        return len(self.tau) - 1

    def lower(self, t: int) -> float:
        """Lower completion-time bound for interval t (tau_{t-1})."""
        return self.tau[t - 1]

    def upper(self, t: int) -> float:
        return self.tau[t]


def build_grid(instance: Instance) -> TimeGrid:
    """Smallest grid covering ``max_i r_i + sum_i rho_i / sigma_1``."""
    rho_min = min(j.rho for j in instance.jobs)
    kappa = rho_min / instance.speedset.max
    horizon = max(j.release for j in instance.jobs) + sum(
        j.rho / instance.speedset.min for j in instance.jobs
    )
    tau = [kappa, kappa]
    # repeated multiplication: each boundary ratio is (1 + epsilon) to 1 ulp
    while tau[-1] < horizon * (1 - 1e-15):
        tau.append(tau[-1] * (1 + instance.epsilon))
    return TimeGrid(kappa=kappa, tau=tuple(tau), epsilon=instance.epsilon)


def interval_of(grid: TimeGrid, time: float) -> int:
    """Index t of the interval containing ``time``; ``time == kappa`` maps to 1."""
    if time < grid.kappa * (1 - 1e-12) or time > grid.tau[-1] * (1 + 1e-12):
        raise ValueError(
            f"time {time} outside grid range [{grid.kappa}, {grid.tau[-1]}]"
        )
    if time <= grid.kappa:
        return 1
    # smallest t >= 2 with time <= tau[t]
    t = bisect_left(grid.tau, time, lo=2)
    return min(t, grid.T)
