"""Energy-cost models for speed-scaled jobs.

Two descriptor variants are supported:

* :class:`PolynomialEnergy` -- the classic CPU power model, where running a
  job of ``rho`` cycles entirely at speed ``s`` costs ``v * rho * s**(beta-1)``.
* :class:`TableEnergy` -- arbitrary non-negative, job-dependent costs given
  at each grid speed.  Off-grid evaluation happens on the lower convex
  envelope of the tabulated points (linear in between grid speeds).
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence, Union

#: Speed multipliers probed by the growth-regularity check.
PROBE_GAMMAS = (1.0, 1.25, 1.5, 2.0, 4.0, 8.0)


@dataclass(frozen=True)
class PolynomialEnergy:
    """Cost ``v * rho * s**(beta - 1)`` of running a job entirely at speed s."""

    v: float
    beta: float

    def __post_init__(self) -> None:
        if self.v <= 0:
            raise ValueError(f"polynomial energy coefficient must be positive, got {self.v}")
        if self.beta < 2:
            raise ValueError(f"growth exponent must be >= 2, got {self.beta}")


@dataclass(frozen=True)
class TableEnergy:
    """Job-dependent cost tabulated at each grid speed (one value per speed)."""

    costs: tuple

    def __post_init__(self) -> None:
        if len(self.costs) == 0:
            raise ValueError("table energy needs at least one cost value")
        if any(c < 0 for c in self.costs):
            raise ValueError("table energy costs must be non-negative")


EnergyCostDescriptor = Union[PolynomialEnergy, TableEnergy]


@dataclass(frozen=True)
class ConvexEnvelope:
    """Lower convex envelope of tabulated costs over the speed grid.

    ``values[j]`` is the envelope value at ``speeds[j]``; the envelope is
    piecewise linear between consecutive grid speeds.
    """

    speeds: tuple
    values: tuple

    def value_at(self, speed: float) -> float:
        lo, hi = self.speeds[0], self.speeds[-1]
        if speed < lo * (1 - 1e-12) or speed > hi * (1 + 1e-12):
            raise ValueError(f"speed {speed} outside tabulated range [{lo}, {hi}]")
        speed = min(max(speed, lo), hi)
        if len(self.speeds) == 1:
            return self.values[0]
        k = bisect_right(self.speeds, speed)
        if k >= len(self.speeds):
            k = len(self.speeds) - 1
        if k == 0:
            k = 1
        s0, s1 = self.speeds[k - 1], self.speeds[k]
        c0, c1 = self.values[k - 1], self.values[k]
        lam = (speed - s0) / (s1 - s0)
        return (1 - lam) * c0 + lam * c1


def convexify(costs: Sequence[float], speeds: Sequence[float]) -> ConvexEnvelope:
    """Lower convex envelope of the points ``(speeds[j], costs[j])``.

    Uses an Andrew-monotone-chain sweep to find the lower hull, then reads the
    hull back at every grid speed.  The result is pointwise <= the raw costs
    and has non-decreasing slopes between consecutive grid speeds.
    """
    if len(costs) != len(speeds):
        raise ValueError("one cost per grid speed required")
    pts = list(zip(speeds, costs))
    if len(pts) <= 2:
        return ConvexEnvelope(tuple(speeds), tuple(float(c) for c in costs))
    hull = []
    for p in pts:  # speeds already sorted ascending
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point when it lies on or above the chord
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    env = ConvexEnvelope(tuple(x for x, _ in hull), tuple(y for _, y in hull))
    return ConvexEnvelope(tuple(speeds), tuple(env.value_at(s) for s in speeds))


def cost_at(
    energy: EnergyCostDescriptor,
    rho: float,
    speed: float,
    speeds: Sequence[float] | None = None,
) -> float:
    """Cost of running a job of size ``rho`` entirely at ``speed``.

    Table descriptors are evaluated on their lower convex envelope, which
    requires the grid ``speeds`` the table refers to.
    """
    if isinstance(energy, PolynomialEnergy):
        return energy.v * rho * speed ** (energy.beta - 1)
    if speeds is None:
        raise ValueError("table energy evaluation requires the speed grid")
    return convexify(energy.costs, speeds).value_at(speed)


def check_assumption1(
    energy: EnergyCostDescriptor,
    beta: float,
    speeds: Sequence[float],
    probe_gammas: Sequence[float] = PROBE_GAMMAS,
) -> bool:
    """Check the growth-regularity condition cost(g*s) <= g**(beta-1) * cost(s).

    For the polynomial variant the condition holds analytically whenever the
    descriptor's exponent is at most ``beta - 1``.  Table variants are probed
    numerically on (grid speed, gamma) pairs, with ``gamma * s`` clipped to the
    representable range.
    """
    if isinstance(energy, PolynomialEnergy):
        if energy.beta <= beta:
            return True
        # steeper growth than beta allows; still verify on the probe grid
    env = None
    if isinstance(energy, TableEnergy):
        env = convexify(energy.costs, speeds)
    s_max = speeds[-1]
    for s in speeds:
        base = cost_at(energy, 1.0, s, speeds) if env is None else env.value_at(s)
        for g in probe_gammas:
            if g < 1.0:
                continue
            target = min(g * s, s_max)
            g_eff = target / s
            if g_eff <= 1.0 + 1e-15:
                continue
            scaled = cost_at(energy, 1.0, target, speeds) if env is None else env.value_at(target)
            bound = g_eff ** (beta - 1) * base
            if scaled > bound * (1 + 1e-9) + 1e-12:
                return False
    return True


def quantize_speed_range(sigma_min: float, sigma_max: float, delta: float):
    """Geometric speed ladder covering ``[sigma_min, sigma_max]``.

    Starts at ``sigma_min`` and multiplies by ``(1 + delta)`` until the top of
    the range is covered; the last rung may overshoot ``sigma_max``.
    """
    from .instance import SpeedSet  # deferred: instance depends on this module

    if sigma_min <= 0 or sigma_max < sigma_min:
        raise ValueError(f"invalid speed range [{sigma_min}, {sigma_max}]")
    if delta <= 0:
        raise ValueError(f"ladder spacing must be positive, got {delta}")
    speeds = [sigma_min]
    while speeds[-1] < sigma_max * (1 - 1e-12):
        speeds.append(speeds[-1] * (1 + delta))
    return SpeedSet(tuple(speeds), delta)
