"""Rounding an LP relaxation solution into a feasible schedule.

The pipeline per job: find the earliest interval by which an ``alpha``
fraction of the job's LP mass has completed, truncate the mass to exactly
``alpha``, read the truncated per-speed mass as a probability mass function
over the speed grid, and set the job's target speed to the reciprocal of the
expected reciprocal speed under that pmf.  Jobs are sequenced by their alpha
intervals (topological, lowest-id-first inside a bucket) and run back to back
at grid speeds obtained by rounding the target speeds.

``saias`` handles the weighted completion time objective (round the target
speed down, or sideways to the cheaper adjacent grid speed for tabulated
costs).  ``saias_t`` handles weighted tardiness: target speeds are scaled up
by ``gamma = (1 + epsilon) / (alpha * (1 - alpha))`` and rounded up, which
keeps every job that is on time in the relaxation on time in the schedule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import energy as energy_mod
from . import evaluate
from .instance import Instance, Objective, SpeedSet
from .lp import LpSolution

#: slack when comparing accumulated LP mass against alpha
MASS_TOL = 1e-9


class PrecedenceOrderError(AssertionError):
    """An edge's successor got an earlier alpha interval than its predecessor.

    The LP prefix-dominance rows make this impossible for a feasible solution,
    so hitting it signals a corrupt solution, never something to repair.
    """


class SpeedRangeError(RuntimeError):
    """The scaled-up target speed exceeds the top of the speed set."""


@dataclass(frozen=True)
class AlphaData:
    """Per-job rounding data derived from the LP solution."""

    interval: int            # alpha interval index (1-based)
    mass_before: float       # LP mass strictly before the alpha interval
    x_trunc: np.ndarray      # (m, T) truncated mass, sums to alpha
    mu: np.ndarray           # (m,) pmf over speed indices
    speed: float             # alpha speed (harmonic mean under mu)


@dataclass(frozen=True)
class Schedule:
    order: tuple             # job ids in processing order
    speed: dict              # job id -> chosen grid speed
    start: dict              # job id -> start time
    completion: dict         # job id -> completion time
    breakdown: "evaluate.CostBreakdown"

    @property
    def cost(self) -> float:
        return self.breakdown.total


def alpha_intervals(solution: LpSolution, alpha: float) -> np.ndarray:
    """Earliest interval per job with accumulated mass >= alpha."""
    if not (0 < alpha < 1):
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    cum = solution.x.sum(axis=1).cumsum(axis=1)      # (n, T)
    taus = np.zeros(solution.x.shape[0], dtype=int)
    for i, row in enumerate(cum):
        hits = np.flatnonzero(row >= alpha - MASS_TOL)
        if hits.size == 0:
            raise RuntimeError(
                f"job at position {i} has total LP mass {row[-1]} < alpha={alpha}"
            )
        taus[i] = hits[0] + 1
    return taus


def truncate(solution: LpSolution, alpha: float, taus: np.ndarray) -> np.ndarray:
    """Truncated mass: full before the alpha interval, clipped to total alpha.

    At the alpha interval itself the remaining budget ``alpha - mass_before``
    is filled across speeds in increasing speed-index order.
    """
    x = solution.x
    n, m, T = x.shape
    xt = np.zeros_like(x)
    for i in range(n):
        ta = taus[i]
        xt[i, :, : ta - 1] = x[i, :, : ta - 1]
        beta_i = x[i, :, : ta - 1].sum()
        filled = 0.0
        for j in range(m):
            take = max(min(x[i, j, ta - 1], alpha - beta_i - filled), 0.0)
            xt[i, j, ta - 1] = take
            filled += x[i, j, ta - 1]
    return xt


def speed_pmf(x_trunc_i: np.ndarray, alpha: float) -> np.ndarray:
    """Collapse time out of the truncated mass: pmf over speed indices."""
    return x_trunc_i.sum(axis=1) / alpha


def alpha_speed(mu: np.ndarray, speedset: SpeedSet) -> float:
    """Reciprocal of the expected reciprocal speed under ``mu``."""
    inv = float(np.dot(mu, 1.0 / np.asarray(speedset.speeds)))
    return 1.0 / inv


def compute_alpha_data(solution: LpSolution, instance: Instance, alpha: float) -> list:
    taus = alpha_intervals(solution, alpha)
    xt = truncate(solution, alpha, taus)
    out = []
    for i in range(instance.n):
        mu = speed_pmf(xt[i], alpha)
        out.append(
            AlphaData(
                interval=int(taus[i]),
                mass_before=float(solution.x[i, :, : taus[i] - 1].sum()),
                x_trunc=xt[i],
                mu=mu,
                speed=alpha_speed(mu, instance.speedset),
            )
        )
    return out


def order_jobs(taus, precedence, job_ids) -> list:
    """Jobs sorted by alpha interval; topological, lowest id first, inside ties.

    ``taus`` maps each position in ``job_ids`` to its alpha interval.
    """
    tau_of = {jid: int(t) for jid, t in zip(job_ids, taus)}
    for a, b in precedence.edges:
        if tau_of[a] > tau_of[b]:
            raise PrecedenceOrderError(
                f"edge {a} -> {b} but alpha intervals {tau_of[a]} > {tau_of[b]}"
            )
    remaining = set(job_ids)
    placed = set()
    order = []
    for t in sorted(set(tau_of.values())):
        bucket = {i for i in remaining if tau_of[i] == t}
        while bucket:
            ready = [
                i for i in sorted(bucket)
                if all(p in placed for p in precedence.predecessors(i) if p in bucket)
            ]
            nxt = ready[0]
            order.append(nxt)
            placed.add(nxt)
            bucket.remove(nxt)
            remaining.remove(nxt)
    pos = {jid: k for k, jid in enumerate(order)}
    for a, b in precedence.edges:
        if pos[a] > pos[b]:
            raise PrecedenceOrderError(f"edge {a} -> {b} violated by order {order}")
    return order


def round_speed_down(speed: float, speedset: SpeedSet) -> float:
    """Largest grid speed <= the target (the target is never below sigma_1)."""
    best = None
    for s in speedset.speeds:
        if s <= speed * (1 + 1e-12):
            best = s
    if best is None:
        raise ValueError(f"target speed {speed} below sigma_1 = {speedset.min}")
    return best


def round_speed_up(speed: float, speedset: SpeedSet) -> float:
    for s in speedset.speeds:
        if s >= speed * (1 - 1e-12):
            return s
    raise SpeedRangeError(
        f"speed set cannot realize scaled speed {speed} "
        f"(sigma_m = {speedset.max}); extend the speed set"
    )


def round_speed_energy_aware(speed: float, speedset: SpeedSet, grid_costs) -> float:
    """Adjacent grid speed whose cost does not exceed the target's.

    ``grid_costs`` are the job's (envelope) costs at each grid speed; cost is
    linear between adjacent grid speeds, so one endpoint is never worse than
    the interior point.
    """
    speeds = speedset.speeds
    lo_idx = 0
    for j, s in enumerate(speeds):
        if s <= speed * (1 + 1e-12):
            lo_idx = j
    if abs(speeds[lo_idx] - speed) <= 1e-12 * speed or lo_idx == len(speeds) - 1:
        return speeds[lo_idx]
    return speeds[lo_idx] if grid_costs[lo_idx] <= grid_costs[lo_idx + 1] else speeds[lo_idx + 1]


def assemble(instance: Instance, order, speed_by_id) -> Schedule:
    """Run jobs in order, each starting at max(release, previous completion)."""
    start, completion = {}, {}
    prev = 0.0
    for jid in order:
        job = instance.jobs[instance.job_index(jid)]
        start[jid] = max(job.release, prev)
        completion[jid] = start[jid] + job.rho / speed_by_id[jid]
        prev = completion[jid]
    sched = Schedule(
        order=tuple(order),
        speed=dict(speed_by_id),
        start=start,
        completion=completion,
        breakdown=None,
    )
    breakdown = evaluate.cost(instance, sched)
    return Schedule(sched.order, sched.speed, sched.start, sched.completion, breakdown)


def saias(instance: Instance, solution: LpSolution, alpha: float | None = None) -> Schedule:
    """Weighted-completion-time rounding of the LP relaxation solution."""
    if instance.objective is not Objective.COMPLETION_TIME:
        raise ValueError("saias requires the completion-time objective")
    a = instance.alpha if alpha is None else alpha
    data = compute_alpha_data(solution, instance, a)
    order = order_jobs([d.interval for d in data], instance.precedence,
                       [j.id for j in instance.jobs])
    speed_by_id = {}
    for job, d in zip(instance.jobs, data):
        if isinstance(job.energy, energy_mod.TableEnergy):
            from .lp import grid_energy_costs
            costs = grid_energy_costs(job, instance.speedset)
            speed_by_id[job.id] = round_speed_energy_aware(d.speed, instance.speedset, costs)
        else:
            speed_by_id[job.id] = round_speed_down(d.speed, instance.speedset)
    return assemble(instance, order, speed_by_id)


def saias_t(instance: Instance, solution: LpSolution, alpha: float | None = None) -> Schedule:
    """Weighted-tardiness rounding: scale target speeds up by gamma, round up."""
    if instance.objective is not Objective.TARDINESS:
        raise ValueError("saias_t requires the tardiness objective")
    if instance.has_releases:
        raise ValueError("saias_t does not support release dates")
    a = instance.alpha if alpha is None else alpha
    gamma = (1 + instance.epsilon) / (a * (1 - a))
    data = compute_alpha_data(solution, instance, a)
    order = order_jobs([d.interval for d in data], instance.precedence,
                       [j.id for j in instance.jobs])
    speed_by_id = {
        job.id: round_speed_up(gamma * d.speed, instance.speedset)
        for job, d in zip(instance.jobs, data)
    }
    return assemble(instance, order, speed_by_id)
