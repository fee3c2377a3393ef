"""End-to-end solve: grid -> LP -> simplex -> rounding -> evaluation.

Also computes the a-priori approximation guarantee for the run's parameters,
which the benchmark harness asserts against realized ratios.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from . import energy as energy_mod
from . import lp, oracle, rounding, timegrid
from .instance import Instance, Objective
from .simplex import SolverConfig


class AssumptionError(RuntimeError):
    """A tabulated energy cost grows too fast for the tardiness guarantee."""


def theoretical_bound(instance: Instance, alpha: float) -> float:
    """Worst-case ratio of algorithm cost to the exact optimum."""
    eps, delta, beta = instance.epsilon, instance.speedset.delta, instance.beta
    if instance.objective is Objective.TARDINESS:
        return ((1 + eps) * (1 + delta)) ** (beta - 1) / (alpha * (1 - alpha)) ** beta
    if instance.has_releases:
        return (1 + alpha) * (1 + eps) * (1 + delta) / (alpha * (1 - alpha))
    return (1 + eps) * (1 + delta) / (alpha * (1 - alpha))


@dataclass(frozen=True)
class PipelineResult:
    instance: Instance
    grid: "timegrid.TimeGrid"
    model: "lp.LpModel"
    solution: "lp.LpSolution"
    schedule: "rounding.Schedule"
    report: dict


def check_energy_assumption(instance: Instance) -> None:
    """Tardiness speed-scaling needs bounded cost growth per tabulated job."""
    for job in instance.jobs:
        if isinstance(job.energy, energy_mod.TableEnergy):
            if not energy_mod.check_assumption1(
                job.energy, instance.beta, instance.speedset.speeds
            ):
                raise AssumptionError(
                    f"job {job.id}: tabulated energy cost violates the growth "
                    f"condition for beta={instance.beta}; tardiness guarantee void"
                )


def run(
    instance: Instance,
    alpha: float | None = None,
    epsilon: float | None = None,
    solver_config: SolverConfig | None = None,
    with_oracle: bool = False,
    oracle_caps: tuple = (7, 4),
) -> PipelineResult:
    if epsilon is not None:
        instance = dataclasses.replace(instance, epsilon=epsilon)
    a = instance.alpha if alpha is None else alpha

    grid = timegrid.build_grid(instance)
    model = lp.build_lp(instance, grid)
    solution = lp.solve_lp(model, solver_config)

    if instance.objective is Objective.TARDINESS:
        check_energy_assumption(instance)
        schedule = rounding.saias_t(instance, solution, alpha=a)
    else:
        schedule = rounding.saias(instance, solution, alpha=a)

    lp_bound = lp.objective_lower_bound(solution)
    report = {
        "lp_bound": lp_bound,
        "algorithm_cost": schedule.cost,
        "ratio_vs_lp": schedule.cost / lp_bound if lp_bound > 0 else float("inf"),
        "theoretical_bound": theoretical_bound(instance, a),
        "alpha": a,
        "epsilon": instance.epsilon,
        "delta": instance.speedset.delta,
    }
    if instance.objective is Objective.TARDINESS:
        report["gamma"] = (1 + instance.epsilon) / (a * (1 - a))
    if with_oracle:
        exact = oracle.brute_force(instance, n_cap=oracle_caps[0], m_cap=oracle_caps[1])
        report["oracle_cost"] = exact.cost
        report["ratio_vs_oracle"] = (
            schedule.cost / exact.cost if exact.cost > 0 else 1.0
        )
    return PipelineResult(instance, grid, model, solution, schedule, report)


def schedule_to_dict(instance: Instance, result: PipelineResult) -> dict:
    sched = result.schedule
    jobs = {}
    for job in instance.jobs:
        c = sched.completion[job.id]
        jobs[str(job.id)] = {
            "speed": sched.speed[job.id],
            "start": sched.start[job.id],
            "completion": c,
            "tardiness": max(c - job.deadline, 0.0),
        }
    return {
        "order": list(sched.order),
        "jobs": jobs,
        "cost": {
            "energy": sched.breakdown.energy_total,
            "scheduling": sched.breakdown.scheduling_total,
            "total": sched.breakdown.total,
        },
        "report": dict(result.report),
    }
