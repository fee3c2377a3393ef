"""Weighted tardiness with the gamma-scaled rounding (SAIAS-T).

Tardiness only charges for the part of a completion time past the deadline,
so rounding must not push jobs the LP finished on time past their deadlines.
SAIAS-T handles this by scaling every alpha-speed up by
gamma = (1+eps) / (alpha (1-alpha)) and rounding speeds upward on the
ladder, which keeps each rounded completion at or below the LP's fractional
completion.  Run with:

    python3 demos/tardiness_walkthrough.py
"""

import energysched as es

# A wide speed ladder so the gamma-scaled speeds still fit on it.
speeds = tuple(2.0 ** k for k in range(6))
inst = es.Instance(
    jobs=(
        es.Job(1, rho=2, weight=2.0, deadline=3.0, energy=es.PolynomialEnergy(1.0, 2.0)),
        es.Job(2, rho=1, weight=1.0, deadline=1.0, energy=es.PolynomialEnergy(1.0, 2.0)),
        es.Job(3, rho=3, weight=3.0, deadline=0.5, energy=es.PolynomialEnergy(0.5, 2.0)),
    ),
    speedset=es.SpeedSet(speeds, delta=1.0),
    objective=es.Objective.TARDINESS,
    epsilon=0.5,
    alpha=0.5,
)
assert es.validate(inst) == []

result = es.run(inst, with_oracle=True, oracle_caps=(5, 6))
grid, sol, sched = result.grid, result.solution, result.schedule

gamma = result.report["gamma"]
print(f"gamma = (1+eps)/(alpha(1-alpha)) = {gamma:.3f}")

cbar = sol.fractional_completion(grid)
print("\njob  deadline  LP fractional C  rounded C  tardiness")
for i, job in enumerate(inst.jobs):
    c = sched.completion[job.id]
    print(f"{job.id:>3}  {job.deadline:8.2f}  {cbar[i]:15.4f}  {c:9.4f}"
          f"  {max(c - job.deadline, 0.0):9.4f}")

print(f"\nalgorithm cost {result.report['algorithm_cost']:.5f}, "
      f"exact optimum {result.report['oracle_cost']:.5f}")
print(f"realized ratio {result.report['ratio_vs_oracle']:.4f} "
      f"vs ceiling {result.report['theoretical_bound']:.4f}")

# The headline property: jobs the LP kept fully on time stay on time.
for i, job in enumerate(inst.jobs):
    if cbar[i] <= job.deadline:
        assert sched.completion[job.id] <= job.deadline + 1e-9
print("every job on time in the LP is on time in the rounded schedule")

# A narrow ladder cannot absorb the gamma speed-up: that is a hard error,
# not a silent degradation.
narrow = es.Instance(
    jobs=(es.Job(1, rho=1, weight=1.0, deadline=0.1),),
    speedset=es.SpeedSet((1.0,), delta=1.0),
    objective=es.Objective.TARDINESS,
)
try:
    es.run(narrow)
except es.SpeedRangeError as exc:
    print(f"narrow ladder correctly rejected: {exc}")
