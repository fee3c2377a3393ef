"""Energy-aware single-machine scheduling.

Minimizes weighted completion time (or weighted tardiness) plus job-dependent
energy cost on a speed-scalable machine: an interval-indexed LP relaxation is
solved with an embedded bounded-variable simplex, then rounded into a
feasible schedule with a constant-factor guarantee.  Exact brute-force
oracles verify the ratios on small instances.
"""

from .energy import (
    ConvexEnvelope,
    PolynomialEnergy,
    TableEnergy,
    check_assumption1,
    convexify,
    cost_at,
    quantize_speed_range,
)
from .evaluate import CostBreakdown, check_feasible, cost
from .instance import (
    GeneratorConfig,
    Instance,
    Job,
    Objective,
    ParseError,
    PrecedenceDag,
    SpeedSet,
    generate,
    load,
    save,
    validate,
)
from .lp import (
    InfeasibleHorizonError,
    LpModel,
    LpSolution,
    build_completion_lp,
    build_tardiness_lp,
    lp_dump,
    objective_lower_bound,
    solve_lp,
)
from .oracle import ExactResult, brute_force, dual_cost, special_case_order
from .pipeline import PipelineResult, run, theoretical_bound
from .rounding import (
    AlphaData,
    Schedule,
    SpeedRangeError,
    alpha_intervals,
    alpha_speed,
    round_speed_down,
    round_speed_energy_aware,
    round_speed_up,
    saias,
    saias_t,
    truncate,
)
from .simplex import SolveResult, SolverConfig, solve
from .timegrid import TimeGrid, build_grid, interval_of

__version__ = "0.1.0"
