"""Command-line surface: gen, solve, oracle, bench, lp-dump.

All commands print machine-readable JSON on stdout (``--pretty`` for an
indented human mode) and diagnostics on stderr.  Solver tolerances can be
overridden via the ``ENERGYSCHED_FEAS_TOL`` and ``ENERGYSCHED_OPT_TOL``
environment variables.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

import numpy as np

from . import instance as instance_mod
from . import lp, oracle, pipeline, timegrid
from .instance import GeneratorConfig, Objective
from .simplex import SolverConfig


def _solver_config() -> SolverConfig:
    return SolverConfig(
        feasibility_tolerance=float(os.environ.get("ENERGYSCHED_FEAS_TOL", "1e-9")),
        optimality_tolerance=float(os.environ.get("ENERGYSCHED_OPT_TOL", "1e-9")),
    )


def _emit(data: dict, pretty: bool) -> None:
    print(json.dumps(data, indent=2 if pretty else None, sort_keys=pretty))


def _load(path) -> instance_mod.Instance:
    inst = instance_mod.load(path)
    report = instance_mod.validate(inst)
    if report:
        raise SystemExit("invalid instance: " + "; ".join(report))
    return inst


def _generator_config(args) -> GeneratorConfig:
    return GeneratorConfig(
        objective=Objective(args.objective),
        edge_density=args.edge_density,
        rho_max=args.rho_max,
        release_max=args.release_max,
        deadline_max=args.deadline_max,
        energy_kind=args.energy,
        beta=args.beta,
        delta=args.delta,
        epsilon=args.epsilon,
        alpha=args.alpha,
    )


def _add_generator_flags(p) -> None:
    p.add_argument("--objective", choices=[o.value for o in Objective], default="completion")
    p.add_argument("--edge-density", type=float, default=0.3)
    p.add_argument("--rho-max", type=int, default=3)
    p.add_argument("--release-max", type=float, default=0.0)
    p.add_argument("--deadline-max", type=float, default=10.0)
    p.add_argument("--energy", choices=["poly", "table"], default="poly")
    p.add_argument("--beta", type=float, default=2.0)
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--alpha", type=float, default=None)


def cmd_gen(args) -> int:
    cfg = _generator_config(args)
    inst = instance_mod.generate(args.seed, args.n, args.m, cfg)
    if args.out:
        instance_mod.save(inst, args.out)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        _emit(instance_mod.to_dict(inst), args.pretty)
    return 0


def cmd_solve(args) -> int:
    inst = _load(args.instance)
    if args.objective is not None:
        inst = dataclasses.replace(inst, objective=Objective(args.objective))
    result = pipeline.run(
        inst,
        alpha=args.alpha,
        epsilon=args.epsilon,
        solver_config=_solver_config(),
        with_oracle=args.oracle,
    )
    _emit(pipeline.schedule_to_dict(result.instance, result), args.pretty)
    return 0


def cmd_oracle(args) -> int:
    inst = _load(args.instance)
    exact = oracle.brute_force(inst, n_cap=args.n_cap, m_cap=args.m_cap)
    _emit(
        {
            "cost": exact.cost,
            "order": list(exact.order),
            "speeds": {str(k): v for k, v in exact.speed.items()},
            "method": exact.method,
        },
        args.pretty,
    )
    return 0


def cmd_bench(args) -> int:
    cfg = _generator_config(args)
    solver = _solver_config()
    rows = []
    for k in range(args.count):
        seed = args.seed + k
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, args.n + 1)) if args.vary_n else args.n
        inst = instance_mod.generate(seed, n, args.m, cfg)
        result = pipeline.run(inst, solver_config=solver, with_oracle=args.oracle)
        rows.append({"seed": seed, "n": n, "m": args.m, **result.report})
    agg = {
        "count": len(rows),
        "max_ratio_vs_lp": max(r["ratio_vs_lp"] for r in rows),
        "mean_ratio_vs_lp": sum(r["ratio_vs_lp"] for r in rows) / len(rows),
    }
    if args.oracle:
        agg["max_ratio_vs_oracle"] = max(r["ratio_vs_oracle"] for r in rows)
        agg["mean_ratio_vs_oracle"] = sum(r["ratio_vs_oracle"] for r in rows) / len(rows)
        agg["bound_violations"] = sum(
            1 for r in rows if r["ratio_vs_oracle"] > r["theoretical_bound"] * (1 + 1e-9)
        )
    _emit({"instances": rows, "aggregate": agg}, args.pretty)
    return 0


def cmd_lpdump(args) -> int:
    inst = _load(args.instance)
    grid = timegrid.build_grid(inst)
    model = lp.build_lp(inst, grid)
    text = lp.lp_dump(model)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="energysched",
        description="Energy-aware single-machine scheduling via LP rounding",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--out", default=None)
    _add_generator_flags(p)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="solve an instance file end to end")
    p.add_argument("instance")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--objective", choices=[o.value for o in Objective], default=None)
    p.add_argument("--oracle", action="store_true", help="also compute the exact optimum")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exact brute-force optimum of an instance file")
    p.add_argument("instance")
    p.add_argument("--n-cap", type=int, default=7)
    p.add_argument("--m-cap", type=int, default=4)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="seeded batch of random instances with ratio report")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--vary-n", action="store_true", help="draw n uniformly from 1..n per instance")
    p.add_argument("--oracle", action="store_true")
    _add_generator_flags(p)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("lp-dump", help="write the LP relaxation in text form")
    p.add_argument("instance")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_lpdump)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (
        instance_mod.ParseError,
        FileNotFoundError,
        ValueError,
        RuntimeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
