"""Self-contained bounded-variable primal simplex.

Dense two-phase implementation sized for desk-scale models (a few hundred
columns).  Nonbasic variables rest at either bound; the ratio test allows
bound flips.  Pricing is largest-reduced-cost with lowest-index tie-breaks,
falling back to Bland's rule once a run of degenerate pivots is detected, so
every solve is deterministic and terminates.

The entry point :func:`solve` takes the problem in row form

    minimize c @ x   s.t.   A x (sense) b,   lower <= x <= upper

with senses drawn from ``{"=", "<=", ">="}``.  Infinite uppers are allowed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class SimplexError(RuntimeError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    feasibility_tolerance: float = 1e-9
    optimality_tolerance: float = 1e-9
    max_iterations: int = 1_000_000

    def __post_init__(self):
        if self.feasibility_tolerance <= 0 or self.optimality_tolerance <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class SolveResult:
    status: str                  # "optimal" | "infeasible" | "unbounded" | "iteration_limit"
    x: np.ndarray | None
    objective: float | None
    iterations: int


def solve(c, A, senses, b, lower=None, upper=None, config: SolverConfig | None = None) -> SolveResult:
    cfg = config or SolverConfig()
    c = np.asarray(c, dtype=float)
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    nrows, ncols = A.shape
    if lower is None:
        lower = np.zeros(ncols)
    if upper is None:
        upper = np.full(ncols, np.inf)
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)

    # standard form: append a slack per inequality row
    slack_cols = []
    for k, s in enumerate(senses):
        if s == "<=":
            slack_cols.append((k, 1.0))
        elif s == ">=":
            slack_cols.append((k, -1.0))
        elif s != "=":
            raise ValueError(f"unknown row sense {s!r}")
    nslack = len(slack_cols)
    Astd = np.hstack([A, np.zeros((nrows, nslack))])
    for p, (k, sign) in enumerate(slack_cols):
        Astd[k, ncols + p] = sign
    lo = np.concatenate([lower, np.zeros(nslack)])
    hi = np.concatenate([upper, np.full(nslack, np.inf)])

    # artificials: one per row, signed so the initial basis is feasible
    x_start = lo.copy()
    resid = b - Astd @ x_start
    art_sign = np.where(resid >= 0, 1.0, -1.0)
    Aall = np.hstack([Astd, np.diag(art_sign)])
    nall = Astd.shape[1] + nrows
    lo = np.concatenate([lo, np.zeros(nrows)])
    hi = np.concatenate([hi, np.full(nrows, np.inf)])

    basis = list(range(Astd.shape[1], nall))
    at_upper = np.zeros(nall, dtype=bool)

    # phase 1: drive the artificials to zero
    c1 = np.zeros(nall)
    c1[Astd.shape[1]:] = 1.0
    status, iters1 = _iterate(Aall, b, c1, lo, hi, basis, at_upper, cfg, phase=1)
    if status == "iteration_limit":
        return SolveResult("iteration_limit", None, None, iters1)
    x = _current_point(Aall, b, lo, hi, basis, at_upper)
    if c1 @ x > cfg.feasibility_tolerance * max(1.0, np.abs(b).max()):
        return SolveResult("infeasible", None, None, iters1)

    # phase 2: pin the artificials at zero and optimize the real objective
    lo[Astd.shape[1]:] = 0.0
    hi[Astd.shape[1]:] = 0.0
    c2 = np.zeros(nall)
    c2[:ncols] = c
    status, iters2 = _iterate(Aall, b, c2, lo, hi, basis, at_upper, cfg, phase=2)
    iters = iters1 + iters2
    if status != "optimal":
        return SolveResult(status, None, None, iters)
    x = _current_point(Aall, b, lo, hi, basis, at_upper)
    xs = x[:ncols]
    return SolveResult("optimal", xs, float(c @ xs), iters)


def _current_point(A, b, lo, hi, basis, at_upper) -> np.ndarray:
    x = np.where(at_upper, np.where(np.isfinite(hi), hi, lo), lo)
    x[basis] = 0.0
    rhs = b - A @ x
    try:
        x[basis] = np.linalg.solve(A[:, basis], rhs)
    except np.linalg.LinAlgError as exc:
        raise SimplexError(f"singular basis: {exc}") from exc
    return x


def _iterate(A, b, c, lo, hi, basis, at_upper, cfg: SolverConfig, phase: int):
    nrows, nall = A.shape
    tol = cfg.optimality_tolerance
    piv_tol = 1e-10
    degen_run = 0
    bland = False
    in_basis = np.zeros(nall, dtype=bool)
    in_basis[basis] = True

    for it in range(cfg.max_iterations):
        B = A[:, basis]
        try:
            x = _current_point(A, b, lo, hi, basis, at_upper)
            y = np.linalg.solve(B.T, c[basis])
        except np.linalg.LinAlgError as exc:
            raise SimplexError(f"singular basis in phase {phase}: {exc}") from exc
        d = c - A.T @ y

        fixed = hi - lo <= piv_tol          # cannot move; never eligible to enter
        elig_lo = (~in_basis) & (~at_upper) & (~fixed) & (d < -tol)
        elig_hi = (~in_basis) & at_upper & (~fixed) & (d > tol)
        candidates = np.flatnonzero(elig_lo | elig_hi)
        if candidates.size == 0:
            return "optimal", it

        if bland:
            q = int(candidates[0])
        else:
            q = int(candidates[np.argmax(np.abs(d[candidates]))])
        sign = -1.0 if at_upper[q] else 1.0  # entering moves up from lower / down from upper

        w = np.linalg.solve(B, A[:, q])
        step = sign * w                      # x_B decreases by step * t

        t_best = np.inf
        leave = -1                           # -1: bound flip of the entering column
        for k in range(nrows):
            bk = basis[k]
            if step[k] > piv_tol:
                tk = (x[bk] - lo[bk]) / step[k]
            elif step[k] < -piv_tol and np.isfinite(hi[bk]):
                tk = (hi[bk] - x[bk]) / (-step[k])
            else:
                continue
            tk = max(tk, 0.0)
            if tk < t_best - 1e-12 or (tk < t_best + 1e-12 and (leave == -1 or bk < basis[leave])):
                t_best = tk
                leave = k
        if np.isfinite(hi[q]) and hi[q] - lo[q] < t_best - 1e-12:
            t_best = hi[q] - lo[q]
            leave = -1
        if not np.isfinite(t_best):
            return ("infeasible" if phase == 1 else "unbounded"), it

        degen_run = degen_run + 1 if t_best <= 1e-12 else 0
        if degen_run > 3 * nrows:
            bland = True

        if leave == -1:
            at_upper[q] = ~at_upper[q]
            continue
        bl = basis[leave]
        # leaving variable parks at whichever of its bounds the ratio test hit
        at_upper[bl] = step[leave] < 0
        in_basis[bl] = False
        in_basis[q] = True
        at_upper[q] = False
        basis[leave] = q

    return "iteration_limit", cfg.max_iterations
