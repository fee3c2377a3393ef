"""Shared test utilities: independent oracles and batch runners."""

import itertools

import numpy as np


def vertex_enum_min(c, A, b, upper):
    """Exact minimum of c@x s.t. A x <= b, 0 <= x <= upper.

    Enumerates every choice of n active constraints among the rows and the
    box faces, solves the resulting linear system, and keeps the best
    feasible solution.  Independent of the simplex implementation.
    """
    c = np.asarray(c, float)
    A = np.asarray(A, float)
    b = np.asarray(b, float)
    upper = np.asarray(upper, float)
    n = len(c)
    cons = [(A[k], b[k]) for k in range(len(b))]
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        cons.append((-e, 0.0))          # x_i >= 0 active
        cons.append((e, upper[i]))      # x_i <= u_i active

    best = np.inf
    best_x = None
    for subset in itertools.combinations(range(len(cons)), n):
        M = np.array([cons[k][0] for k in subset])
        rhs = np.array([cons[k][1] for k in subset])
        try:
            x = np.linalg.solve(M, rhs)
        except np.linalg.LinAlgError:
            continue
        if np.any(A @ x > b + 1e-9):
            continue
        if np.any(x < -1e-9) or np.any(x > upper + 1e-9):
            continue
        val = float(c @ x)
        if val < best:
            best = val
            best_x = x
    return best, best_x


def random_box_lp(rng, nvars=4, nrows=4):
    """Random bounded-feasible LP: A x <= b with b >= 0, finite box."""
    c = rng.uniform(-2, 2, nvars)
    A = rng.uniform(-1, 1, (nrows, nvars))
    b = rng.uniform(0.5, 3.0, nrows)     # x = 0 always feasible
    upper = rng.uniform(0.5, 2.0, nvars)
    return c, A, b, upper
