"""Problem instances: domain types, validation, JSON round-trip, random generation.

An instance bundles the jobs, the discrete speed ladder the machine can run
at, a precedence DAG, the objective (weighted completion time or weighted
tardiness, each plus energy cost), and the rounding/grid parameters
``alpha``, ``epsilon`` and ``beta``.

Instances are immutable after construction and safe to share across workers.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .energy import EnergyCostDescriptor, PolynomialEnergy, TableEnergy


class Objective(enum.Enum):
    COMPLETION_TIME = "completion"
    TARDINESS = "tardiness"


@dataclass(frozen=True)
class Job:
    id: int
    rho: int            # processing requirement in machine cycles
    weight: float       # cost per unit of completion time / tardiness
    release: float = 0.0
    deadline: float = 0.0
    energy: EnergyCostDescriptor = PolynomialEnergy(1.0, 2.0)


@dataclass(frozen=True)
class SpeedSet:
    """Strictly increasing speeds with declared ladder spacing ``delta``.

    ``delta`` is part of the contract (the approximation bounds quote it), so
    it is stored and validated rather than inferred from the speeds.
    """

    speeds: tuple
    delta: float

    @property
    def m(self) -> int:
        return len(self.speeds)

    @property
    def min(self) -> float:
        return self.speeds[0]

    @property
    def max(self) -> float:
        return self.speeds[-1]


@dataclass(frozen=True)
class PrecedenceDag:
    """Edges ``(i1, i2)`` meaning job i1 must complete before job i2."""

    edges: tuple = ()

    def successors(self, job_id: int):
        return [b for a, b in self.edges if a == job_id]

    def predecessors(self, job_id: int):
        return [a for a, b in self.edges if b == job_id]


@dataclass(frozen=True)
class Instance:
    jobs: tuple
    speedset: SpeedSet
    precedence: PrecedenceDag = PrecedenceDag()
    objective: Objective = Objective.COMPLETION_TIME
    alpha: float = 0.5
    epsilon: float = 0.5
    beta: float = 2.0

    @property
    def n(self) -> int:
        return len(self.jobs)

    def job_index(self, job_id: int) -> int:
        for k, job in enumerate(self.jobs):
            if job.id == job_id:
                return k
        raise KeyError(f"no job with id {job_id}")

    @property
    def has_releases(self) -> bool:
        return any(j.release > 0 for j in self.jobs)


def _topological_order(ids: Sequence[int], edges) -> list | None:
    """Kahn topological sort; None when the edge set has a cycle."""
    indeg = {i: 0 for i in ids}
    succ = {i: [] for i in ids}
    for a, b in edges:
        indeg[b] += 1
        succ[a].append(b)
    ready = sorted(i for i in ids if indeg[i] == 0)
    out = []
    while ready:
        i = ready.pop(0)
        out.append(i)
        for b in succ[i]:
            indeg[b] -= 1
            if indeg[b] == 0:
                ready.append(b)
        ready.sort()
    return out if len(out) == len(ids) else None


def validate(instance: Instance) -> list:
    """Report-style validation: returns the list of violated invariants.

    An empty list means the instance is valid.
    """
    report = []
    if not instance.jobs:
        report.append("instance has no jobs")
    ids = [j.id for j in instance.jobs]
    if len(set(ids)) != len(ids):
        report.append("job ids are not unique")
    for job in instance.jobs:
        if not isinstance(job.rho, (int, np.integer)) or job.rho < 1:
            report.append(f"job {job.id}: rho must be a positive integer, got {job.rho!r}")
        if job.weight <= 0:
            report.append(f"job {job.id}: weight must be positive, got {job.weight}")
        if job.release < 0:
            report.append(f"job {job.id}: release must be non-negative, got {job.release}")
        if job.deadline < 0:
            report.append(f"job {job.id}: deadline must be non-negative, got {job.deadline}")
        if isinstance(job.energy, TableEnergy) and len(job.energy.costs) != instance.speedset.m:
            report.append(
                f"job {job.id}: table energy has {len(job.energy.costs)} entries "
                f"for {instance.speedset.m} speeds"
            )

    ss = instance.speedset
    if ss.m < 1:
        report.append("speed set is empty")
    if any(s <= 0 for s in ss.speeds):
        report.append("all speeds must be positive")
    if any(b <= a for a, b in zip(ss.speeds, ss.speeds[1:])):
        report.append("speeds must be strictly increasing")
    if ss.delta <= 0:
        report.append(f"delta must be positive, got {ss.delta}")
    for a, b in zip(ss.speeds, ss.speeds[1:]):
        if b > (1 + ss.delta) * a * (1 + 1e-12):
            report.append(f"speed spacing violated: {b} > (1+{ss.delta})*{a}")

    id_set = set(ids)
    for a, b in instance.precedence.edges:
        if a not in id_set or b not in id_set:
            report.append(f"precedence edge ({a}, {b}) references unknown job id")
    if all(a in id_set and b in id_set for a, b in instance.precedence.edges):
        if _topological_order(ids, instance.precedence.edges) is None:
            report.append("precedence graph has a cycle")

    if not (0 < instance.alpha < 1):
        report.append(f"alpha must lie in (0, 1), got {instance.alpha}")
    if instance.epsilon <= 0:
        report.append(f"epsilon must be positive, got {instance.epsilon}")
    if instance.beta < 2:
        report.append(f"beta must be >= 2, got {instance.beta}")
    if instance.objective is Objective.TARDINESS and any(j.release > 0 for j in instance.jobs):
        report.append("tardiness objective requires all release dates to be 0")
    return report


class ParseError(ValueError):
    """Raised when an instance file is malformed."""


_JOB_FIELDS = {"id", "rho", "weight", "release", "deadline", "energy"}
_TOP_FIELDS = {"jobs", "speeds", "delta", "edges", "objective", "alpha", "epsilon", "beta"}


def _energy_from_dict(d, job_id) -> EnergyCostDescriptor:
    if not isinstance(d, dict) or "type" not in d:
        raise ParseError(f"job {job_id}: energy must be an object with a 'type' field")
    if d["type"] == "poly":
        extra = set(d) - {"type", "v", "beta"}
        if extra:
            raise ParseError(f"job {job_id}: unknown energy fields {sorted(extra)}")
        try:
            return PolynomialEnergy(float(d["v"]), float(d["beta"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"job {job_id}: bad polynomial energy: {exc}") from exc
    if d["type"] == "table":
        extra = set(d) - {"type", "costs"}
        if extra:
            raise ParseError(f"job {job_id}: unknown energy fields {sorted(extra)}")
        try:
            return TableEnergy(tuple(float(c) for c in d["costs"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"job {job_id}: bad table energy: {exc}") from exc
    raise ParseError(f"job {job_id}: unknown energy type {d['type']!r}")


def _energy_to_dict(e: EnergyCostDescriptor) -> dict:
    if isinstance(e, PolynomialEnergy):
        return {"type": "poly", "v": e.v, "beta": e.beta}
    return {"type": "table", "costs": list(e.costs)}


def to_dict(instance: Instance) -> dict:
    return {
        "jobs": [
            {
                "id": j.id,
                "rho": j.rho,
                "weight": j.weight,
                "release": j.release,
                "deadline": j.deadline,
                "energy": _energy_to_dict(j.energy),
            }
            for j in instance.jobs
        ],
        "speeds": list(instance.speedset.speeds),
        "delta": instance.speedset.delta,
        "edges": [list(e) for e in instance.precedence.edges],
        "objective": instance.objective.value,
        "alpha": instance.alpha,
        "epsilon": instance.epsilon,
        "beta": instance.beta,
    }


def from_dict(data: dict) -> Instance:
    if not isinstance(data, dict):
        raise ParseError("instance file must contain a JSON object")
    extra = set(data) - _TOP_FIELDS
    if extra:
        raise ParseError(f"unknown top-level fields {sorted(extra)}")
    missing = _TOP_FIELDS - set(data)
    if missing:
        raise ParseError(f"missing fields {sorted(missing)}")

    jobs = []
    for k, jd in enumerate(data["jobs"]):
        if not isinstance(jd, dict):
            raise ParseError(f"jobs[{k}] must be an object")
        extra = set(jd) - _JOB_FIELDS
        if extra:
            raise ParseError(f"jobs[{k}]: unknown fields {sorted(extra)}")
        def conv(name, fn, default=None):
            value = jd.get(name, default)
            try:
                return fn(value)
            except (TypeError, ValueError) as exc:
                raise ParseError(f"jobs[{k}]: field {name!r}: {exc}") from exc

        rho = jd.get("rho")
        if isinstance(rho, float) and not rho.is_integer():
            raise ParseError(f"jobs[{k}]: field 'rho' must be an integer, got {rho}")
        jobs.append(
            Job(
                id=conv("id", int),
                rho=conv("rho", int),
                weight=conv("weight", float),
                release=conv("release", float, 0.0),
                deadline=conv("deadline", float, 0.0),
                energy=_energy_from_dict(jd.get("energy"), jd.get("id", k)),
            )
        )

    try:
        objective = Objective(data["objective"])
    except ValueError as exc:
        raise ParseError(f"field 'objective' must be one of "
                         f"{[o.value for o in Objective]}: {exc}") from exc
    try:
        instance = Instance(
            jobs=tuple(jobs),
            speedset=SpeedSet(tuple(float(s) for s in data["speeds"]), float(data["delta"])),
            precedence=PrecedenceDag(tuple((int(a), int(b)) for a, b in data["edges"])),
            objective=objective,
            alpha=float(data["alpha"]),
            epsilon=float(data["epsilon"]),
            beta=float(data["beta"]),
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc

    report = validate(instance)
    if report:
        raise ParseError("invalid instance: " + "; ".join(report))
    return instance


def save(instance: Instance, path) -> None:
    Path(path).write_text(json.dumps(to_dict(instance), indent=2) + "\n")


def load(path) -> Instance:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return from_dict(data)


@dataclass(frozen=True)
class GeneratorConfig:
    objective: Objective = Objective.COMPLETION_TIME
    edge_density: float = 0.3
    rho_max: int = 3
    weight_max: float = 4.0
    release_max: float = 0.0        # 0 disables release dates
    deadline_max: float = 10.0      # tardiness only
    energy_kind: str = "poly"       # "poly" or "table"
    v_max: float = 2.0
    beta: float = 2.0
    table_cost_max: float = 10.0
    sigma1: float = 1.0
    delta: float = 1.0
    epsilon: float = 0.5
    alpha: float | None = None      # None: objective/release-dependent default

    def __post_init__(self):
        if not (0 <= self.edge_density <= 1):
            raise ValueError(f"edge_density must be in [0, 1], got {self.edge_density}")
        if self.rho_max < 1 or self.weight_max <= 0 or self.sigma1 <= 0:
            raise ValueError("rho_max, weight_max and sigma1 must be positive")
        if self.energy_kind not in ("poly", "table"):
            raise ValueError(f"unknown energy kind {self.energy_kind!r}")
        if self.objective is Objective.TARDINESS and self.release_max > 0:
            raise ValueError("tardiness instances cannot have release dates")


def default_alpha(objective: Objective, with_releases: bool) -> float:
    """Ratio-optimizing alpha: 1/2, except sqrt(2)-1 when releases are present."""
    if objective is Objective.COMPLETION_TIME and with_releases:
        return float(np.sqrt(2) - 1)
    return 0.5


def generate(seed: int, n: int, m: int, config: GeneratorConfig | None = None) -> Instance:
    """Deterministic random instance: random DAG, delta-spaced speed ladder."""
    if n < 1 or m < 1:
        raise ValueError(f"need n >= 1 jobs and m >= 1 speeds, got n={n}, m={m}")
    cfg = config or GeneratorConfig()
    rng = np.random.default_rng(seed)

    speeds = [cfg.sigma1]
    for _ in range(m - 1):
        # random ratio in (1, 1+delta]: keeps the ladder strictly increasing
        speeds.append(speeds[-1] * (1 + cfg.delta * rng.uniform(0.5, 1.0)))
    speedset = SpeedSet(tuple(speeds), cfg.delta)

    jobs = []
    for i in range(1, n + 1):
        release = 0.0
        if cfg.release_max > 0 and cfg.objective is Objective.COMPLETION_TIME:
            release = float(rng.uniform(0, cfg.release_max))
        deadline = 0.0
        if cfg.objective is Objective.TARDINESS:
            deadline = float(rng.uniform(0, cfg.deadline_max))
        if cfg.energy_kind == "poly":
            energy = PolynomialEnergy(float(rng.uniform(0.2, cfg.v_max)), cfg.beta)
        else:
            energy = TableEnergy(tuple(float(c) for c in rng.uniform(0, cfg.table_cost_max, m)))
        jobs.append(
            Job(
                id=i,
                rho=int(rng.integers(1, cfg.rho_max + 1)),
                weight=float(rng.uniform(0.1, cfg.weight_max)),
                release=release,
                deadline=deadline,
                energy=energy,
            )
        )

    edges = []
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if rng.random() < cfg.edge_density:
                edges.append((a, b))  # oriented low -> high id, hence acyclic

    with_releases = any(j.release > 0 for j in jobs)
    alpha = cfg.alpha if cfg.alpha is not None else default_alpha(cfg.objective, with_releases)
    instance = Instance(
        jobs=tuple(jobs),
        speedset=speedset,
        precedence=PrecedenceDag(tuple(edges)),
        objective=cfg.objective,
        alpha=alpha,
        epsilon=cfg.epsilon,
        beta=cfg.beta,
    )
    report = validate(instance)
    if report:  # generator contract: every generated instance validates
        raise AssertionError("generator produced an invalid instance: " + "; ".join(report))
    return instance
