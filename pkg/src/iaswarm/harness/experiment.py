"""Seeded multi-run experiments of the four optimizers on the IA objective."""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import logging
import time
from typing import Optional
import warnings

import numpy as np

from ..ia_objective import LeakageObjective
from ..metaheuristics import (AbcConfig, CoopConfig, PsoConfig, abc_run, cc_run,
                              pso_run)
from ..mimo import (DegenerateInputError, ScenarioSpec, check_feasibility,
                    count_equations, count_variables, decode, generate_channels,
                    leakage_normalized, rank_check)

log = logging.getLogger(__name__)

ALGORITHMS = ("pso", "cpso", "abc", "cabc")

# budgets are iterations (PSO) or cycles (ABC and the cooperative variants)
DEFAULTS = {
    "pso": {"omega": 3.0, "swarm_size": 100, "budget": 5000},
    "cpso": {"omega": 1e-3, "swarm_size": 50, "budget": 200},
    "abc": {"SN": 100, "limit": 5, "budget": 1000},
    "cabc": {"SN": 15, "limit": 5, "budget": 200},
}

RANK_TOL = 1e-8


class FeasibilityWarning(UserWarning):
    """Scenario has fewer variables than alignment equations."""


@dataclass
class ExperimentConfig:
    scenario: ScenarioSpec
    algorithm: str
    runs: int = 10
    master_seed: int = 0
    omega: Optional[float] = None
    c: Optional[float] = None
    swarm_size: Optional[int] = None
    SN: Optional[int] = None
    limit: Optional[int] = None
    budget: Optional[int] = None
    objective_mode: str = "raw"
    fixed_channel: bool = False
    outdir: Optional[str] = None
    workers: int = 1

    def __post_init__(self):
        self.algorithm = self.algorithm.lower()
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; "
                             f"choose from {', '.join(ALGORITHMS)}")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.objective_mode not in ("raw", "normalized"):
            raise ValueError("objective_mode must be 'raw' or 'normalized'")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        for key, value in DEFAULTS[self.algorithm].items():
            if getattr(self, key) is None:
                setattr(self, key, value)
        if self.budget < 0:
            raise ValueError("budget must be >= 0")
        # surface bad algorithm parameters before any run starts
        self.optimizer_config(0)

    def run_seed(self, index):
        return self.master_seed + index

    def channel_seed(self, index):
        base = self.master_seed if self.fixed_channel else self.run_seed(index)
        return int(np.random.SeedSequence([base, 0]).generate_state(1)[0])

    def optimizer_seed(self, index):
        return int(np.random.SeedSequence([self.run_seed(index), 1]).generate_state(1)[0])

    def optimizer_config(self, index):
        seed = self.optimizer_seed(index)
        alg = self.algorithm
        if alg == "pso":
            return PsoConfig(swarm_size=self.swarm_size, omega=self.omega, c=self.c,
                             max_iterations=self.budget, seed=seed)
        if alg == "abc":
            return AbcConfig(SN=self.SN, limit=self.limit, mcn=self.budget, seed=seed)
        if alg == "cpso":
            return CoopConfig(inner="pso", population=self.swarm_size, omega=self.omega,
                              c=self.c, max_cycles=self.budget, seed=seed)
        return CoopConfig(inner="abc", population=self.SN, limit=self.limit,
                          max_cycles=self.budget, seed=seed)


@dataclass
class RunRecord:
    run_index: int
    seed: int
    channel_seed: int
    best_il: list
    evaluations: list
    final_il: float
    final_x: np.ndarray
    rank: object
    normalized_il: float
    evaluation_count: int
    wall_time: float = 0.0
    channels: object = field(default=None, repr=False)


@dataclass
class SummaryRow:
    scenario: ScenarioSpec
    algorithm: str
    dimension: int
    min_il: float
    median_il: float
    rank_pass_rate: float
    runs: int


@dataclass
class SummaryTable:
    rows: list = field(default_factory=list)

    def sort(self):
        self.rows.sort(key=lambda r: (r.scenario.K, r.scenario.M, r.scenario.N,
                                      r.scenario.d, ALGORITHMS.index(r.algorithm)))
        return self

    def extend(self, other):
        self.rows.extend(other.rows)
        return self.sort()

    def find(self, scenario, algorithm):
        for row in self.rows:
            if row.scenario == scenario and row.algorithm == algorithm:
                return row
        raise KeyError((scenario, algorithm))


def summarize(scenario, algorithm, final_ils, rank_ok):
    final_ils = [float(v) for v in final_ils]
    return SummaryRow(scenario=scenario, algorithm=algorithm,
                      dimension=count_variables(scenario)[1],
                      min_il=min(final_ils),
                      median_il=float(np.median(final_ils)),
                      rank_pass_rate=float(np.mean(rank_ok)),
                      runs=len(final_ils))


_OPTIMIZERS = {"pso": pso_run, "abc": abc_run, "cpso": cc_run, "cabc": cc_run}


def execute_run(cfg, index):
    """One seeded run; a pure function of ``(cfg, index)`` apart from timing."""
    t0 = time.perf_counter()
    channels = generate_channels(cfg.scenario, cfg.channel_seed(index))
    objective = LeakageObjective(channels, mode=cfg.objective_mode)
    trace = _OPTIMIZERS[cfg.algorithm](objective, cfg.optimizer_config(index))
    B = decode(trace.best_x, cfg.scenario)
    try:
        nil = leakage_normalized(channels, B)
    except DegenerateInputError:
        nil = float("nan")
    return RunRecord(
        run_index=index, seed=cfg.run_seed(index), channel_seed=cfg.channel_seed(index),
        best_il=list(trace.best_cost), evaluations=list(trace.evaluations),
        final_il=trace.final_cost, final_x=trace.best_x,
        rank=rank_check(channels, B, RANK_TOL), normalized_il=nil,
        evaluation_count=objective.evaluations,
        wall_time=time.perf_counter() - t0, channels=channels)


def run_experiment(cfg):
    """Run ``cfg.runs`` seeded runs; returns ``(records, SummaryTable)``.

    Records come back in run-index order whatever ``cfg.workers`` is. When
    ``cfg.outdir`` is set, traces, records, channel dumps and the summary
    are written there (see :mod:`iaswarm.harness.io`).
    """
    spec = cfg.scenario
    if not check_feasibility(spec):
        warnings.warn(
            f"{spec.label}: {count_variables(spec)[0]} complex variables < "
            f"{count_equations(spec)} equations; alignment is generically "
            "infeasible", FeasibilityWarning, stacklevel=2)
    indices = range(cfg.runs)
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(pool.map(execute_run, [cfg] * cfg.runs, indices))
    else:
        records = [execute_run(cfg, i) for i in indices]
    for rec in records:
        log.info("%s %s run %d: IL %.4e (normalized %.4e, rank ok %s)", spec.label,
                 cfg.algorithm, rec.run_index, rec.final_il, rec.normalized_il,
                 rec.rank.satisfied)
    table = SummaryTable([summarize(spec, cfg.algorithm, [r.final_il for r in records],
                                    [r.rank.satisfied for r in records])])
    if cfg.outdir is not None:
        from .io import write_experiment
        write_experiment(cfg, records, table)
    return records, table
