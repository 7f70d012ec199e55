"""Cooperative coevolution with one-dimensional subcomponents.

Every coordinate of the problem gets its own small PSO swarm or bee colony.
A shared context vector holds the best value found for each coordinate; a
candidate value for coordinate ``j`` is scored by writing it into a copy
of the context vector and evaluating the full objective. Swarms are
visited in order ``0 .. n-1`` once per cycle.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .abc import Colony
from .pso import Swarm
from .trace import _Recorder, _reached


@dataclass
class CoopConfig:
    inner: str = "abc"  # "pso" or "abc"
    population: int = 15
    omega: float = 1e-3
    c: Optional[float] = None
    limit: int = 5
    max_cycles: int = 200
    seed: int = 0
    clamp: bool = False
    target: Optional[float] = None

    def __post_init__(self):
        if self.inner not in ("pso", "abc"):
            raise ValueError(f"inner must be 'pso' or 'abc', got {self.inner!r}")
        if self.population < 2:
            raise ValueError("population must be >= 2")
        if self.limit < 1:
            raise ValueError("limit must be >= 1")
        if self.omega < 0 or (self.c is not None and self.c < 0):
            raise ValueError("omega and c must be non-negative")
        if self.max_cycles < 0:
            raise ValueError("max_cycles must be >= 0")


class ContextVector:
    """Full-dimensional incumbent assembled from the per-coordinate bests."""

    def __init__(self, values, cost):
        self.values = np.array(values, dtype=np.float64)
        self.cost = float(cost)


class _Slot:
    """Evaluator for swarm ``j``: scores 1-D candidates inside the context."""

    def __init__(self, objective, context, j):
        self.objective = objective
        self.context = context
        self.j = j

    @property
    def best_position(self):
        return self.context.values[self.j:self.j + 1]

    @property
    def best_cost(self):
        return self.context.cost

    def __call__(self, X):
        ctx = self.context
        Z = np.repeat(ctx.values[None, :], X.shape[0], axis=0)
        Z[:, self.j] = X[:, 0]
        costs = self.objective.evaluate_many(Z)
        k = int(np.argmin(costs))
        if costs[k] < ctx.cost:
            ctx.values[self.j] = X[k, 0]
            ctx.cost = float(costs[k])
        return costs


def cc_run(objective, cfg, callback=None):
    """Cooperative PSO (``cfg.inner == "pso"``) or ABC over 1-D swarms.

    The trace records the context cost after initialization and after each
    full cycle over all swarms.
    """
    rng = np.random.default_rng(cfg.seed)
    n = objective.dimension
    lo, hi = objective.lower, objective.upper
    if cfg.inner == "pso":
        pops = [Swarm(lo[j:j + 1], hi[j:j + 1], cfg.population, cfg.omega, rng,
                      c=cfg.c, clamp=cfg.clamp) for j in range(n)]
    else:
        pops = [Colony(lo[j:j + 1], hi[j:j + 1], cfg.population, cfg.limit, rng,
                       clamp=cfg.clamp) for j in range(n)]
    rec = _Recorder(objective, callback)
    start = np.array([pop.x[0, 0] for pop in pops])
    context = ContextVector(start, objective.evaluate(start))
    slots = [_Slot(objective, context, j) for j in range(n)]
    for pop, slot in zip(pops, slots):
        pop.start(slot)
    rec.record(context.values, context.cost)
    for _ in range(cfg.max_cycles):
        if _reached(cfg.target, context.cost):
            break
        for pop, slot in zip(pops, slots):
            pop.step(slot)
        rec.record(context.values, context.cost)
    trace = rec.finish(context.values)
    trace.context = context
    return trace
