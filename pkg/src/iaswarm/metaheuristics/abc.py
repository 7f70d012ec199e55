"""Artificial bee colony.

Each cycle runs three phases over ``SN`` food sources:

* employed bees perturb one random coordinate of every source towards or
  away from a random partner, ``v_j = x_j + phi * (x_j - x_kj)`` with
  ``phi ~ U[-1, 1]``, keeping the candidate only if it is strictly better;
* ``SN`` onlookers pick sources by roulette on ``fit = 1 / (1 + cost)`` and
  apply the same move;
* the source whose trial counter most exceeds ``limit`` (if any) is
  abandoned and replaced by a uniform point in the box.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .trace import _Incumbent, _Recorder, _reached


@dataclass
class AbcConfig:
    SN: int = 100
    limit: int = 5
    mcn: int = 1000
    seed: int = 0
    clamp: bool = False
    target: Optional[float] = None

    def __post_init__(self):
        if self.SN < 2:
            raise ValueError("SN must be >= 2")
        if self.limit < 1:
            raise ValueError("limit must be >= 1")
        if self.mcn < 0:
            raise ValueError("mcn must be >= 0")


@dataclass
class FoodSource:
    position: np.ndarray
    cost: float
    fitness: float
    trials: int


def fitness_transform(cost):
    """``1 / (1 + cost)`` for non-negative costs (scalar or array)."""
    c = np.asarray(cost, dtype=np.float64)
    if np.any(c < 0) or np.any(np.isnan(c)):
        raise ValueError("fitness_transform needs non-negative costs")
    out = 1.0 / (1.0 + c)
    return float(out) if out.ndim == 0 else out


def roulette_probabilities(costs):
    fit = fitness_transform(np.asarray(costs, dtype=np.float64))
    total = fit.sum()
    if not total > 0:
        return np.full(fit.shape, 1.0 / fit.size)
    return fit / total


class Colony:
    """A bee colony over a box; also used as a 1-D cooperative colony."""

    def __init__(self, lower, upper, size, limit, rng, clamp=False):
        self.lower = np.asarray(lower, dtype=np.float64)
        self.upper = np.asarray(upper, dtype=np.float64)
        self.limit = limit
        self.clamp = clamp
        self.rng = rng
        self.x = rng.uniform(self.lower, self.upper, (size, self.lower.shape[0]))
        self.cost = np.full(size, np.inf)
        self.trials = np.zeros(size, dtype=np.int64)
        self.last_probabilities = None

    @property
    def size(self):
        return self.x.shape[0]

    def source(self, i):
        return FoodSource(self.x[i].copy(), float(self.cost[i]),
                          fitness_transform(self.cost[i]), int(self.trials[i]))

    def start(self, evaluate):
        self.cost = evaluate(self.x).copy()

    def neighbours(self, sources, phi=None):
        """Candidates around ``sources``; one random coordinate each moves."""
        rng = self.rng
        m = len(sources)
        size, n = self.x.shape
        dim = rng.integers(n, size=m)
        partner = rng.integers(size - 1, size=m)
        partner += partner >= sources
        if phi is None:
            phi = rng.uniform(-1.0, 1.0, size=m)
        cand = self.x[sources].copy()
        rows = np.arange(m)
        xj = cand[rows, dim]
        cand[rows, dim] = xj + phi * (xj - self.x[partner, dim])
        if self.clamp:
            np.clip(cand, self.lower, self.upper, out=cand)
        return cand

    def _greedy(self, sources, cand, costs):
        for s, xc, fc in zip(sources, cand, costs):
            if fc < self.cost[s]:
                self.x[s] = xc
                self.cost[s] = fc
                self.trials[s] = 0
            else:
                self.trials[s] += 1

    def employed_phase(self, evaluate, phi=None):
        # every source appears once, so greedy selection vectorizes
        cand = self.neighbours(np.arange(self.size), phi)
        costs = evaluate(cand)
        better = costs < self.cost
        self.x[better] = cand[better]
        self.cost[better] = costs[better]
        self.trials[better] = 0
        self.trials[~better] += 1

    def onlooker_phase(self, evaluate):
        p = roulette_probabilities(self.cost)
        self.last_probabilities = p
        cdf = np.cumsum(p)
        sources = np.searchsorted(cdf, self.rng.random(self.size) * cdf[-1], side="right")
        np.minimum(sources, self.size - 1, out=sources)
        cand = self.neighbours(sources)
        self._greedy(sources, cand, evaluate(cand))

    def scout_phase(self, evaluate):
        s = int(np.argmax(self.trials))
        if self.trials[s] <= self.limit:
            return None
        self.x[s] = self.rng.uniform(self.lower, self.upper)
        self.cost[s] = evaluate(self.x[s:s + 1])[0]
        self.trials[s] = 0
        return s

    def step(self, evaluate):
        self.employed_phase(evaluate)
        self.onlooker_phase(evaluate)
        self.scout_phase(evaluate)


def abc_run(objective, cfg, callback=None):
    """Minimize ``objective`` with ABC for ``cfg.mcn`` cycles."""
    rng = np.random.default_rng(cfg.seed)
    colony = Colony(objective.lower, objective.upper, cfg.SN, cfg.limit, rng,
                    clamp=cfg.clamp)
    best = _Incumbent(objective)
    rec = _Recorder(objective, callback)
    colony.start(best)
    rec.record(best.best_position, best.best_cost)
    for _ in range(cfg.mcn):
        if _reached(cfg.target, best.best_cost):
            break
        colony.step(best)
        rec.record(best.best_position, best.best_cost)
    return rec.finish(best.best_position)
