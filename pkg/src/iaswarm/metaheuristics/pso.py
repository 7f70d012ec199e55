"""Particle swarm optimization with a single-parameter velocity rule.

The velocity of particle ``i`` along dimension ``d`` is

    v <- omega * |p[i', d] - p[i, d]| * sign(v)
         + r * (p[i, d] - x[i, d]) + (1 - r) * (g[d] - x[i, d])

where ``p`` are personal bests, ``g`` the swarm's best, ``i'`` a random
particle and ``r ~ U[0, 1]``. There is no inertia or acceleration constant;
``omega`` alone trades exploration (``omega > 1``) against exploitation.
``omega`` may also be redrawn as ``c * U[0, 1]`` on every update.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .trace import _Incumbent, _Recorder, _reached


@dataclass
class PsoConfig:
    swarm_size: int = 100
    omega: float = 1.0
    c: Optional[float] = None  # when set, omega = c * U[0, 1] per update
    max_iterations: int = 5000
    seed: int = 0
    clamp: bool = False
    target: Optional[float] = None

    def __post_init__(self):
        if self.swarm_size < 2:
            raise ValueError("swarm_size must be >= 2")
        if self.omega < 0 or (self.c is not None and self.c < 0):
            raise ValueError("omega and c must be non-negative")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be >= 0")


@dataclass
class Particle:
    x: np.ndarray
    v: np.ndarray
    p: np.ndarray
    p_cost: float


def sign_nonzero(v):
    """``sign`` with ``sign(0) = +1``."""
    return np.where(v >= 0, 1.0, -1.0)


def pso_velocity_update(x, v, p, p_prime, g, omega, r):
    """New velocity from explicit random draws.

    All arguments broadcast elementwise; ``p_prime`` is the personal best of
    the randomly chosen particle ``i'`` and ``r`` the uniform draw(s).
    """
    x, v, p, p_prime, g = (np.asarray(a, dtype=np.float64) for a in (x, v, p, p_prime, g))
    if not x.shape == v.shape == p.shape == p_prime.shape:
        raise ValueError("x, v, p and p_prime must share a shape")
    if np.shape(g)[-1:] != x.shape[-1:]:
        raise ValueError("g does not match the particle dimension")
    return (omega * np.abs(p_prime - p) * sign_nonzero(v)
            + r * (p - x) + (1.0 - r) * (g - x))


class Swarm:
    """A PSO population over a box; also used as a 1-D cooperative swarm."""

    def __init__(self, lower, upper, size, omega, rng, c=None, clamp=False):
        self.lower = np.asarray(lower, dtype=np.float64)
        self.upper = np.asarray(upper, dtype=np.float64)
        self.omega = omega
        self.c = c
        self.clamp = clamp
        self.rng = rng
        n = self.lower.shape[0]
        span = self.upper - self.lower
        self.x = rng.uniform(self.lower, self.upper, (size, n))
        self.v = rng.uniform(-span / 10, span / 10, (size, n))
        self.p = self.x.copy()
        self.p_cost = np.full(size, np.inf)

    @property
    def size(self):
        return self.x.shape[0]

    def particle(self, i):
        return Particle(self.x[i].copy(), self.v[i].copy(), self.p[i].copy(),
                        float(self.p_cost[i]))

    def start(self, evaluate):
        self.p_cost = evaluate(self.x).copy()

    def step(self, evaluate):
        """Move every particle once towards ``evaluate.best_position``."""
        rng = self.rng
        size, n = self.x.shape
        other = rng.integers(size, size=size)
        r = rng.random((size, n))
        omega = self.omega if self.c is None else self.c * rng.random((size, n))
        self.v = pso_velocity_update(self.x, self.v, self.p, self.p[other],
                                     evaluate.best_position, omega, r)
        self.x = self.x + self.v
        if self.clamp:
            np.clip(self.x, self.lower, self.upper, out=self.x)
        costs = evaluate(self.x)
        better = costs < self.p_cost
        self.p[better] = self.x[better]
        self.p_cost[better] = costs[better]


def pso_run(objective, cfg, callback=None):
    """Minimize ``objective`` with PSO; returns a :class:`Trace`.

    ``callback(iteration, best_x, best_cost)`` is invoked after the initial
    evaluation and after every iteration.
    """
    rng = np.random.default_rng(cfg.seed)
    swarm = Swarm(objective.lower, objective.upper, cfg.swarm_size, cfg.omega, rng,
                  c=cfg.c, clamp=cfg.clamp)
    best = _Incumbent(objective)
    rec = _Recorder(objective, callback)
    swarm.start(best)
    rec.record(best.best_position, best.best_cost)
    for _ in range(cfg.max_iterations):
        if _reached(cfg.target, best.best_cost):
            break
        swarm.step(best)
        rec.record(best.best_position, best.best_cost)
    return rec.finish(best.best_position)
