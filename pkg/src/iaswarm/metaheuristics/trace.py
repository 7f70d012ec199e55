from dataclasses import dataclass, field

import numpy as np


@dataclass
class Trace:
    """Best-so-far history of one optimizer run.

    Entry 0 describes the initial population; entry ``t`` the state after
    iteration (or cycle) ``t``. ``evaluations`` is cumulative.
    """
    best_cost: list = field(default_factory=list)
    evaluations: list = field(default_factory=list)
    best_x: np.ndarray = None

    @property
    def final_cost(self):
        return self.best_cost[-1]

    @property
    def iterations(self):
        return len(self.best_cost) - 1


class _Incumbent:
    """Evaluates a full-dimensional population and remembers the best point."""

    def __init__(self, objective):
        self.objective = objective
        self.best_position = None
        self.best_cost = np.inf

    def __call__(self, X):
        costs = self.objective.evaluate_many(X)
        k = int(np.argmin(costs))
        if costs[k] < self.best_cost:
            self.best_cost = float(costs[k])
            self.best_position = X[k].copy()
        return costs


class _Recorder:
    def __init__(self, objective, callback=None):
        self.objective = objective
        self.start = objective.evaluations
        self.callback = callback
        self.trace = Trace()

    def record(self, best_x, best_cost):
        self.trace.best_cost.append(float(best_cost))
        self.trace.evaluations.append(self.objective.evaluations - self.start)
        if self.callback is not None:
            self.callback(len(self.trace.best_cost) - 1, best_x, best_cost)

    def finish(self, best_x):
        self.trace.best_x = np.array(best_x, dtype=np.float64)
        return self.trace


def _reached(target, cost):
    return target is not None and cost <= target
