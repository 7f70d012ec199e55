"""Objective functions seen by the optimizers.

An objective is a box-bounded map from real vectors to real costs that
counts how often it was evaluated. Optimizers call :meth:`evaluate_many`
with a whole population at once; each row counts as one evaluation.
"""
import numpy as np


class Objective:
    """Base class: subclasses implement :meth:`_batch`.

    Parameters
    ----------
    dimension : int
    lower, upper : float or array_like
        Search box, broadcast to ``dimension``.
    """

    def __init__(self, dimension, lower=-1.0, upper=1.0):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        self.dimension = int(dimension)
        self.lower = np.broadcast_to(np.asarray(lower, dtype=float), (self.dimension,)).copy()
        self.upper = np.broadcast_to(np.asarray(upper, dtype=float), (self.dimension,)).copy()
        if np.any(self.upper <= self.lower):
            raise ValueError("upper bounds must exceed lower bounds")
        self.evaluations = 0

    def _batch(self, X):
        raise NotImplementedError

    def evaluate_many(self, X):
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.dimension:
            raise ValueError(f"expected shape (P, {self.dimension}), got {X.shape}")
        self.evaluations += X.shape[0]
        return np.asarray(self._batch(X), dtype=np.float64)

    def evaluate(self, x):
        return float(self.evaluate_many(np.asarray(x, dtype=np.float64)[None, :])[0])

    __call__ = evaluate

    def fresh(self):
        """Copy with its own evaluation counter, for an independent run."""
        clone = object.__new__(type(self))
        clone.__dict__.update(self.__dict__)
        clone.evaluations = 0
        return clone


class FunctionObjective(Objective):
    """Wrap a plain callable.

    ``func`` maps one vector to a float; ``batch_func``, if given, maps a
    ``(P, n)`` array to ``P`` costs and is preferred.
    """

    def __init__(self, func, dimension, lower=-1.0, upper=1.0, batch_func=None):
        super().__init__(dimension, lower, upper)
        self.func = func
        self.batch_func = batch_func

    def _batch(self, X):
        if self.batch_func is not None:
            return self.batch_func(X)
        return np.array([self.func(x) for x in X], dtype=np.float64)


def sphere(dimension, lower=-1.0, upper=1.0):
    """Separable test function ``sum(x**2)``."""
    return FunctionObjective(lambda x: float(np.dot(x, x)), dimension, lower, upper,
                             batch_func=lambda X: np.einsum("ij,ij->i", X, X))
