"""Interference leakage as an optimizer objective."""
import numpy as np

from .kernels import leakage_batch, make_layout
from .metaheuristics.objective import Objective
from .mimo import count_variables


class LeakageObjective(Objective):
    """Leakage of the beamformers encoded in a real decision vector.

    ``mode="raw"`` is the plain leakage. ``mode="normalized"`` unit-normalizes
    every beamformer column first and scores degenerate (zero-column)
    vectors as ``inf``.
    """

    def __init__(self, channels, mode="raw", lower=-1.0, upper=1.0):
        if mode not in ("raw", "normalized"):
            raise ValueError(f"mode must be 'raw' or 'normalized', got {mode!r}")
        spec = channels.spec
        super().__init__(count_variables(spec)[1], lower, upper)
        self.channels = channels
        self.spec = spec
        self.mode = mode
        self.layout = make_layout(spec.M, spec.N, spec.d, channels.H)

    def _batch(self, X):
        return leakage_batch(X, self.layout, normalized=self.mode == "normalized")
