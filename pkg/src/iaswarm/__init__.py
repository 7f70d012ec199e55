"""Interference alignment for the K-user MIMO interference channel by
derivative-free swarm optimization (PSO, ABC and cooperative variants)."""
from ._accel import backend_name
from .mimo import *  # noqa: F401,F403
from .mimo import __all__ as _mimo_all
from .ia_objective import LeakageObjective

__version__ = "0.1.0"
__all__ = list(_mimo_all) + ["LeakageObjective", "backend_name"]
