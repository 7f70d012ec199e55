from .objective import Objective, FunctionObjective, sphere
from .trace import Trace
from .pso import PsoConfig, Particle, Swarm, pso_run, pso_velocity_update, sign_nonzero
from .abc import (AbcConfig, FoodSource, Colony, abc_run, fitness_transform,
                  roulette_probabilities)
from .coop import CoopConfig, ContextVector, cc_run

__all__ = [
    "Objective", "FunctionObjective", "sphere", "Trace",
    "PsoConfig", "Particle", "Swarm", "pso_run", "pso_velocity_update", "sign_nonzero",
    "AbcConfig", "FoodSource", "Colony", "abc_run", "fitness_transform",
    "roulette_probabilities",
    "CoopConfig", "ContextVector", "cc_run",
]
