"""Multi-agent actor-critic lab with joint-policy critic marginalisation.

The package trains PERLA-MAPPO (a MAPPO variant whose critic averages over
sampled counterfactual actions of the other agents) and a single-sample MAPPO
baseline on small cooperative games, and ships a variance bench that measures
the gradient-estimator variance reduction directly against closed-form values.
"""

from perla.core import (
    GameSpec,
    JointAction,
    SeededRng,
    Trajectory,
    Transition,
    discounted_return,
    rollout,
)
from perla.estimators import EstimatorKind

__version__ = "0.1.0"

__all__ = [
    "GameSpec",
    "JointAction",
    "SeededRng",
    "Trajectory",
    "Transition",
    "EstimatorKind",
    "discounted_return",
    "rollout",
    "__version__",
]
