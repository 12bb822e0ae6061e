"""Separable neural-network quantum states.

Restricted-Boltzmann-machine wavefunctions and density matrices whose
weight masks certify a chosen separability, trained by fidelity descent to
classify entanglement and to bound entanglement measures.
"""

from .ansatz import Ansatz, QuditEncoding
from .learning import (
    ENTANGLED_BEYOND_K,
    INCONCLUSIVE,
    K_SEPARABLE,
    LearnConfig,
    TrainReport,
    classify,
    learner_for,
    train,
    warm_start_sweep,
)
from .measures import MeasureEstimate, capacity_bound, distance_measure, gme, ree_upper, ree_variants
from .qmath import DensityMatrix
from .separability import PartitionSet, free, fully_separable, presets

__version__ = "0.1.0"
