"""sortnetlab: Monte Carlo laboratory for uniform random sorting networks.

Exact uniform sampling (hook walk + inverse Edelman-Greene) and empirical
verification of trajectory, support, and local-rate laws.
"""

__version__ = "0.1.0"

from .core import (SortingNetwork, SwapSequence, TrajectoryGrid, apply,
                   enumerate_all, global_trajectories, is_sorting_network,
                   network, read_network, reflect, time_reverse, time_shift,
                   write_network)
from .rng import Stream
from .sampler import sample_batch, sample_uniform
from .tableau import (StaircaseShape, StaircaseTableau, count_syt,
                      hook_lengths, hook_walk_sample, validate_syt)

__all__ = [
    "SortingNetwork", "SwapSequence", "TrajectoryGrid", "Stream",
    "StaircaseShape", "StaircaseTableau",
    "apply", "count_syt", "enumerate_all", "global_trajectories",
    "hook_lengths", "hook_walk_sample", "is_sorting_network", "network",
    "read_network", "reflect", "sample_batch", "sample_uniform",
    "time_reverse", "time_shift", "validate_syt", "write_network",
]
