"""Waiting-room sampling for unbiased triangle counting in edge streams."""

__version__ = "0.1.0"

from .base import ConfigError, EstimateSnapshot, StreamingEstimator
from .baselines import Mascot, TriestImpr, triest_weight
from .exact import (
    ContractError,
    ExactCounter,
    TriangleRecord,
    closing_interval,
    count_triangles_batch,
    exact_counts,
    interval_distribution,
    total_interval,
)
from .metrics import TrialStats, global_error, local_error, trial_statistics
from .stream import StreamOptions, TimedEdge, open_stream, read_edges, shuffle_stream, timed
from .synthetic import generate_synthetic_stream, synthetic_edges
from .wrs import (
    Location,
    TriangleType,
    WaitingRoomSampler,
    WrsConfig,
    classify_triangle,
    discovery_probability,
    new_wrs,
    reservoir_insert_probability,
    variance_dominates_triest,
    variance_of_increment,
    variance_reduction_guaranteed,
)
