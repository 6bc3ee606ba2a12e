from __future__ import absolute_import
from .parallel import cpu_map, chunk_sizes, spawn_generators
from .estimators import RunningMoments, mean_and_stderr, merge_all, batch_means
from .throughput import measure_throughput, is_regression


__all__ = [
    "cpu_map",
    "chunk_sizes",
    "spawn_generators",
    "RunningMoments",
    "mean_and_stderr",
    "merge_all",
    "batch_means",
    "measure_throughput",
    "is_regression",
]
