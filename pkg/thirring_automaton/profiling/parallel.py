from __future__ import absolute_import

import numpy as np
from joblib import Parallel, delayed


def _cpu_map(fun, indexed_params, n_jobs, verbose):
    return Parallel(
        n_jobs=n_jobs,
        verbose=verbose,
        backend="threading",  # numpy releases the GIL inside the kernels
    )(delayed(fun)(params) for params in indexed_params)


def cpu_map(fun, params, n_jobs=1, verbose=False):
    """Map fun over params with joblib, results in input order.

    fun receives (index, param) and must return (index, result).
    """
    results = _cpu_map(fun, list(enumerate(params)), n_jobs, verbose)
    return [result for _, result in sorted(results, key=lambda item: item[0])]


def chunk_sizes(n_items, chunk_size):
    """Split n_items into chunks of at most chunk_size."""
    if chunk_size < 1:
        raise ValueError("chunk_size must be positive, got {}".format(chunk_size))
    n_full, rest = divmod(int(n_items), int(chunk_size))
    sizes = [int(chunk_size)] * n_full
    if rest:
        sizes.append(rest)
    return sizes


def spawn_generators(seed, n_streams):
    """Independent counter-based (Philox) generators, one per chunk.

    Streams depend only on (seed, stream index), so results do not depend on
    n_jobs or scheduling order.
    """
    children = np.random.SeedSequence(seed).spawn(n_streams)
    return [np.random.Generator(np.random.Philox(child)) for child in children]
