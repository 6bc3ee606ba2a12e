"""Throughput of the packed half-step kernel."""
from __future__ import absolute_import

import json
import time

import numpy as np

from ..automaton import half_step_words, n_words

REGRESSION_THRESHOLD = 0.5
TARGET_SITE_UPDATES_PER_S = 1e8


def measure_throughput(
    n_x=4096,
    batch=64,
    n_half_steps=64,
    model="interacting",
    seed=0,
    repeats=3,
    verbose=False,
):
    """Time single-threaded half-steps on a batch of random layers.

    Returns
    -------
    dict with site_updates_per_s (best of repeats) and the run parameters.
    """
    generator = np.random.Generator(np.random.Philox(seed))
    words = generator.integers(
        0, np.iinfo(np.uint64).max, size=(batch, n_words(n_x)), dtype=np.uint64, endpoint=True
    )
    if (2 * n_x) % 64:
        words[:, -1] &= np.uint64((1 << ((2 * n_x) % 64)) - 1)

    best = None
    for repeat in range(repeats):
        current = words
        parity = "even"
        start = time.perf_counter()
        for _ in range(n_half_steps):
            current = half_step_words(current, n_x, parity, model)
            parity = "odd" if parity == "even" else "even"
        elapsed = max(time.perf_counter() - start, 1e-12)
        rate = batch * n_x * n_half_steps / elapsed
        if verbose:
            print("repeat {}: {:.3e} site updates/s".format(repeat, rate))
        best = rate if best is None else max(best, rate)

    return {
        "site_updates_per_s": best,
        "n_x": n_x,
        "batch": batch,
        "n_half_steps": n_half_steps,
        "model": model,
    }


def load_baseline(path):
    with open(path) as fileobj:
        record = json.load(fileobj)
    if "site_updates_per_s" not in record:
        raise ValueError("baseline {} has no site_updates_per_s".format(path))
    return float(record["site_updates_per_s"])


def save_baseline(path, site_updates_per_s):
    with open(path, "w") as fileobj:
        json.dump({"site_updates_per_s": float(site_updates_per_s)}, fileobj)
        fileobj.write("\n")


def is_regression(measured, baseline, threshold=REGRESSION_THRESHOLD):
    """True when measured falls below threshold * baseline."""
    return measured < threshold * baseline
