from __future__ import absolute_import

import csv
import json
import os
from collections import namedtuple

import numpy as np

from .._version import __version__
from ..automaton import LayerConfig, evolve
from ..lattice import time_parity
from ..observables import get_observable
from ..quantum_state import (
    expectation_trajectory,
    from_product_distribution,
    sample_evolve,
)
from .classify import classify_trajectory
from .config import build_initial
from .render import render_ascii, render_ppm

GENERATOR_NAME = "numpy.random.Philox"

ScenarioResult = namedtuple(
    "ScenarioResult", ["config", "trajectory", "rows", "labels", "metadata", "files"]
)


def run_metadata(config, **extra):
    """Record of everything needed to reproduce a run."""
    record = {
        "name": config.name,
        "n_x": config.n_x,
        "n_half_steps": config.n_half_steps,
        "start_parity": config.start_parity,
        "model": config.model,
        "seed": config.seed,
        "generator": GENERATOR_NAME,
        "package_version": __version__,
        "numpy_version": np.__version__,
    }
    record.update(extra)
    return record


def trajectory_rows(trajectory, observables):
    """(t, name, value, stderr) rows of deterministic observables."""
    n_r, n_i = trajectory.occupations()
    rows = []
    for t in range(len(trajectory)):
        m_t = time_parity(trajectory.start_parity, t)
        for name in observables:
            value = get_observable(name)(n_r[t], n_i[t], m_t)
            rows.append((t, name, float(value), 0.0))
    return rows


def distribution_rows(config, site_probabilities, verbose=False):
    """Rows for a product distribution: sampled when n_samples is set,
    exact otherwise."""
    if config.n_samples:
        estimate = sample_evolve(
            site_probabilities,
            config.n_samples,
            config.n_half_steps,
            config.observables,
            seed=config.seed,
            start_parity=config.start_parity,
            model=config.model,
            verbose=verbose,
        )
        means, stderr, seed = estimate.means, estimate.stderr, estimate.seed
    else:
        wf = from_product_distribution(site_probabilities, parity=config.start_parity)
        means = expectation_trajectory(
            wf, config.n_half_steps, config.observables, config.model
        )
        stderr, seed = np.zeros_like(means), config.seed
    rows = [
        (t, name, float(means[t, k]), float(stderr[t, k]))
        for t in range(config.n_half_steps + 1)
        for k, name in enumerate(config.observables)
    ]
    return rows, seed


def write_observables_csv(rows, fileobj):
    writer = csv.writer(fileobj, lineterminator="\n")
    writer.writerow(["t", "observable", "value", "stderr"])
    for t, name, value, stderr in rows:
        writer.writerow([t, name, "{:.12g}".format(value), "{:.12g}".format(stderr)])


def compute_scenario(config, verbose=False):
    """Evolve a scenario without writing anything.

    Returns
    -------
    ScenarioResult with an empty file list; trajectory and labels are None
    for distribution scenarios.
    """
    initial = build_initial(config)
    if isinstance(initial, LayerConfig):
        trajectory = evolve(initial, config.n_half_steps, config.start_parity, config.model)
        rows = trajectory_rows(trajectory, config.observables)
        labels = classify_trajectory(trajectory)
        metadata = run_metadata(config, initial_kind=config.initial["kind"])
    else:
        trajectory, labels = None, None
        rows, seed = distribution_rows(config, initial, verbose)
        metadata = run_metadata(
            config._replace(seed=seed),
            initial_kind="distribution",
            estimator="sampling" if config.n_samples else "exact",
            n_samples=config.n_samples,
        )
    if verbose:
        print("scenario {}: {} observable rows".format(config.name, len(rows)))
    return ScenarioResult(config, trajectory, rows, labels, metadata, [])


def run_scenario(config, output_dir=".", verbose=False, ppm_scale=4):
    """Compute a scenario and write the outputs named in config.outputs."""
    result = compute_scenario(config, verbose)
    outputs = config.outputs
    files = []

    def target(key):
        path = os.path.join(output_dir, outputs[key])
        files.append(path)
        if verbose:
            print("writing {}".format(path))
        return path

    if result.trajectory is not None:
        if "trajectory_csv" in outputs:
            with open(target("trajectory_csv"), "w") as fileobj:
                result.trajectory.to_csv(fileobj)
        if "ascii" in outputs:
            with open(target("ascii"), "w") as fileobj:
                fileobj.write(render_ascii(result.trajectory))
        if "ppm" in outputs:
            with open(target("ppm"), "wb") as fileobj:
                fileobj.write(render_ppm(result.trajectory, ppm_scale))
    if "observables_csv" in outputs:
        with open(target("observables_csv"), "w") as fileobj:
            write_observables_csv(result.rows, fileobj)
    if "metadata" in outputs:
        with open(target("metadata"), "w") as fileobj:
            json.dump(result.metadata, fileobj, indent=2, sort_keys=True)
            fileobj.write("\n")
    return result._replace(files=files)
