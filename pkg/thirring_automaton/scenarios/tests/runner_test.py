import csv
import json
import os

import numpy as np
import pytest

from thirring_automaton.automaton import NIBBLE_SWAP, Trajectory
from thirring_automaton.lattice import block_partition
from thirring_automaton.scenarios import builtin_config, compute_scenario, config_from_dict, run_scenario
from thirring_automaton.scenarios.runner import GENERATOR_NAME, run_metadata, write_observables_csv

ALL_OUTPUTS = {
    "trajectory_csv": "trajectory.csv",
    "observables_csv": "observables.csv",
    "ascii": "spacetime.txt",
    "ppm": "spacetime.ppm",
    "metadata": "metadata.json",
}


def _distribution_config(**extra):
    data = {
        "schema_version": 1,
        "name": "mixed",
        "n_x": 4,
        "n_half_steps": 3,
        "initial": {
            "kind": "distribution",
            "site_probabilities": [[0.4, 0.3, 0.2, 0.1], [0.25] * 4, [0.1, 0.1, 0.1, 0.7], [0.25] * 4],
        },
        "observables": ["particle_count", "right_movers"],
    }
    data.update(extra)
    return config_from_dict(data)


class TestRunner(object):
    def test_run_writes_outputs(self, tmp_path):
        config = builtin_config("color_scattering")._replace(outputs=ALL_OUTPUTS)
        result = run_scenario(config, output_dir=str(tmp_path))
        assert sorted(os.path.basename(f) for f in result.files) == sorted(ALL_OUTPUTS.values())

        with open(str(tmp_path / "trajectory.csv")) as fileobj:
            assert Trajectory.from_csv(fileobj) == result.trajectory
        with open(str(tmp_path / "metadata.json")) as fileobj:
            metadata = json.load(fileobj)
        assert metadata["generator"] == GENERATOR_NAME
        assert metadata["n_x"] == 24
        assert metadata["initial_kind"] == "sharp"
        with open(str(tmp_path / "observables.csv")) as fileobj:
            rows = list(csv.DictReader(fileobj))
        assert len(rows) == 25 * len(config.observables)
        assert (tmp_path / "spacetime.ppm").read_bytes().startswith(b"P6\n")
        assert len((tmp_path / "spacetime.txt").read_text().splitlines()) == 25

    def test_deterministic_rows(self):
        result = compute_scenario(builtin_config("scattering"))
        counts = [value for t, name, value, _ in result.rows if name == "particle_count"]
        assert counts == [4.0] * 25
        assert all(stderr == 0.0 for _, _, _, stderr in result.rows)
        assert result.labels.shape == (25, 24)

    def test_outputs_byte_identical_across_runs(self, tmp_path):
        config = builtin_config("color_scattering")._replace(outputs=ALL_OUTPUTS)
        for run in ("first", "second"):
            (tmp_path / run).mkdir()
            run_scenario(config, output_dir=str(tmp_path / run))
        for name in ALL_OUTPUTS.values():
            assert (tmp_path / "first" / name).read_bytes() == (
                tmp_path / "second" / name
            ).read_bytes()

    def test_color_changes_only_at_meetings(self):
        trajectory = compute_scenario(builtin_config("color_scattering")).trajectory
        n_r, n_i = trajectory.occupations()
        codes = n_r.astype(np.int64) | n_i.astype(np.int64) << 1
        meetings = 0
        for t in range(len(trajectory) - 1):
            for left, right in block_partition(trajectory.parity(t), trajectory.n_x).pairs:
                before = codes[t, left] | codes[t, right] << 2
                after = codes[t + 1, left] | codes[t + 1, right] << 2
                # one particle on each site
                meeting = codes[t, left] in (1, 2) and codes[t, right] in (1, 2)
                meetings += meeting
                assert (after != NIBBLE_SWAP[before]) == meeting
        assert meetings == 18

    def test_exact_distribution(self):
        result = compute_scenario(_distribution_config())
        assert result.trajectory is None
        assert result.metadata["estimator"] == "exact"
        first = [value for t, name, value, _ in result.rows if name == "particle_count"]
        assert np.allclose(first, first[0])
        assert first[0] == pytest.approx(0.7 + 1.0 + 1.6 + 1.0)

    def test_sampled_distribution(self):
        exact = compute_scenario(_distribution_config())
        sampled = compute_scenario(_distribution_config(n_samples=4000, seed=12))
        assert sampled.metadata["estimator"] == "sampling"
        assert sampled.metadata["seed"] == 12
        for (_, _, mean, stderr), (_, _, value, _) in zip(sampled.rows, exact.rows):
            assert stderr > 0
            assert abs(mean - value) < 5 * stderr

    def test_sampled_seed_is_recorded(self):
        result = compute_scenario(_distribution_config(n_samples=100))
        assert isinstance(result.metadata["seed"], int)

    def test_write_observables_csv(self, tmp_path):
        path = tmp_path / "rows.csv"
        with open(str(path), "w") as fileobj:
            write_observables_csv([(0, "particle_count", 1.0 / 3, 0.0)], fileobj)
        assert path.read_text().splitlines() == [
            "t,observable,value,stderr",
            "0,particle_count,0.333333333333,0",
        ]

    def test_metadata_extra(self):
        record = run_metadata(builtin_config("soliton"), note="x")
        assert record["note"] == "x"
        assert record["model"] == "interacting"
        assert "numpy_version" in record
