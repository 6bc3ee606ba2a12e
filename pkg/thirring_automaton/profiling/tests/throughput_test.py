import json

import pytest

from thirring_automaton.profiling import is_regression, measure_throughput
from thirring_automaton.profiling.throughput import load_baseline, save_baseline


class TestThroughput(object):
    @pytest.mark.parametrize("n_x", [64, 100])
    def test_measure(self, n_x):
        record = measure_throughput(n_x=n_x, batch=4, n_half_steps=4, repeats=2, verbose=True)
        assert record["site_updates_per_s"] > 0
        assert record["n_x"] == n_x
        assert record["model"] == "interacting"

    @pytest.mark.parametrize(
        "measured, baseline, expected",
        [(100.0, 100.0, False), (60.0, 100.0, False), (49.0, 100.0, True)],
    )
    def test_is_regression(self, measured, baseline, expected):
        assert is_regression(measured, baseline) == expected

    def test_baseline_file(self, tmp_path):
        path = str(tmp_path / "baseline.json")
        save_baseline(path, 1.5e8)
        assert load_baseline(path) == 1.5e8

        other = tmp_path / "other.json"
        other.write_text(json.dumps({"rate": 1}))
        with pytest.raises(ValueError):
            load_baseline(str(other))
