import numpy as np
import pytest

from thirring_automaton.profiling import chunk_sizes, cpu_map, spawn_generators


def _square(item):
    index, value = item
    return index, value * value


class TestParallel(object):
    @pytest.mark.parametrize("n_jobs", [1, 2, 4])
    def test_cpu_map_keeps_order(self, n_jobs):
        assert cpu_map(_square, list(range(10)), n_jobs=n_jobs) == [
            k * k for k in range(10)
        ]

    @pytest.mark.parametrize(
        "n_items, chunk_size, expected",
        [(10, 4, [4, 4, 2]), (8, 4, [4, 4]), (3, 10, [3]), (0, 5, [])],
    )
    def test_chunk_sizes(self, n_items, chunk_size, expected):
        assert chunk_sizes(n_items, chunk_size) == expected

    def test_chunk_sizes_rejects(self):
        with pytest.raises(ValueError):
            chunk_sizes(10, 0)

    def test_streams_depend_only_on_seed(self):
        first = [g.random(3) for g in spawn_generators(42, 3)]
        again = [g.random(3) for g in spawn_generators(42, 5)[:3]]
        for a, b in zip(first, again):
            np.testing.assert_array_equal(a, b)
        assert not np.array_equal(first[0], first[1])
        assert isinstance(spawn_generators(1, 1)[0].bit_generator, np.random.Philox)
