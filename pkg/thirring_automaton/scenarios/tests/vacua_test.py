import numpy as np
import pytest

from thirring_automaton.automaton import LayerConfig, evolve, half_step
from thirring_automaton.exceptions import ConfigurationError
from thirring_automaton.scenarios import VACUA, Insertion, apply_insertions, vacuum_layer
from thirring_automaton.scenarios.vacua import vacuum_occupations


class TestVacua(object):
    @pytest.mark.parametrize("name", ["empty", "filled", "half_B_1", "half_B_2"])
    def test_static(self, name):
        layer = vacuum_layer(name, 8)
        assert all(step == layer for step in evolve(layer, 6))

    def test_half_a_alternates(self):
        red, green = vacuum_layer("half_A_red", 6), vacuum_layer("half_A_green", 6)
        assert half_step(red, "even") == green
        assert half_step(green, "odd") == red
        assert vacuum_layer("half_A_red", 6, phase=1) == green

    def test_half_b_pattern(self):
        n_r, n_i = vacuum_occupations("half_B_2", 4)
        np.testing.assert_array_equal(n_r, [0, 1, 0, 1])
        np.testing.assert_array_equal(n_i, [1, 0, 1, 0])

    @pytest.mark.parametrize("name", VACUA)
    def test_half_filling(self, name):
        layer = vacuum_layer(name, 10)
        expected = {"empty": 0, "filled": 20}.get(name, 10)
        assert layer.particle_count() == expected

    def test_unknown(self):
        with pytest.raises(ConfigurationError):
            vacuum_layer("half_C", 4)
        with pytest.raises(ConfigurationError):
            vacuum_layer("empty", 4, phase=2)


class TestInsertions(object):
    def test_particle_and_hole(self):
        layer = vacuum_layer("half_A_green", 6)
        changed = apply_insertions(
            layer, [Insertion(2, "R", "particle"), (4, "I", "hole")]
        )
        n_r, n_i = changed.occupations()
        np.testing.assert_array_equal(n_r, [0, 0, 1, 0, 0, 0])
        np.testing.assert_array_equal(n_i, [1, 1, 1, 1, 0, 1])

    def test_numpy_site(self):
        layer = apply_insertions(LayerConfig.empty(4), [(np.int64(1), "I", "particle")])
        assert layer.particle_count() == 1

    @pytest.mark.parametrize(
        "insertions",
        [
            [(6, "R", "particle")],
            [(-1, "R", "particle")],
            [(True, "R", "particle")],
            [(1.0, "R", "particle")],
            [(1, "G", "particle")],
            [(1, "R", "antiparticle")],
            [(1, "I", "particle")],
            [(1, "R", "hole")],
            [(1, "R", "particle"), (1, "R", "particle")],
        ],
    )
    def test_rejects(self, insertions):
        with pytest.raises(ConfigurationError):
            apply_insertions(vacuum_layer("half_A_green", 6), insertions)
