import numpy as np
import pytest

from thirring_automaton.automaton import evolve
from thirring_automaton.scenarios import (
    apply_insertions,
    classify_trajectory,
    classify_vacuum,
    soliton_light_cone,
    vacuum_layer,
)
from thirring_automaton.scenarios.classify import b_region_edges


class TestClassify(object):
    @pytest.mark.parametrize(
        "name, label",
        [("half_A_red", "A"), ("half_B_1", "B"), ("half_B_2", "B"), ("empty", "defect")],
    )
    def test_uniform_vacua(self, name, label):
        labels = classify_trajectory(evolve(vacuum_layer(name, 8), 4))
        assert np.all(labels[:-1] == label)
        assert np.all(labels[-1] == "boundary")

    def test_non_vacuum_neighbour(self):
        layer = apply_insertions(vacuum_layer("half_B_1", 6), [(3, "R", "particle")])
        trajectory = evolve(layer, 2)
        assert classify_vacuum(trajectory, 0, 3) == "defect"
        assert classify_vacuum(trajectory, 0, 2) == "non-vacuum"
        assert classify_vacuum(trajectory, 0, 8) == "non-vacuum"
        assert classify_vacuum(trajectory, 2, 0) == "boundary"

    @pytest.mark.parametrize(
        "insertion", [(20, "R", "particle"), (20, "I", "hole"), (12, "R", "particle")]
    )
    def test_soliton_light_cone(self, insertion):
        n_x = 40
        layer = apply_insertions(vacuum_layer("half_A_green", n_x), [insertion])
        trajectory = evolve(layer, 39)
        expected = soliton_light_cone(len(trajectory), n_x, insertion[0])
        np.testing.assert_array_equal(classify_trajectory(trajectory), expected)

    @pytest.mark.parametrize(
        "n_x, x0, kind", [(4, 2, "particle"), (8, 0, "hole"), (12, 6, "particle"), (14, 8, "hole")]
    )
    def test_soliton_light_cone_wraps(self, n_x, x0, kind):
        color = "R" if kind == "particle" else "I"
        layer = apply_insertions(vacuum_layer("half_A_green", n_x), [(x0, color, kind)])
        trajectory = evolve(layer, 5 * n_x)
        expected = soliton_light_cone(len(trajectory), n_x, x0)
        np.testing.assert_array_equal(classify_trajectory(trajectory), expected)

    def test_fronts_meet_and_vacuum_a_returns(self):
        labels = soliton_light_cone(40, 40, 20)
        assert labels[20, 0] == "defect"
        assert labels[20, 2] == "B"
        assert labels[22, 0] == "A"
        assert labels[38, 18] == "defect"
        assert labels[38, 20] == "B"
        assert list(labels[38, 21:24]) == ["non-vacuum", "A", "A"]

    def test_b_region_grows(self):
        labels = soliton_light_cone(10, 40, 20)
        edges = b_region_edges(labels)
        assert edges[0] is None
        assert edges[1] == (19, 19)
        assert edges[2] == (18, 20)
        assert edges[5] == (15, 23)
        assert edges[9] is None
