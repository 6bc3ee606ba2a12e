import os

import pytest

from thirring_automaton.automaton import LayerConfig, Trajectory
from thirring_automaton.scenarios import (
    builtin_config,
    compute_scenario,
    render_ascii,
    render_ppm,
    render_spacetime,
)

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "..", "tests", "data")


class TestRender(object):
    def _trajectory(self):
        with open(os.path.join(DATA_DIR, "red_green_nx4.csv")) as fileobj:
            full = Trajectory.from_csv(fileobj)
        return Trajectory(full.layers[:3])

    def test_ascii_latest_row_on_top(self):
        assert render_ascii(self._trajectory()) == ".RG.\n.RG.\nR..G\n"

    def test_ascii_glyphs(self):
        layer = LayerConfig.from_occupations([1, 0, 1, 0], [0, 1, 1, 0])
        assert render_ascii(Trajectory([layer])) == "RG#.\n"

    def test_ppm(self):
        image = render_ppm(self._trajectory(), scale=2)
        header = b"P6\n8 6\n255\n"
        assert image.startswith(header)
        assert len(image) == len(header) + 8 * 6 * 3
        # top left pixel: empty cell of the last layer
        assert image[len(header) : len(header) + 3] == b"\xff\xff\xff"

    def test_spacetime_formats(self):
        trajectory = self._trajectory()
        assert render_spacetime(trajectory, "ascii") == b".RG.\n.RG.\nR..G\n"
        assert render_spacetime(trajectory, "ppm", 1).startswith(b"P6\n4 3\n")
        with pytest.raises(ValueError):
            render_spacetime(trajectory, "png")
        with pytest.raises(ValueError):
            render_ppm(trajectory, 0)

    @pytest.mark.parametrize("name", ["color_scattering", "soliton"])
    @pytest.mark.parametrize("fmt", ["ascii", "ppm"])
    def test_repeated_renders_identical(self, name, fmt):
        first = compute_scenario(builtin_config(name)).trajectory
        second = compute_scenario(builtin_config(name)).trajectory
        assert render_spacetime(first, fmt) == render_spacetime(second, fmt)
