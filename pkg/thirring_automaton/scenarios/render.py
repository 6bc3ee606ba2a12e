"""ASCII and PPM renderings of spacetime trajectories.

Time runs upward: the last layer is the top row.
"""
from __future__ import absolute_import

import numpy as np

GLYPHS = ".RG#"

# empty, R, I (green), RI
PALETTE = np.array(
    [[255, 255, 255], [200, 30, 30], [30, 150, 40], [40, 40, 40]], dtype=np.uint8
)

FORMATS = ("ascii", "ppm")


def _codes(trajectory):
    n_r, n_i = trajectory.occupations()
    return (n_r | (n_i << 1))[::-1]


def render_ascii(trajectory):
    return "".join(
        "".join(GLYPHS[code] for code in row) + "\n" for row in _codes(trajectory)
    )


def render_ppm(trajectory, scale=4):
    """Binary PPM (P6), scale x scale pixels per cell."""
    if scale < 1:
        raise ValueError("scale must be positive, got {}".format(scale))
    pixels = PALETTE[_codes(trajectory)]
    pixels = np.repeat(np.repeat(pixels, scale, axis=0), scale, axis=1)
    height, width = pixels.shape[:2]
    header = "P6\n{} {}\n255\n".format(width, height).encode("ascii")
    return header + pixels.tobytes()


def render_spacetime(trajectory, fmt="ascii", scale=4):
    """Render as bytes in one of FORMATS."""
    if fmt == "ascii":
        return render_ascii(trajectory).encode("ascii")
    if fmt == "ppm":
        return render_ppm(trajectory, scale)
    raise ValueError("format must be one of {}, got {!r}".format(FORMATS, fmt))
