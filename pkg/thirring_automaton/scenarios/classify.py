"""Vacuum classification of spacetime cells.

The cell (t, x) is judged from the 2x2 window (t, x), (t, x+1), (t+1, x),
(t+1, x+1) with x periodic:

    boundary    the window leaves the trajectory (t + 1 >= T)
    defect      site (t, x) is empty or doubly occupied
    non-vacuum  another window site is empty or doubly occupied
    A           both rows uniform in color, the rows of different color
    B           both rows alternate in color and are equal
    non-vacuum  anything else
"""
from __future__ import absolute_import

import numpy as np

LABELS = ("A", "B", "defect", "non-vacuum", "boundary")


def _site_codes(trajectory):
    n_r, n_i = trajectory.occupations()
    return n_r.astype(np.int8) | (n_i.astype(np.int8) << 1)


def _label(codes, t, x):
    n_t, n_x = codes.shape
    if t + 1 >= n_t:
        return "boundary"
    right = (x + 1) % n_x
    window = codes[[t, t, t + 1, t + 1], [x, right, x, right]]
    if codes[t, x] in (0, 3):
        return "defect"
    if np.any((window == 0) | (window == 3)):
        return "non-vacuum"
    lower, upper = window[:2], window[2:]
    if lower[0] == lower[1] and upper[0] == upper[1] and lower[0] != upper[0]:
        return "A"
    if lower[0] != lower[1] and np.array_equal(lower, upper):
        return "B"
    return "non-vacuum"


def classify_vacuum(trajectory, t, x):
    """Label of the cell (t, x), one of LABELS."""
    return _label(_site_codes(trajectory), t, x % trajectory.n_x)


def classify_trajectory(trajectory):
    """Labels of every cell, array of str with shape (len(trajectory), n_x)."""
    codes = _site_codes(trajectory)
    n_t, n_x = codes.shape
    labels = np.empty((n_t, n_x), dtype="<U10")
    for t in range(n_t):
        for x in range(n_x):
            labels[t, x] = _label(codes, t, x)
    return labels


def _lifts_in_cone(d, t, n_x):
    """Number of integers k with -t <= d + k n_x <= t - 2."""
    return max((t - 2 - d) // n_x + (t + d) // n_x + 1, 0)


def soliton_light_cone(n_t, n_x, x0):
    """Labels expected after inserting one particle (or hole) at even site
    x0 of a half_A vacuum.

    With d = (x - x0) mod n_x: the defect line runs along d = t and the
    cells d in {t - 1, t + 1, -t - 1} see the defect (all mod n_x).  Every
    other cell is vacuum B when an odd number of its lifts d + k n_x lie in
    the cone -t <= d + k n_x <= t - 2, vacuum A otherwise: once the two
    fronts have met around the ring, cells crossed by both are back in A.
    """
    labels = np.empty((n_t, n_x), dtype="<U10")
    for t in range(n_t):
        for x in range(n_x):
            d = (x - x0) % n_x
            if t + 1 >= n_t:
                labels[t, x] = "boundary"
            elif d == t % n_x:
                labels[t, x] = "defect"
            elif d in ((t - 1) % n_x, (t + 1) % n_x, (-t - 1) % n_x):
                labels[t, x] = "non-vacuum"
            elif _lifts_in_cone(d, t, n_x) % 2:
                labels[t, x] = "B"
            else:
                labels[t, x] = "A"
    return labels


def b_region_edges(labels):
    """Left and right edge of the B region of every row, None where a row
    has no B cell.  The left edge traces the A/B interface on the left
    flank of a light cone."""
    edges = []
    for row in labels:
        cells = np.flatnonzero(row == "B")
        edges.append((int(cells[0]), int(cells[-1])) if cells.size else None)
    return edges
