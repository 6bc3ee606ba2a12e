"""Ground states and their particle and hole excitations."""
from __future__ import absolute_import

from collections import namedtuple

import numpy as np

from ..automaton import LayerConfig, half_step
from ..exceptions import ConfigurationError
from ..lattice import check_n_x

VACUA = ("empty", "filled", "half_A_red", "half_A_green", "half_B_1", "half_B_2")
COLORS = ("R", "I")
INSERTION_KINDS = ("particle", "hole")

Insertion = namedtuple("Insertion", ["site", "color", "kind"])


def vacuum_occupations(name, n_x):
    """(n_R, n_I) of a named ground state at t = 0 of an even-start
    trajectory.

    half_A_* are uniform in color and alternate R/G every half-step,
    half_B_1 (R, G, R, G, ...) and half_B_2 (G, R, G, R, ...) are static.
    """
    n_x = check_n_x(n_x)
    ones = np.ones(n_x, dtype=np.uint8)
    zeros = np.zeros(n_x, dtype=np.uint8)
    alternating = (np.arange(n_x) % 2 == 0).astype(np.uint8)
    patterns = {
        "empty": (zeros, zeros),
        "filled": (ones, ones),
        "half_A_red": (ones, zeros),
        "half_A_green": (zeros, ones),
        "half_B_1": (alternating, 1 - alternating),
        "half_B_2": (1 - alternating, alternating),
    }
    if name not in patterns:
        raise ConfigurationError(
            "unknown vacuum {!r}, expected one of {}".format(name, VACUA)
        )
    return patterns[name]


def vacuum_layer(name, n_x, phase=0):
    """Ground state layer, phase 1 being the state one even half-step
    later."""
    layer = LayerConfig.from_occupations(*vacuum_occupations(name, n_x))
    if phase not in (0, 1):
        raise ConfigurationError("vacuum phase must be 0 or 1, got {!r}".format(phase))
    if phase:
        layer = half_step(layer, "even")
    return layer


def apply_insertions(layer, insertions):
    """Add particles or remove them (holes) at listed sites.

    Parameters
    -----------
    layer : LayerConfig

    insertions : iterable of Insertion or (site, color, kind)

    Returns
    -------
    LayerConfig
    """
    n_r, n_i = (np.array(a) for a in layer.occupations())
    seen = set()
    for insertion in insertions:
        site, color, kind = Insertion(*insertion)
        valid = isinstance(site, (int, np.integer)) and not isinstance(site, bool)
        if not valid or not 0 <= site < layer.n_x:
            raise ConfigurationError(
                "insertion site {!r} outside [0, {})".format(site, layer.n_x)
            )
        if color not in COLORS:
            raise ConfigurationError("insertion color must be R or I, got {!r}".format(color))
        if kind not in INSERTION_KINDS:
            raise ConfigurationError(
                "insertion kind must be particle or hole, got {!r}".format(kind)
            )
        if (site, color) in seen:
            raise ConfigurationError(
                "conflicting insertions at site {} color {}".format(site, color)
            )
        seen.add((site, color))

        target = n_r if color == "R" else n_i
        if kind == "particle":
            if target[site]:
                raise ConfigurationError(
                    "site {} already holds a {} particle".format(site, color)
                )
            target[site] = 1
        else:
            if not target[site]:
                raise ConfigurationError(
                    "no {} particle at site {} to remove".format(color, site)
                )
            target[site] = 0
    return LayerConfig.from_occupations(n_r, n_i)
