"""Diagonal observables evaluated on occupation numbers.

Every observable has the signature ``f(n_r, n_i, m_t)`` where n_r and n_i
are occupation arrays of shape (..., n_x) and m_t is the time index (only
its parity matters).  The result has shape (...).
"""
from __future__ import absolute_import

import re

import numpy as np

from .lattice import right_mover_sites


def particle_count(n_r, n_i, m_t=0):
    return np.sum(n_r, axis=-1, dtype=np.int64) + np.sum(n_i, axis=-1, dtype=np.int64)


def red_count(n_r, n_i, m_t=0):
    return np.sum(n_r, axis=-1, dtype=np.int64)


def green_count(n_r, n_i, m_t=0):
    return np.sum(n_i, axis=-1, dtype=np.int64)


def right_mover_count(n_r, n_i, m_t=0):
    """Particles on the sublattice with m_t + m_x even."""
    mask = right_mover_sites(m_t, np.shape(n_r)[-1])
    return particle_count(np.compress(mask, n_r, axis=-1), np.compress(mask, n_i, axis=-1))


def left_mover_count(n_r, n_i, m_t=0):
    mask = ~right_mover_sites(m_t, np.shape(n_r)[-1])
    return particle_count(np.compress(mask, n_r, axis=-1), np.compress(mask, n_i, axis=-1))


def red_parity(n_r, n_i, m_t=0):
    return red_count(n_r, n_i) % 2


def green_parity(n_r, n_i, m_t=0):
    return green_count(n_r, n_i) % 2


def site_occupation(x, color):
    """Observable n_color(x) for color "R" or "I"."""

    def _site_occupation(n_r, n_i, m_t=0):
        source = n_r if color == "R" else n_i
        return np.asarray(source)[..., x].astype(np.int64)

    _site_occupation.__name__ = "n_{}[{}]".format(color, x)
    return _site_occupation


OBSERVABLES = {
    "particle_count": particle_count,
    "red_count": red_count,
    "green_count": green_count,
    "right_movers": right_mover_count,
    "left_movers": left_mover_count,
    "red_parity": red_parity,
    "green_parity": green_parity,
}

CONSERVED = ("right_movers", "left_movers", "red_parity", "green_parity")

_SITE_PATTERN = re.compile(r"^n_(R|I)\[(\d+)\]$")


def site_index(name):
    """Site of an ``n_R[x]`` / ``n_I[x]`` observable name, None for other names."""
    match = _SITE_PATTERN.match(name)
    return int(match.group(2)) if match else None


def get_observable(name):
    """Look up an observable by name.

    Besides the keys of OBSERVABLES, names of the form ``n_R[x]`` and
    ``n_I[x]`` select the occupation of one site.
    """
    if name in OBSERVABLES:
        return OBSERVABLES[name]
    match = _SITE_PATTERN.match(name)
    if match:
        return site_occupation(int(match.group(2)), match.group(1))
    raise ValueError(
        "unknown observable {!r}, expected one of {} or n_R[x] / n_I[x]".format(
            name, sorted(OBSERVABLES)
        )
    )
