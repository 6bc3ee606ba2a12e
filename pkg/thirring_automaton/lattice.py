"""Lattice geometry: site indexing, mover sublattices and the alternating
block partition of the two-dimensional (t, x) lattice.

Sites of a time layer are indexed 0..n_x-1 with x = index * epsilon and
periodic boundary conditions in x.  The lattice spacing epsilon is carried
as a symbolic unit and fixed to 1.
"""
from __future__ import absolute_import

from collections import namedtuple

import numpy as np

from .exceptions import InvalidLatticeError

PARITIES = ("even", "odd")
N_COLORS = 2
EPSILON = 1
MAX_EXACT_BITS = 24


def check_n_x(n_x):
    """Validate a site count and return it as int."""
    if isinstance(n_x, (bool, np.bool_)) or not isinstance(n_x, (int, np.integer)):
        raise InvalidLatticeError("n_x must be an integer, got {!r}".format(n_x))
    if n_x < 2 or n_x % 2:
        raise InvalidLatticeError(
            "n_x must be even and at least 2, got {}".format(n_x)
        )
    return int(n_x)


def check_parity(parity):
    if parity not in PARITIES:
        raise InvalidLatticeError(
            "parity must be one of {}, got {!r}".format(PARITIES, parity)
        )
    return parity


def other_parity(parity):
    return "odd" if check_parity(parity) == "even" else "even"


def parity_at(start_parity, t):
    """Parity of the half-step applied to the layer at position t of a
    trajectory that starts with start_parity."""
    check_parity(start_parity)
    if t % 2 == 0:
        return start_parity
    return other_parity(start_parity)


def time_parity(start_parity, t):
    """m_t modulo 2 for the layer at position t.

    Even half-steps act on layers with even m_t.
    """
    return 0 if parity_at(start_parity, t) == "even" else 1


class LatticeSpec(namedtuple("LatticeSpec", ["n_x", "n_colors", "boundary", "epsilon"])):
    """Geometry of one time layer.

    Parameters
    -----------
    n_x : int
        Number of sites per layer, even and at least 2.

    n_colors : int (default=2)
        Colors per site, fixed to 2 (R, I).

    boundary : str (default="periodic")

    epsilon : int (default=1)
        Lattice spacing in symbolic units.
    """

    __slots__ = ()

    def __new__(cls, n_x, n_colors=N_COLORS, boundary="periodic", epsilon=EPSILON):
        n_x = check_n_x(n_x)
        if n_colors != N_COLORS:
            raise InvalidLatticeError("only {} colors are supported".format(N_COLORS))
        if boundary != "periodic":
            raise InvalidLatticeError("only periodic boundaries are supported")
        return super(LatticeSpec, cls).__new__(cls, n_x, n_colors, boundary, epsilon)

    @property
    def n_bits(self):
        """Occupation bits per layer."""
        return self.n_x * self.n_colors

    @property
    def n_states(self):
        return 2 ** self.n_bits

    def site(self, index):
        """Wrap an integer offset onto [0, n_x)."""
        return int(index) % self.n_x

    def check_site(self, index):
        if not 0 <= index < self.n_x:
            raise InvalidLatticeError(
                "site index {} outside [0, {})".format(index, self.n_x)
            )
        return int(index)

    def positions(self):
        return np.arange(self.n_x) * self.epsilon


BlockPartition = namedtuple("BlockPartition", ["parity", "pairs"])


def block_partition(parity, n_x):
    """Pairs of neighbouring sites updated together by one half-step.

    Even parity pairs (x, x+1) for even x, odd parity pairs (x-1, x) for
    even x with the pair (n_x-1, 0) wrapping around.

    Parameters
    -----------
    parity : "even" or "odd"

    n_x : int

    Returns
    -------
    BlockPartition
    """
    check_parity(parity)
    n_x = check_n_x(n_x)
    if parity == "even":
        pairs = tuple((x, x + 1) for x in range(0, n_x, 2))
    else:
        pairs = tuple(((x - 1) % n_x, x) for x in range(0, n_x, 2))
    return BlockPartition(parity, pairs)


def diagonal_neighbors(parity, n_x, block_index):
    """Indices of the blocks of the other partition sharing a site with
    block block_index of the given partition."""
    partition = block_partition(parity, n_x)
    other = block_partition(other_parity(parity), n_x)
    sites = set(partition.pairs[block_index])
    return [k for k, pair in enumerate(other.pairs) if sites.intersection(pair)]


def mover_class(m_t, m_x):
    """'right' on the sublattice with m_t + m_x even, 'left' otherwise."""
    return "right" if (m_t + m_x) % 2 == 0 else "left"


def right_mover_sites(m_t, n_x):
    """Boolean mask of the sites hosting right movers at time m_t."""
    n_x = check_n_x(n_x)
    return (np.arange(n_x) + m_t) % 2 == 0
