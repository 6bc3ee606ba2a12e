"""Constrained generalized Ising model equivalent to the automaton.

Every occupation bit n of a spacetime site is read as an Ising spin
s = 2 n - 1.  The weight of a spacetime configuration is exp(-S) with
S = sum over the alternating block tiling of a block-local action L.  L
vanishes on automaton transitions and costs at least 2 beta otherwise, so
the step evolution operator exp(-L) tends to the automaton's block rule as
beta -> infinity.

A BlockTransition stores the block at t in BlockState layout and the block
at t + eps in primed indexing: primed site 1 is the upper right corner,
primed site 2 the upper left corner.  In primed indexing the diagonal
transport of free fermions is the identity on the 4 block bits.
"""
from __future__ import absolute_import

from collections import namedtuple

import numpy as np
from scipy.special import logsumexp
from sklearn.base import BaseEstimator

from .automaton import INTERACTING_RULE, NIBBLE_SWAP, LayerConfig, evolve
from .exceptions import PreconditionError, StateSpaceTooLargeError
from .lattice import block_partition, check_n_x, check_parity, parity_at
from .operators import DenseOperator
from .profiling.estimators import batch_means

SAMPLER_BOUNDARY = "fixed-initial/free-final"
MAX_ENUMERATION_BITS = 16


class BlockTransition(namedtuple("BlockTransition", ["tau_in", "tau_out"])):
    """Pair of block states, tau_out in primed indexing.

    Parameters
    -----------
    tau_in : int in [0, 16)

    tau_out : int in [0, 16)
    """

    __slots__ = ()

    def __new__(cls, tau_in, tau_out):
        if not (0 <= tau_in < 16 and 0 <= tau_out < 16):
            raise PreconditionError("block states must be in [0, 16)")
        return super(BlockTransition, cls).__new__(cls, int(tau_in), int(tau_out))

    @classmethod
    def from_physical(cls, tau_in, tau_out_physical):
        """From the upper block in BlockState layout (left, right)."""
        return cls(tau_in, int(NIBBLE_SWAP[tau_out_physical]))

    @property
    def tau_out_physical(self):
        return int(NIBBLE_SWAP[self.tau_out])


def _bits(state):
    # (n_1R, n_1I, n_2R, n_2I)
    return state & 1, (state >> 1) & 1, (state >> 2) & 1, (state >> 3) & 1


def l_free(tr, beta):
    """2 beta per occupation bit differing from diagonal transport."""
    return 2.0 * beta * bin(tr.tau_in ^ tr.tau_out).count("1")


def projector_single(n_r, n_i):
    """1 on singly occupied sites, 0 on empty or doubly occupied ones."""
    return n_r * (1 - n_i) + n_i * (1 - n_r)


def _l2(tr):
    n1r, n1i, n2r, n2i = _bits(tr.tau_in)
    p1r, p1i, p2r, p2i = _bits(tr.tau_out)
    return (p1r * p2i - p1i * p2r) * (n1r * n2i - n1i * n2r) + (
        p1r * p2r - p1i * p2i
    ) * (n1r * n2r - n1i * n2i)


def l_int(tr, beta):
    """8 beta P'_1 P'_2 P_1 P_2 L2: active only between blocks of two
    single particles."""
    n1r, n1i, n2r, n2i = _bits(tr.tau_in)
    p1r, p1i, p2r, p2i = _bits(tr.tau_out)
    singles = (
        projector_single(n1r, n1i)
        * projector_single(n2r, n2i)
        * projector_single(p1r, p1i)
        * projector_single(p2r, p2i)
    )
    return 8.0 * beta * singles * _l2(tr)


def block_action(tr, beta):
    return l_free(tr, beta) + l_int(tr, beta)


def action_table(beta):
    """16x16 array of block_action indexed [tau_in, tau_out_physical]."""
    table = np.empty((16, 16))
    for tau_in in range(16):
        for tau_out in range(16):
            table[tau_in, tau_out] = block_action(
                BlockTransition.from_physical(tau_in, tau_out), beta
            )
    return table


def limit_step_operator(beta):
    """exp(-L) as a block operator, S[tau_out, tau_in] like from_block_rule."""
    return DenseOperator(np.exp(-action_table(beta)).T)


def automaton_transitions():
    """Physical (tau_in, tau_out) pairs of the interacting rule."""
    return [(tau, int(INTERACTING_RULE[tau])) for tau in range(16)]


# spacetime fields -------------------------------------------------------------


class IsingField(object):
    """Occupation bits of T layers, layer 0 being the fixed initial layer.

    Parameters
    -----------
    occupations : array of uint8, shape (T, n_x, 2)
        Last axis is (n_R, n_I).

    start_parity : "even" or "odd" (default="even")
        Parity of the blocks between layers 0 and 1.
    """

    def __init__(self, occupations, start_parity="even"):
        occupations = np.asarray(occupations, dtype=np.uint8)
        assert occupations.ndim == 3 and occupations.shape[2] == 2
        check_n_x(occupations.shape[1])
        if np.any(occupations > 1):
            raise PreconditionError("occupation bits must be 0 or 1")
        self.occupations = occupations
        self.start_parity = check_parity(start_parity)

    @property
    def T(self):
        return self.occupations.shape[0]

    @property
    def n_x(self):
        return self.occupations.shape[1]

    @property
    def spins(self):
        return 2 * self.occupations.astype(np.int8) - 1

    @classmethod
    def from_trajectory(cls, trajectory):
        n_r, n_i = trajectory.occupations()
        return cls(np.stack([n_r, n_i], axis=-1), trajectory.start_parity)

    @classmethod
    def from_spins(cls, spins, start_parity="even"):
        return cls((np.asarray(spins) + 1) // 2, start_parity)


def _block_sites(n_x, T, start_parity):
    """Left and right sites of the blocks of every row, shape (T - 1, n_x / 2)."""
    lefts, rights = [], []
    for t in range(T - 1):
        pairs = block_partition(parity_at(start_parity, t), n_x).pairs
        lefts.append([pair[0] for pair in pairs])
        rights.append([pair[1] for pair in pairs])
    return np.array(lefts, dtype=np.intp), np.array(rights, dtype=np.intp)


def block_actions(codes, start_parity, table):
    """Action of every block for site codes (..., T, n_x) with code
    n_R | n_I << 1; returns shape (..., T - 1, n_x / 2)."""
    T, n_x = codes.shape[-2:]
    lefts, rights = _block_sites(n_x, T, start_parity)
    rows = np.arange(T - 1)[:, np.newaxis]
    tau_in = codes[..., rows, lefts] | (codes[..., rows, rights] << 2)
    tau_out = codes[..., rows + 1, lefts] | (codes[..., rows + 1, rights] << 2)
    return table[tau_in, tau_out]


def _site_codes(occupations):
    occupations = np.asarray(occupations, dtype=np.int64)
    return occupations[..., 0] | (occupations[..., 1] << 1)


def total_action(field, beta):
    """S = sum of block actions over the alternating tiling."""
    if field.T < 2:
        return 0.0
    actions = block_actions(
        _site_codes(field.occupations), field.start_parity, action_table(beta)
    )
    return float(np.sum(actions))


def violation_count(field):
    """Number of blocks whose transition is not an automaton transition."""
    if field.T < 2:
        return 0
    violating = block_actions(
        _site_codes(field.occupations), field.start_parity, action_table(1.0) > 0
    )
    return int(np.count_nonzero(violating))


# exact enumeration ----------------------------------------------------------

BoltzmannEnumeration = namedtuple(
    "BoltzmannEnumeration",
    ["probabilities", "actions", "violations", "violation_density", "particle_density", "n_blocks"],
)


def _free_codes(initial, T):
    """Site codes (2**k, T, n_x) of every configuration of the free layers.

    Configuration c holds layer t (t >= 1) in bits 2 n_x (t - 1) and up,
    each layer in LayerConfig index layout.
    """
    n_x = initial.n_x
    n_free_bits = 2 * n_x * (T - 1)
    if n_free_bits > MAX_ENUMERATION_BITS:
        raise StateSpaceTooLargeError(
            "enumeration over 2**{} configurations exceeds 2**{}".format(
                n_free_bits, MAX_ENUMERATION_BITS
            )
        )
    configs = np.arange(2 ** n_free_bits, dtype=np.int64)
    sites = np.arange(n_x)
    codes = np.empty((configs.shape[0], T, n_x), dtype=np.int64)
    n_r, n_i = initial.occupations()
    codes[:, 0, :] = n_r.astype(np.int64) | (n_i.astype(np.int64) << 1)
    for t in range(1, T):
        shift = 2 * n_x * (t - 1) + 2 * sites
        codes[:, t, :] = (configs[:, np.newaxis] >> shift) & 3
    return codes


def enumerate_boltzmann(initial, T, beta, start_parity="even"):
    """Exact Boltzmann weights over all configurations of layers 1..T-1.

    Parameters
    -----------
    initial : LayerConfig
        Fixed layer 0.

    T : int
        Number of layers including layer 0; 2 n_x (T - 1) <= 16.

    beta : float

    Returns
    -------
    BoltzmannEnumeration: probabilities and actions per configuration
    index, violating blocks per configuration, the exact expected fraction
    of violating blocks, the exact mean occupation of the free layers and
    the number of blocks.
    """
    if T < 2:
        raise PreconditionError("need at least two layers, got T={}".format(T))
    check_parity(start_parity)
    codes = _free_codes(initial, T)
    table = action_table(beta)
    actions = block_actions(codes, start_parity, table)
    violating = block_actions(codes, start_parity, action_table(1.0) > 0)
    violations = np.count_nonzero(violating, axis=(-2, -1))
    total = actions.sum(axis=(-2, -1))
    log_weights = -total
    probabilities = np.exp(log_weights - logsumexp(log_weights))
    n_blocks = (T - 1) * (initial.n_x // 2)
    density = float(np.dot(probabilities, violations)) / n_blocks
    free = codes[:, 1:, :]
    occupied = ((free & 1) + (free >> 1)).sum(axis=(-2, -1)) / float(2 * free[0].size)
    particle_density = float(np.dot(probabilities, occupied))
    return BoltzmannEnumeration(
        probabilities, total, violations, density, particle_density, n_blocks
    )


# Metropolis sampling --------------------------------------------------------


class MetropolisSampler(BaseEstimator):
    """Single-spin-flip Metropolis sampler of exp(-S) with a fixed initial
    layer and a free final layer.

    Parameters
    -----------
    beta : float (default=2.0)

    T : int (default=4)
        Number of layers including the fixed layer 0.

    n_sweeps : int (default=2000)
        Measured sweeps after burn-in.

    n_burn : int (default=200)

    n_batches : int (default=20)
        Batches for the batch-means error bars.

    start_parity : "even" or "odd" (default="even")

    seed : int or None (default=None)

    record_configurations : bool (default=False)
        Count visits per configuration index (2 n_x (T - 1) <= 24).

    verbose : bool or int (default=False)

    Attributes
    ----------
    violation_density_, violation_stderr_ : float
        Fraction of blocks off the automaton rule.

    particle_density_, particle_stderr_ : float
        Mean occupation per spin over the free layers.

    acceptance_rate_ : float

    configuration_counts_ : array or None
        Visits per configuration index over the measured sweeps.

    configuration_trace_ : array or None
        Configuration index after every measured sweep.
    """

    def __init__(
        self,
        beta=2.0,
        T=4,
        n_sweeps=2000,
        n_burn=200,
        n_batches=20,
        start_parity="even",
        seed=None,
        record_configurations=False,
        verbose=False,
    ):
        self.beta = beta
        self.T = T
        self.n_sweeps = n_sweeps
        self.n_burn = n_burn
        self.n_batches = n_batches
        self.start_parity = start_parity
        self.seed = seed
        self.record_configurations = record_configurations
        self.verbose = verbose

    def _site_blocks(self, n_x):
        """For every site of every layer the (row, left, right) of the
        blocks reading it: the row below (as output) and the row above (as
        input)."""
        lefts, rights = _block_sites(n_x, self.T, self.start_parity)
        touching = {}
        for row in range(self.T - 1):
            for left, right in zip(lefts[row], rights[row]):
                for layer in (row, row + 1):
                    for site in (left, right):
                        touching.setdefault((layer, site), []).append((row, left, right))
        return touching

    def fit(self, initial):
        """Run the chain starting from the automaton trajectory of initial.

        Parameters
        -----------
        initial : LayerConfig
        """
        if not isinstance(initial, LayerConfig):
            raise PreconditionError("initial must be a LayerConfig")
        if self.T < 2:
            raise PreconditionError("need at least two layers, got T={}".format(self.T))
        check_parity(self.start_parity)
        n_x = initial.n_x
        n_free_bits = 2 * n_x * (self.T - 1)
        if self.record_configurations and n_free_bits > 24:
            raise StateSpaceTooLargeError("cannot record 2**{} configurations".format(n_free_bits))

        table = action_table(self.beta)
        violation_table = action_table(1.0) > 0
        trajectory = evolve(initial, self.T - 1, self.start_parity)
        n_r, n_i = trajectory.occupations()
        codes = n_r.astype(np.int64) | (n_i.astype(np.int64) << 1)
        touching = self._site_blocks(n_x)
        n_blocks = (self.T - 1) * (n_x // 2)

        def local_action(codes, blocks):
            return sum(
                table[
                    codes[row, left] | (codes[row, right] << 2),
                    codes[row + 1, left] | (codes[row + 1, right] << 2),
                ]
                for row, left, right in blocks
            )

        self.seed_ = (
            self.seed if self.seed is not None else int(np.random.SeedSequence().entropy)
        )
        generator = np.random.Generator(np.random.Philox(self.seed_))
        spins = [(t, x, c) for t in range(1, self.T) for x in range(n_x) for c in (0, 1)]

        violations, particles = [], []
        trace = [] if self.record_configurations else None
        accepted = 0
        for sweep in range(self.n_burn + self.n_sweeps):
            # random scan
            picks = generator.integers(len(spins), size=len(spins))
            uniforms = generator.random(len(spins))
            for k, pick in enumerate(picks):
                t, x, c = spins[pick]
                blocks = touching[(t, x)]
                before = local_action(codes, blocks)
                codes[t, x] ^= 1 << c
                delta = local_action(codes, blocks) - before
                if delta <= 0 or uniforms[k] < np.exp(-delta):
                    accepted += 1
                else:
                    codes[t, x] ^= 1 << c

            if sweep < self.n_burn:
                continue
            violating = np.count_nonzero(
                block_actions(codes, self.start_parity, violation_table)
            )
            violations.append(violating / float(n_blocks))
            free = codes[1:]
            particles.append(
                (np.count_nonzero(free & 1) + np.count_nonzero(free & 2)) / float(2 * free.size)
            )
            if trace is not None:
                trace.append(self._configuration_index(codes))
            if self.verbose and (sweep - self.n_burn + 1) % max(1, self.n_sweeps // 10) == 0:
                print(
                    "sweep {}/{}: violation density {:.4f}".format(
                        sweep - self.n_burn + 1, self.n_sweeps, violations[-1]
                    )
                )

        self.violation_density_, self.violation_stderr_ = (
            float(v) for v in batch_means(violations, self.n_batches)
        )
        self.particle_density_, self.particle_stderr_ = (
            float(v) for v in batch_means(particles, self.n_batches)
        )
        self.acceptance_rate_ = accepted / float(len(spins) * (self.n_burn + self.n_sweeps))
        if trace is not None:
            self.configuration_trace_ = np.array(trace, dtype=np.int64)
            self.configuration_counts_ = np.bincount(
                self.configuration_trace_, minlength=2 ** n_free_bits
            )
        else:
            self.configuration_trace_ = None
            self.configuration_counts_ = None
        self.boundary_ = SAMPLER_BOUNDARY
        self.is_fitted_ = True
        return self

    @staticmethod
    def _configuration_index(codes):
        index = 0
        n_x = codes.shape[1]
        for t in range(1, codes.shape[0]):
            for x in range(n_x):
                index |= int(codes[t, x]) << (2 * n_x * (t - 1) + 2 * x)
        return index


def frequency_z_scores(trace, probabilities, groups, n_batches=20):
    """Deviation of sampled from exact group frequencies in units of the
    standard error.

    Parameters
    -----------
    trace : array of int
        Configuration index per measured sweep (configuration_trace_).

    probabilities : array
        Exact probability per configuration index.

    groups : array of int
        Group label per configuration index; labels 0..k-1.

    The error of each group is the larger of the batch-means error of its
    indicator series and the binomial error of independent draws.
    """
    trace = np.asarray(trace, dtype=np.int64)
    groups = np.asarray(groups, dtype=np.int64)
    n_groups = int(groups.max()) + 1
    exact = np.bincount(groups, weights=probabilities, minlength=n_groups)
    labels = groups[trace]
    indicators = (labels[:, np.newaxis] == np.arange(n_groups)).astype(np.float64)
    sampled, stderr = batch_means(indicators, n_batches)
    floor = np.sqrt(exact * (1.0 - exact) / trace.shape[0])
    sigma = np.maximum(np.maximum(stderr, floor), 1e-12)
    return np.abs(sampled - exact) / sigma


def layer_groups(n_x, T):
    """Group labels by the state of a single free layer, one array over all
    configuration indices per layer 1..T-1."""
    n_layer_bits = 2 * n_x
    index = np.arange(2 ** (n_layer_bits * (T - 1)), dtype=np.int64)
    return [
        (index >> (n_layer_bits * (t - 1))) & (2 ** n_layer_bits - 1) for t in range(1, T)
    ]


IsingSample = namedtuple(
    "IsingSample",
    [
        "violation_density",
        "violation_stderr",
        "particle_density",
        "particle_stderr",
        "acceptance_rate",
        "seed",
    ],
)


def metropolis_sample(initial, T, beta, sweeps, seed=None, **kwargs):
    """Functional form of MetropolisSampler."""
    sampler = MetropolisSampler(beta=beta, T=T, n_sweeps=sweeps, seed=seed, **kwargs)
    sampler.fit(initial)
    return IsingSample(
        sampler.violation_density_,
        sampler.violation_stderr_,
        sampler.particle_density_,
        sampler.particle_stderr_,
        sampler.acceptance_rate_,
        sampler.seed_,
    )
