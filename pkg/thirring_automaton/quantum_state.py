"""Wave functions over the configurations of a small lattice.

A WaveFunction holds one real amplitude q_tau per layer configuration tau,
indexed by the packed layer bits read as an integer.  Probabilities are
p_tau = q_tau**2 and the evolution only relabels components, so norms are
preserved exactly.
"""
from __future__ import absolute_import

from collections import namedtuple
from functools import lru_cache

import numpy as np
from sklearn.base import BaseEstimator

from .automaton import (
    check_model,
    enumerate_layer_words,
    half_step_words,
    iter_half_steps,
    pack_occupations,
    unpack_words,
)
from .exceptions import DimensionMismatchError, PreconditionError, StateSpaceTooLargeError
from .lattice import (
    MAX_EXACT_BITS,
    check_n_x,
    check_parity,
    other_parity,
    right_mover_sites,
    time_parity,
)
from .observables import get_observable
from .profiling.estimators import RunningMoments, merge_all
from .profiling.parallel import chunk_sizes, cpu_map, spawn_generators

NORM_TOLERANCE = 1e-12


def _check_exact_size(n_x):
    n_x = check_n_x(n_x)
    if 2 * n_x > MAX_EXACT_BITS:
        raise StateSpaceTooLargeError(
            "exact wave functions need 2 n_x <= {}, got n_x={}".format(MAX_EXACT_BITS, n_x)
        )
    return n_x


@lru_cache(maxsize=32)
def _layer_map(n_x, parity, model):
    image = half_step_words(enumerate_layer_words(n_x), n_x, parity, model)[:, 0]
    image = image.astype(np.int64)
    image.setflags(write=False)
    return image


@lru_cache(maxsize=8)
def _layer_occupations(n_x):
    n_r, n_i = unpack_words(enumerate_layer_words(n_x), n_x)
    n_r.setflags(write=False)
    n_i.setflags(write=False)
    return n_r, n_i


class WaveFunction(object):
    """Real amplitudes over all 2**(2 n_x) layer configurations.

    Parameters
    -----------
    n_x : int
        2 * n_x must not exceed 24.

    amplitudes : array of float, shape (4**n_x,)

    parity : "even" or "odd" (default="even")
        Parity of the next half-step.
    """

    def __init__(self, n_x, amplitudes, parity="even"):
        n_x = _check_exact_size(n_x)
        amplitudes = np.asarray(amplitudes, dtype=np.float64)
        if amplitudes.shape != (4 ** n_x,):
            raise DimensionMismatchError(
                "expected {} amplitudes for n_x={}, got shape {}".format(
                    4 ** n_x, n_x, amplitudes.shape
                )
            )
        self.n_x = n_x
        self.amplitudes = amplitudes
        self.parity = check_parity(parity)

    @property
    def m_t(self):
        return 0 if self.parity == "even" else 1

    def norm(self):
        return float(np.sqrt(np.sum(self.amplitudes ** 2)))

    def __repr__(self):
        return "WaveFunction(n_x={}, parity={!r}, support={})".format(
            self.n_x, self.parity, int(np.count_nonzero(self.amplitudes))
        )


def from_sharp_config(layer, parity="even"):
    """q_rho = delta(rho, sigma) for the configuration sigma of layer."""
    n_x = _check_exact_size(layer.n_x)
    amplitudes = np.zeros(4 ** n_x)
    amplitudes[layer.index()] = 1.0
    return WaveFunction(n_x, amplitudes, parity)


def _check_probabilities(p, axis=None):
    p = np.asarray(p, dtype=np.float64)
    if np.any(p < 0):
        raise PreconditionError("probabilities must be nonnegative")
    deviation = np.max(np.abs(np.sum(p, axis=axis) - 1.0))
    if deviation > NORM_TOLERANCE:
        raise PreconditionError(
            "probabilities must sum to 1, off by {:.3e}".format(deviation)
        )
    return p


def from_distribution(p, signs=None, parity="even"):
    """q_tau = signs_tau * sqrt(p_tau).

    Parameters
    -----------
    p : array of float, shape (4**n_x,)
        Probability of every configuration.

    signs : array of +1/-1 or None (default=None)
        Nonnegative amplitudes when None.
    """
    p = _check_probabilities(p)
    n_x = int(round(np.log(p.shape[0]) / np.log(4)))
    if 4 ** n_x != p.shape[0]:
        raise DimensionMismatchError(
            "distribution of length {} is not over 4**n_x configurations".format(p.shape[0])
        )
    amplitudes = np.sqrt(p)
    if signs is not None:
        signs = np.asarray(signs)
        if signs.shape != p.shape or not np.all(np.abs(signs) == 1):
            raise PreconditionError("signs must hold one +1 or -1 per configuration")
        amplitudes = amplitudes * signs
    return WaveFunction(n_x, amplitudes, parity)


def product_distribution(site_probabilities):
    """Joint configuration probabilities of independent sites.

    site_probabilities has shape (n_x, 4) over the local states
    {empty, R, I, RI}.
    """
    site_probabilities = _check_probabilities(site_probabilities, axis=1)
    if site_probabilities.ndim != 2 or site_probabilities.shape[1] != 4:
        raise DimensionMismatchError("site probabilities must have shape (n_x, 4)")
    _check_exact_size(site_probabilities.shape[0])
    # site 0 occupies the lowest bits of the configuration index
    p = site_probabilities[0]
    for site in site_probabilities[1:]:
        p = np.kron(site, p)
    return p


def from_product_distribution(site_probabilities, parity="even"):
    return from_distribution(product_distribution(site_probabilities), parity=parity)


def evolve_wf(wf, n_half_steps, model="interacting"):
    """Apply n_half_steps alternating half-steps by index relabeling."""
    check_model(model)
    if n_half_steps < 0:
        raise PreconditionError("n_half_steps must be non-negative")
    amplitudes = wf.amplitudes
    parity = wf.parity
    for _ in range(n_half_steps):
        evolved = np.empty_like(amplitudes)
        evolved[_layer_map(wf.n_x, parity, model)] = amplitudes
        amplitudes = evolved
        parity = other_parity(parity)
    return WaveFunction(wf.n_x, amplitudes, parity)


def probabilities(wf):
    return wf.amplitudes ** 2


class DiagonalObservable(object):
    """Observable diagonal in the occupation number basis.

    Parameters
    -----------
    values : array of float, shape (4**n_x,)
        A_tau for every configuration.

    name : str (default="A")
    """

    def __init__(self, values, name="A"):
        self.values = np.asarray(values, dtype=np.float64)
        self.name = name

    @classmethod
    def from_function(cls, function, n_x, m_t=0, name=None):
        """Tabulate f(n_r, n_i, m_t) over every configuration."""
        n_r, n_i = _layer_occupations(_check_exact_size(n_x))
        values = function(n_r, n_i, m_t)
        return cls(values, name or getattr(function, "__name__", "A"))

    @classmethod
    def from_name(cls, name, n_x, m_t=0):
        return cls.from_function(get_observable(name), n_x, m_t, name)


def expectation(wf, obs):
    """<A> = sum_tau A_tau q_tau**2.

    obs is a DiagonalObservable, an observable name or a function
    f(n_r, n_i, m_t); names and functions are tabulated at the time parity
    of wf.
    """
    if isinstance(obs, str):
        obs = DiagonalObservable.from_name(obs, wf.n_x, wf.m_t)
    elif not isinstance(obs, DiagonalObservable):
        obs = DiagonalObservable.from_function(obs, wf.n_x, wf.m_t)
    if obs.values.shape != wf.amplitudes.shape:
        raise DimensionMismatchError("observable and wave function sizes differ")
    return float(np.dot(obs.values, probabilities(wf)))


def expectation_trajectory(wf, n_half_steps, observables, model="interacting"):
    """Exact expectations of named observables at t = 0..n_half_steps.

    Returns
    -------
    array of shape (n_half_steps + 1, len(observables))
    """
    values = np.zeros((n_half_steps + 1, len(observables)))
    current = wf
    for t in range(n_half_steps + 1):
        if t:
            current = evolve_wf(current, 1, model)
        for k, name in enumerate(observables):
            values[t, k] = expectation(current, name)
    return values


# one-particle sector --------------------------------------------------------


class OneParticleState(object):
    """Complex two-component one-particle wave function.

    The color of the particle is packed into the phase:
    psi(x) = q(R at x) + i q(I at x).  right holds the right movers and
    left the left movers.

    Parameters
    -----------
    right : array of complex, shape (n_x,)

    left : array of complex, shape (n_x,)
    """

    def __init__(self, right, left):
        right = np.asarray(right, dtype=np.complex128)
        left = np.asarray(left, dtype=np.complex128)
        if right.shape != left.shape or right.ndim != 1:
            raise DimensionMismatchError("right and left must be 1D of equal length")
        self.right = right
        self.left = left

    @property
    def n_x(self):
        return self.right.shape[0]

    def norm(self):
        return float(np.sqrt(np.sum(np.abs(self.right) ** 2 + np.abs(self.left) ** 2)))


def one_particle_double_step(state):
    """Free propagation over one double step: right movers move two sites
    right, left movers two sites left."""
    return OneParticleState(np.roll(state.right, 2), np.roll(state.left, -2))


def _one_particle_indices(n_x):
    sites = np.arange(n_x)
    return 1 << (2 * sites), 1 << (2 * sites + 1)


def one_particle_from_wavefunction(wf):
    """Read a one-particle WaveFunction as a OneParticleState."""
    red, green = _one_particle_indices(wf.n_x)
    support = np.zeros(wf.amplitudes.shape, dtype=bool)
    support[red] = True
    support[green] = True
    leak = np.max(np.abs(wf.amplitudes[~support]), initial=0.0)
    if leak > NORM_TOLERANCE:
        raise PreconditionError(
            "wave function has weight {:.3e} outside the one-particle sector".format(leak)
        )
    psi = wf.amplitudes[red] + 1j * wf.amplitudes[green]
    movers = right_mover_sites(wf.m_t, wf.n_x)
    return OneParticleState(np.where(movers, psi, 0), np.where(movers, 0, psi))


def one_particle_to_wavefunction(state, parity="even"):
    """Inverse of one_particle_from_wavefunction at the given parity."""
    n_x = _check_exact_size(state.n_x)
    m_t = 0 if check_parity(parity) == "even" else 1
    movers = right_mover_sites(m_t, n_x)
    if np.any(state.right[~movers]) or np.any(state.left[movers]):
        raise PreconditionError(
            "right movers must sit on the m_t + m_x even sublattice, left movers on the other"
        )
    psi = np.where(movers, state.right, state.left)
    red, green = _one_particle_indices(n_x)
    amplitudes = np.zeros(4 ** n_x)
    amplitudes[red] = psi.real
    amplitudes[green] = psi.imag
    return WaveFunction(n_x, amplitudes, parity)


def plane_wave(n_x, k, mover="right", m_t=0):
    """Normalized plane wave exp(i p x), p = 2 pi k / n_x, on the sublattice
    of the given movers."""
    n_x = check_n_x(n_x)
    sites = right_mover_sites(m_t, n_x)
    if mover == "left":
        sites = ~sites
    p = 2 * np.pi * k / n_x
    psi = np.where(sites, np.exp(1j * p * np.arange(n_x)), 0) / np.sqrt(np.sum(sites))
    zero = np.zeros(n_x, dtype=np.complex128)
    if mover == "right":
        return OneParticleState(psi, zero)
    return OneParticleState(zero, psi)


def dispersion_check(n_x, exact_evolution=False):
    """Max deviation of double-step eigenvalues from exp(-+2 i p).

    Every lattice momentum p = 2 pi k / n_x is tried for both movers.  With
    exact_evolution the double step runs through the full wave function
    (2 n_x <= 24), otherwise through one_particle_double_step.
    """
    n_x = check_n_x(n_x)
    deviation = 0.0
    for k in range(n_x):
        p = 2 * np.pi * k / n_x
        for mover, sign in (("right", -1), ("left", 1)):
            state = plane_wave(n_x, k, mover)
            if exact_evolution:
                wf = evolve_wf(one_particle_to_wavefunction(state), 2)
                evolved = one_particle_from_wavefunction(wf)
            else:
                evolved = one_particle_double_step(state)
            phase = np.exp(sign * 2j * p)
            deviation = max(
                deviation,
                float(np.max(np.abs(evolved.right - phase * state.right))),
                float(np.max(np.abs(evolved.left - phase * state.left))),
            )
    return deviation


# sampling -------------------------------------------------------------------


def _draw_layers(site_probabilities, size, generator):
    cumulative = np.cumsum(site_probabilities, axis=1)[:, :3]
    u = generator.random((size, site_probabilities.shape[0]))
    codes = np.sum(u[..., np.newaxis] >= cumulative[np.newaxis], axis=-1)
    return pack_occupations(codes & 1, codes >> 1)


class SampleEvolver(BaseEstimator):
    """Monte Carlo estimates of observables along the deterministic
    evolution of randomly drawn initial layers.

    Initial layers are drawn from a product distribution over the local
    states {empty, R, I, RI}.  Samples are split into chunks, each with its
    own counter-based generator derived from seed, so results do not depend
    on n_jobs.

    Parameters
    -----------
    n_samples : int (default=10000)

    n_half_steps : int (default=10)

    observables : sequence of str (default=("particle_count",))
        Names accepted by observables.get_observable.

    start_parity : "even" or "odd" (default="even")

    model : "free" or "interacting" (default="interacting")

    seed : int or None (default=None)
        None draws fresh entropy, recorded in seed_.

    chunk_size : int (default=4096)

    n_jobs : int (default=1)

    verbose : bool or int (default=False)

    Attributes
    ----------
    means_ : array (n_half_steps + 1, n_observables)

    stderr_ : array (n_half_steps + 1, n_observables)

    seed_ : int

    n_x_ : int
    """

    def __init__(
        self,
        n_samples=10000,
        n_half_steps=10,
        observables=("particle_count",),
        start_parity="even",
        model="interacting",
        seed=None,
        chunk_size=4096,
        n_jobs=1,
        verbose=False,
    ):
        self.n_samples = n_samples
        self.n_half_steps = n_half_steps
        self.observables = observables
        self.start_parity = start_parity
        self.model = model
        self.seed = seed
        self.chunk_size = chunk_size
        self.n_jobs = n_jobs
        self.verbose = verbose

    def _run_chunk(self, indexed_chunk, site_probabilities, functions):
        index, (size, generator) = indexed_chunk
        n_x = site_probabilities.shape[0]
        words = _draw_layers(site_probabilities, size, generator)
        values = np.zeros((size, self.n_half_steps + 1, len(functions)))
        for t, current in iter_half_steps(
            words, n_x, self.n_half_steps, self.start_parity, self.model
        ):
            n_r, n_i = unpack_words(current, n_x)
            m_t = time_parity(self.start_parity, t)
            for k, function in enumerate(functions):
                values[:, t, k] = function(n_r, n_i, m_t)
        return index, RunningMoments.from_samples(values)

    def fit(self, site_probabilities):
        """Sample, evolve and average.

        Parameters
        -----------
        site_probabilities : array of shape (n_x, 4)
        """
        site_probabilities = _check_probabilities(site_probabilities, axis=1)
        if site_probabilities.ndim != 2 or site_probabilities.shape[1] != 4:
            raise DimensionMismatchError("site probabilities must have shape (n_x, 4)")
        self.n_x_ = check_n_x(site_probabilities.shape[0])
        check_parity(self.start_parity)
        check_model(self.model)
        if self.n_samples < 1:
            raise PreconditionError("n_samples must be positive")
        if self.n_half_steps < 0:
            raise PreconditionError("n_half_steps must be non-negative")
        functions = [get_observable(name) for name in self.observables]

        self.seed_ = (
            self.seed if self.seed is not None else int(np.random.SeedSequence().entropy)
        )
        sizes = chunk_sizes(self.n_samples, self.chunk_size)
        generators = spawn_generators(self.seed_, len(sizes))
        if self.verbose:
            print(
                "sampling {} layers in {} chunks (n_x={}, seed={})".format(
                    self.n_samples, len(sizes), self.n_x_, self.seed_
                )
            )

        moments = cpu_map(
            lambda item: self._run_chunk(item, site_probabilities, functions),
            list(zip(sizes, generators)),
            n_jobs=self.n_jobs,
            verbose=self.verbose,
        )
        total = merge_all(moments)
        self.means_ = total.mean
        self.stderr_ = total.stderr
        self.observable_names_ = list(self.observables)
        self.is_fitted_ = True
        return self


SampleEstimate = namedtuple("SampleEstimate", ["means", "stderr", "observables", "seed"])


def sample_evolve(
    site_probabilities, n_samples, n_half_steps, observables, seed=None, **kwargs
):
    """Functional form of SampleEvolver.

    Returns
    -------
    SampleEstimate with means and stderr of shape
    (n_half_steps + 1, len(observables)).
    """
    evolver = SampleEvolver(
        n_samples=n_samples,
        n_half_steps=n_half_steps,
        observables=tuple(observables),
        seed=seed,
        **kwargs
    )
    evolver.fit(site_probabilities)
    return SampleEstimate(
        evolver.means_, evolver.stderr_, evolver.observable_names_, evolver.seed_
    )
