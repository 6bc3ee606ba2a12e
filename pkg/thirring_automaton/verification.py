"""Verification suites run by ``thirring-ca verify``.

Every check returns a CheckResult.  ``full=True`` runs the checks at the
full problem sizes, the default runs them at reduced size.
"""
from __future__ import absolute_import

from collections import namedtuple

import numpy as np

from .automaton import (
    FREE_RULE,
    INTERACTING_RULE,
    LayerConfig,
    MODELS,
    block_update_free,
    block_update_interacting,
    corner_pattern_valid,
    evolve,
    evolve_backward,
    half_step,
    half_step_reference,
    half_step_words,
    influence_window,
    iter_half_steps,
    n_words,
    pack_occupations,
    rotate_corner_pattern,
    unpack_words,
    watched_sites,
)
from .grassmann import (
    basis_family,
    chiral_rotation,
    eta,
    exp_pairing,
    extract_step_operator,
    interaction_term,
    kinetic_exponent,
    local_factor_free,
    local_factor_interacting,
    pairing_matrix,
    sign_gauge_search,
    step_operator_oracle,
)
from .ising import (
    BlockTransition,
    MetropolisSampler,
    block_action,
    enumerate_boltzmann,
    frequency_z_scores,
    layer_groups,
    limit_step_operator,
)
from .lattice import PARITIES, block_partition
from .observables import CONSERVED, get_observable
from .operators import (
    SignedPermutation,
    from_block_rule,
    from_layer_map,
    lift_to_lattice,
    w_matrix,
)
from .quantum_state import (
    WaveFunction,
    dispersion_check,
    evolve_wf,
    expectation_trajectory,
    from_product_distribution,
    sample_evolve,
)
from .scenarios.classify import classify_trajectory, soliton_light_cone
from .scenarios.config import build_initial, builtin_config
from .scenarios.vacua import vacuum_layer

CheckResult = namedtuple("CheckResult", ["name", "passed", "detail"])


def _generator(seed):
    return np.random.Generator(np.random.Philox(seed))


def random_words(generator, batch, n_x):
    n_r = generator.integers(0, 2, size=(batch, n_x))
    n_i = generator.integers(0, 2, size=(batch, n_x))
    return pack_occupations(n_r, n_i)


# conservation suite ---------------------------------------------------------


def check_rule_tables():
    expected = {}
    for state in range(16):
        n_r_left, n_i_left = state & 1, (state >> 1) & 1
        n_r_right, n_i_right = (state >> 2) & 1, state >> 3
        singles = (n_r_left ^ n_i_left) and (n_r_right ^ n_i_right)
        if singles and n_r_left != n_r_right:
            expected[state] = state
        elif singles:
            expected[state] = 15 - state
        else:
            expected[state] = (n_r_right | n_i_right << 1) | (n_r_left | n_i_left << 1) << 2
    bad = [s for s in range(16) if block_update_interacting(s) != expected[s]]
    bad_free = [p for p in range(4) if block_update_free(p) != [0, 2, 1, 3][p]]
    return CheckResult(
        "rule_tables",
        not bad and not bad_free,
        "interacting mismatches {}, free mismatches {}".format(bad, bad_free),
    )


def check_kernel_reference(seed=0, n_layers=20):
    generator = _generator(seed)
    mismatches = 0
    for n_x in (2, 4, 6, 32, 34, 64, 96):
        for _ in range(n_layers):
            layer = LayerConfig(n_x, random_words(generator, 1, n_x)[0])
            for parity in PARITIES:
                for model in MODELS:
                    if half_step(layer, parity, model) != half_step_reference(layer, parity, model):
                        mismatches += 1
    return CheckResult(
        "kernel_matches_reference", mismatches == 0, "{} mismatches".format(mismatches)
    )


def conserved_values(words, n_x, m_t):
    n_r, n_i = unpack_words(words, n_x)
    return np.stack([get_observable(name)(n_r, n_i, m_t) for name in CONSERVED], axis=-1)


def check_conservation(seed=0, n_trajectories=100, n_half_steps=1000, n_x=64):
    generator = _generator(seed)
    words = random_words(generator, n_trajectories, n_x)
    initial = conserved_values(words, n_x, 0)
    violations = 0
    for t, current in iter_half_steps(words, n_x, n_half_steps):
        violations += int(np.any(conserved_values(current, n_x, t % 2) != initial))
    return CheckResult(
        "conservation",
        violations == 0,
        "{} trajectories x {} half-steps at n_x={}: {} violating steps".format(
            n_trajectories, n_half_steps, n_x, violations
        ),
    )


def check_reversibility(seed=0, n_layers=10000, n_x=256, n_half_steps=16):
    generator = _generator(seed)
    words = random_words(generator, n_layers, n_x)
    current = words
    for _, current in iter_half_steps(words, n_x, n_half_steps):
        pass
    parity = "even" if n_half_steps % 2 == 0 else "odd"
    for _ in range(n_half_steps):
        parity = "odd" if parity == "even" else "even"
        current = half_step_words(current, n_x, parity)
    passed = bool(np.array_equal(current, words))
    single = LayerConfig(n_x, words[0])
    last_parity = "odd" if n_half_steps % 2 == 0 else "even"
    trajectory = evolve(single, n_half_steps)
    passed = passed and evolve_backward(trajectory[-1], n_half_steps, last_parity) == single
    return CheckResult(
        "reversibility", passed, "{} layers at n_x={}".format(n_layers, n_x)
    )


def check_unitarity(seed=0, n_x=8, n_half_steps=1000):
    generator = _generator(seed)
    amplitudes = generator.normal(size=4 ** n_x)
    amplitudes /= np.sqrt(np.sum(amplitudes ** 2))
    wf = WaveFunction(n_x, amplitudes)
    norm = wf.norm()
    evolved = evolve_wf(wf, n_half_steps)
    same_values = np.array_equal(np.sort(evolved.amplitudes), np.sort(amplitudes))
    return CheckResult(
        "unitarity",
        same_values and abs(evolved.norm() - norm) <= 1e-12,
        "norm after {} half-steps: {!r}".format(n_half_steps, evolved.norm()),
    )


def influencing_sites(base_words, n_x, n_double_steps, x, model="interacting"):
    """Sites at t = 0 whose bit flip changes the watched sites of
    watched_sites(n_double_steps, x) in at least one base layer."""
    base_words = np.asarray(base_words, dtype=np.uint64)
    n_bits = 2 * n_x
    flips = np.repeat(base_words[:, np.newaxis, :], n_bits, axis=1)
    for k in range(n_bits):
        flips[:, k, k // 64] ^= np.uint64(1) << np.uint64(k % 64)
    batch = np.concatenate([base_words[:, np.newaxis, :], flips], axis=1)
    for _, batch in iter_half_steps(batch, n_x, 2 * n_double_steps, model=model):
        pass
    n_r, n_i = unpack_words(batch, n_x)
    watched = [site % n_x for site in watched_sites(n_double_steps, x)]
    state = np.concatenate([n_r[..., watched], n_i[..., watched]], axis=-1)
    changed = np.any(state[:, 1:] != state[:, :1], axis=(0, 2))
    return sorted({k // 2 for k in np.flatnonzero(changed)})


def check_causality(seed=0, n_base_layers=1000, n_x=32, max_double_steps=4):
    generator = _generator(seed)
    x = n_x // 2
    failures = []
    for n in range(max_double_steps + 1):
        low, high = influence_window(n)
        expected = list(range(low, high + 1))
        base = np.concatenate(
            [np.zeros((1, n_words(n_x)), dtype=np.uint64), random_words(generator, n_base_layers, n_x)]
        )
        offsets = [site - x for site in influencing_sites(base, n_x, n, x)]
        if offsets != expected:
            failures.append((n, offsets[0] if offsets else None, offsets[-1] if offsets else None))
    return CheckResult(
        "causality",
        not failures,
        "window mismatches (n, low, high): {}".format(failures) if failures else "windows tight",
    )


def check_ground_states():
    n_x = 8
    problems = []
    for name in ("empty", "filled"):
        layer = vacuum_layer(name, n_x)
        if any(half_step(layer, p) != layer for p in PARITIES):
            problems.append(name)
    red, green = vacuum_layer("half_A_red", n_x), vacuum_layer("half_A_green", n_x)
    trajectory = evolve(red, 8)
    if any(trajectory[t] != (red if t % 2 == 0 else green) for t in range(9)):
        problems.append("half_A")
    for name in ("half_B_1", "half_B_2"):
        layer = vacuum_layer(name, n_x)
        if any(step != layer for step in evolve(layer, 8)):
            problems.append(name)
    return CheckResult("ground_states", not problems, "failing: {}".format(problems))


def check_rotation():
    failures = []
    for model in MODELS:
        for pattern in range(256):
            if not corner_pattern_valid(pattern, model):
                continue
            rotated = pattern
            for quarter in range(1, 4):
                rotated = rotate_corner_pattern(rotated)
                if not corner_pattern_valid(rotated, model):
                    failures.append((model, pattern, quarter))
    return CheckResult(
        "rotation",
        not failures,
        "{} valid patterns leave the rule under rotation".format(len(failures)),
    )


def check_soliton_geometry():
    failures = []
    for name in ("soliton", "hole"):
        config = builtin_config(name)
        trajectory = evolve(build_initial(config), config.n_half_steps)
        labels = classify_trajectory(trajectory)
        x0 = config.initial["insertions"][0]["site"]
        expected = soliton_light_cone(len(trajectory), config.n_x, x0)
        if not np.array_equal(labels, expected):
            failures.append(name)
    return CheckResult("soliton_geometry", not failures, "failing: {}".format(failures))


def check_dispersion():
    deviation = max(dispersion_check(8), dispersion_check(16), dispersion_check(8, True))
    block = from_block_rule("interacting")
    s_even = lift_to_lattice(block, block_partition("even", 4), 4)
    s_odd = lift_to_lattice(block, block_partition("odd", 4), 4)
    defect = w_matrix(s_even, s_odd).antisymmetry_defect()
    return CheckResult(
        "dispersion",
        deviation <= 1e-12 and defect == 0.0,
        "max eigenvalue deviation {:.2e}, W antisymmetry defect {}".format(deviation, defect),
    )


# equivalence suite ----------------------------------------------------------


def free_step_matrix(g, parity):
    """Expected coefficients of the free factor, bit-indexed."""
    matrix = np.zeros((4, 4), dtype=object)
    if parity == "even":
        matrix[0, 0], matrix[1, 2], matrix[2, 1], matrix[3, 3] = 1, -1, -1, g - 1
    else:
        matrix[3, 3], matrix[1, 2], matrix[2, 1], matrix[0, 0] = 1, 1, 1, g - 1
    return matrix


def _as_dense(operator):
    if isinstance(operator, SignedPermutation):
        return operator.to_dense().astype(object)
    return operator.entries


def check_free_extraction():
    failures = []
    switch = SignedPermutation(FREE_RULE)
    for g in (0, 1, 2):
        for parity in PARITIES:
            operator = extract_step_operator(local_factor_free(g, parity), 2, parity)
            if not np.array_equal(_as_dense(operator), free_step_matrix(g, parity)):
                failures.append((g, parity, "matrix"))
            gauge = sign_gauge_search(operator)
            if g == 1 and gauge is not None:
                failures.append((g, parity, "gauge"))
            if g != 1 and (gauge is None or gauge.gauged != switch):
                failures.append((g, parity, "gauge"))
    return CheckResult("free_extraction", not failures, "failing: {}".format(failures))


def check_interacting_extraction():
    factor = local_factor_interacting()
    rule = from_block_rule("interacting")
    details = []
    passed = True
    for parity in PARITIES:
        operator = extract_step_operator(factor, 4, parity)
        oracle = step_operator_oracle(factor, 4, parity)
        gauge = sign_gauge_search(operator)
        ok = (
            isinstance(operator, SignedPermutation)
            and np.array_equal(_as_dense(operator), oracle)
            and gauge is not None
            and gauge.gauged == rule
        )
        passed = passed and ok
        details.append(
            "{}: {}, conjugate gauge {}, global sign {}".format(
                parity,
                "ok" if ok else "FAILED",
                None if gauge is None else gauge.conjugate,
                None if gauge is None else gauge.global_sign,
            )
        )
    return CheckResult("interacting_extraction", passed, "; ".join(details))


def check_basis_families():
    failures = []
    for m in (1, 2, 3, 4):
        family = basis_family(m)
        identity = np.eye(2 ** m, dtype=np.int64)
        if not np.array_equal(pairing_matrix(family.g_bar, family.g, m), identity):
            failures.append((m, "orthonormality"))
        if not np.array_equal(pairing_matrix(family.g_prime, family.g_bar_prime, m), eta(m) * identity):
            failures.append((m, "eta"))
    for m in (1, 2, 3):
        exponential, from_g, from_g_bar = exp_pairing(m)
        if not (exponential == from_g == from_g_bar):
            failures.append((m, "exp_pairing"))
    return CheckResult("basis_families", not failures, "failing: {}".format(failures))


def check_chiral_invariance():
    kinetic, interaction = kinetic_exponent(), interaction_term()
    failures = [
        (right, left)
        for right in range(4)
        for left in range(4)
        if chiral_rotation(kinetic, right, left) != kinetic
        or chiral_rotation(interaction, right, left) != interaction
    ]
    return CheckResult("chiral_invariance", not failures, "failing turns: {}".format(failures))


def check_layer_maps():
    failures = []
    for n_x in (2, 4):
        for parity in PARITIES:
            for model in MODELS:
                lifted = lift_to_lattice(from_block_rule(model), block_partition(parity, n_x), n_x)
                if from_layer_map(n_x, parity, model) != lifted:
                    failures.append((n_x, parity, model))
    return CheckResult("layer_maps", not failures, "failing: {}".format(failures))


# ising suite ----------------------------------------------------------------


def check_block_contract():
    failures = 0
    for beta in (1.0, 5.0, 20.0):
        for tau_in in range(16):
            for tau_out in range(16):
                action = block_action(BlockTransition.from_physical(tau_in, tau_out), beta)
                allowed = INTERACTING_RULE[tau_in] == tau_out
                if allowed and action != 0 or not allowed and action < 2 * beta:
                    failures += 1
    return CheckResult("block_contract", failures == 0, "{} violations".format(failures))


def check_limit_operator(beta=20.0):
    entries = limit_step_operator(beta).entries
    target = from_block_rule("interacting").to_dense() == 1
    off = float(np.max(entries[~target]))
    passed = off <= np.exp(-2 * beta) and np.all(entries[target] == 1.0)
    return CheckResult("limit_operator", bool(passed), "max off-target entry {:.3e}".format(off))


def check_enumeration_monotone():
    initial = LayerConfig.from_occupations([1, 0], [0, 1])
    densities = [enumerate_boltzmann(initial, 4, beta).violation_density for beta in (1, 2, 3, 5)]
    passed = all(a > b for a, b in zip(densities, densities[1:]))
    return CheckResult(
        "violation_density_monotone",
        passed,
        "densities {}".format(", ".join("{:.4g}".format(d) for d in densities)),
    )


def check_metropolis(seed=0, n_sweeps=20000, tolerance=4.0):
    initial = LayerConfig.from_occupations([1, 0], [0, 1])
    failures = []
    for beta in (0.0, 2.0):
        exact = enumerate_boltzmann(initial, 4, beta)
        sampler = MetropolisSampler(
            beta=beta, T=4, n_sweeps=n_sweeps, n_burn=500, seed=seed, record_configurations=True
        )
        sampler.fit(initial)
        sigma = max(sampler.violation_stderr_, 1e-12)
        if abs(sampler.violation_density_ - exact.violation_density) > tolerance * sigma:
            failures.append((beta, "violation_density", sampler.violation_density_))
        for t, groups in enumerate(layer_groups(initial.n_x, 4), 1):
            z = frequency_z_scores(
                sampler.configuration_trace_, exact.probabilities, groups, n_batches=40
            )
            if np.max(z) > tolerance:
                failures.append((beta, "layer {} frequencies".format(t), float(np.max(z))))
    return CheckResult("metropolis_vs_enumeration", not failures, "failing: {}".format(failures))


def check_sampling(seed=0, n_samples=100000, n_x=6, n_half_steps=6, tolerance=4.0):
    observables = ["particle_count", "right_movers", "red_count", "n_R[0]", "n_I[3]"]
    site_probabilities = np.tile([0.25, 0.25, 0.25, 0.25], (n_x, 1))
    site_probabilities[0] = [0.1, 0.5, 0.1, 0.3]
    exact = expectation_trajectory(
        from_product_distribution(site_probabilities), n_half_steps, observables
    )
    estimate = sample_evolve(site_probabilities, n_samples, n_half_steps, observables, seed=seed)
    sigma = np.maximum(estimate.stderr, 1e-12)
    worst = float(np.max(np.abs(estimate.means - exact) / sigma))
    return CheckResult(
        "sampling_vs_exact", worst <= tolerance, "worst deviation {:.2f} sigma".format(worst)
    )


# suites ---------------------------------------------------------------------


def conservation_suite(full=False, seed=0):
    scale = (lambda big, small: big) if full else (lambda big, small: small)
    return [
        check_rule_tables(),
        check_kernel_reference(seed),
        check_conservation(seed, n_half_steps=scale(10000, 500)),
        check_reversibility(seed, n_layers=scale(10000, 500)),
        check_unitarity(seed, n_half_steps=scale(1000, 50)),
        check_causality(seed, n_base_layers=scale(1000, 50)),
        check_ground_states(),
        check_rotation(),
        check_soliton_geometry(),
        check_dispersion(),
    ]


def equivalence_suite(full=False, seed=0):
    return [
        check_free_extraction(),
        check_interacting_extraction(),
        check_basis_families(),
        check_chiral_invariance(),
        check_layer_maps(),
    ]


def ising_suite(full=False, seed=0):
    return [
        check_block_contract(),
        check_limit_operator(),
        check_enumeration_monotone(),
        check_metropolis(seed, n_sweeps=20000 if full else 4000),
        check_sampling(seed, n_samples=100000 if full else 20000),
    ]


SUITES = {
    "conservation": conservation_suite,
    "equivalence": equivalence_suite,
    "ising": ising_suite,
}


def run_suite(name="all", full=False, seed=0, verbose=False):
    """Run one suite (or all) and return the list of CheckResult."""
    if name == "all":
        names = sorted(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise ValueError(
            "unknown suite {!r}, expected one of {} or 'all'".format(name, sorted(SUITES))
        )
    results = []
    for suite in names:
        if verbose:
            print("running suite {}".format(suite))
        results.extend(SUITES[suite](full=full, seed=seed))
    return results
