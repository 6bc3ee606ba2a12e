"""Command line entry point ``thirring-ca``.

Exit status is 0 on success, 1 when a verification suite or the benchmark
regression check fails and 2 on invalid input.
"""
from __future__ import absolute_import

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

import numpy as np

from ._version import __version__
from .grassmann import (
    eta,
    extract_step_operator,
    local_factor_free,
    local_factor_interacting,
    sign_gauge_search,
)
from .ising import SAMPLER_BOUNDARY, MetropolisSampler, enumerate_boltzmann
from .operators import SignedPermutation
from .profiling.throughput import (
    REGRESSION_THRESHOLD,
    TARGET_SITE_UPDATES_PER_S,
    is_regression,
    load_baseline,
    measure_throughput,
    save_baseline,
)
from .scenarios.config import BUILTIN_SCENARIOS, builtin_config, load_config
from .scenarios.render import render_ascii
from .scenarios.runner import GENERATOR_NAME, compute_scenario, run_scenario, write_observables_csv
from .scenarios.vacua import VACUA, vacuum_layer
from .verification import SUITES, run_suite


def _load_scenario(source):
    """A scenario file path or the name of a built-in scenario."""
    if not os.path.exists(source) and source in BUILTIN_SCENARIOS:
        return builtin_config(source)
    return load_config(source)


def cmd_run(args):
    config = _load_scenario(args.config)
    result = run_scenario(config, output_dir=args.output_dir, verbose=args.verbose)
    if not config.outputs and result.trajectory is not None:
        sys.stdout.write(render_ascii(result.trajectory))
    for path in result.files:
        sys.stderr.write("wrote {}\n".format(path))
    return 0


def cmd_expect(args):
    config = _load_scenario(args.config)
    overrides = {}
    if args.n_samples is not None:
        overrides["n_samples"] = args.n_samples
    if args.seed is not None:
        overrides["seed"] = args.seed
    result = compute_scenario(config._replace(**overrides), verbose=args.verbose)
    write_observables_csv(result.rows, sys.stdout)
    return 0


def cmd_verify(args):
    results = run_suite(args.suite, full=args.full, seed=args.seed, verbose=args.verbose)
    for result in results:
        print("{} {}: {}".format("PASS" if result.passed else "FAIL", result.name, result.detail))
    failed = [result.name for result in results if not result.passed]
    if failed:
        sys.stderr.write("{} of {} checks failed\n".format(len(failed), len(results)))
        return 1
    return 0


def _format_entry(value):
    return str(Fraction(value)) if not isinstance(value, str) else value


def cmd_extract_op(args):
    if args.model == "free":
        factor, m = local_factor_free(Fraction(args.g), args.parity), 2
    else:
        factor, m = local_factor_interacting(), 4
    operator = extract_step_operator(factor, m, args.parity)
    if isinstance(operator, SignedPermutation):
        matrix = operator.to_dense()
    else:
        matrix = operator.entries
    gauge = sign_gauge_search(operator)

    print("# model={}".format(args.model))
    print("# parity={}".format(args.parity))
    print("# unique_jump={}".format(isinstance(operator, SignedPermutation)))
    print("# eta={}".format(eta(m)))
    if gauge is None:
        print("# gauge=none")
    else:
        print("# gauge=found")
        print("# conjugate_gauge={}".format(gauge.conjugate))
        print("# global_sign={}".format(gauge.global_sign))
        print("# d_out={}".format(" ".join(str(int(d)) for d in gauge.d_out)))
        print("# d_in={}".format(" ".join(str(int(d)) for d in gauge.d_in)))
    writer = csv.writer(sys.stdout, lineterminator="\n")
    for row in matrix:
        writer.writerow([_format_entry(value) for value in row])
    return 0


def cmd_ising(args):
    initial = vacuum_layer(args.vacuum, args.nx)
    header = {
        "beta": args.beta,
        "n_x": args.nx,
        "T": args.T,
        "vacuum": args.vacuum,
        "boundary": SAMPLER_BOUNDARY,
        "package_version": __version__,
        "numpy_version": np.__version__,
    }
    if args.enumerate:
        exact = enumerate_boltzmann(initial, args.T, args.beta)
        header["method"] = "enumeration"
        rows = [
            ("violation_density", exact.violation_density, 0.0),
            ("particle_density", exact.particle_density, 0.0),
        ]
    else:
        sampler = MetropolisSampler(
            beta=args.beta,
            T=args.T,
            n_sweeps=args.sweeps,
            n_burn=args.burn,
            n_batches=args.batches,
            seed=args.seed,
            verbose=args.verbose,
        )
        sampler.fit(initial)
        header.update(
            {"method": "metropolis", "seed": sampler.seed_, "generator": GENERATOR_NAME,
             "sweeps": args.sweeps, "burn": args.burn}
        )
        rows = [
            ("violation_density", sampler.violation_density_, sampler.violation_stderr_),
            ("particle_density", sampler.particle_density_, sampler.particle_stderr_),
            ("acceptance_rate", sampler.acceptance_rate_, 0.0),
        ]
    for key in sorted(header):
        print("# {}={}".format(key, header[key]))
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["quantity", "value", "stderr"])
    for name, value, stderr in rows:
        writer.writerow([name, "{:.12g}".format(value), "{:.12g}".format(stderr)])
    return 0


def cmd_bench(args):
    record = measure_throughput(
        n_x=args.nx,
        batch=args.batch,
        n_half_steps=args.steps,
        seed=args.seed,
        verbose=args.verbose,
    )
    record["target_site_updates_per_s"] = TARGET_SITE_UPDATES_PER_S
    status = 0
    if args.baseline:
        baseline = load_baseline(args.baseline)
        record["baseline_site_updates_per_s"] = baseline
        record["regression"] = is_regression(record["site_updates_per_s"], baseline)
        if record["regression"]:
            sys.stderr.write(
                "throughput below {:.0%} of the baseline\n".format(REGRESSION_THRESHOLD)
            )
            status = 1
    if args.record:
        save_baseline(args.record, record["site_updates_per_s"])
    print(json.dumps(record, sort_keys=True))
    return status


def build_parser():
    parser = argparse.ArgumentParser(
        prog="thirring-ca",
        description="Fermionic cellular automaton for the two-colour Thirring model.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true", help="Print progress.")
    commands = parser.add_subparsers(dest="command")
    commands.required = True

    run = commands.add_parser("run", help="Run a scenario and write its outputs.")
    run.add_argument("config", help="Scenario JSON file or one of {}".format(sorted(BUILTIN_SCENARIOS)))
    run.add_argument("--output-dir", default=".", help="Directory for output files.")
    run.set_defaults(func=cmd_run)

    expect = commands.add_parser("expect", help="Observable expectations as CSV.")
    expect.add_argument("config")
    expect.add_argument("--n-samples", type=int, default=None)
    expect.add_argument("--seed", type=int, default=None)
    expect.set_defaults(func=cmd_expect)

    verify = commands.add_parser("verify", help="Run verification suites.")
    verify.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    verify.add_argument("--full", action="store_true", help="Run at full problem sizes.")
    verify.add_argument("--seed", type=int, default=0)
    verify.set_defaults(func=cmd_verify)

    extract = commands.add_parser("extract-op", help="Step operator of a local factor.")
    extract.add_argument("--model", choices=("free", "interacting"), default="interacting")
    extract.add_argument("--g", default="1", help="Free coupling, an exact number such as 2 or 1/2.")
    extract.add_argument("--parity", choices=("even", "odd"), default="even")
    extract.set_defaults(func=cmd_extract_op)

    ising = commands.add_parser("ising", help="Finite-beta Ising model sampling.")
    ising.add_argument("--beta", type=float, default=2.0)
    ising.add_argument("--sweeps", type=int, default=2000)
    ising.add_argument("--burn", type=int, default=200)
    ising.add_argument("--batches", type=int, default=20)
    ising.add_argument("--seed", type=int, default=None)
    ising.add_argument("--nx", type=int, default=2)
    ising.add_argument("--T", type=int, default=4)
    ising.add_argument("--vacuum", choices=VACUA, default="half_B_1")
    ising.add_argument("--enumerate", action="store_true", help="Exact enumeration instead.")
    ising.set_defaults(func=cmd_ising)

    bench = commands.add_parser("bench", help="Packed half-step throughput.")
    bench.add_argument("--nx", type=int, default=4096)
    bench.add_argument("--batch", type=int, default=64)
    bench.add_argument("--steps", type=int, default=64)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--baseline", default=None, help="JSON baseline to compare against.")
    bench.add_argument("--record", default=None, help="Write the measurement as new baseline.")
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ZeroDivisionError) as error:
        sys.stderr.write("error: {}\n".format(error))
        return 2
    except (IOError, OSError) as error:
        sys.stderr.write("error: {}\n".format(error))
        return 2


if __name__ == "__main__":
    sys.exit(main())
