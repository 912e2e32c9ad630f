"""
Main Command-Line Interface
Exposes sums, kernels, operator application, product identities,
verification suites and the benchmark as subcommands
"""

import argparse
import logging
import math
import sys

from .benchmark import bench_compare, records_to_frame, write_csv
from .config_loader import load_config
from .errors import InvalidModulusError, RamanujanError, ResidueError
from .ramanujan_algebra import ShiftConvention, check_product
from .ramanujan_operators import BoundaryPolicy, apply, kernel_first, kernel_second
from .ramanujan_sums import oracle_period, period_table, sum_fast, sum_oracle
from .signal_io import format_real, read_signal, write_signal, write_table
from .verification import VerificationPipeline

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _line(values, fmt=str):
    return " ".join(fmt(v) for v in values)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ramanujan-ops",
        description="Ramanujan sums and Ramanujan derivative operators",
    )
    parser.add_argument("--config", help="YAML configuration file (default: config/ramanujan.yaml)")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sum", help="Evaluate c_q(n) or one full period")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--method", choices=["naive", "fast", "both"], default="fast")

    p = sub.add_parser("kernel", help="Print or write operator taps")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--variant", choices=["first", "second"], required=True)
    p.add_argument("--out")

    p = sub.add_parser("apply", help="Filter a signal file with a Ramanujan operator")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--variant", choices=["first", "second"], required=True)
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--out")
    p.add_argument("--boundary", choices=[b.value for b in BoundaryPolicy])

    p = sub.add_parser("product", help="Compare a shifted product with its predicted Ramanujan sequence")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a1", type=int, required=True)
    p.add_argument("--a2", type=int, required=True)
    p.add_argument("--convention", choices=[c.value for c in ShiftConvention], default="crt")

    p = sub.add_parser("verify", help="Run every invariant suite")
    p.add_argument("--q-max", type=int)
    p.add_argument("--report", help="Write a JSON report to this path")

    p = sub.add_parser("bench", help="Compare naive and factorized evaluation")
    p.add_argument("--q-max", type=int)
    p.add_argument("--q", type=int, action="append", dest="q_list", help="Explicit modulus; repeatable")
    p.add_argument("--samples", type=int)
    p.add_argument("--csv", help="Write records to this CSV file")

    return parser


def validate_args(args):
    """Check every numeric option before any work starts"""
    if args.command == "sum" and args.q < 1:
        raise InvalidModulusError(f"--q must be >= 1, got {args.q}")
    if args.command in ("kernel", "apply"):
        if args.q < 2:
            raise InvalidModulusError(f"--q must be >= 2 for an operator, got {args.q}")
        if args.variant == "second" and args.q % 2 == 0:
            raise InvalidModulusError(f"--variant second needs odd --q, got {args.q}")
    if args.command == "product":
        if args.q < 1 or args.p <= args.q:
            raise InvalidModulusError(f"need --p > --q >= 1, got p={args.p}, q={args.q}")
        if math.gcd(args.p, args.q) != 1:
            raise InvalidModulusError(f"--p {args.p} and --q {args.q} are not coprime")
    if args.command in ("verify", "bench") and args.q_max is not None and args.q_max < 2:
        raise InvalidModulusError(f"--q-max must be >= 2, got {args.q_max}")
    if args.command == "bench":
        if args.samples is not None and args.samples < 1:
            raise InvalidModulusError(f"--samples must be >= 1, got {args.samples}")
        if any(q < 2 for q in args.q_list or []):
            raise InvalidModulusError("every --q must be >= 2")


def configure_logging(config, verbose):
    level = logging.INFO if verbose else getattr(logging, str(config["logging"]["level"]).upper(), logging.WARNING)
    handlers = [logging.StreamHandler(sys.stderr)]
    if config["logging"].get("file"):
        handlers.append(logging.FileHandler(config["logging"]["file"]))
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(levelname)s - %(message)s",
        handlers=handlers,
        force=True,
    )


def _kernel(q, variant):
    return kernel_first(q) if variant == "first" else kernel_second(q)


def run_sum(args, config):
    if args.n is not None:
        if args.method == "naive":
            print(sum_oracle(args.q, args.n, config["tolerances"]["oracle_residue"]))
        elif args.method == "fast":
            print(sum_fast(args.q, args.n))
        else:
            naive = sum_oracle(args.q, args.n, config["tolerances"]["oracle_residue"])
            fast = sum_fast(args.q, args.n)
            print(f"naive: {naive}")
            print(f"fast: {fast}")
            print(f"match: {str(naive == fast).lower()}")
        return EXIT_OK

    if args.method == "naive":
        print(_line(oracle_period(args.q, config["tolerances"]["oracle_residue"]).values))
    elif args.method == "fast":
        print(_line(period_table(args.q).values))
    else:
        naive = oracle_period(args.q, config["tolerances"]["oracle_residue"]).values
        fast = period_table(args.q).values
        print(f"naive: {_line(naive)}")
        print(f"fast: {_line(fast)}")
        print(f"match: {str(naive == fast).lower()}")
    return EXIT_OK


def run_kernel(args, config):
    kernel = _kernel(args.q, args.variant)
    if args.out:
        write_table(kernel.taps, args.out)
    else:
        print(_line(kernel.taps))
    return EXIT_OK


def run_apply(args, config):
    boundary = BoundaryPolicy.parse(args.boundary or config["operators"]["default_boundary"])
    kernel = _kernel(args.q, args.variant)
    signal = read_signal(args.in_path, boundary=boundary)
    output = apply(kernel, signal)
    if args.out:
        write_signal(output, args.out)
    else:
        print(_line(output.samples, format_real))
    return EXIT_OK


def run_product(args, config):
    result = check_product(args.p, args.q, args.a1, args.a2, ShiftConvention(args.convention))
    print(f"predicted shift: {result.predicted.shift}")
    print(f"predicted: {_line(result.predicted.values)}")
    print(f"brute force: {_line(result.brute_force)}")
    if result.equal:
        print("verdict: equal")
        return EXIT_OK
    n, brute, predicted = result.first_mismatch
    print(f"verdict: mismatch at n={n} (brute force {brute}, predicted {predicted})")
    return EXIT_FAILED


def run_verify(args, config):
    pipeline = VerificationPipeline(config)
    pipeline.run(args.q_max)
    print(pipeline.summary_frame().to_string(index=False))

    for result in pipeline.results:
        for check in result.failures:
            print(f"FAILED {result.name} / {check.name}: {check.observed}")
    if args.report:
        pipeline.generate_report(args.report)

    print("all suites passed" if pipeline.passed else "verification FAILED")
    return EXIT_OK if pipeline.passed else EXIT_FAILED


def bench_moduli(args, config):
    """Explicit --q values, else the configured list capped at --q-max (which is added itself)"""
    if args.q_list:
        return args.q_list
    q_list = list(config["benchmark"]["q_list"])
    if args.q_max is None:
        return q_list
    capped = [q for q in q_list if q <= args.q_max]
    return capped if args.q_max in capped else capped + [args.q_max]


def run_bench(args, config):
    samples = args.samples or config["benchmark"]["samples_per_q"]
    records = bench_compare(bench_moduli(args, config), samples, config["benchmark"]["repeats"])
    print(records_to_frame(records).to_string(index=False))
    for record in records:
        if not record.exact:
            print(f"INEXACT q={record.q}: {record.diagnostic}")
    if args.csv:
        write_csv(records, args.csv)
    return EXIT_OK if all(r.valid for r in records) else EXIT_FAILED


COMMANDS = {
    "sum": run_sum,
    "kernel": run_kernel,
    "apply": run_apply,
    "product": run_product,
    "verify": run_verify,
    "bench": run_bench,
}


def main(argv=None):
    """Main function to run one subcommand; returns the exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        config = load_config(args.config)
        configure_logging(config, args.verbose)
        validate_args(args)
        return COMMANDS[args.command](args, config)
    except ResidueError as e:
        logger.error(f"Numeric residue check failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
    except RamanujanError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
