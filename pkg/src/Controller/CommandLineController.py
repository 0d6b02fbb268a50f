"""
Command line front end. dispatch() parses the arguments, runs one
subcommand and turns its outcome into an exit code:
0 success, 1 validation failure, 2 usage error.
"""
import argparse
import json
import logging
import os
import sys
import threading
from pathlib import Path

from src import constants
from src.Model.BoundSweep import ChartSpec, EmptySweepError, \
    dominance_window, emit_csv, emit_svg_chart, figure_title, run_sweep
from src.Model.Configuration import SETTINGS, Configuration, SqlError, \
    UnknownSettingError
from src.Model.EntropicBounds import bound_report
from src.Model.Measurement import DomainError, IncompleteSetError, LogBase, \
    born_probabilities, check_larsen_identity, index_purity, \
    shannon_entropy
from src.Model.MutuallyUnbiasedBases import BasisFileError, \
    CountOutOfRangeError, InvalidBasisError, NotPrimeError, \
    generate_mub_set, load_bases, save_mub_set, verify_mub_set
from src.Model.QuantumState import DimMismatchError, InvalidStateError, \
    RankOutOfRangeError, SeedError, StateFileError, ZeroVectorError, \
    haar_random_states, load_state, normalize
from src.Model.Tightness import BoundViolationError, OptimizerConfig, \
    OptimizerConfigError, gap_sweep
from src.Model.batchprocessing.BatchProcessLarsenIdentity import \
    BatchProcessLarsenIdentity
from src.Model.batchprocessing.BatchProcessSoundness import \
    BatchProcessSoundness

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

USAGE_ERRORS = (NotPrimeError, CountOutOfRangeError, DomainError,
                OptimizerConfigError, StateFileError, BasisFileError,
                InvalidBasisError, InvalidStateError, ZeroVectorError,
                DimMismatchError, RankOutOfRangeError, IncompleteSetError,
                UnknownSettingError, EmptySweepError, SeedError)
FAILURE_ERRORS = (BoundViolationError, SqlError, OSError)

LOG_FORMAT = "%(levelname)s: %(message)s"


class LoggingProgress:
    """
    Progress callback for batch processes run from the command line.
    """

    def emit(self, progress):
        message, percent = progress
        logging.info("[%3d%%] %s", percent, message)


def configure_logging(verbose):
    """
    Send log records to stderr, DEBUG when verbose and WARNING otherwise.
    Safe to call more than once in a process; the handler is replaced so
    it follows the current sys.stderr.
    """
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, "mub_cli", False):
            root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler.mub_cli = True
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)


def load_defaults():
    """
    Stored user defaults, or the constants when the configuration
    database cannot be used.
    """
    try:
        return Configuration().get_all_settings()
    except (SqlError, OSError) as e:
        logging.warning("Configuration unavailable (%s); using built-in "
                        "defaults", e)
        return {name: spec[2] for name, spec in SETTINGS.items()}


def fmt(value):
    """Six significant digits for human-readable output."""
    return "%.6g" % value


def positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def nonnegative_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return value


def positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def resolve_base(args, defaults):
    return LogBase.from_name(args.base or defaults['default_base'])


def print_json(data):
    print(json.dumps(data, indent=2))


def _state_entry(index, state, mubs, base):
    distributions = [born_probabilities(state, basis)
                     for basis in mubs.bases]
    entropies = [shannon_entropy(dist, base) for dist in distributions]
    purities = [index_purity(dist) for dist in distributions]
    entry = {"state": index,
             "entropies": entropies,
             "purities": purities,
             "entropy_sum": sum(entropies),
             "purity_sum": sum(purities)}
    if mubs.is_complete:
        entry["larsen_residual"] = \
            check_larsen_identity(state, mubs).residual
    return entry


def mubs_gen(args, defaults):
    mubs = generate_mub_set(args.dim, args.count)
    save_mub_set(mubs, args.out)
    logging.info("Wrote %d bases of dimension %d to %s",
                 args.count, args.dim, args.out)
    return EXIT_OK


def mubs_verify(args, defaults):
    tol = args.tol if args.tol is not None else defaults['verify_tol']
    report = verify_mub_set(load_bases(args.input), tol)
    if args.format == "json":
        print_json({"max_orthonormality_error":
                    report.max_orthonormality_error,
                    "max_unbiasedness_error": report.max_unbiasedness_error,
                    "worst_pair": report.worst_pair,
                    "tol": report.tol,
                    "passed": report.passed})
    else:
        print("orthonormality error  %s" % fmt(
            report.max_orthonormality_error))
        print("unbiasedness error    %s" % fmt(
            report.max_unbiasedness_error))
        print("worst pair            %s" % (report.worst_pair,))
        print("tolerance             %s" % fmt(report.tol))
        print("result                %s"
              % ("PASS" if report.passed else "FAIL"))
    if not report.passed:
        logging.error("Basis set is not unbiased within %g", tol)
        return EXIT_FAILED
    return EXIT_OK


def entropy_eval(args, defaults):
    base = resolve_base(args, defaults)
    mubs = generate_mub_set(args.dim, args.count)
    if args.state:
        states = [load_state(args.state)]
    else:
        amplitudes = haar_random_states(args.dim, args.random, args.seed)
        states = [normalize(row) for row in amplitudes]
    entries = [_state_entry(index, state, mubs, base)
               for index, state in enumerate(states)]

    if args.format == "json":
        print_json({"dim": args.dim, "count": args.count,
                    "base": base.name, "states": entries})
        return EXIT_OK
    for entry in entries:
        print("state %d" % entry["state"])
        print("  %5s  %12s  %12s" % ("basis", "H", "pi"))
        for k, (h, pi) in enumerate(zip(entry["entropies"],
                                        entry["purities"])):
            print("  %5d  %12s  %12s" % (k, fmt(h), fmt(pi)))
        print("  %5s  %12s  %12s" % ("sum", fmt(entry["entropy_sum"]),
                                     fmt(entry["purity_sum"])))
        if "larsen_residual" in entry:
            print("  larsen residual  %s" % fmt(entry["larsen_residual"]))
    return EXIT_OK


def identity_check(args, defaults):
    tol = args.tol if args.tol is not None else defaults['verify_tol']
    process = BatchProcessLarsenIdentity(LoggingProgress(),
                                         threading.Event(), args.dim,
                                         args.samples, args.seed, tol,
                                         args.mixed_rank)
    passed = process.start()
    result = {"dim": args.dim, "samples": args.samples, "seed": args.seed,
              "tol": tol, "max_residual": process.max_residual,
              "max_mixed_residual": process.max_mixed_residual,
              "passed": passed}
    if args.format == "json":
        print_json(result)
    else:
        print("max residual        %s" % fmt(process.max_residual))
        if process.max_mixed_residual is not None:
            print("max mixed residual  %s"
                  % fmt(process.max_mixed_residual))
        print("result              %s" % ("PASS" if passed else "FAIL"))
    return EXIT_OK if passed else EXIT_FAILED


def bounds_report(args, defaults):
    report = bound_report(args.dim, args.count, resolve_base(args, defaults))
    if args.format == "json":
        print_json(report.as_dict())
        return EXIT_OK
    for kind, value in report.values.items():
        print("%-20s %s" % (kind.value, fmt(value)))
    print("%-20s %s" % ("best", report.best.value))
    return EXIT_OK


def bounds_sweep(args, defaults):
    base = resolve_base(args, defaults)
    rows = run_sweep(args.dim, base)
    emit_csv(rows, args.out)
    if args.svg:
        emit_svg_chart(rows, ChartSpec(title=figure_title(args.dim, base)),
                       args.svg)
    _log_window(rows, args.dim)
    return EXIT_OK


def bounds_check(args, defaults):
    process = BatchProcessSoundness(LoggingProgress(), threading.Event(),
                                    args.dim, args.samples, args.seed,
                                    resolve_base(args, defaults),
                                    args.mixed_rank)
    passed = process.start()
    print("bound values checked  %d" % process.checks)
    print("worst slack           %s" % fmt(process.worst_slack))
    for label, name, m, sample, slack in process.violations:
        print("violation  %s %s M=%d sample=%d slack=%s"
              % (label, name, m, sample, fmt(slack)))
    print("result                %s" % ("PASS" if passed else "FAIL"))
    return EXIT_OK if passed else EXIT_FAILED


def minimize(args, defaults):
    base = resolve_base(args, defaults)

    def pick(name, attribute):
        value = getattr(args, attribute)
        return defaults[name] if value is None else value

    cfg = OptimizerConfig(restarts=pick('restarts', 'restarts'),
                          max_iters=pick('max_iters', 'iters'),
                          step_init=defaults['step_init'],
                          converge_tol=defaults['converge_tol'],
                          seed=args.seed,
                          max_dim=pick('max_dim', 'max_dim'))
    result = gap_sweep(args.dim, [args.count], base, cfg,
                       pick('processes', 'processes'))[0]
    data = {"dim": args.dim, "count": args.count, "base": base.name,
            "min_value": result.min_value,
            "intermediate": result.intermediate_value,
            "refined": result.refined_value,
            "bound": result.bound_value,
            "gap": result.gap,
            "iterations": result.iterations_used,
            "argmin": result.argmin.to_dict()}
    if args.format == "json":
        print_json(data)
        return EXIT_OK
    for key in ("min_value", "intermediate", "refined", "bound", "gap"):
        print("%-13s %s" % (key, fmt(data[key])))
    print("%-13s %d" % ("iterations", result.iterations_used))
    print("argmin %s" % json.dumps(data["argmin"]))
    return EXIT_OK


def figure1(args, defaults):
    base = resolve_base(args, defaults)
    out_dir = Path(args.out_dir)
    os.makedirs(out_dir, exist_ok=True)
    rows = run_sweep(args.dim, base)
    emit_csv(rows, out_dir.joinpath("figure1.csv"))
    emit_svg_chart(rows, ChartSpec(title=figure_title(args.dim, base)),
                   out_dir.joinpath("figure1.svg"))
    window = _log_window(rows, args.dim)
    if window:
        print("refined bound dominates for M in [%d, %d]" % window)
    return EXIT_OK


def _log_window(rows, dim):
    window = dominance_window(rows, dim)
    if window is None:
        logging.info("Refined bound never dominates both weak bounds "
                     "for N=%d", dim)
    else:
        logging.info("Refined bound dominates for M in [%d, %d]", *window)
    return window


def config_show(args, defaults):
    for name, value in load_defaults().items():
        print("%-13s %s" % (name, value))
    return EXIT_OK


def config_set(args, defaults):
    Configuration().update_setting(args.key, args.value)
    return EXIT_OK


def _add_base(parser):
    parser.add_argument('--base', choices=['2', 'e'], default=None,
                        help='logarithm base (default from configuration)')


def _add_format(parser):
    parser.add_argument('--format', choices=['text', 'json'],
                        default='text')


def _group(subparsers, name, help_text):
    parser = subparsers.add_parser(name, help=help_text)
    children = parser.add_subparsers(dest='action', metavar='ACTION')
    children.required = True
    return children


def build_parser():
    parser = argparse.ArgumentParser(
        prog='mubentropy',
        description='Entropic uncertainty bounds for mutually unbiased '
                    'bases')
    parser.add_argument('-v', '--verbose', action='store_true',
                        help='log progress and debug output to stderr')
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    mubs = _group(commands, 'mubs', 'generate or verify basis sets')
    gen = mubs.add_parser('gen', help='write a standard basis set')
    gen.add_argument('--dim', type=int, required=True)
    gen.add_argument('--count', type=int, required=True)
    gen.add_argument('--out', required=True)
    gen.set_defaults(handler=mubs_gen)
    verify = mubs.add_parser('verify', help='check a basis set file')
    verify.add_argument('--in', dest='input', required=True)
    verify.add_argument('--tol', type=positive_float, default=None)
    _add_format(verify)
    verify.set_defaults(handler=mubs_verify)

    entropy = _group(commands, 'entropy', 'measurement entropies')
    evaluate = entropy.add_parser('eval', help='entropies of states')
    evaluate.add_argument('--dim', type=int, required=True)
    evaluate.add_argument('--count', type=int, required=True)
    source = evaluate.add_mutually_exclusive_group()
    source.add_argument('--state', default=None)
    source.add_argument('--random', type=positive_int, default=1)
    evaluate.add_argument('--seed', type=nonnegative_int, default=0)
    _add_base(evaluate)
    _add_format(evaluate)
    evaluate.set_defaults(handler=entropy_eval)

    identity = _group(commands, 'identity', 'purity identity')
    check = identity.add_parser('check', help='check random states')
    check.add_argument('--dim', type=int, required=True)
    check.add_argument('--samples', type=positive_int, required=True)
    check.add_argument('--seed', type=nonnegative_int, required=True)
    check.add_argument('--tol', type=positive_float, default=None)
    check.add_argument('--mixed-rank', type=positive_int, default=None)
    _add_format(check)
    check.set_defaults(handler=identity_check)

    bounds = _group(commands, 'bounds', 'closed-form bounds')
    report = bounds.add_parser('report', help='every bound for one N, M')
    report.add_argument('--dim', type=int, required=True)
    report.add_argument('--count', type=int, required=True)
    _add_base(report)
    _add_format(report)
    report.set_defaults(handler=bounds_report)
    sweep = bounds.add_parser('sweep', help='bounds for M = 1..N+1')
    sweep.add_argument('--dim', type=int, required=True)
    sweep.add_argument('--out', required=True)
    sweep.add_argument('--svg', default=None)
    _add_base(sweep)
    sweep.set_defaults(handler=bounds_sweep)
    sound = bounds.add_parser('check', help='bounds against random states')
    sound.add_argument('--dim', type=int, required=True)
    sound.add_argument('--samples', type=positive_int, required=True)
    sound.add_argument('--seed', type=nonnegative_int, required=True)
    sound.add_argument('--mixed-rank', type=positive_int, default=None)
    _add_base(sound)
    sound.set_defaults(handler=bounds_check)

    search = commands.add_parser('minimize',
                                 help='numerical minimum of the entropy sum')
    search.add_argument('--dim', type=int, required=True)
    search.add_argument('--count', type=int, required=True)
    search.add_argument('--restarts', type=positive_int, default=None)
    search.add_argument('--iters', type=positive_int, default=None)
    search.add_argument('--seed', type=nonnegative_int, default=0)
    search.add_argument('--processes', type=positive_int, default=None)
    search.add_argument('--max-dim', type=positive_int, default=None)
    _add_base(search)
    _add_format(search)
    search.set_defaults(handler=minimize)

    figure = commands.add_parser('figure1',
                                 help='sweep CSV and chart for N = 1009')
    figure.add_argument('--dim', type=int, default=constants.FIGURE_DIM)
    figure.add_argument('--out-dir', required=True)
    _add_base(figure)
    figure.set_defaults(handler=figure1)

    config = _group(commands, 'config', 'stored defaults')
    show = config.add_parser('show', help='print every setting')
    show.set_defaults(handler=config_show)
    update = config.add_parser('set', help='store a setting')
    update.add_argument('key', choices=sorted(SETTINGS))
    update.add_argument('value')
    update.set_defaults(handler=config_set)
    return parser


def dispatch(argv):
    """
    Run one command.
    :param argv: arguments without the program name.
    :return: exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    configure_logging(args.verbose)

    defaults = {} if args.handler in (config_show, config_set) \
        else load_defaults()
    try:
        return args.handler(args, defaults)
    except USAGE_ERRORS as e:
        logging.error("%s", e)
        return EXIT_USAGE
    except FAILURE_ERRORS as e:
        logging.error("%s", e)
        return EXIT_FAILED
