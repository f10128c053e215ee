"""
Command line front end.

Exit codes: 0 pass, 1 a checked property does not hold, 2 configuration,
degeneracy or input errors (and reports without samples).
"""

import argparse
import logging
import sys

import numpy as np

from liftcurv import __version__
from liftcurv.config import CONTRAPOSITIVE, DIRECT, MODES, family_spec, load_config, make_base, make_sampler
from liftcurv.exceptions import ConfigurationError, DegenerateError, DomainError, LoadReportError
from liftcurv.families import FAMILY_NAMES, build_family, defined_at_zero
from liftcurv.lemmas import LEMMAS, lemma_rank, random_point
from liftcurv.lift import VARIANTS
from liftcurv.report import (NO_SAMPLES_NOTICE, PointEntry, RunEntry, flatness_entry, has_samples, load_report,
                             new_report, render, save_report)
from liftcurv.verify import oracle_diff
from liftcurv.weyl import FLAT, MAX_OFFENDERS, NONFLAT, conformal_flatness_report


logger = logging.getLogger(__name__)


EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

PERTURBED_BASE = 'perturbed:0.1'

MAX_LEMMA_DIM = 5


def _overrides(args):
    names = {
        'dim': 'base.dim',
        'base': 'base.kind',
        'samples': 'sampler.count',
        'seed': 'sampler.seed',
        'variant': 'variant',
        'output': 'output',
        'family': 'family.name',
        'k': 'family.k',
        'eps': 'family.eps',
        'mode': 'mode',
    }
    return {dotname: getattr(args, name, None) for name, dotname in names.items()}


def _config(args):
    return load_config(args.config, _overrides(args))


def _family(config, sampler):
    return build_family(family_spec(config), sampler.t_range(), config.variant)


def _finish(report, config):
    print(render(report))
    if config.output:
        save_report(report, config.output)

    if not has_samples(report):
        return EXIT_ERROR

    return EXIT_PASS if all(run.passed for run in report.runs) else EXIT_FAIL


def _cmd_verify_theorem(args):
    args.family = args.name
    config = _config(args)
    if config.mode == CONTRAPOSITIVE and args.base is None and config.base.kind == 'flat':
        config.base.kind = PERTURBED_BASE

    base = make_base(config)
    sampler = make_sampler(config, base)
    family = None
    if config.mode == CONTRAPOSITIVE:
        family = _zero_section_family(config, sampler)
        if family is not None:
            sampler = make_sampler(config, base, at_zero=True)
        else:
            logger.warning("%s is undefined on the zero section, sampling y != 0 instead", config.family.name)

    if family is None:
        family = _family(config, sampler)

    t = config.tolerances
    result = conformal_flatness_report(family, base, sampler, config.variant, t.flat, t.nonflat)
    expected = NONFLAT if config.mode == CONTRAPOSITIVE else FLAT
    passed = result.verdict == expected

    report = new_report(config.sampler.seed, config.variant)
    report.runs.append(flatness_entry(result, 'verify-theorem', family.name, base, config.variant,
                                      config.mode, passed))
    return _finish(report, config)


def _zero_section_family(config, sampler):
    # None if the family cannot be evaluated at t = 0
    try:
        family = build_family(family_spec(config), (0.0, sampler.t_range()[1]), config.variant)
    except ConfigurationError:
        return None

    return family if defined_at_zero(family) else None


def _cmd_weyl_norm(args):
    config = _config(args)
    base = make_base(config)
    sampler = make_sampler(config, base)
    family = _family(config, sampler)

    t = config.tolerances
    result = conformal_flatness_report(family, base, sampler, config.variant, t.flat, t.nonflat)
    logger.warning("measured Weyl sup norm of %s on %s: %.3e (%s)", family.name, base.describe(),
                   result.sup_norm, result.verdict)

    report = new_report(config.sampler.seed, config.variant)
    report.runs.append(flatness_entry(result, 'weyl-norm', family.name, base, config.variant, config.mode, True))
    return _finish(report, config)


def _cmd_oracle_diff(args):
    config = _config(args)
    base = make_base(config)
    sampler = make_sampler(config, base)
    family = _family(config, sampler)
    t = config.tolerances

    entry = RunEntry()
    entry.command = 'oracle-diff'
    entry.family = family.name
    entry.base = base.describe()
    entry.dim = base.n
    entry.variant = config.variant
    entry.mode = config.mode
    entry.tolerance = t.oracle_rel

    failed = set()
    worst = {}
    offenders = []
    for x, y in sampler:
        try:
            diff = oracle_diff(family, base, x, y, config.variant, t.fd_step, t.oracle_rel, args.inject_fault)
        except (DomainError, DegenerateError) as e:
            logger.warning("skipping point x=%s y=%s: %s", list(x), list(y), e)
            entry.skipped += 1
            continue

        entry.points += 1
        failed.update(diff.failed)
        for name, value in diff.diffs.items():
            worst[name] = max(worst.get(name, 0.0), value)

        offenders.append((diff.diffs[diff.worst], diff.worst, np.asarray(x).tolist(), np.asarray(y).tolist()))

    entry.block_norms = worst
    entry.sup_norm = max(worst.values()) if worst else 0.0
    entry.worst_block = max(worst, key=worst.get) if worst else ''
    entry.passed = not failed
    entry.verdict = 'pass' if entry.passed else 'fail'
    entry.details = {'failed': sorted(failed, key=lambda name: -worst[name])}
    for value, name, x, y in sorted(offenders, key=lambda o: (-o[0], o[2], o[3]))[:MAX_OFFENDERS]:
        point = PointEntry()
        point.x = x
        point.y = y
        point.sup_norm = float(value)
        point.block = name
        entry.offenders.append(point)

    if failed:
        logger.error("tensors differing from the oracle: %s", ', '.join(entry.details['failed']))

    report = new_report(config.sampler.seed, config.variant)
    report.runs.append(entry)
    return _finish(report, config)


def _cmd_lemma_rank(args):
    config = _config(args)
    n = args.lemma_dim
    if not (1 <= n <= MAX_LEMMA_DIM):
        raise ConfigurationError(f"Lemma dimension must be in [1, {MAX_LEMMA_DIM}], got {n}")

    asserted = n >= (3 if args.which == 'lemma2' else 2)
    rng = np.random.default_rng(config.sampler.seed)
    ranks = []
    for _ in range(config.sampler.count):
        g, y = random_point(rng, n)
        ranks.append(lemma_rank(args.which, g, None, y))

    entry = RunEntry()
    entry.command = 'lemma-rank'
    entry.family = args.which
    entry.base = 'random'
    entry.dim = n
    entry.points = len(ranks)
    entry.mode = 'asserted' if asserted else 'measured'
    deficient = [r for r in ranks if not r.full_rank]
    entry.verdict = 'full-rank' if not deficient else 'rank-deficient'
    entry.passed = (not deficient) or (not asserted)
    entry.details = {
        'columns': ranks[0].columns if ranks else 0,
        'ranks': sorted({r.rank for r in ranks}),
        'deficient': len(deficient),
    }
    if deficient and not asserted:
        logger.warning("%s at n=%d: %d of %d draws rank-deficient (ranks %s)", args.which, n,
                       len(deficient), len(ranks), entry.details['ranks'])

    report = new_report(config.sampler.seed, config.variant)
    report.runs.append(entry)
    return _finish(report, config)


def _cmd_report(args):
    report = load_report(args.path)
    print(render(report))
    if not has_samples(report):
        logger.error(NO_SAMPLES_NOTICE)
        return EXIT_ERROR

    return EXIT_PASS


def _run_options():
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--config', default=None, help="TOML or JSON config file")
    parent.add_argument('--dim', type=int, default=None, help="base dimension n")
    parent.add_argument('--base', default=None, help="flat, flat-curvilinear, sphere:c or perturbed:eps")
    parent.add_argument('--samples', type=int, default=None, help="number of sample points")
    parent.add_argument('--seed', type=int, default=None, help="sampler seed")
    parent.add_argument('--variant', choices=VARIANTS, default=None, help="formula variant")
    parent.add_argument('--k', type=float, default=None, help="family constant k")
    parent.add_argument('--eps', type=float, default=None, help="family constant epsilon")
    parent.add_argument('--output', default=None, help="write the JSON report to this file")
    return parent


def build_parser():
    parser = argparse.ArgumentParser(prog='liftcurv', description="Curvature of natural lifted metrics on TM")
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    parser.add_argument('-v', '--verbose', action='count', default=0, help="-v for info, -vv for debug output")
    sub = parser.add_subparsers(dest='command', required=True)
    run = _run_options()

    p_verify = sub.add_parser('verify-theorem', parents=[run], help="Check that a family is conformally flat")
    p_verify.add_argument('name', choices=FAMILY_NAMES)
    p_verify.add_argument('--mode', choices=MODES, default=None,
                          help=f"'{DIRECT}' expects flat, '{CONTRAPOSITIVE}' expects non-flat on a perturbed base")
    p_verify.set_defaults(func=_cmd_verify_theorem)

    p_oracle = sub.add_parser('oracle-diff', parents=[run], help="Compare the analytic path with the oracle")
    p_oracle.add_argument('--family', choices=FAMILY_NAMES, default=None)
    p_oracle.add_argument('--inject-fault', default=None, metavar='TENSOR',
                          help="corrupt one analytic tensor first, e.g. K.YYXY")
    p_oracle.set_defaults(func=_cmd_oracle_diff)

    p_norm = sub.add_parser('weyl-norm', parents=[run], help="Measure the Weyl sup norm without asserting")
    p_norm.add_argument('--family', choices=FAMILY_NAMES, default=None)
    p_norm.set_defaults(func=_cmd_weyl_norm)

    p_lemma = sub.add_parser('lemma-rank', parents=[run], help="Rank of a lemma's monomial system")
    p_lemma.add_argument('which', choices=LEMMAS)
    p_lemma.add_argument('--lemma-dim', type=int, default=3, help="dimension n, 1 to 5")
    p_lemma.set_defaults(func=_cmd_lemma_rank)

    p_report = sub.add_parser('report', help="Render a saved JSON report")
    p_report.add_argument('path')
    p_report.set_defaults(func=_cmd_report)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')

    try:
        return args.func(args)
    except (ConfigurationError, DegenerateError, DomainError, LoadReportError) as e:
        logger.error("%s: %s", e.__class__.__name__, e)
        return EXIT_ERROR


def run():
    sys.exit(main())
