"""
JSON run reports.

A report holds one entry per run (one family on one base), each with its
verdict, the per-block Weyl sup norms and the worst sample points. Reports
written twice from the same configuration differ only in 'created'.
"""

import datetime
import logging

from liftcurv import __version__
from liftcurv.exceptions import LoadReportError
from liftcurv.record import Record
from liftcurv.serializer import Serializer
from liftcurv.types import RecordList


logger = logging.getLogger(__name__)


NO_SAMPLES_NOTICE = "no samples: every sample point was skipped or none were requested"


class PointEntry(Record):
    x = []
    y = []
    sup_norm = 0.0
    block = ''


class RunEntry(Record):
    command = ''
    family = ''
    base = ''
    dim = 0
    variant = ''
    mode = ''
    verdict = ''
    passed = False
    sup_norm = 0.0
    worst_block = ''
    points = 0
    skipped = 0
    tolerance = 0.0
    block_norms = {}
    details = {}
    offenders = RecordList(PointEntry)


class Provenance(Record):
    version = __version__
    seed = 0
    variant = ''


class Report(Record):
    schema_version = 1

    created = ''
    provenance = Provenance
    runs = RecordList(RunEntry)


def new_report(seed, variant):
    """
    :rtype: Report
    """
    ret = Report()
    ret.created = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec='seconds')
    ret.provenance.seed = seed
    ret.provenance.variant = variant
    return ret


def flatness_entry(result, command, family, base, variant, mode, passed):
    """
    Report entry for a liftcurv.weyl.FlatnessResult

    :rtype: RunEntry
    """
    ret = RunEntry()
    ret.command = command
    ret.family = family
    ret.base = base.describe()
    ret.dim = base.n
    ret.variant = variant
    ret.mode = mode
    ret.verdict = result.verdict
    ret.passed = bool(passed)
    ret.sup_norm = float(result.sup_norm)
    ret.worst_block = result.worst_block or ''
    ret.points = result.points
    ret.skipped = result.skipped
    ret.tolerance = float(result.flat_tol)
    ret.block_norms = dict(result.block_norms)
    for sup, block, x, y in result.offenders:
        point = PointEntry()
        point.x = x
        point.y = y
        point.sup_norm = float(sup)
        point.block = block
        ret.offenders.append(point)

    return ret


def save_report(report, filename):
    Serializer(report).to_file(filename)
    logger.info("report written to %s", filename)


def load_report(filename):
    """
    :raises liftcurv.exceptions.LoadReportError: if the file is missing,\
        corrupt or of an unknown schema version
    :rtype: Report
    """
    report = Report()
    try:
        result = Serializer(report).from_file(filename)
    except LoadReportError:
        raise
    except Exception as e:
        raise LoadReportError(f"Invalid report {filename}: {e}") from None

    if (result is not None) and (not result.success):
        raise LoadReportError(f"Unsupported report schema version {result.old_version}")

    return report


def has_samples(report):
    return any(run.points > 0 for run in report.runs)


def _order(run):
    # failures first, then by decreasing norm
    return (run.passed, -run.sup_norm, run.family, run.base)


def render(report):
    """
    Plain-text summary of a report, worst run first
    """
    lines = [f"liftcurv {report.provenance.version} report, created {report.created}, "
             f"seed {report.provenance.seed}, {report.provenance.variant} formulas"]

    if not has_samples(report):
        lines.append(NO_SAMPLES_NOTICE)
        return '\n'.join(lines)

    runs = sorted(report.runs, key=_order)
    failed = sum(1 for run in runs if not run.passed)
    lines.append(f"{len(runs)} run(s), {failed} failed")
    lines.append('')

    header = f"{'result':<6}  {'command':<15} {'family':<12} {'base':<18} {'n':>2}  {'verdict':<12} " \
             f"{'sup norm':>10}  {'worst block':<11} {'points':>6} {'skipped':>7}"
    lines.append(header)
    lines.append('-' * len(header))
    for run in runs:
        lines.append(f"{'PASS' if run.passed else 'FAIL':<6}  {run.command:<15} {run.family:<12} {run.base:<18} "
                     f"{run.dim:>2}  {run.verdict:<12} {run.sup_norm:>10.3e}  {run.worst_block or '-':<11} "
                     f"{run.points:>6} {run.skipped:>7}")

    worst = runs[0]
    if worst.block_norms:
        lines.append('')
        lines.append(f"block norms of {worst.family} on {worst.base}:")
        for name, value in sorted(worst.block_norms.items(), key=lambda kv: -kv[1]):
            lines.append(f"  {name:<6} {value:.3e}")

    if len(worst.offenders) > 0:
        lines.append('')
        lines.append("worst points:")
        for point in worst.offenders:
            lines.append(f"  {point.sup_norm:.3e} {point.block:<6} x={point.x} y={point.y}")

    return '\n'.join(lines)
