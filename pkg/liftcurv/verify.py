"""
Analytic path versus coordinate oracle at single points of TM.
"""

import logging

import numpy as np

from liftcurv.connection import coefficients_at, connection_array
from liftcurv.curvature import curvature_at, ricci_scalar
from liftcurv.exceptions import ConfigurationError
from liftcurv.frame import BLOCK_NAMES, split_blocks
from liftcurv.lift import CORRECTED, LiftedPoint
from liftcurv.oracle import (DEFAULT_REL_TOL, DEFAULT_STEP, compare, convergence_order, coordinate_christoffels,
                             coordinate_metric, fd_geometry, frame_curvature)
from liftcurv.weyl import ln_blocks, weyl_blocks


logger = logging.getLogger(__name__)


FAULT_SIZE = 1e-2


def analytic_tensors(lp):
    """
    Analytic metric, connection (in coordinates), curvature and Weyl blocks
    and scalar curvature at an evaluated point

    :param LiftedPoint lp: evaluated point
    :return: dict name -> array, with curvature blocks under 'K.<block>' and\
        Weyl blocks under 'C.<block>'
    """
    coord = coordinate_metric(lp.params, lp.base)
    z = np.concatenate([lp.x, lp.y])
    psi, phi = coord.frame_change(z)

    conn = coefficients_at(lp)
    curv = curvature_at(lp)
    ric = ricci_scalar(curv, lp.metric, lp.inverse)
    weyl = weyl_blocks(curv, ln_blocks(ric, lp.metric, lp.inverse, lp.n), lp.metric, lp.n, lp.variant)

    ret = {
        'metric': psi @ lp.metric.full() @ psi.T,
        'christoffel': coordinate_christoffels(connection_array(conn), lp.point.gamma, lp.point.dgamma,
                                               lp.y, psi, phi),
        'scalar': np.array(ric.scal),
    }
    for name in BLOCK_NAMES:
        ret['K.' + name] = curv[name]
        ret['C.' + name] = weyl['C' + name]

    return ret


def oracle_tensors(params, base, x, y, step=DEFAULT_STEP, richardson=True):
    """
    Oracle counterparts of :func:`analytic_tensors`, curvature and Weyl pulled
    back to the adapted frame

    :raises liftcurv.exceptions.StencilDomainError: if the stencil leaves the\
        domain of the family
    """
    coord = coordinate_metric(params, base)
    z = np.concatenate([np.asarray(x, dtype=float), np.asarray(y, dtype=float)])
    geo = fd_geometry(coord, z, step, richardson)
    psi, phi = coord.frame_change(z)
    n = base.n

    K = split_blocks(frame_curvature(geo.riemann, psi, phi), n)
    C = split_blocks(frame_curvature(geo.weyl, psi, phi), n)
    ret = {
        'metric': geo.metric,
        'christoffel': geo.christoffel,
        'scalar': np.array(geo.scalar),
    }
    for name in BLOCK_NAMES:
        ret['K.' + name] = K[name]
        ret['C.' + name] = C[name]

    return ret


def inject_fault(tensors, name, size=FAULT_SIZE):
    """
    Copy of a tensor dict with one entry perturbed, for checking that the
    comparison points at the right block

    :raises liftcurv.exceptions.ConfigurationError: for an unknown name
    """
    if name not in tensors:
        raise ConfigurationError(f"Cannot inject a fault into unknown tensor '{name}', "
                                 f"expected one of {sorted(tensors)}")

    ret = dict(tensors)
    faulty = np.array(tensors[name], dtype=float)
    faulty.flat[0] += size * max(1.0, float(np.max(np.abs(faulty))))
    ret[name] = faulty
    return ret


def _curvature_error(analytic, oracle):
    return max(float(np.max(np.abs(analytic[k] - oracle[k]))) for k in analytic if k.startswith('K.'))


def oracle_diff(params, base, x, y, variant=CORRECTED, step=DEFAULT_STEP, tolerance=DEFAULT_REL_TOL,
                fault=None, order=False):
    """
    Compare the analytic tensors with the oracle at one point

    :param str fault: analytic tensor to corrupt before comparing, e.g.\
        'K.YYXY'
    :param bool order: also estimate the convergence order of the oracle's\
        curvature from unextrapolated runs at step and step/2

    :rtype: liftcurv.oracle.OracleDiff
    """
    lp = LiftedPoint(params, base, x, y, variant)
    analytic = analytic_tensors(lp)
    if fault is not None:
        analytic = inject_fault(analytic, fault)

    ret = compare(analytic, oracle_tensors(params, base, x, y, step), tolerance)
    if order:
        coarse = oracle_tensors(params, base, x, y, step, richardson=False)
        fine = oracle_tensors(params, base, x, y, 0.5 * step, richardson=False)
        ret.order = convergence_order(_curvature_error(analytic, coarse), _curvature_error(analytic, fine))

    if ret.failed:
        logger.warning("%s on %s at x=%s y=%s: %d tensors differ from the oracle, worst %s (%.3e)",
                       params.name, base.describe(), list(lp.x), list(lp.y), len(ret.failed),
                       ret.worst, ret.diffs[ret.worst])

    return ret
