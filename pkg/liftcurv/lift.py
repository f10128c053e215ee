"""
Blocks of the lifted metric G on TM and of its inverse, in the adapted frame
(delta/delta x^1..n, d/dy^1..n), together with their derivatives along the
fibre coordinates y.

Array layouts: G1[j, k], dG1[i, j, k] = d_i G1_jk, ddG1[i, j, k, l] =
d_i d_j G1_kl and dH1[i, j, k] = d_i H1^jk, likewise for the other blocks.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from liftcurv.base import base_point, contract_y
from liftcurv.frame import frame_geometry
from liftcurv.exceptions import ConfigurationError, DegenerateMetricError
from liftcurv.jets import Jet3


logger = logging.getLogger(__name__)


CORRECTED = 'corrected'
PRINTED = 'printed'
VARIANTS = (CORRECTED, PRINTED)

DEGENERACY_TOL = 1e-12


def energy_density(base, x, y):
    """
    t = 1/2 g_ik(x) y^i y^k
    """
    y = np.asarray(y, dtype=float)
    return 0.5 * float(y @ base.metric(x) @ y)


@dataclass(frozen=True)
class MetricBlocks(object):
    """
    G1 = c1 g + d1 g0 g0 (horizontal), G2 = c2 g + d2 g0 g0 (vertical),
    G3 = c3 g + d3 g0 g0 (mixed), plus the base data they were built from
    """
    G1: np.ndarray
    G2: np.ndarray
    G3: np.ndarray
    t: float
    g: np.ndarray
    ginv: np.ndarray
    g0: np.ndarray
    y: np.ndarray
    jets: tuple

    @property
    def n(self):
        return self.g.shape[0]

    def full(self):
        """
        Assembled 2n x 2n matrix [[G1, G3], [G3, G2]]
        """
        return np.block([[self.G1, self.G3], [self.G3, self.G2]])


@dataclass(frozen=True)
class InverseBlocks(object):
    """
    H_a = p_a g^-1 + q_a y y for a = 1, 2, 3, with the jets of the p and q
    coefficients (their first channel feeds the derivatives of H)
    """
    p1: Jet3
    p2: Jet3
    p3: Jet3
    q1: Jet3
    q2: Jet3
    q3: Jet3
    H1: np.ndarray
    H2: np.ndarray
    H3: np.ndarray

    def full(self):
        return np.block([[self.H1, self.H3], [self.H3, self.H2]])


@dataclass(frozen=True)
class BlockDerivatives(object):
    """
    Fibre derivatives of the metric and inverse blocks. Each field is a tuple
    holding the arrays for blocks 1, 2 and 3.
    """
    dG: tuple
    ddG: tuple
    dH: tuple

    def full_dG(self):
        """
        d_i of the assembled 2n x 2n metric, array [i, a, b]
        """
        d1, d2, d3 = self.dG
        return np.concatenate([np.concatenate([d1, d3], axis=2), np.concatenate([d3, d2], axis=2)], axis=1)

    def full_ddG(self):
        d1, d2, d3 = self.ddG
        return np.concatenate([np.concatenate([d1, d3], axis=3), np.concatenate([d3, d2], axis=3)], axis=2)

    def full_dH(self):
        d1, d2, d3 = self.dH
        return np.concatenate([np.concatenate([d1, d3], axis=2), np.concatenate([d3, d2], axis=2)], axis=1)


def _check_variant(variant):
    if variant not in VARIANTS:
        raise ConfigurationError(f"Unknown formula variant '{variant}', must be one of {VARIANTS}")


def metric_blocks(params, base, x, y):
    """
    Lifted metric blocks at the point (x, y) of TM

    :param params: ParamFamily
    :param base: BaseGeometry

    :raises liftcurv.exceptions.DomainError: if t is outside the family domain
    :rtype: MetricBlocks
    """
    y = np.asarray(y, dtype=float)
    g = base.metric(x)
    g0 = contract_y(g, y)
    t = 0.5 * float(y @ g0)
    jets = params.evaluate(t)

    gg = np.outer(g0, g0)
    c1, c2, c3, d1, d2, d3 = (j.v for j in jets)
    return MetricBlocks(G1=c1 * g + d1 * gg, G2=c2 * g + d2 * gg, G3=c3 * g + d3 * gg,
                        t=t, g=g, ginv=base.inverse_metric(x), g0=g0, y=y, jets=tuple(jets))


def _gate(value, what):
    if abs(value) <= DEGENERACY_TOL:
        raise DegenerateMetricError(f"Degenerate lifted metric: {what} = {value}")


def _q_regular(jets, t, det):
    c1, c2, c3, d1, d2, d3 = jets
    a1, a2, a3 = c1 + 2.0 * t * d1, c2 + 2.0 * t * d2, c3 + 2.0 * t * d3
    den = a1 * a2 - a3 * a3
    _gate(den.v, "(c1 + 2t d1)(c2 + 2t d2) - (c3 + 2t d3)^2")

    q1 = (-c2 * c2 * d1 - c3 * c3 * d2 + 2.0 * c2 * c3 * d3 - 2.0 * c2 * d1 * d2 * t + 2.0 * c2 * d3 * d3 * t)
    q2 = (-c3 * c3 * d1 - c1 * c1 * d2 + 2.0 * c1 * c3 * d3 - 2.0 * c1 * d1 * d2 * t + 2.0 * c1 * d3 * d3 * t)
    q3 = (c1 * c3 * d2 + c2 * c3 * d1 - c1 * c2 * d3 - c3 * c3 * d3 + 2.0 * c3 * d1 * d2 * t
          - 2.0 * c3 * d3 * d3 * t)

    scale = (det * den).reciprocal()
    return q1 * scale, q2 * scale, q3 * scale


def _q_printed(jets, t, p1, p2, p3):
    c1, c2, c3, d1, d2, d3 = jets
    a1, a2, a3 = c1 + 2.0 * t * d1, c2 + 2.0 * t * d2, c3 + 2.0 * t * d3
    den = a1 * a2 - a3 * a3
    _gate(den.v, "(c1 + 2t d1)(c2 + 2t d2) - (c3 + 2t d3)^2")
    _gate(a2.v, "c2 + 2t d2")

    q1 = -(c2 * d1 * p1 - c3 * d3 * p1 - c3 * d2 * p3 + c2 * d3 * p3 + 2.0 * d1 * d2 * p1 * t
           - 2.0 * d3 * d3 * p1 * t) / den

    inner = (d3 * p1 + d2 * p3) * a1 - (d1 * p1 + d3 * p3) * a3
    q2 = -(d2 * p2 + d3 * p3) / a2 + a3 * inner / (a2 * den)
    q3 = -inner / den
    return q1, q2, q3


def inverse_blocks(params, base, x, y, variant=CORRECTED, metric=None):
    """
    Inverse blocks H1, H2, H3 with their p and q coefficients. The corrected
    variant uses the common-denominator form of q1, q2, q3, which stays
    regular where c2 + 2t d2 vanishes; the printed variant divides by it.

    :param metric: MetricBlocks already computed at this point, optional

    :raises liftcurv.exceptions.DegenerateMetricError: if c1 c2 - c3^2, the\
        q denominator or the determinant of the assembled metric is within\
        1e-12 of zero
    :rtype: InverseBlocks
    """
    _check_variant(variant)
    if metric is None:
        metric = metric_blocks(params, base, x, y)

    jets = metric.jets
    c1, c2, c3 = jets[:3]
    det = c1 * c2 - c3 * c3
    _gate(det.v, "c1 c2 - c3^2")
    _gate(np.linalg.det(metric.full()), "det G")

    p1, p2, p3 = c2 / det, c1 / det, -c3 / det
    t = Jet3.variable(metric.t)
    if variant == CORRECTED:
        q1, q2, q3 = _q_regular(jets, t, det)
    else:
        q1, q2, q3 = _q_printed(jets, t, p1, p2, p3)

    yy = np.outer(metric.y, metric.y)
    ginv = metric.ginv
    return InverseBlocks(p1=p1, p2=p2, p3=p3, q1=q1, q2=q2, q3=q3,
                         H1=p1.v * ginv + q1.v * yy, H2=p2.v * ginv + q2.v * yy, H3=p3.v * ginv + q3.v * yy)


def _dG(c, d, g, g0, variant):
    ret = c.d1 * np.einsum('i,jk->ijk', g0, g) + d.d1 * np.einsum('i,j,k->ijk', g0, g0, g0)
    ret += d.v * np.einsum('ij,k->ijk', g, g0)
    if variant == CORRECTED:
        ret += d.v * np.einsum('ik,j->ijk', g, g0)
    else:
        ret += d.v * np.einsum('i,jk->ijk', g0, g)

    return ret


def _ddG(c, d, g, g0, variant):
    ret = c.d2 * np.einsum('i,j,kl->ijkl', g0, g0, g) + c.d1 * np.einsum('ij,kl->ijkl', g, g)
    if variant == CORRECTED:
        ret += d.d2 * np.einsum('i,j,k,l->ijkl', g0, g0, g0, g0)
    else:
        ret += d.d2 * np.einsum('j,k,l,i->ijkl', g0, g0, g0, np.ones_like(g0))

    ret += d.d1 * (np.einsum('ij,k,l->ijkl', g, g0, g0) + np.einsum('j,ik,l->ijkl', g0, g, g0)
                   + np.einsum('j,k,il->ijkl', g0, g0, g) + np.einsum('i,jk,l->ijkl', g0, g, g0)
                   + np.einsum('i,k,jl->ijkl', g0, g0, g))
    ret += d.v * (np.einsum('jk,il->ijkl', g, g) + np.einsum('ik,jl->ijkl', g, g))
    return ret


def _dH(p, q, ginv, g0, y):
    eye = np.eye(len(y))
    return (p.d1 * np.einsum('jk,i->ijk', ginv, g0) + q.d1 * np.einsum('i,j,k->ijk', g0, y, y)
            + q.v * (np.einsum('ji,k->ijk', eye, y) + np.einsum('j,ki->ijk', y, eye)))


def block_derivatives(params, base, x, y, variant=CORRECTED, metric=None, inverse=None):
    """
    Fibre derivatives d_i G_a, d_i d_j G_a and d_i H_a of the three blocks.
    The printed variant reproduces two misprints: the last term of d_i G
    carries g_0i g_jk instead of g_ik g_0j, and the d'' term of d_i d_j G lacks
    its g_0i factor.

    :rtype: BlockDerivatives
    """
    _check_variant(variant)
    if metric is None:
        metric = metric_blocks(params, base, x, y)

    if inverse is None:
        inverse = inverse_blocks(params, base, x, y, variant, metric)

    c1, c2, c3, d1, d2, d3 = metric.jets
    g, g0 = metric.g, metric.g0
    pairs = ((c1, d1), (c2, d2), (c3, d3))

    dG = tuple(_dG(c, d, g, g0, variant) for c, d in pairs)
    ddG = tuple(_ddG(c, d, g, g0, variant) for c, d in pairs)
    dH = tuple(_dH(p, q, metric.ginv, g0, metric.y)
               for p, q in ((inverse.p1, inverse.q1), (inverse.p2, inverse.q2), (inverse.p3, inverse.q3)))

    return BlockDerivatives(dG=dG, ddG=ddG, dH=dH)


class LiftedPoint(object):
    """
    Everything evaluated at one point (x, y) of TM for one family and one
    formula variant. The adapted-frame geometry is computed on first use.
    """
    def __init__(self, params, base, x, y, variant=CORRECTED):
        _check_variant(variant)
        self.params = params
        self.base = base
        self.variant = variant
        self.point = base_point(base, x, y)
        self.x = self.point.x
        self.y = self.point.y
        self.metric = metric_blocks(params, base, self.x, self.y)
        self.inverse = inverse_blocks(params, base, self.x, self.y, variant, self.metric)
        self.derivs = block_derivatives(params, base, self.x, self.y, variant, self.metric, self.inverse)

    def __repr__(self):
        return f"LiftedPoint({self.params.name}, {self.base!r}, x={self.x.tolist()}, y={self.y.tolist()})"

    @property
    def n(self):
        return self.base.n

    @cached_property
    def frame(self):
        """
        Adapted-frame connection and curvature, always built from the
        corrected block derivatives

        :rtype: liftcurv.frame.FrameGeometry
        """
        derivs = self.derivs
        if self.variant != CORRECTED:
            derivs = block_derivatives(self.params, self.base, self.x, self.y, CORRECTED, self.metric)

        return frame_geometry(self.metric, self.inverse, derivs, self.point)


def lifted_point(params, base, x, y, variant=CORRECTED):
    """
    :rtype: LiftedPoint
    """
    return LiftedPoint(params, base, x, y, variant)
