"""
Coordinate-frame oracle.

The lifted metric is written in the induced coordinates (x, y) of TM by the
exact frame change

    d/dx^i = delta/delta x^i + Gamma^h_0i d/dy^h,

and its Christoffel symbols, curvature, Ricci tensor, scalar curvature and
Weyl tensor are obtained by central finite differences and the textbook
formulas in dimension m = 2n. Nothing here uses the connection, curvature or
Weyl modules; only the metric blocks and the base charts.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from liftcurv.base import contract_y, levi_civita, riemann_from_christoffels
from liftcurv.exceptions import DegenerateError, DegenerateMetricError, DomainError, StencilDomainError
from liftcurv.lift import metric_blocks


logger = logging.getLogger(__name__)


DEFAULT_STEP = 1e-4
DEFAULT_REL_TOL = 1e-4


class CoordMetric(object):
    """
    The lifted metric in induced coordinates z = (x, y), callable as z -> G(z)

    :param params: liftcurv.jets.ParamFamily
    :param base: liftcurv.base.BaseGeometry
    """
    def __init__(self, params, base):
        self.params = params
        self.base = base
        self.n = base.n

    def __repr__(self):
        return f"CoordMetric({self.params.name}, {self.base!r})"

    def split(self, z):
        z = np.asarray(z, dtype=float)
        if z.shape != (2 * self.n,):
            raise DomainError(f"Point of TM must have {2 * self.n} coordinates, got shape {z.shape}")

        return z[:self.n], z[self.n:]

    def frame_change(self, z):
        """
        Matrices Psi and Phi = Psi^-1 with d/dz^mu = Psi[mu, a] E_a and
        E_a = Phi[a, mu] d/dz^mu

        :return: (Psi, Phi)
        """
        x, y = self.split(z)
        gamma0 = contract_y(self.base.christoffel(x), y, axis=1)
        psi = np.eye(2 * self.n)
        psi[:self.n, self.n:] = gamma0.T
        phi = np.eye(2 * self.n)
        phi[:self.n, self.n:] = -gamma0.T
        return psi, phi

    def frame_metric(self, z):
        """
        The assembled adapted-frame matrix [[G1, G3], [G3, G2]]
        """
        x, y = self.split(z)
        return metric_blocks(self.params, self.base, x, y).full()

    def __call__(self, z):
        psi, _ = self.frame_change(z)
        ret = psi @ self.frame_metric(z) @ psi.T
        det = np.linalg.det(ret)
        if (not np.isfinite(det)) or abs(det) < 1e-14:
            raise DegenerateMetricError(f"Coordinate metric is degenerate at z={np.asarray(z).tolist()}, det={det}")

        return ret


def coordinate_metric(params, base):
    """
    :rtype: CoordMetric
    """
    return CoordMetric(params, base)


@dataclass(frozen=True)
class CoordGeometry(object):
    """
    Finite-difference geometry of a metric in coordinates. Layouts follow the
    base module: christoffel [l, a, b], dchristoffel [m, l, a, b],
    riemann and weyl [h, k, i, j].
    """
    metric: np.ndarray
    inverse: np.ndarray
    christoffel: np.ndarray
    dchristoffel: np.ndarray
    riemann: np.ndarray
    ricci: np.ndarray
    scalar: float
    weyl: np.ndarray
    step: float


def _steps(z, step):
    return step * (1.0 + np.abs(z))


def _evaluate(metric, z):
    try:
        return metric(z)
    except (DomainError, DegenerateError) as e:
        raise StencilDomainError(f"Metric is not evaluable on the stencil at z={z.tolist()}: {e}") from e


def metric_derivatives(metric, z, step=DEFAULT_STEP):
    """
    Central-difference first and second derivatives of a coordinate metric

    :param metric: callable z -> (m, m) array
    :param z: coordinates, shape (m,)
    :param float step: relative step, scaled by (1 + |z_mu|) per coordinate

    :raises liftcurv.exceptions.StencilDomainError: if a stencil point is\
        outside the domain or degenerate
    :return: (g, dg[r, a, b], ddg[r, s, a, b])
    """
    z = np.asarray(z, dtype=float)
    m = z.shape[0]
    h = _steps(z, step)
    g = _evaluate(metric, z)

    plus, minus = [], []
    for r in range(m):
        e = np.zeros(m)
        e[r] = h[r]
        plus.append(_evaluate(metric, z + e))
        minus.append(_evaluate(metric, z - e))

    dg = np.empty((m,) + g.shape)
    ddg = np.empty((m, m) + g.shape)
    for r in range(m):
        dg[r] = (plus[r] - minus[r]) / (2.0 * h[r])
        ddg[r, r] = (plus[r] - 2.0 * g + minus[r]) / (h[r] * h[r])

    for r in range(m):
        for s in range(r + 1, m):
            er = np.zeros(m)
            er[r] = h[r]
            es = np.zeros(m)
            es[s] = h[s]
            mixed = (_evaluate(metric, z + er + es) - _evaluate(metric, z + er - es)
                     - _evaluate(metric, z - er + es) + _evaluate(metric, z - er - es))
            ddg[r, s] = ddg[s, r] = mixed / (4.0 * h[r] * h[s])

    return g, dg, ddg


def christoffel_derivative(ginv, dg, ddg):
    """
    d_r Gamma^l_mn from exact metric derivatives, array [r, l, m, n]
    """
    low = 0.5 * (np.einsum('msn->smn', dg) + np.einsum('nsm->smn', dg) - dg)
    dlow = 0.5 * (np.einsum('rmsn->rsmn', ddg) + np.einsum('rnsm->rsmn', ddg) - ddg)
    dginv = -np.einsum('ab,rbc,cd->rad', ginv, dg, ginv)
    return np.einsum('rls,smn->rlmn', dginv, low) + np.einsum('ls,rsmn->rlmn', ginv, dlow)


def textbook_weyl(riemann, g, ginv):
    """
    Weyl tensor in dimension m >= 3 through the Schouten tensor,
    W = Rm - P (Kulkarni-Nomizu) g, returned raised as [h, k, i, j]
    """
    m = g.shape[0]
    rm = np.einsum('hkij,hl->ijkl', riemann, g)
    ric = np.einsum('acab->bc', riemann)
    scal = np.einsum('ab,ab', ginv, ric)
    P = (ric - scal * g / (2.0 * (m - 1))) / (m - 2)
    W = rm - (np.einsum('jk,il->ijkl', P, g) + np.einsum('jk,il->ijkl', g, P)
              - np.einsum('ik,jl->ijkl', P, g) - np.einsum('ik,jl->ijkl', g, P))
    return np.einsum('hl,ijkl->hkij', ginv, W)


def _geometry(g, dg, ddg, step):
    ginv = np.linalg.inv(g)
    gamma = levi_civita(ginv, dg)
    dgamma = christoffel_derivative(ginv, dg, ddg)
    riemann = riemann_from_christoffels(gamma, dgamma)
    ric = np.einsum('acab->bc', riemann)
    scal = float(np.einsum('ab,ab', ginv, ric))
    weyl = textbook_weyl(riemann, g, ginv) if g.shape[0] >= 3 else np.zeros_like(riemann)
    return CoordGeometry(metric=g, inverse=ginv, christoffel=gamma, dchristoffel=dgamma,
                         riemann=riemann, ricci=ric, scalar=scal, weyl=weyl, step=step)


def fd_geometry(metric, z, step=DEFAULT_STEP, richardson=True):
    """
    Christoffel symbols, Riemann, Ricci, scalar curvature and Weyl tensor of a
    coordinate metric by central finite differences

    :param metric: callable z -> (m, m) array, e.g. a CoordMetric
    :param z: coordinates
    :param float step: relative step
    :param bool richardson: combine the steps h and h/2 as (4 D(h/2) - D(h))/3

    :raises liftcurv.exceptions.StencilDomainError: if the stencil leaves the\
        domain of the metric
    :rtype: CoordGeometry
    """
    g, dg, ddg = metric_derivatives(metric, z, step)
    if richardson:
        _, dg2, ddg2 = metric_derivatives(metric, z, 0.5 * step)
        dg = (4.0 * dg2 - dg) / 3.0
        ddg = (4.0 * ddg2 - ddg) / 3.0

    return _geometry(g, dg, ddg, step)


def frame_curvature(riemann, psi, phi):
    """
    Pull a coordinate (1,3) tensor [l, k, m, n] back to the adapted frame,
    array [d, c, a, b]
    """
    return np.einsum('ld,ck,am,bn,lkmn->dcab', psi, phi, phi, phi, riemann)


def coordinate_christoffels(connection, gamma, dgamma, y, psi, phi):
    """
    Coordinate Christoffel symbols [l, m, v] of a connection given in the
    adapted frame by nabla_Ea Eb = connection[d, a, b] Ed

    :param gamma: base Christoffel symbols [h, i, j]
    :param dgamma: their derivatives [m, h, i, j]
    :param y: fibre point
    """
    n = gamma.shape[0]
    dpsi = np.zeros((2 * n,) * 3)
    dpsi[:n, :n, n:] = np.einsum('mhkv,k->mvh', dgamma, y)
    dpsi[n:, :n, n:] = np.einsum('hmv->mvh', gamma)
    return (np.einsum('mvb,bl->lmv', dpsi, phi)
            + np.einsum('ma,ve,dae,dl->lmv', psi, psi, connection, phi))


def relative_difference(a, b):
    """
    max |a - b| / max(max |b|, 1)
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.max(np.abs(a - b)) / max(float(np.max(np.abs(b))), 1.0))


def convergence_order(error_h, error_half):
    """
    Observed order of a finite-difference scheme from the errors at steps h
    and h/2
    """
    if error_half <= 0.0 or error_h <= 0.0:
        return math.nan

    return math.log2(error_h / error_half)


@dataclass
class OracleDiff(object):
    """
    :ivar dict diffs: tensor name -> relative difference
    :ivar list failed: names over tolerance, worst first
    """
    diffs: dict = field(default_factory=dict)
    tolerance: float = DEFAULT_REL_TOL
    failed: list = field(default_factory=list)
    order: float = math.nan

    @property
    def passed(self):
        return not self.failed

    @property
    def worst(self):
        if not self.diffs:
            return None

        return max(self.diffs, key=self.diffs.get)


def compare(analytic, oracle, tolerance=DEFAULT_REL_TOL):
    """
    Compare analytic tensors with oracle tensors of the same names

    :param dict analytic: name -> array, already in the oracle's frame
    :param dict oracle: name -> array
    :param float tolerance: relative tolerance

    :rtype: OracleDiff
    """
    ret = OracleDiff(tolerance=tolerance)
    for name in analytic:
        if name not in oracle:
            continue

        ret.diffs[name] = relative_difference(analytic[name], oracle[name])

    ret.failed = sorted((name for name, d in ret.diffs.items() if not d <= tolerance),
                        key=lambda name: -ret.diffs[name])
    for name in ret.failed:
        logger.debug("%s differs from the oracle by %.3e", name, ret.diffs[name])

    return ret
