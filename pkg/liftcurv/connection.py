"""
Levi-Civita connection of the lifted metric in the adapted frame:

    nabla_Yi Yj = Q^h_ij Yh + Qt^h_ij Xh
    nabla_Xi Yj = (Gamma^h_ij + Pt^h_ji) Yh + P^h_ji Xh
    nabla_Yi Xj = P^h_ij Xh + Pt^h_ij Yh
    nabla_Xi Xj = (Gamma^h_ij + St^h_ij) Xh + S^h_ij Yh

with X = delta/delta x and Y = d/dy. Coefficient arrays are indexed
[h, i, j], their fibre derivatives [i, h, j, k] for d_i C^h_jk.
"""

import logging
from dataclasses import dataclass

import numpy as np

from liftcurv.frame import coefficient_blocks, reference_coefficients
from liftcurv.lift import CORRECTED, LiftedPoint


logger = logging.getLogger(__name__)


COEFFICIENT_NAMES = ('Q', 'Qt', 'P', 'Pt', 'S', 'St')


@dataclass(frozen=True)
class ConnCoeffs(object):
    Q: np.ndarray
    Qt: np.ndarray
    P: np.ndarray
    Pt: np.ndarray
    S: np.ndarray
    St: np.ndarray
    gamma: np.ndarray

    def as_dict(self):
        return {name: getattr(self, name) for name in COEFFICIENT_NAMES}


@dataclass(frozen=True)
class ConnDerivs(object):
    dQ: np.ndarray
    dQt: np.ndarray
    dP: np.ndarray
    dPt: np.ndarray
    dS: np.ndarray
    dSt: np.ndarray

    def as_dict(self):
        return {name: getattr(self, 'd' + name) for name in COEFFICIENT_NAMES}


def _raise(low, H):
    # low[i, j, k] H^kh -> [h, i, j]
    return np.einsum('ijk,kh->hij', low, H)


def coefficients_at(lp):
    """
    Connection coefficients from the closed-form expressions. The printed
    variant takes d_k G2_ij in S where the corrected one takes d_k G1_ij.

    :param LiftedPoint lp: evaluated point
    :rtype: ConnCoeffs
    """
    metric, inv, derivs = lp.metric, lp.inverse, lp.derivs
    dG1, dG2, dG3 = derivs.dG
    H1, H2, H3 = inv.H1, inv.H2, inv.H3
    r0 = lp.point.r0
    c3 = metric.jets[2].v

    vert = dG2 + np.einsum('jik->ijk', dG2) - np.einsum('kij->ijk', dG2)
    mixed = dG3 + np.einsum('jik->ijk', dG3)
    Q = 0.5 * (_raise(vert, H2) + _raise(mixed, H3))
    Qt = 0.5 * (_raise(vert, H3) + _raise(mixed, H1))

    a = dG3 - np.einsum('kij->ijk', dG3)
    b = dG1 + np.einsum('ljk,li->ijk', r0, metric.G2)
    P = 0.5 * (_raise(a, H3) + _raise(b, H1))
    Pt = 0.5 * (_raise(a, H2) + _raise(b, H3))

    rlow = np.einsum('il,ljk->ijk', metric.g, r0)
    rg = np.einsum('lij,lk->ijk', r0, metric.G2)
    dGs = dG1 if lp.variant == CORRECTED else dG2
    S = -0.5 * _raise(np.einsum('kij->ijk', dGs) + rg, H2) + c3 * _raise(rlow, H3)
    St = -0.5 * _raise(np.einsum('kij->ijk', dG1) + rg, H3) + c3 * _raise(rlow, H1)

    return ConnCoeffs(Q=Q, Qt=Qt, P=P, Pt=Pt, S=S, St=St, gamma=lp.point.gamma)


def conn_coeffs(params, base, x, y, variant=CORRECTED):
    """
    Coefficients Q, Qt, P, Pt, S, St of the Levi-Civita connection

    :raises liftcurv.exceptions.DegenerateMetricError: at degenerate points
    :rtype: ConnCoeffs
    """
    return coefficients_at(LiftedPoint(params, base, x, y, variant))


def _vertical_combo(dG):
    # d_j G_kl + d_k G_jl - d_l G_jk, as [j, k, l]
    return dG + np.einsum('kjl->jkl', dG) - np.einsum('ljk->jkl', dG)


def _vertical_combo2(ddG):
    # d_i (d_j G_kl + d_k G_jl - d_l G_jk), as [i, j, k, l]
    return ddG + np.einsum('ikjl->ijkl', ddG) - np.einsum('iljk->ijkl', ddG)


def _printed_derivs(lp):
    metric, inv, derivs = lp.metric, lp.inverse, lp.derivs
    dG1, dG2, dG3 = derivs.dG
    ddG1, ddG2, ddG3 = derivs.ddG
    dH1, dH2, dH3 = derivs.dH
    H1, H2, H3 = inv.H1, inv.H2, inv.H3
    G2, g, g0 = metric.G2, metric.g, metric.g0
    riemann, r0 = lp.point.riemann, lp.point.r0
    c3 = metric.jets[2]

    def first(dH, H, low, dlow):
        # 1/2 dH^hl low[j, k, l] + 1/2 H^hl dlow[i, j, k, l]
        return 0.5 * (np.einsum('ihl,jkl->ihjk', dH, low) + np.einsum('hl,ijkl->ihjk', H, dlow))

    vert, dvert = _vertical_combo(dG2), _vertical_combo2(ddG2)
    mixed = dG3 + np.einsum('kjl->jkl', dG3)
    dmixed = ddG3 + np.einsum('ikjl->ijkl', ddG3)
    dQ = first(dH2, H2, vert, dvert) + first(dH3, H3, mixed, dmixed)
    dQt = first(dH3, H3, vert, dvert) + first(dH1, H1, mixed, dmixed)

    # d_j G3_kl - d_l G3_jk and d_j G1_kl + R^r_0kl G2_rj
    a = dG3 - np.einsum('ljk->jkl', dG3)
    da = ddG3 - np.einsum('iljk->ijkl', ddG3)
    b = dG1 + np.einsum('rkl,rj->jkl', r0, G2)
    db = ddG1 + np.einsum('rikl,rj->ijkl', riemann, G2) + np.einsum('rkl,irj->ijkl', r0, dG2)
    dPt = first(dH2, H2, a, da) + first(dH3, H3, b, db)
    dP = first(dH3, H3, a, da) + first(dH1, H1, b, db)

    # d_r G1_jk + R^l_0jk G2_lr as [j, k, r], and its d_i
    e = np.einsum('rjk->jkr', dG1) + np.einsum('ljk,lr->jkr', r0, G2)
    de = (np.einsum('irjk->ijkr', ddG1) + np.einsum('lijk,lr->ijkr', riemann, G2)
          + np.einsum('ljk,ilr->ijkr', r0, dG2))
    r_j0kr = np.einsum('ja,akr->jkr', g, r0)
    r_jikr = np.einsum('ja,aikr->ijkr', g, riemann)

    def torsion_part(dH, H, dHc, Hc):
        ret = -0.5 * (np.einsum('ijkr,rh->ihjk', de, H) + np.einsum('jkr,irh->ihjk', e, dH))
        ret += c3.d1 * np.einsum('i,jkr,rh->ihjk', g0, r_j0kr, Hc)
        ret += c3.v * (np.einsum('ijkr,rh->ihjk', r_jikr, Hc) + np.einsum('jkr,irh->ihjk', r_j0kr, dHc))
        return ret

    dS = torsion_part(dH2, H2, dH3, H3)
    dSt = torsion_part(dH3, H3, dH1, H1)

    return ConnDerivs(dQ=dQ, dQt=dQt, dP=dP, dPt=dPt, dS=dS, dSt=dSt)


def derivatives_at(lp):
    """
    Fibre derivatives of the connection coefficients. The corrected variant
    reads them off the adapted-frame engine, the printed variant evaluates the
    closed-form derivative expressions.

    :param LiftedPoint lp: evaluated point
    :rtype: ConnDerivs
    """
    if lp.variant != CORRECTED:
        return _printed_derivs(lp)

    blocks = coefficient_blocks(lp.frame.DT[lp.n:], lp.n)
    return ConnDerivs(**{'d' + name: blocks[name] for name in COEFFICIENT_NAMES})


def conn_derivs(params, base, x, y, variant=CORRECTED):
    """
    :rtype: ConnDerivs
    """
    return derivatives_at(LiftedPoint(params, base, x, y, variant))


def connection_array(conn):
    """
    Full adapted-frame coefficients nabla_Ea Eb = C[d, a, b] Ed assembled from
    the four cases of the connection
    """
    n = conn.gamma.shape[0]
    X = slice(0, n)
    Y = slice(n, 2 * n)
    ret = reference_coefficients(conn.gamma)

    ret[Y, Y, Y] += conn.Q
    ret[X, Y, Y] += conn.Qt
    ret[Y, X, Y] += np.einsum('hji->hij', conn.Pt)
    ret[X, X, Y] += np.einsum('hji->hij', conn.P)
    ret[X, Y, X] += conn.P
    ret[Y, Y, X] += conn.Pt
    ret[X, X, X] += conn.St
    ret[Y, X, X] += conn.S
    return ret


def _frame_vector(v, n):
    if isinstance(v, (int, np.integer)):
        ret = np.zeros(2 * n)
        ret[v] = 1.0
        return ret

    return np.asarray(v, dtype=float)


def nabla(conn, direction, target):
    """
    Covariant derivative of a frame field with constant adapted-frame
    components along another

    :param ConnCoeffs conn: connection coefficients
    :param direction: frame index (0..n-1 horizontal, n..2n-1 vertical) or\
        component vector of length 2n
    :param target: frame index or component vector

    :return: adapted-frame components, length 2n
    """
    n = conn.gamma.shape[0]
    u = _frame_vector(direction, n)
    v = _frame_vector(target, n)
    return np.einsum('dab,a,b->d', connection_array(conn), u, v)
