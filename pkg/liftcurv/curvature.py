"""
Curvature of the lifted metric in twelve blocks. A block named by the kinds
of (i, j, k, h) holds K^h_kij, the h-component of K(E_i, E_j) E_k, as an
array [h, k, i, j]. Blocks with a horizontal first and vertical second
argument are determined by antisymmetry and are not stored.
"""

import logging
from dataclasses import dataclass

import numpy as np

from liftcurv.connection import coefficients_at, derivatives_at
from liftcurv.frame import BLOCK_NAMES, assemble_blocks, split_blocks
from liftcurv.lift import CORRECTED, LiftedPoint


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurvBlocks(object):
    """
    :ivar dict blocks: block name -> [h, k, i, j] array
    :ivar int n: base dimension
    :ivar str variant: formula variant the blocks were computed with
    """
    blocks: dict
    n: int
    variant: str = CORRECTED

    def __getitem__(self, name):
        return self.blocks[name]

    def full(self):
        """
        Full (2n)^4 curvature array [d, c, a, b]
        """
        return assemble_blocks(self.blocks, self.n)


@dataclass(frozen=True)
class RicciScalar(object):
    """
    Ricci tensor blocks, RicXY[i, j] = Ric(X_i, Y_j), and the scalar curvature
    """
    RicXX: np.ndarray
    RicXY: np.ndarray
    RicYX: np.ndarray
    RicYY: np.ndarray
    scal: float

    def full(self):
        return np.block([[self.RicXX, self.RicXY], [self.RicYX, self.RicYY]])


def _swap(f):
    # f(i, j) - f(j, i) for an [h, k, i, j] array
    return f - np.einsum('hkij->hkji', f)


def _printed_blocks(lp):
    c = coefficients_at(lp)
    d = derivatives_at(lp)
    Q, Qt, P, Pt, S, St = c.Q, c.Qt, c.P, c.Pt, c.S, c.St
    riemann, r0, nr0 = lp.point.riemann, lp.point.r0, lp.point.nabla_r0
    G2, g = lp.metric.G2, lp.metric.g
    H1, H3 = lp.inverse.H1, lp.inverse.H3
    c3 = lp.metric.jets[2].v

    def es(spec, *ops):
        return np.einsum(spec + '->hkij', *ops)

    def vertical(dA, A1, B1, A2, B2):
        # d_i A^h_jk - d_j A^h_ik + A1^l_jk B1^h_il + A2^l_jk B2^h_il - (i <-> j)
        # einsum returns a view of dA; build a new array
        ret = np.einsum('ihjk->hkij', dA) + es('ljk,hil', A1, B1) + es('ljk,hil', A2, B2)
        return _swap(ret)

    blocks = {}
    blocks['XXXX'] = (_swap(es('hil,ljk', St, St) + es('hli,ljk', P, S))
                      + riemann + es('lij,hlk', r0, P))
    blocks['XXXY'] = (es('ljk,hil', St, S) + es('hli,ljk', Pt, S)
                      - es('lik,hjl', St, S) - es('hlj,lik', Pt, S)
                      + es('hlk,lij', Pt, r0)
                      - 0.5 * es('irjk,rl,hl', nr0, G2, H3)
                      + c3 * es('ja,iakh', g, nr0))
    blocks['XXYX'] = (_swap(es('lkj,hli', Pt, P) + es('lkj,hil', P, St))
                      + es('lij,hlk', r0, Qt))
    blocks['XXYY'] = (_swap(es('lkj,hli', Pt, Pt) + es('lkj,hil', P, S))
                      + es('lij,hlk', r0, Q) + riemann)

    blocks['YYXX'] = vertical(d.dP, Pt, Qt, P, P)
    blocks['YYXY'] = vertical(d.dPt, Pt, Q, P, Pt)
    blocks['YYYX'] = vertical(d.dQt, Q, Qt, Qt, P)
    blocks['YYYY'] = vertical(d.dQ, Q, Q, Qt, Pt)

    blocks['YXXX'] = (np.einsum('ihjk->hkij', d.dSt) + es('ljk,hil', S, Qt) + es('ljk,hil', St, P)
                      - es('lik,hlj', Pt, P) - es('lik,hjl', P, St)
                      - es('jrik,rl,hl', nr0, G2, H3))
    blocks['YXXY'] = (np.einsum('ihjk->hkij', d.dS) + es('ljk,hil', S, Q) + es('ljk,hil', St, Pt)
                      - es('lik,hlj', Pt, Pt) - es('lik,hjl', P, S)
                      - es('jrik,rl,hl', nr0, G2, H1))
    blocks['YXYX'] = (np.einsum('ihkj->hkij', d.dP) + es('lkj,hil', Pt, Qt) + es('lkj,hil', P, P)
                      - es('lik,hlj', Q, P) - es('lik,hjl', Qt, St))
    blocks['YXYY'] = (np.einsum('ihkj->hkij', d.dPt) + es('lkj,hil', Pt, Q) + es('lkj,hil', P, Pt)
                      - es('lik,hlj', Q, Pt) - es('lik,hjl', Qt, S))
    return blocks


def curvature_at(lp):
    """
    Curvature blocks at an evaluated point. The corrected variant splits the
    adapted-frame curvature; the printed variant evaluates the closed-form
    block expressions term by term.

    :param LiftedPoint lp: evaluated point
    :rtype: CurvBlocks
    """
    if lp.variant == CORRECTED:
        blocks = split_blocks(lp.frame.K, lp.n)
    else:
        blocks = _printed_blocks(lp)

    logger.debug("curvature blocks at %r: %s", lp,
                 ", ".join(f"{name}={np.max(np.abs(blocks[name])):.3e}" for name in BLOCK_NAMES))
    return CurvBlocks(blocks=blocks, n=lp.n, variant=lp.variant)


def curvature_blocks(params, base, x, y, variant=CORRECTED):
    """
    The twelve curvature blocks K^h_kij of the lifted metric at (x, y)

    :param liftcurv.jets.ParamFamily params: coefficient functions
    :param liftcurv.base.BaseGeometry base: base manifold
    :param x: base point
    :param y: fibre point
    :param str variant: 'corrected' or 'printed'

    :raises liftcurv.exceptions.DegenerateMetricError: at degenerate points
    :raises liftcurv.exceptions.DomainError: outside the family's domain
    :rtype: CurvBlocks
    """
    return curvature_at(LiftedPoint(params, base, x, y, variant))


def ricci_tensor(K):
    """
    Ric(Eb, Ec) = trace of a -> K(Ea, Eb) Ec, for a [d, c, a, b] array
    """
    return np.einsum('acab->bc', K)


def ricci_scalar(curv, metric, inv):
    """
    Ricci tensor blocks and scalar curvature

    :param CurvBlocks curv: curvature blocks
    :param liftcurv.lift.MetricBlocks metric: unused beyond its dimension
    :param liftcurv.lift.InverseBlocks inv: inverse metric blocks

    :rtype: RicciScalar
    """
    n = metric.n
    ric = ricci_tensor(curv.full())
    XX, XY = ric[:n, :n], ric[:n, n:]
    YX, YY = ric[n:, :n], ric[n:, n:]
    scal = (np.einsum('ij,ij', inv.H1, XX) + np.einsum('ij,ij', inv.H3, XY + YX)
            + np.einsum('ij,ij', inv.H2, YY))
    return RicciScalar(RicXX=XX, RicXY=XY, RicYX=YX, RicYY=YY, scal=float(scal))
