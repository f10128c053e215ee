"""
Weyl conformal curvature of the lifted metric.

    C(X, Y)Z = K(X, Y)Z + L(Y, Z)X - L(X, Z)Y + G(Y, Z)NX - G(X, Z)NY

with L = -Ric/(m-2) + scal G/(2(m-1)(m-2)), m = 2n, and G(NX, Y) = L(X, Y).
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from liftcurv.curvature import curvature_at, ricci_scalar, ricci_tensor
from liftcurv.exceptions import ConfigurationError, DegenerateError, DomainError
from liftcurv.frame import BLOCK_NAMES, assemble_blocks, split_blocks
from liftcurv.lift import CORRECTED, LiftedPoint


logger = logging.getLogger(__name__)


FLAT_TOL = 1e-8
NONFLAT_TOL = 1e-4

# Worst points kept per report
MAX_OFFENDERS = 5

FLAT = 'flat'
NONFLAT = 'non-flat'
INCONCLUSIVE = 'inconclusive'
NO_SAMPLES = 'no-samples'

WEYL_NAMES = tuple('C' + name for name in BLOCK_NAMES)


@dataclass(frozen=True)
class LNBlocks(object):
    """
    L blocks [j, k] and N blocks [h, j]. NXX and NXY hold the horizontal and
    vertical components of N(X_j), NYX and NYY those of N(Y_j).
    """
    LXX: np.ndarray
    LXY: np.ndarray
    LYX: np.ndarray
    LYY: np.ndarray
    NXX: np.ndarray
    NXY: np.ndarray
    NYX: np.ndarray
    NYY: np.ndarray

    def full_L(self):
        return np.block([[self.LXX, self.LXY], [self.LYX, self.LYY]])

    def full_N(self):
        """
        N as a [d, a] array, N(Ea) = N[d, a] Ed
        """
        return np.block([[self.NXX, self.NYX], [self.NXY, self.NYY]])


@dataclass(frozen=True)
class WeylBlocks(object):
    """
    :ivar dict blocks: 'CXXXX' .. 'CYXYY' -> [h, k, i, j] arrays
    """
    blocks: dict
    n: int
    variant: str = CORRECTED

    def __getitem__(self, name):
        return self.blocks[name]

    def full(self):
        return assemble_blocks({name[1:]: arr for name, arr in self.blocks.items()}, self.n)

    def block_norms(self):
        return {name: float(np.max(np.abs(self.blocks[name]))) for name in WEYL_NAMES}

    @property
    def sup_norm(self):
        return max(self.block_norms().values())

    def worst_block(self):
        norms = self.block_norms()
        return max(WEYL_NAMES, key=lambda name: norms[name])


def ln_blocks(ric, metric, inv, n):
    """
    L and N blocks from the Ricci blocks and the scalar curvature

    :param liftcurv.curvature.RicciScalar ric: Ricci blocks and scalar
    :param liftcurv.lift.MetricBlocks metric: metric blocks
    :param liftcurv.lift.InverseBlocks inv: inverse metric blocks
    :param int n: base dimension

    :raises liftcurv.exceptions.ConfigurationError: for n < 2
    :rtype: LNBlocks
    """
    if n < 2:
        raise ConfigurationError(f"The Weyl tensor of TM needs n >= 2, got n={n}")

    a = -1.0 / (2.0 * (n - 1))
    b = ric.scal / (2.0 * (2 * n - 1))
    LXX = a * (ric.RicXX - b * metric.G1)
    LXY = a * (ric.RicXY - b * metric.G3)
    LYX = a * (ric.RicYX - b * metric.G3)
    LYY = a * (ric.RicYY - b * metric.G2)

    def up(L, H):
        return np.einsum('jk,kh->hj', L, H)

    H1, H2, H3 = inv.H1, inv.H2, inv.H3
    return LNBlocks(LXX=LXX, LXY=LXY, LYX=LYX, LYY=LYY,
                    NXX=up(LXX, H1) + up(LXY, H3),
                    NXY=up(LXX, H3) + up(LXY, H2),
                    NYX=up(LYX, H1) + up(LYY, H3),
                    NYY=up(LYX, H3) + up(LYY, H2))


def weyl_tensor(K, G, H):
    """
    Weyl tensor of a curvature array K[d, c, a, b] for the metric G in any
    dimension m >= 3

    :raises liftcurv.exceptions.ConfigurationError: for m < 3
    :return: C[d, c, a, b]
    """
    m = G.shape[0]
    if m < 3:
        raise ConfigurationError(f"The Weyl tensor needs dimension >= 3, got {m}")

    ric = ricci_tensor(K)
    scal = np.einsum('ab,ab', H, ric)
    L = -ric / (m - 2) + scal * G / (2.0 * (m - 1) * (m - 2))
    N = np.einsum('ac,cd->da', L, H)
    I = np.eye(m)

    ret = K + np.einsum('bc,da->dcab', L, I) - np.einsum('ac,db->dcab', L, I)
    ret += np.einsum('bc,da->dcab', G, N) - np.einsum('ac,db->dcab', G, N)
    return ret


def _printed_weyl(curv, ln, metric, n):
    I = np.eye(n)
    G1, G2, G3 = metric.G1, metric.G2, metric.G3

    def Lj(L):
        # L_jk delta^h_i
        return np.einsum('jk,hi->hkij', L, I)

    def Li(L):
        # L_ik delta^h_j
        return np.einsum('ik,hj->hkij', L, I)

    def Gj(G, N):
        # G_jk N^h_i
        return np.einsum('jk,hi->hkij', G, N)

    def Gi(G, N):
        # G_ik N^h_j
        return np.einsum('ik,hj->hkij', G, N)

    K = curv.blocks
    return {
        'CXXXX': K['XXXX'] + Lj(ln.LXX) - Li(ln.LXX) + Gj(G1, ln.NXX) - Gi(G1, ln.NXY),
        'CXXXY': K['XXXY'] + Gj(G1, ln.NXY) - Gi(G1, ln.NXY),
        'CXXYX': K['XXYX'] + Lj(ln.LXY) - Li(ln.LXY) + Gj(G3, ln.NXX) - Gi(G3, ln.NXX),
        'CXXYY': K['XXYY'] + Gj(G3, ln.NXY) - Gi(G3, ln.NXY),
        'CYYXX': K['YYXX'] + Gj(G3, ln.NYX) - Gi(G3, ln.NYX),
        'CYYXY': K['YYXY'] + Lj(ln.LYX) - Li(ln.LYX) + Gj(G3, ln.NYY) - Gi(G3, ln.NYY),
        'CYYYX': K['YYYX'] + Gj(G2, ln.NYX) - Gi(G2, ln.NYX),
        'CYYYY': K['YYYY'] + Lj(ln.LYY) - Li(ln.LYY) + Gj(G2, ln.NYY) - Gi(G2, ln.NYY),
        'CYXXX': K['YXXX'] - Li(ln.LYX) + Gj(G1, ln.NYX) - Gi(G3, ln.NXX),
        'CYXXY': K['YXXY'] + Lj(ln.LXX) + Gj(G1, ln.NYY) - Gi(G3, ln.NXY),
        'CYXYX': K['YXYX'] - Li(ln.LYY) + Gj(G3, ln.NYX) - Gi(G2, ln.NXX),
        'CYXYY': K['YXYY'] + Lj(ln.LXY) + Gj(G3, ln.NYY) - Gi(G2, ln.NXX),
    }


def weyl_blocks(curv, ln, metric, n, variant=CORRECTED):
    """
    The twelve Weyl blocks. The corrected variant applies the decomposition
    over the full 2n frame; the printed variant evaluates the block
    expressions as printed, N-block choices included.

    :param liftcurv.curvature.CurvBlocks curv: curvature blocks
    :param LNBlocks ln: L and N blocks
    :param liftcurv.lift.MetricBlocks metric: metric blocks
    :param int n: base dimension
    :param str variant: 'corrected' or 'printed'

    :rtype: WeylBlocks
    """
    if variant != CORRECTED:
        return WeylBlocks(blocks=_printed_weyl(curv, ln, metric, n), n=n, variant=variant)

    G = metric.full()
    K = curv.full()
    L = ln.full_L()
    N = ln.full_N()
    I = np.eye(2 * n)
    C = K + np.einsum('bc,da->dcab', L, I) - np.einsum('ac,db->dcab', L, I)
    C += np.einsum('bc,da->dcab', G, N) - np.einsum('ac,db->dcab', G, N)
    blocks = {'C' + name: arr for name, arr in split_blocks(C, n).items()}
    return WeylBlocks(blocks=blocks, n=n, variant=variant)


def weyl_at(lp):
    """
    Weyl blocks at an evaluated point

    :param LiftedPoint lp: evaluated point
    :rtype: WeylBlocks
    """
    curv = curvature_at(lp)
    ric = ricci_scalar(curv, lp.metric, lp.inverse)
    ln = ln_blocks(ric, lp.metric, lp.inverse, lp.n)
    return weyl_blocks(curv, ln, lp.metric, lp.n, lp.variant)


def weyl_trace(weyl, inverse):
    """
    Largest component of the contraction of the lowered Weyl tensor with the
    inverse metric over its first and third slots

    :param WeylBlocks weyl: Weyl blocks
    :param liftcurv.lift.InverseBlocks inverse: inverse metric blocks
    """
    H = inverse.full()
    C = weyl.full()
    G = np.linalg.inv(H)
    low = np.einsum('ld,dcab->lcab', G, C)
    return float(np.max(np.abs(np.einsum('lcab,la->cb', low, H))))


def base_weyl(base, x):
    """
    Weyl tensor of the base manifold, [h, k, i, j]. For n = 3 it vanishes
    identically and the result does not discriminate conformal flatness.

    :param liftcurv.base.BaseGeometry base: base manifold
    :param x: base point

    :raises liftcurv.exceptions.ConfigurationError: for n < 3
    """
    if base.n < 3:
        raise ConfigurationError(f"The base Weyl tensor needs n >= 3, got n={base.n}")

    if base.n == 3:
        logger.warning("base Weyl tensor is identically zero for n=3, result is non-discriminating")

    x = base.check_point(x)
    return weyl_tensor(base.riemann(x), base.metric(x), base.inverse_metric(x))


def verdict_for(sup_norm, flat_tol=FLAT_TOL, nonflat_tol=NONFLAT_TOL):
    if sup_norm <= flat_tol:
        return FLAT

    if sup_norm > nonflat_tol:
        return NONFLAT

    return INCONCLUSIVE


@dataclass
class FlatnessResult(object):
    """
    Aggregate of the Weyl sup norms over a set of sample points. Merging is
    by maximum, so the result does not depend on sample order.

    :ivar str verdict: 'flat', 'non-flat', 'inconclusive' or 'no-samples'
    :ivar dict block_norms: block name -> largest norm over all points
    :ivar worst_block: block with the largest norm, None when flat
    :ivar worst_point: (x, y) where worst_block peaks
    """
    verdict: str = NO_SAMPLES
    sup_norm: float = 0.0
    block_norms: dict = field(default_factory=lambda: {name: 0.0 for name in WEYL_NAMES})
    worst_block: object = None
    worst_point: object = None
    points: int = 0
    skipped: int = 0
    flat_tol: float = FLAT_TOL
    nonflat_tol: float = NONFLAT_TOL
    offenders: list = field(default_factory=list)

    def add(self, weyl, x, y):
        norms = weyl.block_norms()
        for name, value in norms.items():
            self.block_norms[name] = max(self.block_norms[name], value)

        x = np.asarray(x, dtype=float).tolist()
        y = np.asarray(y, dtype=float).tolist()
        self.offenders.append((weyl.sup_norm, weyl.worst_block(), x, y))
        self.offenders.sort(key=lambda o: (-o[0], o[2], o[3]))
        del self.offenders[MAX_OFFENDERS:]

        sup, _, wx, wy = self.offenders[0]
        self.sup_norm = sup
        self.worst_point = (wx, wy)
        self.points += 1

    def finish(self):
        if self.points == 0:
            self.verdict = NO_SAMPLES
            return self

        self.verdict = verdict_for(self.sup_norm, self.flat_tol, self.nonflat_tol)
        if self.verdict != FLAT:
            self.worst_block = max(WEYL_NAMES, key=lambda name: self.block_norms[name])

        return self


def conformal_flatness_report(params, base, sampler, variant=CORRECTED,
                              flat_tol=FLAT_TOL, nonflat_tol=NONFLAT_TOL):
    """
    Measure the Weyl tensor of the lifted metric over sample points and give a
    flatness verdict. Points where the metric degenerates or the family is
    undefined are skipped and counted.

    :param liftcurv.jets.ParamFamily params: coefficient functions
    :param liftcurv.base.BaseGeometry base: base manifold
    :param sampler: iterable of (x, y) pairs
    :param str variant: 'corrected' or 'printed'

    :rtype: FlatnessResult
    """
    result = FlatnessResult(flat_tol=flat_tol, nonflat_tol=nonflat_tol)
    for x, y in sampler:
        try:
            weyl = weyl_at(LiftedPoint(params, base, x, y, variant))
        except (DegenerateError, DomainError) as e:
            logger.debug("skipping point x=%s y=%s: %s", x, y, e)
            result.skipped += 1
            continue

        logger.debug("sup norm %.3e at x=%s y=%s", weyl.sup_norm, x, y)
        result.add(weyl, x, y)

    result.finish()
    logger.info("%s on %s: %s, sup norm %.3e over %d points (%d skipped)",
                params.name, base.describe(), result.verdict, result.sup_norm,
                result.points, result.skipped)
    return result
