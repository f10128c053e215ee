"""
Connection and curvature of the lifted metric over the whole adapted frame.

Frame index a = 0..n-1 is delta/delta x^a (horizontal, X), a = n..2n-1 is
d/dy^(a-n) (vertical, Y). The reference connection D acts on the frame
through the base Christoffel symbols only:

    D_Xi Xj = Gamma^h_ij Xh,   D_Xi Yj = Gamma^h_ij Yh,   D_Y = 0

D preserves G along horizontal directions, and its torsion is
Tor(Xi, Xj) = R^l_0ij Yl. The Levi-Civita connection is nabla = D + T with
the difference tensor T (array [d, a, b], nabla_a E_b - D_a E_b = T[d, a, b] E_d)
solved from metric compatibility and vanishing torsion. The curvature

    K(Ea, Eb) Ec = K[d, c, a, b] Ed

follows from the curvature of D, the covariant derivative of T and T itself.
"""

from dataclasses import dataclass

import numpy as np


BLOCK_NAMES = ('XXXX', 'XXXY', 'XXYX', 'XXYY',
               'YYXX', 'YYXY', 'YYYX', 'YYYY',
               'YXXX', 'YXXY', 'YXYX', 'YXYY')


@dataclass(frozen=True)
class FrameGeometry(object):
    """
    Full adapted-frame tensors at one point of TM

    :ivar G: metric, [a, b]
    :ivar H: inverse metric, [a, b]
    :ivar torsion: torsion of D, [d, a, b]
    :ivar T: difference tensor, [d, a, b]
    :ivar DT: covariant derivative of T along every frame direction,\
        [m, d, a, b] holding (D_Em T)(Ea, Eb) components
    :ivar omega: coefficients of D, [d, a, b]
    :ivar K: curvature, [d, c, a, b]
    """
    G: np.ndarray
    H: np.ndarray
    torsion: np.ndarray
    T: np.ndarray
    DT: np.ndarray
    omega: np.ndarray
    K: np.ndarray

    @property
    def n(self):
        return self.G.shape[0] // 2

    def connection(self):
        """
        Levi-Civita coefficients nabla_Ea Eb = Gamma[d, a, b] Ed
        """
        return self.omega + self.T


def _offset(letter, n):
    return 0 if letter == 'X' else n


def block_slices(name, n):
    """
    Slices into a [d, c, a, b] array for a block named by the kinds of its
    i, j, k and h slots, in that order. Block arrays are indexed [h, k, i, j].
    """
    oi, oj, ok, oh = (_offset(letter, n) for letter in name)
    return (slice(oh, oh + n), slice(ok, ok + n), slice(oi, oi + n), slice(oj, oj + n))


def split_blocks(full, n):
    """
    Split a (2n)^4 curvature-type array into its twelve named blocks
    """
    return {name: full[block_slices(name, n)].copy() for name in BLOCK_NAMES}


def assemble_blocks(blocks, n):
    """
    Rebuild the full (2n)^4 array from the twelve named blocks. The blocks with
    a horizontal first and a vertical second argument follow from
    antisymmetry in the argument pair.
    """
    ret = np.zeros((2 * n,) * 4)
    for name in BLOCK_NAMES:
        ret[block_slices(name, n)] = blocks[name]
        if name.startswith('YX'):
            swapped = 'XY' + name[2:]
            ret[block_slices(swapped, n)] = -np.transpose(blocks[name], (0, 1, 3, 2))

    return ret


def reference_coefficients(gamma):
    """
    Coefficients of D in the adapted frame, array [d, a, b]
    """
    n = gamma.shape[0]
    ret = np.zeros((2 * n,) * 3)
    ret[:n, :n, :n] = gamma
    ret[n:, :n, n:] = gamma
    return ret


def reference_torsion(r0):
    """
    Torsion of D, Tor(Xi, Xj) = R^l_0ij Yl, array [d, a, b]
    """
    n = r0.shape[0]
    ret = np.zeros((2 * n,) * 3)
    ret[n:, :n, :n] = r0
    return ret


def reference_curvature(riemann):
    """
    Curvature of D, nonzero only for two horizontal arguments, [d, c, a, b]
    """
    n = riemann.shape[0]
    ret = np.zeros((2 * n,) * 4)
    ret[:n, :n, :n, :n] = riemann
    ret[n:, n:, :n, :n] = riemann
    return ret


def difference_tensor_low(A, tau):
    """
    Lowered difference tensor G(T(Ea, Eb), Ec) from A[a, b, c] = (D_a G)(Eb, Ec)
    and the lowered torsion tau[a, b, c] = G(Tor(Ea, Eb), Ec)
    """
    ret = 0.5 * (A + np.einsum('bac->abc', A) - np.einsum('cab->abc', A))
    ret += 0.5 * (-tau + np.einsum('bca->abc', tau) - np.einsum('cab->abc', tau))
    return ret


def _lowered_torsion(r0, Gv):
    # tau[Xi, Xj, c] = R^l_0ij G(Yl, c); Gv holds the vertical rows of G, [l, c]
    n = r0.shape[0]
    ret = np.zeros((2 * n,) * 3)
    ret[:n, :n, :] = np.einsum('lij,lc->ijc', r0, Gv)
    return ret


def frame_geometry(metric, inverse, derivs, point):
    """
    Difference tensor, its derivatives and the curvature of the lifted metric

    :param metric: liftcurv.lift.MetricBlocks
    :param inverse: liftcurv.lift.InverseBlocks
    :param derivs: liftcurv.lift.BlockDerivatives (corrected variant)
    :param point: liftcurv.base.BasePoint

    :rtype: FrameGeometry
    """
    n = metric.n
    G = metric.full()
    H = inverse.full()
    dG = derivs.full_dG()
    ddG = derivs.full_ddG()
    dH = derivs.full_dH()
    Gv = G[n:, :]

    r0 = point.r0
    torsion = reference_torsion(r0)

    A = np.zeros((2 * n,) * 3)
    A[n:] = dG
    T_low = difference_tensor_low(A, _lowered_torsion(r0, Gv))
    T = np.einsum('abc,cd->dab', T_low, H)

    # Fibre derivatives d_m of T
    dT = np.empty((n,) + (2 * n,) * 3)
    for m in range(n):
        dA = np.zeros((2 * n,) * 3)
        dA[n:] = ddG[m]
        dtau = _lowered_torsion(point.riemann[:, m, :, :], Gv) + _lowered_torsion(r0, dG[m][n:, :])
        dT_low = difference_tensor_low(dA, dtau)
        dT[m] = np.einsum('abc,cd->dab', dT_low, H) + np.einsum('abc,cd->dab', T_low, dH[m])

    # Horizontal covariant derivatives, only the torsion part of T varies
    nabla_r0 = point.nabla_r0
    DhT = np.empty((n,) + (2 * n,) * 3)
    for m in range(n):
        low = difference_tensor_low(np.zeros((2 * n,) * 3), _lowered_torsion(nabla_r0[m], Gv))
        DhT[m] = np.einsum('abc,cd->dab', low, H)

    DT = np.concatenate([DhT, dT], axis=0)

    K = reference_curvature(point.riemann)
    K = K + np.einsum('adbc->dcab', DT) - np.einsum('bdac->dcab', DT)
    K += np.einsum('eab,dec->dcab', torsion, T)
    K += np.einsum('ebc,dae->dcab', T, T) - np.einsum('eac,dbe->dcab', T, T)

    return FrameGeometry(G=G, H=H, torsion=torsion, T=T, DT=DT,
                         omega=reference_coefficients(point.gamma), K=K)


def coefficient_blocks(T, n):
    """
    The six M-tensor blocks of a difference tensor [d, a, b] (or of its
    derivative [m, d, a, b]), keyed Q, Qt, P, Pt, S, St, each indexed
    [..., h, i, j]
    """
    X = slice(0, n)
    Y = slice(n, 2 * n)
    return {
        'Q': T[..., Y, Y, Y],
        'Qt': T[..., X, Y, Y],
        'P': T[..., X, Y, X],
        'Pt': T[..., Y, Y, X],
        'S': T[..., Y, X, X],
        'St': T[..., X, X, X],
    }
