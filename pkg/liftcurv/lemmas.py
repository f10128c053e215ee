"""
Linear independence of the tensor monomials that the curvature analysis
relies on, checked as the numerical rank of the matrix whose columns are the
flattened monomials.
"""

import logging
from dataclasses import dataclass

import numpy as np

from liftcurv.exceptions import ConfigurationError


logger = logging.getLogger(__name__)


LEMMAS = ('lemma1', 'lemma1_remark', 'lemma2')

RANK_TOL = 1e-10


@dataclass(frozen=True)
class RankResult(object):
    """
    :ivar str which: lemma name
    :ivar int rank: numerical rank
    :ivar int columns: number of monomials
    :ivar singular_values: all singular values, descending
    """
    which: str
    n: int
    rank: int
    columns: int
    singular_values: tuple

    @property
    def full_rank(self):
        return self.rank == self.columns


def _lemma1(g, g0, y):
    return [g, np.outer(g0, g0)]


def _lemma1_remark(g, g0, y):
    return [np.eye(g.shape[0]), np.outer(y, g0)]


def _lemma2(g, g0, y):
    d = np.eye(g.shape[0])
    # arrays [h, i, j, k]
    return [
        np.einsum('hi,jk->hijk', d, g),
        np.einsum('hj,ik->hijk', d, g),
        np.einsum('hk,ij->hijk', d, g),
        np.einsum('hk,i,j->hijk', d, g0, g0),
        np.einsum('hj,i,k->hijk', d, g0, g0),
        np.einsum('hi,j,k->hijk', d, g0, g0),
        np.einsum('jk,i,h->hijk', g, g0, y),
        np.einsum('ik,j,h->hijk', g, g0, y),
        np.einsum('ij,k,h->hijk', g, g0, y),
        np.einsum('i,j,k,h->hijk', g0, g0, g0, y),
    ]


_SYSTEMS = {
    'lemma1': _lemma1,
    'lemma1_remark': _lemma1_remark,
    'lemma2': _lemma2,
}


def monomial_system(which, g, y):
    """
    Matrix whose columns are the flattened monomials of a lemma

    :param str which: 'lemma1', 'lemma1_remark' or 'lemma2'
    :param g: metric at the point, (n, n)
    :param y: tangent vector, (n,)
    """
    if which not in _SYSTEMS:
        raise ConfigurationError(f"Unknown lemma '{which}', must be one of {LEMMAS}")

    g = np.atleast_2d(np.asarray(g, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    g0 = g @ y
    return np.stack([m.ravel() for m in _SYSTEMS[which](g, g0, y)], axis=1)


def lemma_rank(which, base, x, y):
    """
    Numerical rank of a lemma's monomial system at a point of TM

    :param str which: 'lemma1', 'lemma1_remark' or 'lemma2'
    :param base: liftcurv.base.BaseGeometry, or a metric matrix to use directly
    :param x: base point, ignored when base is a matrix
    :param y: tangent vector

    :rtype: RankResult
    """
    g = base.metric(x) if hasattr(base, 'metric') else base
    system = monomial_system(which, g, y)
    sv = np.linalg.svd(system, compute_uv=False)
    rank = int(np.sum(sv > RANK_TOL * sv[0])) if sv[0] > 0.0 else 0

    ret = RankResult(which=which, n=int(np.atleast_2d(g).shape[0]), rank=rank,
                     columns=system.shape[1], singular_values=tuple(float(s) for s in sv))
    if which == 'lemma2' and ret.n == 2:
        logger.warning("lemma2 at n=2 has rank %d of %d", rank, ret.columns)
    else:
        logger.debug("%s rank %d of %d at n=%d", which, rank, ret.columns, ret.n)

    return ret


def random_point(rng, n, y_scale=(0.5, 2.0)):
    """
    Random well-conditioned metric g = A^T A + I and a tangent vector with
    uniform direction and norm in y_scale

    :param numpy.random.Generator rng: random source
    :return: (g, y)
    """
    A = rng.standard_normal((n, n))
    g = A.T @ A + np.eye(n)
    direction = rng.standard_normal(n)
    direction /= np.linalg.norm(direction)
    return g, direction * rng.uniform(*y_scale)
