"""
Base manifold charts.

Every base evaluates, at a chart point x, the metric g_ij, its inverse, the
Christoffel symbols Gamma^h_ij (array layout [h, i, j]), their partial
derivatives (layout [m, h, i, j] for d_m Gamma^h_ij), the Riemann tensor and
its covariant derivative. The Riemann tensor uses the convention

    R(d_i, d_j) d_k = R^h_kij d_h,   layout [h, k, i, j]

and the covariant derivative nabla_m R^h_kij has layout [m, h, k, i, j].
"""

import logging
from dataclasses import dataclass

import numpy as np

from liftcurv.exceptions import ConfigurationError, DomainError


logger = logging.getLogger(__name__)


MIN_DIM = 2
MAX_DIM = 5

# Minimum g-norm of y on the bundle of nonzero tangent vectors
Y_MIN = 1e-3

DEFAULT_FD_STEP = 1e-5


def levi_civita(ginv, dg):
    """
    Christoffel symbols of the second kind from the metric derivatives

    :param ginv: inverse metric, shape (m, m)
    :param dg: metric derivatives, dg[c, a, b] = d_c g_ab
    :return: Gamma[l, a, b]
    """
    low = 0.5 * (np.einsum('asb->sab', dg) + np.einsum('bsa->sab', dg) - dg)
    return np.einsum('ls,sab->lab', ginv, low)


def riemann_from_christoffels(gamma, dgamma):
    """
    R^h_kij = d_i Gamma^h_jk - d_j Gamma^h_ik + Gamma^h_il Gamma^l_jk - Gamma^h_jl Gamma^l_ik

    :param gamma: Gamma[h, i, j]
    :param dgamma: dgamma[m, h, i, j] = d_m Gamma^h_ij
    :return: R[h, k, i, j]
    """
    ret = np.einsum('ihjk->hkij', dgamma) - np.einsum('jhik->hkij', dgamma)
    ret += np.einsum('hil,ljk->hkij', gamma, gamma) - np.einsum('hjl,lik->hkij', gamma, gamma)
    return ret


def space_form_tensor(g):
    """
    g_jk delta^h_i - g_ik delta^h_j, the curvature of a unit space form

    :return: array [h, k, i, j]
    """
    eye = np.eye(g.shape[0])
    return np.einsum('jk,hi->hkij', g, eye) - np.einsum('ik,hj->hkij', g, eye)


def contract_y(tensor, y, axis=0):
    """
    Contract one lower index of a tensor against the tangent vector y.
    Produces g_0i, Gamma^h_0i, R^l_0jk and the like.

    :param tensor: numpy array
    :param y: tangent vector, shape (n,)
    :param int axis: index slot to contract
    :return: tensor with the contracted axis removed
    """
    return np.tensordot(tensor, y, axes=([axis], [0]))


class BaseGeometry(object):
    """
    A chart of a Riemannian manifold (M, g). Evaluators are pure functions of
    the chart point, instances are immutable.

    :ivar int n: dimension of M
    """
    kind = None

    def __init__(self, n, fd_step=DEFAULT_FD_STEP):
        if (not isinstance(n, (int, np.integer))) or n < MIN_DIM:
            raise ConfigurationError(f"Invalid base dimension {n}, must be an integer >= {MIN_DIM}")

        self.n = int(n)
        self.fd_step = fd_step

    def __repr__(self):
        return f"{self.__class__.__name__}(n={self.n})"

    def describe(self):
        """
        Base spec string, e.g. 'sphere:1.0'
        """
        return self.kind

    def check_point(self, x):
        """
        :raises liftcurv.exceptions.DomainError: if x is outside the chart
        """
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise DomainError(f"Chart point must have {self.n} coordinates, got shape {x.shape}")

        if not np.all(np.isfinite(x)):
            raise DomainError(f"Chart point {x} is not finite")

        return x

    def metric(self, x):
        raise NotImplementedError()

    def inverse_metric(self, x):
        return np.linalg.inv(self.metric(x))

    def christoffel(self, x):
        raise NotImplementedError()

    def christoffel_derivative(self, x):
        """
        Central finite differences of the Christoffel symbols, with the step
        given to __init__

        :return: array [m, h, i, j] holding d_m Gamma^h_ij
        """
        x = self.check_point(x)
        ret = np.empty((self.n,) * 4)
        for m in range(self.n):
            dx = np.zeros(self.n)
            dx[m] = self.fd_step
            ret[m] = (self.christoffel(x + dx) - self.christoffel(x - dx)) / (2.0 * self.fd_step)

        return ret

    def riemann(self, x):
        return riemann_from_christoffels(self.christoffel(x), self.christoffel_derivative(x))

    def nabla_riemann(self, x):
        """
        Covariant derivative of the Riemann tensor, partial derivatives taken by
        central finite differences of :meth:`riemann`

        :return: array [m, h, k, i, j]
        """
        x = self.check_point(x)
        step = 10.0 * self.fd_step
        dr = np.empty((self.n,) * 5)
        for m in range(self.n):
            dx = np.zeros(self.n)
            dx[m] = step
            dr[m] = (self.riemann(x + dx) - self.riemann(x - dx)) / (2.0 * step)

        return covariant_riemann(dr, self.christoffel(x), self.riemann(x))


def covariant_riemann(dr, gamma, r):
    """
    nabla_m R^h_kij from the partial derivatives dr[m, h, k, i, j]
    """
    ret = dr + np.einsum('hmp,pkij->mhkij', gamma, r)
    ret -= np.einsum('pmk,hpij->mhkij', gamma, r)
    ret -= np.einsum('pmi,hkpj->mhkij', gamma, r)
    ret -= np.einsum('pmj,hkip->mhkij', gamma, r)
    return ret


class FlatCartesian(BaseGeometry):
    """
    Euclidean space in Cartesian coordinates
    """
    kind = 'flat'

    def metric(self, x):
        self.check_point(x)
        return np.eye(self.n)

    def inverse_metric(self, x):
        self.check_point(x)
        return np.eye(self.n)

    def christoffel(self, x):
        self.check_point(x)
        return np.zeros((self.n,) * 3)

    def christoffel_derivative(self, x):
        self.check_point(x)
        return np.zeros((self.n,) * 4)

    def riemann(self, x):
        self.check_point(x)
        return np.zeros((self.n,) * 4)

    def nabla_riemann(self, x):
        self.check_point(x)
        return np.zeros((self.n,) * 5)


class FlatCurvilinear(FlatCartesian):
    """
    Euclidean space pulled back by the diffeomorphism
    X_i = x_i + a*sin(x_{i+1}) (indices cyclic). The Christoffel symbols are
    nonzero while the curvature vanishes.
    """
    kind = 'flat-curvilinear'

    def __init__(self, n, amplitude=0.3, fd_step=DEFAULT_FD_STEP):
        super(FlatCurvilinear, self).__init__(n, fd_step)
        self.amplitude = amplitude
        self._next = [(i + 1) % self.n for i in range(self.n)]

    def _jacobian(self, x):
        ret = np.eye(self.n)
        for p in range(self.n):
            q = self._next[p]
            ret[p, q] += self.amplitude * np.cos(x[q])

        return ret

    def _map_derivatives(self, x):
        # second[p, i, j] = d_i d_j X_p, third[p, m, i, j] = d_m d_i d_j X_p
        second = np.zeros((self.n,) * 3)
        third = np.zeros((self.n,) * 4)
        for p in range(self.n):
            q = self._next[p]
            second[p, q, q] = -self.amplitude * np.sin(x[q])
            third[p, q, q, q] = -self.amplitude * np.cos(x[q])

        return second, third

    def metric(self, x):
        x = self.check_point(x)
        jac = self._jacobian(x)
        return jac.T @ jac

    def inverse_metric(self, x):
        return np.linalg.inv(self.metric(x))

    def christoffel(self, x):
        x = self.check_point(x)
        second, _ = self._map_derivatives(x)
        return np.einsum('hp,pij->hij', np.linalg.inv(self._jacobian(x)), second)

    def christoffel_derivative(self, x):
        x = self.check_point(x)
        jinv = np.linalg.inv(self._jacobian(x))
        second, third = self._map_derivatives(x)

        # d_m J[p, i] = second[p, m, i]
        djinv = -np.einsum('ha,amb,bp->mhp', jinv, second, jinv)
        return np.einsum('mhp,pij->mhij', djinv, second) + np.einsum('hp,pmij->mhij', jinv, third)


class SpaceForm(BaseGeometry):
    """
    Constant sectional curvature c in the conformal chart
    g_ij = lambda^2 delta_ij, lambda = 1 / (1 + c|x|^2/4)
    """
    kind = 'sphere'

    def __init__(self, n, c=1.0, fd_step=DEFAULT_FD_STEP):
        super(SpaceForm, self).__init__(n, fd_step)
        self.c = float(c)

    def __repr__(self):
        return f"SpaceForm(n={self.n}, c={self.c})"

    def describe(self):
        return f"sphere:{self.c}"

    def _lambda(self, x):
        x = self.check_point(x)
        denom = 1.0 + 0.25 * self.c * np.dot(x, x)
        if denom <= 0.0:
            raise DomainError(f"Point {x} is outside the conformal chart of curvature {self.c}")

        return x, 1.0 / denom

    def metric(self, x):
        _, lam = self._lambda(x)
        return lam * lam * np.eye(self.n)

    def inverse_metric(self, x):
        _, lam = self._lambda(x)
        return np.eye(self.n) / (lam * lam)

    def _phi(self, x):
        # derivatives of log(lambda)
        x, lam = self._lambda(x)
        phi = -0.5 * self.c * lam * x
        dphi = -0.5 * self.c * lam * np.eye(self.n) + 0.25 * self.c * self.c * lam * lam * np.outer(x, x)
        return phi, dphi

    def christoffel(self, x):
        phi, _ = self._phi(x)
        eye = np.eye(self.n)
        return (np.einsum('hi,j->hij', eye, phi) + np.einsum('hj,i->hij', eye, phi)
                - np.einsum('ij,h->hij', eye, phi))

    def christoffel_derivative(self, x):
        _, dphi = self._phi(x)
        eye = np.eye(self.n)
        return (np.einsum('hi,jm->mhij', eye, dphi) + np.einsum('hj,im->mhij', eye, dphi)
                - np.einsum('ij,hm->mhij', eye, dphi))

    def riemann(self, x):
        return self.c * space_form_tensor(self.metric(x))

    def nabla_riemann(self, x):
        self.check_point(x)
        return np.zeros((self.n,) * 5)


class Perturbed(BaseGeometry):
    """
    Diagonal metric g_ii = 1 + eps*(i+1)*x_{i+1}^2 (indices cyclic), which
    has non-constant curvature for eps != 0. The curvature and its covariant
    derivative come from finite differences.
    """
    kind = 'perturbed'

    def __init__(self, n, eps=0.1, fd_step=DEFAULT_FD_STEP):
        super(Perturbed, self).__init__(n, fd_step)
        self.eps = float(eps)
        self._next = [(i + 1) % self.n for i in range(self.n)]

    def __repr__(self):
        return f"Perturbed(n={self.n}, eps={self.eps})"

    def describe(self):
        return f"perturbed:{self.eps}"

    def _diagonal(self, x):
        x = self.check_point(x)
        diag = np.array([1.0 + self.eps * (i + 1) * x[self._next[i]] ** 2 for i in range(self.n)])
        if np.any(diag <= 0.0):
            raise DomainError(f"Perturbed metric is not positive definite at {x}")

        return x, diag

    def metric(self, x):
        _, diag = self._diagonal(x)
        return np.diag(diag)

    def inverse_metric(self, x):
        _, diag = self._diagonal(x)
        return np.diag(1.0 / diag)

    def _metric_derivative(self, x):
        dg = np.zeros((self.n,) * 3)
        for i in range(self.n):
            q = self._next[i]
            dg[q, i, i] += 2.0 * self.eps * (i + 1) * x[q]

        return dg

    def christoffel(self, x):
        x, diag = self._diagonal(x)
        return levi_civita(np.diag(1.0 / diag), self._metric_derivative(x))


_BASE_KINDS = {
    'flat_cartesian': FlatCartesian,
    'flat_curvilinear': FlatCurvilinear,
    'space_form': SpaceForm,
    'perturbed': Perturbed,
}


def make_base(kind, n, **params):
    """
    Build a base chart

    :param str kind: one of 'flat_cartesian', 'flat_curvilinear',\
        'space_form' (param c) or 'perturbed' (param eps)
    :param int n: dimension

    :raises liftcurv.exceptions.ConfigurationError: for an unknown kind or an\
        invalid dimension
    :return: BaseGeometry instance
    """
    if kind not in _BASE_KINDS:
        raise ConfigurationError(f"Unknown base kind '{kind}', valid kinds are: {', '.join(_BASE_KINDS)}")

    try:
        return _BASE_KINDS[kind](n, **params)
    except TypeError as e:
        raise ConfigurationError(f"Invalid parameters for base '{kind}': {e}") from None


def parse_base_spec(spec, n):
    """
    Build a base chart from its config/CLI spelling: 'flat',
    'flat-curvilinear', 'sphere:c' or 'perturbed:eps'

    :raises liftcurv.exceptions.ConfigurationError: if the spec is malformed
    """
    name, _, arg = str(spec).strip().partition(':')
    simple = {'flat': 'flat_cartesian', 'flat-curvilinear': 'flat_curvilinear'}
    param = {'sphere': ('space_form', 'c'), 'perturbed': ('perturbed', 'eps')}

    if name in simple:
        if arg:
            raise ConfigurationError(f"Base '{name}' takes no parameter, got '{spec}'")

        return make_base(simple[name], n)

    if name in param:
        kind, pname = param[name]
        params = {}
        if arg:
            try:
                params[pname] = float(arg)
            except ValueError:
                raise ConfigurationError(f"Invalid {pname} value in base spec '{spec}'") from None

        return make_base(kind, n, **params)

    raise ConfigurationError(f"Invalid base spec '{spec}', expected flat, flat-curvilinear, sphere:c or perturbed:eps")


def sectional_curvature(base, x, i, j):
    """
    Sectional curvature of the coordinate 2-plane spanned by d_i and d_j
    """
    g = base.metric(x)
    r = base.riemann(x)
    num = np.dot(g[i], r[:, j, i, j])
    return num / (g[i, i] * g[j, j] - g[i, j] ** 2)


def is_constant_curvature(base, samples, tol=1e-6):
    """
    Fit R^h_kij = c (g_jk delta^h_i - g_ik delta^h_j) with a single c over all
    sample points

    :param base: BaseGeometry instance
    :param samples: sequence of chart points, at least two
    :param float tol: max allowed residual

    :raises liftcurv.exceptions.ConfigurationError: if fewer than two samples\
        are given
    :return: tuple (is_constant, fitted c)
    """
    samples = list(samples)
    if len(samples) < 2:
        raise ConfigurationError("Constant curvature fit needs at least two sample points")

    rs = []
    models = []
    for x in samples:
        rs.append(base.riemann(x))
        models.append(space_form_tensor(base.metric(x)))

    num = sum(np.sum(r * m) for r, m in zip(rs, models))
    den = sum(np.sum(m * m) for m in models)
    c = num / den

    residual = max(np.max(np.abs(r - c * m)) for r, m in zip(rs, models))
    logger.debug(f"constant curvature fit on {base}: c={c}, residual={residual}")
    return bool(residual < tol), float(c)


@dataclass(frozen=True)
class BasePoint(object):
    """
    Base data at the projection of a point (x, y) of TM
    """
    x: np.ndarray
    y: np.ndarray
    gamma: np.ndarray
    dgamma: np.ndarray
    riemann: np.ndarray
    nabla_riemann: np.ndarray

    @property
    def gamma0(self):
        """
        Gamma^h_0i, array [h, i]
        """
        return contract_y(self.gamma, self.y, axis=1)

    @property
    def r0(self):
        """
        R^l_0ij, array [l, i, j]
        """
        return contract_y(self.riemann, self.y, axis=1)

    @property
    def nabla_r0(self):
        """
        y^k nabla_m R^l_kij, array [m, l, i, j]
        """
        return contract_y(self.nabla_riemann, self.y, axis=2)


def base_point(base, x, y):
    """
    Evaluate everything the lifted geometry needs from the base at x

    :rtype: BasePoint
    """
    x = base.check_point(x)
    y = np.asarray(y, dtype=float)
    if y.shape != (base.n,):
        raise DomainError(f"Tangent vector must have {base.n} components, got shape {y.shape}")

    return BasePoint(x=x, y=y, gamma=base.christoffel(x), dgamma=base.christoffel_derivative(x),
                     riemann=base.riemann(x), nabla_riemann=base.nabla_riemann(x))
