"""
Parameter families whose lifted metrics are conformally flat over a flat
base, and a few reference families.

Free functions alpha, beta and gamma of t are polynomials given by their
coefficient lists, constant term first. Derivatives alpha', beta' are taken
exactly through the jets.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from liftcurv.base import is_constant_curvature
from liftcurv.exceptions import ConfigurationError, DegenerateError, DomainError
from liftcurv.jets import Jet3, ParamFamily, Polynomial
from liftcurv.lift import CORRECTED, PRINTED, VARIANTS, energy_density, inverse_blocks


logger = logging.getLogger(__name__)


FAMILY_NAMES = ('thm41_form1', 'thm41_form2', 'thm42', 'cor43', 'thm44', 'remark', 'sasaki', 'custom')

# Families proven conformally flat on a flat base, in the order they are verified
THEOREM_FAMILIES = ('thm41_form1', 'thm41_form2', 'thm42', 'cor43', 'thm44')

CUSTOM_KEYS = ('c1', 'c2', 'c3', 'd1', 'd2', 'd3')

DEFAULT_T_RANGE = (1e-3, 0.5)

CONSTRAINT_GRID = 200
CONSTRAINT_TOL = 1e-9


@dataclass
class FamilySpec(object):
    """
    :ivar str name: one of FAMILY_NAMES
    :ivar float k: constant k of the families that carry one
    :ivar float eps: constant epsilon of thm42 and cor43
    :ivar list alpha: polynomial coefficients of alpha
    :ivar list beta: polynomial coefficients of beta
    :ivar list gamma: polynomial coefficients of gamma
    :ivar dict custom: 'c1'..'d3' -> polynomial coefficients, for 'custom'
    """
    name: str
    k: float = 2.0
    eps: float = 0.0
    alpha: list = field(default_factory=lambda: [1.0, 1.0])
    beta: list = field(default_factory=lambda: [1.0])
    gamma: list = field(default_factory=lambda: [0.0])
    custom: dict = field(default_factory=dict)


def _positive(t):
    return t > 0.0


def _everywhere(t):
    return t >= 0.0


def _const(value):
    def _inner(t):
        return Jet3.constant(value)

    return _inner


def _poly(coeffs, shift=0):
    p = Polynomial(coeffs)

    def _inner(t):
        return p.jet(t, shift=shift)

    return _inner


def _jets(spec):
    """
    Closures for t, alpha, alpha', beta, beta', gamma as jets
    """
    return (Jet3.variable, _poly(spec.alpha), _poly(spec.alpha, 1),
            _poly(spec.beta), _poly(spec.beta, 1), _poly(spec.gamma))


def _thm41_form1(spec):
    T, a, da, b, db, c = _jets(spec)

    def d2(t):
        tt, al, dal, be, dbe, ga = T(t), a(t), da(t), b(t), db(t), c(t)
        return dal + (al * (ga - dbe) + 2.0 * dal * ga * tt) / be - 2.0 * al * dbe * ga * tt / (be * be)

    constraints = [('beta != 0', lambda t: b(t).v),
                   ('c2 + 2t d2 != 0', lambda t: (a(t) + 2.0 * T(t) * d2(t)).v)]
    family = ParamFamily(c1=_const(0.0), c2=a, c3=b, d1=_const(0.0), d2=d2, d3=c,
                         domain=_everywhere, name='thm41_form1')
    return family, constraints


def _thm41_form2(spec):
    T, a, da, b, db, _ = _jets(spec)
    k = spec.k

    def d2(t):
        tt, al, dal, be, dbe = T(t), a(t), da(t), b(t), db(t)
        num = k * dal * (2.0 * al + dal * tt) - 2.0 * dal * be * (be + 2.0 * dbe * tt) + 4.0 * al * dbe * dbe * tt
        return num / (2.0 * (k * al - be * be))

    constraints = [('k != 0', lambda t: k),
                   ('k alpha - beta^2 != 0', lambda t: (k * a(t) - b(t) * b(t)).v),
                   ('c2 + 2t d2 != 0', lambda t: (a(t) + 2.0 * T(t) * d2(t)).v)]
    family = ParamFamily(c1=_const(k), c2=a, c3=b, d1=_const(0.0), d2=d2, d3=db,
                         domain=_everywhere, name='thm41_form2')
    return family, constraints


def _thm42_d2(spec):
    T, a, da, _, _, _ = _jets(spec)
    k = spec.k
    e2 = math.exp(2.0 * spec.eps)

    def d2(t):
        tt, al, dal = T(t), a(t), da(t)
        num = k * dal * (2.0 * al + dal * tt) + 4.0 * al * e2 * tt ** -2
        return num / (2.0 * (k * al - 4.0 * e2 / tt))

    def denominator(t):
        return k * a(t).v - 4.0 * e2 / t

    return d2, denominator


def _thm42(spec):
    T, a, _, _, _, _ = _jets(spec)
    scale = math.exp(spec.eps)
    d2, denominator = _thm42_d2(spec)

    def d3(t):
        return scale * T(t) ** -1.5

    def c3(t):
        return -2.0 * T(t) * d3(t)

    constraints = [('k != 0', lambda t: spec.k),
                   ('k alpha - 4 e^(2 eps)/t != 0', denominator)]
    family = ParamFamily(c1=_const(spec.k), c2=a, c3=c3, d1=_const(0.0), d2=d2, d3=d3,
                         domain=_positive, name='thm42')
    return family, constraints


def _cor43(spec, variant):
    T, a, da, _, _, _ = _jets(spec)
    constraints = [('k != 0', lambda t: spec.k)]

    if variant == PRINTED:
        d2, denominator = _thm42_d2(spec)
        constraints.append(('k alpha - 4 e^(2 eps)/t != 0', denominator))
        domain = _positive
    else:
        def d2(t):
            al, dal = a(t), da(t)
            return dal * (2.0 * al + dal * T(t)) / (2.0 * al)

        constraints.append(('alpha != 0', lambda t: a(t).v))
        domain = _everywhere

    family = ParamFamily(c1=_const(spec.k), c2=a, c3=_const(0.0), d1=_const(0.0), d2=d2, d3=_const(0.0),
                         domain=domain, name='cor43')
    return family, constraints


def _thm44(spec):
    T, _, _, b, _, c = _jets(spec)
    constraints = [('beta != 0', lambda t: b(t).v),
                   ('beta + 2t gamma != 0', lambda t: (b(t) + 2.0 * T(t) * c(t)).v)]
    family = ParamFamily(c1=_const(0.0), c2=_const(0.0), c3=b, d1=_const(0.0), d2=_const(0.0), d3=c,
                         domain=_everywhere, name='thm44')
    return family, constraints


def _remark(spec):
    T, a, da, b, db, _ = _jets(spec)

    def d2(t):
        tt, al, dal, be, dbe = T(t), a(t), da(t), b(t), db(t)
        return (dal * be * be + 2.0 * dal * be * dbe * tt - 2.0 * al * dbe * dbe * tt) / (be * be)

    constraints = [('beta != 0', lambda t: b(t).v)]
    family = ParamFamily(c1=_const(spec.k), c2=a, c3=b, d1=_const(0.0), d2=d2, d3=db,
                         domain=_everywhere, name='remark')
    return family, constraints


def _sasaki(spec):
    family = ParamFamily(c1=_const(1.0), c2=_const(1.0), c3=_const(0.0),
                         d1=_const(0.0), d2=_const(0.0), d3=_const(0.0),
                         domain=_everywhere, name='sasaki')
    return family, []


def _custom(spec):
    unknown = set(spec.custom) - set(CUSTOM_KEYS)
    if unknown:
        raise ConfigurationError(f"Unknown custom coefficient(s) {sorted(unknown)}, expected {CUSTOM_KEYS}")

    fs = [_poly(spec.custom.get(key, [0.0])) for key in CUSTOM_KEYS]
    return ParamFamily(*fs, domain=_everywhere, name='custom'), []


def _violated(values):
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        return True

    if np.any(np.abs(values) <= CONSTRAINT_TOL):
        return True

    return bool(np.any(np.sign(values[1:]) != np.sign(values[:-1])))


def check_constraints(name, constraints, t_range):
    """
    Check that each constraint expression keeps a constant nonzero sign on a
    grid over t_range

    :param str name: family name, for the error message
    :param list constraints: (label, t -> float) pairs
    :param tuple t_range: (lowest t, highest t)

    :raises liftcurv.exceptions.ConfigurationError: naming the first violated\
        constraint
    """
    lo, hi = t_range
    if hi < lo:
        raise ConfigurationError(f"Invalid t range {t_range} for the '{name}' family")

    grid = np.linspace(lo, hi, CONSTRAINT_GRID)
    for label, predicate in constraints:
        try:
            values = [predicate(t) for t in grid]
        except (DomainError, DegenerateError) as e:
            raise ConfigurationError(f"'{name}' family violates {label} on t in [{lo}, {hi}]: {e}") from e

        if _violated(values):
            raise ConfigurationError(f"'{name}' family violates {label} on t in [{lo}, {hi}]")


def build_family(spec, t_range=DEFAULT_T_RANGE, variant=CORRECTED):
    """
    Build the ParamFamily named by a FamilySpec

    :param FamilySpec spec: family name and constants
    :param tuple t_range: range of t the family will be evaluated on
    :param str variant: 'corrected' or 'printed', only cor43 depends on it

    :raises liftcurv.exceptions.ConfigurationError: for an unknown name or a\
        constraint violated on t_range
    :rtype: liftcurv.jets.ParamFamily
    """
    if variant not in VARIANTS:
        raise ConfigurationError(f"Unknown formula variant '{variant}', must be one of {VARIANTS}")

    builders = {
        'thm41_form1': _thm41_form1,
        'thm41_form2': _thm41_form2,
        'thm42': _thm42,
        'cor43': lambda s: _cor43(s, variant),
        'thm44': _thm44,
        'remark': _remark,
        'sasaki': _sasaki,
        'custom': _custom,
    }
    if spec.name not in builders:
        raise ConfigurationError(f"Unknown family '{spec.name}', must be one of {FAMILY_NAMES}")

    family, constraints = builders[spec.name](spec)
    lo, hi = t_range
    if family.domain is _positive and lo <= 0.0:
        raise ConfigurationError(f"'{spec.name}' family needs t > 0, got t range {t_range}")

    check_constraints(spec.name, constraints, t_range)
    logger.debug("built family %s on t in %s (%s)", spec, t_range, variant)
    return family


def defined_at_zero(family):
    """
    True if the family can be evaluated at t = 0, i.e. on the zero section
    """
    try:
        family.evaluate(0.0)
    except (DomainError, DegenerateError):
        return False

    return True


def hypothesis_polynomial(jets, t, c):
    """
    c1 c2 - c3^2 + 2c c2^2 t + 2c1 d2 t - 4c3 d3 t + 4c c2 d2 t^2 - 4d3^2 t^2,
    read with d1 = c c2
    """
    c1, c2, c3, _, d2, d3 = (j.v for j in jets)
    return (c1 * c2 - c3 * c3 + 2.0 * c * c2 * c2 * t + 2.0 * c1 * d2 * t - 4.0 * c3 * d3 * t
            + 4.0 * c * c2 * d2 * t * t - 4.0 * d3 * d3 * t * t)


@dataclass
class SelfCheck(object):
    """
    :ivar dict identities: singular-case identity -> largest residual
    :ivar int gate_failures: points failing the nondegeneracy gates
    :ivar float d1_residual: largest |d1 - c c2|, nan off constant curvature
    :ivar float hypothesis_min: smallest |hypothesis polynomial|
    """
    family: str
    points: int = 0
    skipped: int = 0
    identities: dict = field(default_factory=dict)
    gate_failures: int = 0
    curvature: float = math.nan
    d1_residual: float = math.nan
    hypothesis_min: float = math.inf

    @property
    def ok(self):
        return self.gate_failures == 0 and all(v <= 1e-12 for v in self.identities.values())


_IDENTITIES = {
    'thm42': ('c3 + 2t d3', lambda j, t: j.c3.v + 2.0 * t * j.d3.v),
    'thm44': ('c2 + 2t d2', lambda j, t: j.c2.v + 2.0 * t * j.d2.v),
}


def family_selfcheck(family, base, sampler):
    """
    Check a family at sampled points: its singular-case identity, the
    nondegeneracy gates, d1 = c c2 on constant-curvature bases and the
    nondegeneracy hypothesis polynomial

    :param liftcurv.jets.ParamFamily family: family to check
    :param liftcurv.base.BaseGeometry base: base manifold
    :param sampler: iterable of (x, y) pairs

    :rtype: SelfCheck
    """
    ret = SelfCheck(family=family.name)
    points = list(sampler)
    constant, c = is_constant_curvature(base, [x for x, _ in points]) if len(points) > 1 else (False, math.nan)
    if constant:
        ret.curvature = c
        ret.d1_residual = 0.0

    identity = _IDENTITIES.get(family.name)
    if identity is not None:
        ret.identities[identity[0]] = 0.0

    for x, y in points:
        t = energy_density(base, x, y)
        try:
            jets = family.evaluate(t)
        except (DomainError, DegenerateError):
            ret.skipped += 1
            continue

        ret.points += 1
        if identity is not None:
            label, residual = identity
            ret.identities[label] = max(ret.identities[label], abs(residual(jets, t)))

        try:
            inverse_blocks(family, base, x, y)
        except DegenerateError as e:
            logger.debug("%s degenerate at x=%s y=%s: %s", family.name, x, y, e)
            ret.gate_failures += 1

        if constant:
            ret.d1_residual = max(ret.d1_residual, abs(jets.d1.v - c * jets.c2.v))
            ret.hypothesis_min = min(ret.hypothesis_min, abs(hypothesis_polynomial(jets, t, c)))

    logger.info("self-check of %s on %s: %d points, %d gate failures, identities %s",
                family.name, base.describe(), ret.points, ret.gate_failures, ret.identities)
    return ret
