"""
Truncated Taylor jets in the energy density t.

A :class:`Jet3` carries a value and its first three derivatives with respect
to t. Arithmetic follows the Leibniz and Faa di Bruno rules truncated at order
three, so rational expressions of the parameter functions (the q-coefficients
of the inverse metric, the d2 entries of the families) come with exact
derivatives and no numerical differentiation is involved.
"""

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

from liftcurv.exceptions import DegenerateError, DomainError


@dataclass(frozen=True)
class Jet3(object):
    """
    Value and first three t-derivatives of a scalar function at one point
    """
    v: float
    d1: float = 0.0
    d2: float = 0.0
    d3: float = 0.0

    @classmethod
    def constant(cls, value):
        return cls(float(value), 0.0, 0.0, 0.0)

    @classmethod
    def variable(cls, t):
        """
        Jet of the identity function t -> t
        """
        return cls(float(t), 1.0, 0.0, 0.0)

    @staticmethod
    def lift(value):
        return value if isinstance(value, Jet3) else Jet3.constant(value)

    def channels(self):
        return (self.v, self.d1, self.d2, self.d3)

    def compose(self, f0, f1, f2, f3):
        """
        Jet of f(self) given the derivatives f0..f3 of the outer function at
        self.v
        """
        a1, a2, a3 = self.d1, self.d2, self.d3
        return Jet3(f0,
                    f1 * a1,
                    f2 * a1 * a1 + f1 * a2,
                    f3 * a1 ** 3 + 3.0 * f2 * a1 * a2 + f1 * a3)

    def __add__(self, other):
        b = Jet3.lift(other)
        return Jet3(self.v + b.v, self.d1 + b.d1, self.d2 + b.d2, self.d3 + b.d3)

    __radd__ = __add__

    def __neg__(self):
        return Jet3(-self.v, -self.d1, -self.d2, -self.d3)

    def __sub__(self, other):
        return self + (-Jet3.lift(other))

    def __rsub__(self, other):
        return Jet3.lift(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Jet3):
            s = float(other)
            return Jet3(s * self.v, s * self.d1, s * self.d2, s * self.d3)

        a, b = self, other
        return Jet3(a.v * b.v,
                    a.d1 * b.v + a.v * b.d1,
                    a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
                    a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3)

    __rmul__ = __mul__

    def reciprocal(self):
        """
        Jet of 1/self

        :raises liftcurv.exceptions.DegenerateError: if the value is zero
        """
        if self.v == 0.0:
            raise DegenerateError("Division by a jet with zero value")

        r = 1.0 / self.v
        return self.compose(r, -r * r, 2.0 * r ** 3, -6.0 * r ** 4)

    def __truediv__(self, other):
        return self * Jet3.lift(other).reciprocal()

    def __rtruediv__(self, other):
        return Jet3.lift(other) * self.reciprocal()

    def __pow__(self, p):
        """
        Jet of self**p for a real exponent p. Non-integer exponents need a
        positive value.
        """
        p = float(p)
        if p.is_integer() and p >= 0:
            k = int(p)
            f = [math.prod(range(k - j + 1, k + 1)) * self.v ** (k - j) if j <= k else 0.0 for j in range(4)]
            return self.compose(*f)

        if self.v <= 0.0 and not p.is_integer():
            raise DomainError(f"Non-integer power {p} of a non-positive value {self.v}")

        if self.v == 0.0:
            raise DegenerateError(f"Negative power {p} of a zero value")

        v = self.v
        return self.compose(v ** p, p * v ** (p - 1), p * (p - 1) * v ** (p - 2),
                            p * (p - 1) * (p - 2) * v ** (p - 3))

    def exp(self):
        e = math.exp(self.v)
        return self.compose(e, e, e, e)

    def sqrt(self):
        return self ** 0.5


class ScalarFunction(object):
    """
    Closed-form scalar function of t with derivatives of any order
    """
    def __call__(self, t):
        return self.jet(t).v

    def check_domain(self, t):
        pass

    def value(self, t):
        raise NotImplementedError()

    def derivative(self):
        """
        :return: the derivative function, as another ScalarFunction
        """
        raise NotImplementedError()

    def jet(self, t, shift=0):
        """
        Jet of the shift-th derivative of this function at t

        :raises liftcurv.exceptions.DomainError: if t is outside the domain
        """
        self.check_domain(t)
        f = self
        for _ in range(shift):
            f = f.derivative()

        channels = []
        for _ in range(4):
            channels.append(float(f.value(t)))
            f = f.derivative()

        return Jet3(*channels)


class Constant(ScalarFunction):
    def __init__(self, k):
        self.k = float(k)

    def __repr__(self):
        return f"Constant({self.k})"

    def value(self, t):
        return self.k

    def derivative(self):
        return Constant(0.0)


class Polynomial(ScalarFunction):
    """
    Polynomial in t, coefficients given from the constant term upwards
    """
    def __init__(self, coeffs):
        coeffs = [float(c) for c in coeffs] or [0.0]
        self.coeffs = coeffs

    def __repr__(self):
        return f"Polynomial({self.coeffs})"

    def value(self, t):
        ret = 0.0
        for c in reversed(self.coeffs):
            ret = ret * t + c

        return ret

    def derivative(self):
        if len(self.coeffs) == 1:
            return Constant(0.0)

        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])


class PowerLaw(ScalarFunction):
    """
    scale * t**exponent, e.g. e^eps * t^(-3/2) or t^(-1). Needs t > 0 unless
    the exponent is a non-negative integer.
    """
    def __init__(self, scale, exponent):
        self.scale = float(scale)
        self.exponent = float(exponent)

    def __repr__(self):
        return f"PowerLaw({self.scale}, {self.exponent})"

    def _is_polynomial(self):
        return self.exponent.is_integer() and self.exponent >= 0

    def check_domain(self, t):
        if not self._is_polynomial() and t <= 0.0:
            raise DomainError(f"t^{self.exponent} needs t > 0, got t={t}")

    def value(self, t):
        if self.scale == 0.0:
            return 0.0

        return self.scale * t ** self.exponent

    def derivative(self):
        if self.scale == 0.0 or self.exponent == 0.0:
            return Constant(0.0)

        return PowerLaw(self.scale * self.exponent, self.exponent - 1.0)


def jet_eval(f, t):
    """
    Exact value and first three derivatives of a closed-form scalar function

    :param ScalarFunction f: function to evaluate
    :param float t: energy density

    :raises liftcurv.exceptions.DomainError: if t is outside the domain of f
    :return: Jet3 at t
    """
    return f.jet(t)


class ParamJets(NamedTuple):
    """
    The six coefficient jets of a lifted metric at one value of t
    """
    c1: Jet3
    c2: Jet3
    c3: Jet3
    d1: Jet3
    d2: Jet3
    d3: Jet3


def _anywhere(t):
    return True


def _scaled(f, factor):
    def _inner(t):
        return f(t) * factor

    return _inner


@dataclass(frozen=True)
class ParamFamily(object):
    """
    The six coefficient functions c1, c2, c3, d1, d2, d3 of a lifted metric.
    Each member maps t to a Jet3. Nondegeneracy is checked downstream, the
    domain predicate only guards evaluation.

    :ivar str name: family name, used in reports
    :ivar domain: predicate on t, False where the family is undefined
    """
    c1: Callable
    c2: Callable
    c3: Callable
    d1: Callable
    d2: Callable
    d3: Callable
    domain: Callable = _anywhere
    name: str = 'custom'

    def evaluate(self, t):
        """
        Evaluate all six coefficient jets at t

        :raises liftcurv.exceptions.DomainError: if t is outside the domain
        :return: jets of c1..d3
        :rtype: ParamJets
        """
        if not self.domain(t):
            raise DomainError(f"t={t} is outside the domain of the '{self.name}' family")

        ret = ParamJets(*(Jet3.lift(f(t)) for f in (self.c1, self.c2, self.c3, self.d1, self.d2, self.d3)))
        for jet in ret:
            if not all(math.isfinite(c) for c in jet.channels()):
                raise DomainError(f"'{self.name}' family is not finite at t={t}")

        return ret

    def scaled(self, factor):
        """
        Family whose six functions are multiplied by a constant factor. The
        resulting metric is a constant conformal rescaling of this one.
        """
        fs = [_scaled(f, factor) for f in (self.c1, self.c2, self.c3, self.d1, self.d2, self.d3)]
        return ParamFamily(*fs, domain=self.domain, name=self.name)
