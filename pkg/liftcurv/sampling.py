"""
Seeded sample points of TM.
"""

import logging

import numpy as np

from liftcurv.base import Y_MIN
from liftcurv.exceptions import ConfigurationError


logger = logging.getLogger(__name__)


DEFAULT_X_RANGE = (-0.5, 0.5)
DEFAULT_Y_RANGE = (0.3, 1.0)


class Sampler(object):
    """
    Points (x, y) with x uniform in a box and y of uniform direction whose
    g-norm is uniform in y_range, never below y_min. With at_zero every y is
    the zero vector. Iterating twice gives the same points.

    :param base: liftcurv.base.BaseGeometry
    :param int count: number of points
    :param int seed: seed of the numpy random generator
    """
    def __init__(self, base, count, seed=0, x_range=DEFAULT_X_RANGE, y_range=DEFAULT_Y_RANGE,
                 y_min=Y_MIN, at_zero=False):
        if count < 0:
            raise ConfigurationError(f"Sample count must be >= 0, got {count}")

        lo, hi = y_range
        if not (0.0 <= lo <= hi):
            raise ConfigurationError(f"Invalid y range {y_range}")

        if x_range[0] > x_range[1]:
            raise ConfigurationError(f"Invalid x range {x_range}")

        self.base = base
        self.count = int(count)
        self.seed = int(seed)
        self.x_range = tuple(x_range)
        self.y_range = (max(lo, y_min), max(hi, y_min))
        self.y_min = y_min
        self.at_zero = at_zero

    def __repr__(self):
        return (f"Sampler({self.base!r}, count={self.count}, seed={self.seed}, "
                f"x_range={self.x_range}, y_range={self.y_range}, at_zero={self.at_zero})")

    def __len__(self):
        return self.count

    def t_range(self):
        """
        Range of the energy density over the sample points
        """
        if self.at_zero:
            return (0.0, 0.0)

        lo, hi = self.y_range
        return (0.5 * lo * lo, 0.5 * hi * hi)

    def __iter__(self):
        rng = np.random.default_rng(self.seed)
        n = self.base.n
        for _ in range(self.count):
            x = rng.uniform(self.x_range[0], self.x_range[1], size=n)
            direction = rng.standard_normal(n)
            norm = rng.uniform(*self.y_range)
            if self.at_zero:
                yield x, np.zeros(n)
                continue

            g = self.base.metric(x)
            y = direction * (norm / np.sqrt(direction @ g @ direction))
            yield x, y
