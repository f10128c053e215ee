from unittest import TestCase

import numpy as np

from liftcurv.base import FlatCartesian, SpaceForm
from liftcurv.exceptions import ConfigurationError, DegenerateMetricError
from liftcurv.families import FamilySpec, build_family
from liftcurv.lift import (CORRECTED, PRINTED, LiftedPoint, block_derivatives, energy_density, inverse_blocks,
                           metric_blocks)


GENERIC = {'c1': [1.0, 0.2], 'c2': [1.5, 0.3], 'c3': [0.2], 'd1': [0.1], 'd2': [0.3, 0.1], 'd3': [0.05]}

X = np.array([0.1, -0.2, 0.3])
Y = np.array([0.4, 0.2, -0.5])


def custom(**coeffs):
    return build_family(FamilySpec('custom', custom=coeffs))


def _shifted(y, i, h):
    ret = np.array(y, dtype=float)
    ret[i] += h
    return ret


class TestMetricBlocks(TestCase):
    def test_energy_density(self):
        """
        Tests that t is half the squared g-norm of y
        """
        base = SpaceForm(3)
        g = base.metric(X)
        self.assertAlmostEqual(0.5 * Y @ g @ Y, energy_density(base, X, Y), places=14)

    def test_sasaki_blocks(self):
        """
        Tests that the Sasaki family lifts g to diag(g, g)
        """
        base = SpaceForm(3)
        m = metric_blocks(custom(c1=[1.0], c2=[1.0]), base, X, Y)
        g = base.metric(X)
        self.assertTrue(np.allclose(np.block([[g, 0 * g], [0 * g, g]]), m.full()))

    def test_inverse(self):
        """
        Tests that the inverse blocks invert the assembled metric
        """
        base = SpaceForm(3)
        family = custom(**GENERIC)
        m = metric_blocks(family, base, X, Y)
        h = inverse_blocks(family, base, X, Y, CORRECTED, m)
        self.assertTrue(np.allclose(np.eye(6), m.full() @ h.full(), atol=1e-12))

    def test_degenerate(self):
        """
        Tests that c1 c2 = c3^2 raises DegenerateMetricError
        """
        family = custom(c1=[1.0], c2=[1.0], c3=[1.0])
        self.assertRaises(DegenerateMetricError, inverse_blocks, family, FlatCartesian(3), X, Y)

    def test_unknown_variant(self):
        """
        Tests that an unknown formula variant raises ConfigurationError
        """
        family = custom(**GENERIC)
        self.assertRaises(ConfigurationError, inverse_blocks, family, FlatCartesian(3), X, Y, 'misprinted')
        self.assertRaises(ConfigurationError, LiftedPoint, family, FlatCartesian(3), X, Y, 'misprinted')


class TestBlockDerivatives(TestCase):
    h = 1e-5

    def setUp(self):
        self.base = SpaceForm(3, c=0.5)
        self.family = custom(**GENERIC)

    def test_metric_fibre_derivative(self):
        """
        Tests the fibre derivative of the assembled metric against central
        differences in y
        """
        d = block_derivatives(self.family, self.base, X, Y).full_dG()
        for i in range(3):
            up = metric_blocks(self.family, self.base, X, _shifted(Y, i, self.h)).full()
            down = metric_blocks(self.family, self.base, X, _shifted(Y, i, -self.h)).full()
            self.assertTrue(np.allclose((up - down) / (2.0 * self.h), d[i], atol=1e-8))

    def test_metric_second_fibre_derivative(self):
        """
        Tests the second fibre derivative of the metric against central
        differences of the first
        """
        dd = block_derivatives(self.family, self.base, X, Y).full_ddG()
        for j in range(3):
            up = block_derivatives(self.family, self.base, X, _shifted(Y, j, self.h)).full_dG()
            down = block_derivatives(self.family, self.base, X, _shifted(Y, j, -self.h)).full_dG()
            fd = (up - down) / (2.0 * self.h)
            self.assertTrue(np.allclose(fd, dd[:, j], atol=1e-8))

    def test_inverse_fibre_derivative(self):
        """
        Tests the fibre derivative of the inverse blocks against central
        differences in y
        """
        d = block_derivatives(self.family, self.base, X, Y).full_dH()
        for i in range(3):
            up = inverse_blocks(self.family, self.base, X, _shifted(Y, i, self.h)).full()
            down = inverse_blocks(self.family, self.base, X, _shifted(Y, i, -self.h)).full()
            self.assertTrue(np.allclose((up - down) / (2.0 * self.h), d[i], atol=1e-8))

    def test_printed_matches_without_d_terms(self):
        """
        Tests that the printed and corrected derivatives agree when every d
        coefficient vanishes, and differ otherwise
        """
        family = custom(c1=[1.0, 0.2], c2=[1.5, 0.3], c3=[0.2])
        a = block_derivatives(family, self.base, X, Y, CORRECTED)
        b = block_derivatives(family, self.base, X, Y, PRINTED)
        self.assertTrue(np.allclose(a.full_dG(), b.full_dG()))
        self.assertTrue(np.allclose(a.full_ddG(), b.full_ddG()))

        a = block_derivatives(self.family, self.base, X, Y, CORRECTED)
        b = block_derivatives(self.family, self.base, X, Y, PRINTED)
        self.assertGreater(np.max(np.abs(a.full_dG() - b.full_dG())), 1e-6)


class TestLiftedPoint(TestCase):
    def test_frame_metric(self):
        """
        Tests that the adapted-frame metric is the assembled lifted metric
        """
        lp = LiftedPoint(custom(**GENERIC), SpaceForm(3), X, Y)
        self.assertTrue(np.array_equal(lp.metric.full(), lp.frame.G))
        self.assertEqual(3, lp.n)
        self.assertEqual(3, lp.frame.n)
