from unittest import TestCase

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from liftcurv.base import (FlatCartesian, FlatCurvilinear, Perturbed, SpaceForm, base_point, contract_y,
                           is_constant_curvature, make_base, parse_base_spec, sectional_curvature,
                           space_form_tensor)
from liftcurv.exceptions import ConfigurationError, DomainError


points3 = arrays(np.float64, 3, elements=st.floats(min_value=-0.5, max_value=0.5))


class TestBaseCharts(TestCase):
    def test_flat_cartesian(self):
        """
        Tests that the Cartesian chart has identity metric and no curvature
        """
        base = FlatCartesian(3)
        x = np.array([0.1, -0.2, 0.3])
        self.assertTrue(np.array_equal(np.eye(3), base.metric(x)))
        self.assertEqual(0.0, np.max(np.abs(base.christoffel(x))))
        self.assertEqual(0.0, np.max(np.abs(base.riemann(x))))

    def test_flat_curvilinear(self):
        """
        Tests that the curvilinear flat chart has nonzero Christoffel symbols
        and vanishing curvature
        """
        base = FlatCurvilinear(3)
        x = np.array([0.2, 0.4, -0.3])
        self.assertGreater(np.max(np.abs(base.christoffel(x))), 1e-2)
        self.assertLess(np.max(np.abs(base.riemann(x))), 1e-10)

    def test_flat_curvilinear_christoffel_derivative(self):
        """
        Tests the closed-form Christoffel derivatives of the curvilinear chart
        against central differences
        """
        base = FlatCurvilinear(3)
        x = np.array([0.2, 0.4, -0.3])
        h = 1e-6
        for m in range(3):
            dx = np.zeros(3)
            dx[m] = h
            fd = (base.christoffel(x + dx) - base.christoffel(x - dx)) / (2.0 * h)
            self.assertTrue(np.allclose(fd, base.christoffel_derivative(x)[m], atol=1e-7))

    def test_space_form_origin(self):
        """
        Tests that the space form chart is Euclidean to first order at the origin
        """
        base = SpaceForm(3, c=1.0)
        x = np.zeros(3)
        self.assertTrue(np.allclose(np.eye(3), base.metric(x)))
        self.assertTrue(np.allclose(0.0, base.christoffel(x)))

    @settings(max_examples=20, deadline=None)
    @given(points3)
    def test_sphere_sectional_curvature(self, x):
        """
        Tests that every coordinate plane of the unit sphere chart has
        sectional curvature one
        """
        base = SpaceForm(3, c=1.0)
        for i, j in ((0, 1), (0, 2), (1, 2)):
            self.assertLess(abs(sectional_curvature(base, x, i, j) - 1.0), 1e-8)

    def test_space_form_riemann_from_christoffels(self):
        """
        Tests that the Riemann tensor built from the Christoffel symbols of the
        space form matches c times the space form tensor
        """
        base = SpaceForm(4, c=-0.5)
        x = np.array([0.1, 0.2, -0.3, 0.05])
        generic = super(SpaceForm, base).riemann(x)
        expected = -0.5 * space_form_tensor(base.metric(x))
        self.assertTrue(np.allclose(expected, generic, atol=1e-10))

    def test_space_form_outside_chart(self):
        """
        Tests that a negative curvature chart raises DomainError outside its ball
        """
        base = SpaceForm(2, c=-1.0)
        self.assertRaises(DomainError, base.metric, np.array([3.0, 0.0]))

    def test_perturbed_bianchi(self):
        """
        Tests the first Bianchi identity and the antisymmetry of the perturbed
        curvature
        """
        base = Perturbed(3, eps=0.2)
        r = base.riemann(np.array([0.3, -0.2, 0.4]))
        self.assertTrue(np.allclose(r, -np.swapaxes(r, 2, 3), atol=1e-8))
        cyclic = r + np.einsum('hijk->hkij', r) + np.einsum('hjki->hkij', r)
        self.assertLess(np.max(np.abs(cyclic)), 1e-5)

    def test_wrong_point_shape(self):
        """
        Tests that a chart point of the wrong dimension raises DomainError
        """
        self.assertRaises(DomainError, FlatCartesian(3).metric, np.zeros(2))
        self.assertRaises(DomainError, FlatCartesian(3).metric, np.array([0.0, np.nan, 0.0]))

    def test_invalid_dimension(self):
        """
        Tests that a base of dimension below two raises ConfigurationError
        """
        self.assertRaises(ConfigurationError, FlatCartesian, 1)


class TestConstantCurvature(TestCase):
    samples = [np.array([0.1, 0.2, 0.0]), np.array([-0.3, 0.1, 0.2]), np.array([0.0, -0.4, 0.3])]

    def test_flat(self):
        """
        Tests that a flat chart fits c = 0
        """
        ok, c = is_constant_curvature(FlatCurvilinear(3), self.samples)
        self.assertTrue(ok)
        self.assertLess(abs(c), 1e-9)

    def test_sphere(self):
        """
        Tests that the space form fits its own curvature
        """
        ok, c = is_constant_curvature(SpaceForm(3, c=2.0), self.samples)
        self.assertTrue(ok)
        self.assertAlmostEqual(2.0, c, places=9)

    def test_perturbed(self):
        """
        Tests that the perturbed chart is not of constant curvature
        """
        ok, _ = is_constant_curvature(Perturbed(3, eps=0.3), self.samples)
        self.assertFalse(ok)

    def test_too_few_samples(self):
        """
        Tests that a fit over a single point raises ConfigurationError
        """
        self.assertRaises(ConfigurationError, is_constant_curvature, FlatCartesian(3), self.samples[:1])


class TestBaseSpecs(TestCase):
    def test_parse(self):
        """
        Tests that every base spelling builds the right chart
        """
        self.assertIsInstance(parse_base_spec('flat', 3), FlatCartesian)
        self.assertIsInstance(parse_base_spec('flat-curvilinear', 3), FlatCurvilinear)
        sphere = parse_base_spec('sphere:0.5', 4)
        self.assertIsInstance(sphere, SpaceForm)
        self.assertEqual(0.5, sphere.c)
        self.assertEqual(4, sphere.n)
        self.assertEqual(0.1, parse_base_spec('perturbed:0.1', 3).eps)
        self.assertEqual('sphere:0.5', sphere.describe())

    def test_parse_invalid(self):
        """
        Tests that malformed base specs raise ConfigurationError
        """
        for spec in ('torus', 'sphere:abc', 'flat:1'):
            self.assertRaises(ConfigurationError, parse_base_spec, spec, 3)

    def test_make_base_unknown(self):
        """
        Tests that an unknown kind or parameter raises ConfigurationError
        """
        self.assertRaises(ConfigurationError, make_base, 'hyperbolic', 3)
        self.assertRaises(ConfigurationError, make_base, 'space_form', 3, radius=2.0)


class TestContractions(TestCase):
    def test_contract_y(self):
        """
        Tests contraction of a chosen slot against y
        """
        t = np.arange(8.0).reshape(2, 2, 2)
        y = np.array([1.0, 2.0])
        self.assertTrue(np.array_equal(t[0] + 2.0 * t[1], contract_y(t, y, axis=0)))
        self.assertTrue(np.array_equal(t[:, :, 0] + 2.0 * t[:, :, 1], contract_y(t, y, axis=2)))

    def test_base_point(self):
        """
        Tests the contracted quantities of a BasePoint
        """
        base = SpaceForm(3)
        x = np.array([0.1, 0.2, 0.3])
        y = np.array([1.0, 0.0, 0.0])
        bp = base_point(base, x, y)
        self.assertTrue(np.allclose(bp.gamma[:, 0, :], bp.gamma0))
        self.assertTrue(np.allclose(bp.riemann[:, 0], bp.r0))
        self.assertEqual(0.0, np.max(np.abs(bp.nabla_r0)))
        self.assertRaises(DomainError, base_point, base, x, np.zeros(2))
