import math
from unittest import TestCase

import numpy as np

from liftcurv.base import FlatCartesian, Perturbed, SpaceForm
from liftcurv.exceptions import ConfigurationError, DomainError
from liftcurv.families import (FAMILY_NAMES, FamilySpec, build_family, check_constraints, defined_at_zero,
                               family_selfcheck, hypothesis_polynomial)
from liftcurv.jets import Jet3, ParamJets
from liftcurv.lift import PRINTED
from liftcurv.sampling import Sampler


class TestBuildFamily(TestCase):
    def test_defaults(self):
        """
        Tests that every family builds with its default constants
        """
        for name in FAMILY_NAMES:
            family = build_family(FamilySpec(name))
            self.assertEqual(name, family.name)
            self.assertEqual(6, len(family.evaluate(0.25)))

    def test_unknown(self):
        """
        Tests that unknown family names and custom keys raise
        ConfigurationError
        """
        self.assertRaises(ConfigurationError, build_family, FamilySpec('thm99'))
        self.assertRaises(ConfigurationError, build_family, FamilySpec('custom', custom={'e1': [1.0]}))
        self.assertRaises(ConfigurationError, build_family, FamilySpec('sasaki'), variant='misprinted')

    def test_positive_domain(self):
        """
        Tests that a family undefined at t = 0 refuses a range reaching zero
        """
        self.assertRaises(ConfigurationError, build_family, FamilySpec('thm42'), (0.0, 0.5))
        self.assertRaises(ConfigurationError, build_family, FamilySpec('cor43'), (0.0, 0.5), PRINTED)
        build_family(FamilySpec('cor43'), (0.0, 0.5))

    def test_constraint_sign_change(self):
        """
        Tests that a denominator changing sign on the range is rejected
        """
        self.assertRaises(ConfigurationError, build_family, FamilySpec('thm42', k=20.0))
        self.assertRaises(ConfigurationError, build_family, FamilySpec('thm44', gamma=[-1.0]), (1e-3, 1.0))
        self.assertRaises(ConfigurationError, build_family, FamilySpec('thm41_form2', k=0.0))

    def test_thm42_values(self):
        """
        Tests the closed-form coefficients of the thm42 family
        """
        jets = build_family(FamilySpec('thm42', eps=0.5), (0.1, 1.0)).evaluate(1.0)
        self.assertAlmostEqual(math.exp(0.5), jets.d3.v, places=12)
        self.assertAlmostEqual(-1.5 * math.exp(0.5), jets.d3.d1, places=12)
        self.assertAlmostEqual(0.0, jets.c3.v + 2.0 * jets.d3.v, places=12)
        self.assertEqual(Jet3.constant(2.0), jets.c1)

    def test_cor43_variants(self):
        """
        Tests the corrected and printed d2 of the cor43 family
        """
        t = 0.2
        corrected = build_family(FamilySpec('cor43')).evaluate(t)
        self.assertAlmostEqual(2.6 / 2.4, corrected.d2.v, places=12)

        printed = build_family(FamilySpec('cor43'), variant=PRINTED).evaluate(t)
        thm42 = build_family(FamilySpec('thm42')).evaluate(t)
        self.assertAlmostEqual(thm42.d2.v, printed.d2.v, places=12)
        self.assertEqual(0.0, printed.c3.v)

    def test_thm44_values(self):
        """
        Tests that the thm44 family only carries the mixed block
        """
        jets = build_family(FamilySpec('thm44', beta=[2.0, 1.0], gamma=[0.5])).evaluate(0.5)
        self.assertEqual((0.0, 0.0, 0.0, 0.0), (jets.c1.v, jets.c2.v, jets.d1.v, jets.d2.v))
        self.assertAlmostEqual(2.5, jets.c3.v)
        self.assertAlmostEqual(1.0, jets.c3.d1)
        self.assertAlmostEqual(0.5, jets.d3.v)

    def test_defined_at_zero(self):
        """
        Tests which families reach the zero section
        """
        self.assertTrue(defined_at_zero(build_family(FamilySpec('thm44'))))
        self.assertTrue(defined_at_zero(build_family(FamilySpec('sasaki'))))
        self.assertFalse(defined_at_zero(build_family(FamilySpec('thm42'))))
        self.assertRaises(DomainError, build_family(FamilySpec('thm42')).evaluate, 0.0)


class TestConstraints(TestCase):
    def test_nonzero_constant_sign(self):
        """
        Tests that a constraint of constant nonzero sign passes
        """
        check_constraints('test', [('t + 1 != 0', lambda t: t + 1.0)], (0.0, 1.0))

    def test_violations(self):
        """
        Tests that zeros, sign changes and non-finite values fail
        """
        for label, f in (('zero', lambda t: 0.0), ('sign', lambda t: t - 0.5), ('inf', lambda t: math.inf)):
            self.assertRaises(ConfigurationError, check_constraints, 'test', [(label, f)], (0.0, 1.0))

    def test_inverted_range(self):
        """
        Tests that an inverted t range raises ConfigurationError
        """
        self.assertRaises(ConfigurationError, check_constraints, 'test', [], (1.0, 0.0))


class TestSelfCheck(TestCase):
    def test_hypothesis_polynomial(self):
        """
        Tests the nondegeneracy polynomial at a known point
        """
        jets = ParamJets(*(Jet3.constant(v) for v in (2.0, 1.0, 0.5, 0.0, 0.25, 0.1)))
        t, c = 0.5, 1.0
        expected = (2.0 - 0.25 + 2.0 * 0.5 + 2.0 * 2.0 * 0.25 * 0.5 - 4.0 * 0.5 * 0.1 * 0.5
                    + 4.0 * 0.25 * 0.25 - 4.0 * 0.01 * 0.25)
        self.assertAlmostEqual(expected, hypothesis_polynomial(jets, t, c), places=12)

    def test_thm42_on_flat(self):
        """
        Tests the self-check of thm42 over a flat base
        """
        base = FlatCartesian(3)
        sampler = Sampler(base, 8, seed=4)
        check = family_selfcheck(build_family(FamilySpec('thm42'), sampler.t_range()), base, sampler)
        self.assertTrue(check.ok)
        self.assertEqual(8, check.points)
        self.assertLess(check.identities['c3 + 2t d3'], 1e-12)
        self.assertAlmostEqual(0.0, check.curvature, places=9)
        self.assertEqual(0.0, check.d1_residual)
        self.assertGreater(check.hypothesis_min, 0.0)

    def test_sphere_curvature(self):
        """
        Tests that the self-check fits the curvature of a space form and
        measures d1 - c c2
        """
        base = SpaceForm(3, c=1.0)
        sampler = Sampler(base, 4)
        check = family_selfcheck(build_family(FamilySpec('sasaki')), base, sampler)
        self.assertAlmostEqual(1.0, check.curvature, places=9)
        self.assertAlmostEqual(1.0, check.d1_residual, places=12)
        self.assertEqual({}, check.identities)

    def test_non_constant_curvature(self):
        """
        Tests that d1 = c c2 is not measured off constant curvature
        """
        base = Perturbed(3, eps=0.3)
        check = family_selfcheck(build_family(FamilySpec('thm44')), base, Sampler(base, 4))
        self.assertTrue(math.isnan(check.d1_residual))
        self.assertTrue(math.isinf(check.hypothesis_min))
        self.assertTrue(np.isnan(check.curvature))
