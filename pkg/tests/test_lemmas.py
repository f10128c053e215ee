from unittest import TestCase

import numpy as np

from liftcurv.base import Perturbed
from liftcurv.exceptions import ConfigurationError
from liftcurv.lemmas import lemma_rank, monomial_system, random_point


class TestLemmaRank(TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(7)

    def test_lemma1(self):
        """
        Tests that g and g0 g0 are independent for n >= 2
        """
        for n in range(2, 6):
            g, y = random_point(self.rng, n)
            result = lemma_rank('lemma1', g, None, y)
            self.assertEqual(2, result.columns)
            self.assertTrue(result.full_rank, msg=f"n={n}")

    def test_lemma1_dimension_one(self):
        """
        Tests that the two monomials collapse for n = 1
        """
        result = lemma_rank('lemma1', np.array([[2.0]]), None, np.array([0.5]))
        self.assertEqual(1, result.n)
        self.assertEqual(1, result.rank)
        self.assertFalse(result.full_rank)

    def test_lemma1_remark(self):
        """
        Tests that delta and y g0 are independent for n >= 2
        """
        g, y = random_point(self.rng, 3)
        self.assertTrue(lemma_rank('lemma1_remark', g, None, y).full_rank)

    def test_lemma2(self):
        """
        Tests the ten cubic monomials for n = 3, 4, 5
        """
        for n in (3, 4, 5):
            for _ in range(3):
                g, y = random_point(self.rng, n)
                result = lemma_rank('lemma2', g, None, y)
                self.assertEqual(10, result.columns)
                self.assertTrue(result.full_rank, msg=f"n={n} rank={result.rank}")

    def test_lemma2_dimension_two_warns(self):
        """
        Tests that lemma2 at n = 2 is measured with a warning
        """
        g, y = random_point(self.rng, 2)
        with self.assertLogs('liftcurv.lemmas', level='WARNING'):
            result = lemma_rank('lemma2', g, None, y)

        self.assertEqual(2, result.n)

    def test_zero_vector(self):
        """
        Tests that the monomials built from y collapse on the zero section
        """
        result = lemma_rank('lemma1', np.eye(3), None, np.zeros(3))
        self.assertEqual(1, result.rank)

    def test_base_geometry(self):
        """
        Tests that a base chart supplies the metric
        """
        base = Perturbed(3, eps=0.2)
        x = np.array([0.1, 0.2, 0.3])
        y = np.array([1.0, -0.5, 0.2])
        a = lemma_rank('lemma2', base, x, y)
        b = lemma_rank('lemma2', base.metric(x), None, y)
        self.assertEqual(a.singular_values, b.singular_values)

    def test_unknown_lemma(self):
        """
        Tests that an unknown lemma name raises ConfigurationError
        """
        self.assertRaises(ConfigurationError, monomial_system, 'lemma3', np.eye(2), np.ones(2))


class TestRandomPoint(TestCase):
    def test_positive_definite(self):
        """
        Tests that random metrics are positive definite and y has the
        requested norm range
        """
        rng = np.random.default_rng(0)
        for n in range(1, 6):
            g, y = random_point(rng, n)
            self.assertTrue(np.allclose(g, g.T))
            self.assertGreaterEqual(np.min(np.linalg.eigvalsh(g)), 1.0 - 1e-12)
            self.assertTrue(0.5 <= np.linalg.norm(y) <= 2.0)
