from unittest import TestCase

import numpy as np

from liftcurv.base import FlatCartesian, Perturbed, SpaceForm
from liftcurv.families import FamilySpec, build_family
from liftcurv.frame import BLOCK_NAMES, assemble_blocks, block_slices, split_blocks
from liftcurv.lift import LiftedPoint


GENERIC = {'c1': [1.0, 0.2], 'c2': [1.5, 0.3], 'c3': [0.2], 'd1': [0.1], 'd2': [0.3, 0.1], 'd3': [0.05]}

X = np.array([0.1, -0.2, 0.3])
Y = np.array([0.4, 0.2, -0.5])


def _frame(base, **coeffs):
    family = build_family(FamilySpec('custom', custom=coeffs or GENERIC))
    return LiftedPoint(family, base, X, Y).frame


class TestFrameConnection(TestCase):
    def test_metric_compatible(self):
        """
        Tests that the difference tensor makes nabla preserve the lifted metric
        along vertical directions, where D G reduces to the fibre derivative
        """
        base = SpaceForm(3)
        family = build_family(FamilySpec('custom', custom=GENERIC))
        lp = LiftedPoint(family, base, X, Y)
        f = lp.frame
        low = np.einsum('dab,dc->abc', f.T, f.G)
        dG = lp.derivs.full_dG()
        self.assertTrue(np.allclose(dG, (low + np.swapaxes(low, 1, 2))[3:], atol=1e-10))
        self.assertTrue(np.allclose(0.0, (low + np.swapaxes(low, 1, 2))[:3], atol=1e-10))

    def test_torsion_free(self):
        """
        Tests that the antisymmetric part of the difference tensor cancels the
        torsion of the reference connection
        """
        f = _frame(Perturbed(3, eps=0.2))
        self.assertTrue(np.allclose(f.T - np.swapaxes(f.T, 1, 2), -f.torsion, atol=1e-10))
        self.assertGreater(np.max(np.abs(f.torsion)), 1e-3)

    def test_connection(self):
        """
        Tests that the Levi-Civita coefficients are the sum of D and T
        """
        f = _frame(SpaceForm(3))
        self.assertTrue(np.array_equal(f.omega + f.T, f.connection()))


class TestFrameCurvature(TestCase):
    def test_sasaki_over_flat(self):
        """
        Tests that the Sasaki lift of a flat base is flat
        """
        f = _frame(FlatCartesian(3), c1=[1.0], c2=[1.0])
        self.assertEqual((6, 6, 6, 6), f.K.shape)
        self.assertLess(np.max(np.abs(f.K)), 1e-12)

    def test_symmetries(self):
        """
        Tests the antisymmetries and the pair symmetry of the lowered curvature
        """
        f = _frame(SpaceForm(3, c=0.7))
        low = np.einsum('ed,dcab->ecab', f.G, f.K)
        self.assertTrue(np.allclose(low, -np.swapaxes(low, 2, 3), atol=1e-12))
        self.assertTrue(np.allclose(low, -np.swapaxes(low, 0, 1), atol=1e-8))
        self.assertTrue(np.allclose(low, np.transpose(low, (2, 3, 0, 1)), atol=1e-8))

    def test_split_assemble(self):
        """
        Tests that the twelve named blocks rebuild the full curvature
        """
        f = _frame(SpaceForm(3))
        blocks = split_blocks(f.K, 3)
        self.assertEqual(set(BLOCK_NAMES), set(blocks))
        self.assertTrue(np.allclose(f.K, assemble_blocks(blocks, 3)))

    def test_block_slices(self):
        """
        Tests the slot order of a block name
        """
        h, k, i, j = block_slices('YXXY', 2)
        self.assertEqual((slice(2, 4), slice(0, 2), slice(2, 4), slice(0, 2)), (h, k, i, j))
