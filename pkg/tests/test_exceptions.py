from unittest import TestCase

import numpy as np

from liftcurv.base import FlatCartesian, SpaceForm
from liftcurv.exceptions import (ConfigurationError, DegenerateError, DegenerateMetricError, DomainError,
                                 InvalidSchemaVersionError, LiftCurvError, LoadReportError, StencilDomainError)
from liftcurv.families import FamilySpec, build_family
from liftcurv.jets import Jet3
from liftcurv.lift import inverse_blocks
from liftcurv.record import Record
from liftcurv.serializer import Serializer


class TestExceptionHierarchy(TestCase):
    def test_hierarchy(self):
        """
        Tests that every liftcurv exception can be caught as LiftCurvError
        """
        for cls in (DomainError, StencilDomainError, DegenerateError, DegenerateMetricError,
                    ConfigurationError, LoadReportError, InvalidSchemaVersionError):
            self.assertTrue(issubclass(cls, LiftCurvError), msg=cls.__name__)

        self.assertTrue(issubclass(StencilDomainError, DomainError))
        self.assertTrue(issubclass(DegenerateMetricError, DegenerateError))


class TestRaisedExceptions(TestCase):
    def test_jet_division_by_zero(self):
        """
        Tests that dividing by a jet with zero value raises DegenerateError
        """
        self.assertRaises(DegenerateError, lambda: Jet3(1.0, 0.0, 0.0, 0.0) / Jet3(0.0, 1.0, 0.0, 0.0))

    def test_outside_chart(self):
        """
        Tests that evaluating a chart outside its domain raises DomainError
        """
        base = SpaceForm(2, c=-1.0)
        self.assertRaises(DomainError, base.metric, np.array([2.5, 0.0]))

    def test_degenerate_metric(self):
        """
        Tests that a lift with c1 c2 - c3^2 = 0 raises DegenerateMetricError
        """
        family = build_family(FamilySpec('custom', custom={'c1': [1.0], 'c2': [1.0], 'c3': [1.0]}))
        base = FlatCartesian(2)
        self.assertRaises(DegenerateMetricError, inverse_blocks, family, base, np.zeros(2), np.array([0.5, 0.0]))

    def test_invalid_dict(self):
        """
        Tests that unknown and missing record fields raise ConfigurationError
        """
        class NestedConfig(Record):
            val1 = "a"
            val2 = "bb"

        class TestConfig(Record):
            val1 = 1
            val2 = NestedConfig

        ser = Serializer(TestConfig())
        self.assertRaises(ConfigurationError, ser.from_dict, {"val1": 1, "val2": {"val1": 1, "val2": 1, "val3": 1}})
        self.assertRaises(ConfigurationError, ser.from_dict, {"val1": 1, "val2": {"val1": 1}})
        self.assertRaises(ConfigurationError, ser.from_dict, {"val1": 1})

    def test_load_errors(self):
        """
        Tests that unparseable JSON raises LoadReportError
        """
        class TestConfig(Record):
            val1 = 1

        self.assertRaises(LoadReportError, Serializer(TestConfig()).from_json, '{"val1": ')
