from unittest import TestCase

from liftcurv.record import Record
from liftcurv.report import PointEntry
from liftcurv.types import RecordList


class Point(Record):
    sup_norm = 0.0

    def __init__(self, sup_norm=0.0):
        super(Point, self).__init__(initial_values={"sup_norm": sup_norm})


class Other(Record):
    sup_norm = 0.0


class TestRecordList(TestCase):
    def test_exceptions(self):
        """
        Tests that RecordList rejects anything but records of a single class
        """
        self.assertRaises(ValueError, RecordList, 5)
        self.assertRaises(ValueError, RecordList, "abc")
        self.assertRaises(ValueError, RecordList, [])
        self.assertRaises(ValueError, RecordList, [44.4])
        self.assertRaises(ValueError, RecordList, [Point(1.0), 44.4])
        self.assertRaises(ValueError, RecordList, [Point(1.0), Other()])

        x = RecordList([Point(1.0), Point(2.0)])
        self.assertRaises(ValueError, x.append, Other())
        self.assertRaises(IndexError, lambda: x[99])

        write_exception = False
        try:
            x[0] = Other()
        except ValueError:
            write_exception = True
        self.assertTrue(write_exception)

    def test_list_basic(self):
        """
        Tests that RecordList behaves like a list for common operations
        """
        source = [Point(1.0), Point(2.0), Point(3.0)]
        x = RecordList(source)
        self.assertEqual(x, source)
        self.assertEqual(x, RecordList(source))
        self.assertEqual(3, len(x))
        self.assertEqual(Point(2.0), x[1])

        x[1] = Point(22.0)
        self.assertEqual([Point(1.0), Point(22.0), Point(3.0)], [p for p in x])

        x.append(Point(4.0))
        x.extend([Point(5.0)])
        self.assertEqual(5, len(x))
        self.assertEqual(Point(5.0), x[-1])

    def test_empty_from_class(self):
        """
        Tests that a RecordList made from a class starts empty
        """
        x = RecordList(PointEntry)
        self.assertEqual(0, len(x))
        x.append(PointEntry())
        self.assertRaises(ValueError, x.append, Point())

    def test_list_to_from_dict(self):
        """
        Tests that RecordList converts to and from a list of dicts
        """
        entries = RecordList(PointEntry)
        p = PointEntry()
        p.x = [0.1, 0.2]
        p.y = [1.0, 0.0]
        p.sup_norm = 3e-3
        p.block = 'CYXXY'
        entries.append(p)

        expected = [{'x': [0.1, 0.2], 'y': [1.0, 0.0], 'sup_norm': 3e-3, 'block': 'CYXXY'}]
        self.assertEqual(expected, entries.to_dict())

        loaded = RecordList(PointEntry)
        loaded.from_dict(expected)
        self.assertEqual(entries, loaded)
