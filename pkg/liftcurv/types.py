import inspect

from liftcurv.record import CustomValue, Record
from liftcurv.serializer import Serializer


class RecordList(CustomValue):
    """
    List field holding Record instances of a single class. Used for the
    per-run and per-point entries of a report.
    """
    def __init__(self, arg):
        self._record_class = None
        self._values = []

        if inspect.isclass(arg) and issubclass(arg, Record):
            self._record_class = arg
        else:
            try:
                items = list(arg)
            except TypeError:
                items = []

            for i in items:
                if not isinstance(i, Record):
                    raise ValueError("RecordList may only contain Record instances")

                if self._record_class is None:
                    self._record_class = i.__class__
                elif self._record_class != i.__class__:
                    raise ValueError("RecordList may only contain records of the same class")

                self._values.append(i)

        if self._record_class is None:
            raise ValueError("Invalid argument, provide a Record class or a non-empty list of Record instances")

        self._serializer = Serializer()

    def _check_value(self, v):
        if not isinstance(v, self._record_class):
            raise ValueError(f"Only instances of {self._record_class.__name__} can be added to this list")

    def __repr__(self):
        return repr(self._values)

    def __getitem__(self, i):
        return self._values[i]

    def __setitem__(self, i, v):
        self._check_value(v)
        self._values[i] = v

    def __len__(self):
        return len(self._values)

    def __iter__(self):
        return iter(self._values)

    def __eq__(self, other):
        othervals = other._values if isinstance(other, RecordList) else other
        return list(self._values) == list(othervals)

    def append(self, v):
        """
        Append a record to the list

        :raises ValueError: if v is not an instance of the list's record class
        """
        self._check_value(v)
        self._values.append(v)

    def extend(self, values):
        for v in values:
            self.append(v)

    def to_dict(self):
        return [self._serializer.to_dict(i) for i in self._values]

    def from_dict(self, attrs):
        self._values = []
        for d in attrs:
            ins = self._record_class()
            self._serializer.from_dict(d, ins)
            self._values.append(ins)
