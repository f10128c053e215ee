"""
Declarative records for run configurations and reports.

A Record subclass declares its fields as class attributes; the class attribute
values are the defaults. A field whose default is another Record (class or
instance) becomes a nested section. Only the top-level record may carry a
``schema_version`` attribute, which drives schema migrations when older
documents are loaded.
"""

import copy
import inspect
import json

import numpy as np

from liftcurv.exceptions import ConfigurationError, InvalidSchemaVersionError


VERSION_FIELD = 'schema_version'


def add_migration(migration_func, cls, from_version, to_version):
    """
    Register a function that migrates a record dict from one schema version
    to another.

    :param callable migration_func: Function taking a dict and returning the\
        migrated dict
    :param cls: Record class to add migration to
    :param from_version: Version to migrate from. Use 'None' for documents\
        written without a schema_version field.
    :param to_version: Version to migrate to
    """
    if VERSION_FIELD not in cls.__dict__:
        raise ValueError(f"Cannot add migration to un-versioned record. Add a '{VERSION_FIELD}' attribute.")

    cls._rec__migrations.append((from_version, to_version, migration_func))


def migration(cls, from_version, to_version):
    """
    Decorator equivalent of :func:`add_migration`
    """
    def _inner_migration(migration_func):
        add_migration(migration_func, cls, from_version, to_version)
        return migration_func

    return _inner_migration


class MigrationResult(object):
    """
    Returned by the Serializer load methods whenever a schema migration was
    attempted.

    :ivar old_version: schema version found in the loaded document
    :ivar target_version: schema version of the record class
    :ivar version_reached: schema version after the migrations ran
    :ivar bool success: True if target_version was reached
    """
    def __init__(self, old_version, target_version, version_reached, success):
        self.old_version = old_version
        self.target_version = target_version
        self.version_reached = version_reached
        self.success = success


class CustomValue(object):
    """
    Abstract class for field values that need their own dict conversion
    """
    def to_dict(self):
        raise NotImplementedError()

    def from_dict(self, attrs):
        raise NotImplementedError()


def plain_value(value):
    """
    Convert numpy scalars and arrays (possibly nested in lists, tuples and
    dicts) into plain JSON-compatible python values
    """
    if isinstance(value, np.ndarray):
        return plain_value(value.tolist())

    if isinstance(value, np.generic):
        return value.item()

    if isinstance(value, (list, tuple)):
        return [plain_value(v) for v in value]

    if isinstance(value, dict):
        return {str(k): plain_value(v) for k, v in value.items()}

    return value


class _FieldPath(object):
    """
    A dotted path to one leaf field of a record, usable against either a
    Record instance or a dict of the same shape
    """
    record_class = None

    def __init__(self, parents, name, value):
        self.parents = parents
        self.name = name
        self.value = value

    def __repr__(self):
        return f"Field({self.dot_name()}, {self.value})"

    @classmethod
    def from_dot_name(cls, dotname, record):
        fields = dotname.split('.')
        ret = _FieldPath(fields[:-1], fields[-1], None)
        ret.value = ret.get(record)
        return ret

    def dot_name(self):
        return '.'.join(self.parents + [self.name])

    def _owner(self, record):
        obj = record
        for pname in self.parents:
            obj = getattr(obj, pname)

        return obj

    def get(self, record):
        return getattr(self._owner(record), self.name)

    def set(self, record):
        setattr(self._owner(record), self.name, self.value)

    def set_in_dict(self, attrs):
        d = attrs
        for pname in self.parents:
            d = d.setdefault(pname, {})

        d[self.name] = self.value
        return attrs


def _field_names(obj):
    """
    Field names of a record class or instance, in declaration order
    """
    for n in obj.__dict__:
        if n.startswith('__') or n.startswith('_rec__'):
            continue

        if inspect.isfunction(obj.__dict__[n]) or isinstance(obj.__dict__[n], (classmethod, staticmethod, property)):
            continue

        yield n


def _walk_fields(record):
    """
    Generate a _FieldPath for every leaf field of a record instance, walking
    nested records breadth-first
    """
    stack = [([], record)]

    while stack:
        parents, obj = stack.pop(0)

        for n in _field_names(obj):
            value = obj.__dict__[n]
            if isinstance(value, Record):
                stack.append((parents + [n], value))
            else:
                yield _FieldPath(parents, n, value)


def _walk_dict(record, attrs):
    """
    Generate a _FieldPath for every leaf entry of a dict, using the record
    instance to decide which dict values are nested sections
    """
    stack = [([], attrs)]

    while stack:
        parents, d = stack.pop(0)

        for n in d:
            field = _FieldPath(parents, n, d[n])
            current = field.get(record)
            if isinstance(current, Record) and isinstance(d[n], dict):
                stack.append((parents + [n], d[n]))
            else:
                yield field


def record_to_dict(record):
    """
    Convert a record instance to a dict of plain python values, keeping the
    field declaration order
    """
    ret = {}
    if VERSION_FIELD in record.__class__.__dict__:
        ret[VERSION_FIELD] = getattr(record, VERSION_FIELD)

    for field in _walk_fields(record):
        if field.dot_name() == VERSION_FIELD:
            continue

        value = field.value
        if isinstance(value, CustomValue):
            value = value.to_dict()

        field.value = plain_value(value)
        field.set_in_dict(ret)

    return ret


class _RecordMeta(type):
    """
    Metaclass for Record, creates the migrations class attribute
    """
    def __new__(cls, name, bases, dic):
        dic['_rec__migrations'] = []
        return super().__new__(cls, name, bases, dic)


class Record(metaclass=_RecordMeta):
    """
    Record with class-attribute defaults, nested sections and dotted-name
    item access
    """

    def __init__(self, initial_values=None):
        """
        :param dict initial_values: map of dotted field names to initial values
        """
        self._rec__field_count = 0
        self._rec__populate()

        for dotname, value in (initial_values or {}).items():
            self[dotname] = value

    def _rec__populate(self):
        self._rec__field_count = 0
        for n in _field_names(self.__class__):
            val = getattr(self.__class__, n)

            nested_class = None
            if isinstance(val, Record):
                nested_class = val.__class__
            elif inspect.isclass(val) and issubclass(val, Record):
                nested_class = val

            if nested_class is not None:
                if VERSION_FIELD in nested_class.__dict__:
                    raise InvalidSchemaVersionError(f"{nested_class.__name__} cannot have a {VERSION_FIELD} "
                                                    "attribute. Only the top-level record can have one.")

                val = nested_class()
                self._rec__field_count += len(val)
            else:
                # Mutable defaults (lists, dicts, RecordList) are never shared
                val = copy.deepcopy(val)
                self._rec__field_count += 1

            setattr(self, n, val)

    @classmethod
    def _rec__migrate(cls, attrs):
        version = cls.__dict__.get(VERSION_FIELD, None)
        old_version = attrs.get(VERSION_FIELD, None)
        if old_version == version:
            return None, attrs

        result = MigrationResult(old_version, version, None, True)
        current = old_version
        for from_version, to_version, migrate in cls._rec__migrations:
            if from_version == current:
                attrs = migrate(attrs)
                current = to_version
                if current == version:
                    break

        result.version_reached = current
        result.success = (current == version)
        return result, attrs

    def __str__(self):
        json_str = json.dumps(record_to_dict(self))
        if len(json_str) > 60:
            json_str = json_str[:54] + ' ... }'

        return f"{self.__class__.__name__}({json_str})"

    def __repr__(self):
        return self.__str__()

    def __eq__(self, other):
        if self.__class__ != other.__class__:
            return False

        return record_to_dict(self) == record_to_dict(other)

    def __hash__(self):
        return hash(json.dumps(record_to_dict(self)))

    def __len__(self):
        return self._rec__field_count

    def __getitem__(self, key):
        try:
            return _FieldPath.from_dot_name(key, self).value
        except AttributeError:
            raise KeyError(f"{self.__class__.__name__} record has no field '{key}'") from None

    def __setitem__(self, key, value):
        try:
            field = _FieldPath.from_dot_name(key, self)
        except AttributeError:
            raise ConfigurationError(f"{self.__class__.__name__} record has no field '{key}'") from None

        if isinstance(field.value, Record):
            raise ConfigurationError(f"'{key}' is a section, set its fields individually")

        field.value = value
        field.set(self)

    def __iter__(self):
        for field in _walk_fields(self):
            yield field.dot_name()


_FieldPath.record_class = Record
