import json
import os
import sys
from json.decoder import JSONDecodeError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from liftcurv.record import CustomValue, VERSION_FIELD, _walk_fields, _walk_dict, record_to_dict
from liftcurv.exceptions import ConfigurationError, LoadReportError


class Serializer(object):
    """
    Converts Record instances to and from dicts, JSON strings and files
    """
    def __init__(self, record=None):
        self.record = record

    def _target(self, record):
        return record if record is not None else self.record

    def to_dict(self, record=None):
        """
        Convert a record to a dict suitable for the json library

        :param record: Record instance to convert. If unset, the record passed\
            to __init__ is used.

        :return: record data as a dict
        :rtype: dict
        """
        return record_to_dict(self._target(record))

    def validate_dict(self, attrs, record=None, partial=False):
        """
        Validate a record in dict form.

        :param dict attrs: dict to validate
        :param record: Record instance to validate the dict against
        :param bool partial: If True, fields missing from the dict are allowed\
            (they keep their current values). Unknown fields are always rejected.

        :raises liftcurv.exceptions.ConfigurationError: if the dict contains\
            fields that are not found in the record, or (unless partial) if\
            fields of the record are missing from the dict.
        """
        record = self._target(record)

        seen = {}
        for field in _walk_fields(record):
            dotname = field.dot_name()
            if dotname != VERSION_FIELD:
                seen[dotname] = False

        try:
            for field in _walk_dict(record, attrs):
                dotname = field.dot_name()
                if dotname == VERSION_FIELD:
                    continue

                if dotname not in seen:
                    raise ConfigurationError(f"Unrecognized field name '{dotname}'")

                seen[dotname] = True
        except AttributeError as e:
            raise ConfigurationError(f"Unrecognized field name: {e}") from None

        missing = [n for n in seen if not seen[n]]
        if missing and not partial:
            raise ConfigurationError(f"Fields missing from dict: {','.join(missing)}")

    def from_dict(self, attrs, record=None, validate=True, partial=False):
        """
        Populate a record with data from a dict.

        :param dict attrs: dict containing record data
        :param record: Record instance to populate
        :param bool validate: If False, validation of the dict is skipped
        :param bool partial: Allow fields to be missing from the dict

        :raises liftcurv.exceptions.ConfigurationError: if validation fails

        :return: MigrationResult describing the schema migration that was\
            performed, or None if no migration was needed
        :rtype: liftcurv.record.MigrationResult
        """
        record = self._target(record)
        attrs = dict(attrs)

        migration_result, attrs = record._rec__migrate(attrs)
        if (migration_result is not None) and (not migration_result.success):
            return migration_result

        if validate:
            self.validate_dict(attrs, record, partial)

        attrs.pop(VERSION_FIELD, None)

        for field in _walk_dict(record, attrs):
            current = field.get(record)
            if isinstance(current, CustomValue):
                current.from_dict(field.value)
            else:
                field.set(record)

        return migration_result

    def to_json(self, record=None, indent=2):
        """
        Generate a JSON string from a record. Field order follows the field
        declaration order of the record class.

        :param int indent: indentation level; None puts everything on one line
        :return: JSON string
        :rtype: str
        """
        return json.dumps(self.to_dict(record), indent=indent)

    def from_json(self, jsonstr, record=None, validate=True, partial=False):
        """
        Populate a record from a JSON string.

        :raises liftcurv.exceptions.LoadReportError: if JSON parsing fails
        """
        try:
            d = json.loads(jsonstr)
        except JSONDecodeError as e:
            raise LoadReportError(f"JSON decode failure: {e}") from None

        if not isinstance(d, dict):
            raise LoadReportError("JSON document must be an object")

        return self.from_dict(d, record, validate, partial)

    def to_file(self, filename, record=None, indent=2):
        """
        Save record data to a JSON file (newline terminated)
        """
        with open(filename, 'w') as fh:
            fh.write(self.to_json(record, indent))
            fh.write('\n')

    def from_file(self, filename, record=None, validate=True, partial=False):
        """
        Populate a record from a JSON file, or a TOML file if the file name
        ends with '.toml'.

        :raises liftcurv.exceptions.LoadReportError: if the file is missing or\
            cannot be parsed
        """
        if not os.path.isfile(filename):
            raise LoadReportError(f"No such file: {filename}")

        if filename.endswith('.toml'):
            with open(filename, 'rb') as fh:
                try:
                    d = tomllib.load(fh)
                except tomllib.TOMLDecodeError as e:
                    raise LoadReportError(f"TOML decode failure: {e}") from None

            return self.from_dict(d, record, validate, partial)

        with open(filename, 'r') as fh:
            return self.from_json(fh.read(), record, validate, partial)
