"""Exception hierarchy.

``ParameterError`` covers caller mistakes (bad k, ratio, format); ``DataError``
covers problems with the data itself. The CLI maps the two families to
different exit codes.
"""


class HeartselError(Exception):
    pass


class ParameterError(HeartselError, ValueError):
    pass


class ConfigError(ParameterError):
    pass


class DataError(HeartselError):
    pass


class SchemaError(DataError):
    pass


class SchemaMismatchError(SchemaError):
    def __init__(self, column: str, path=None):
        where = f" in {path}" if path is not None else ""
        super().__init__(f"schema column {column!r} not found in CSV header{where}")
        self.column = column


class EncodingError(DataError):
    def __init__(self, feature: str, row: int, value: str):
        super().__init__(
            f"unknown category {value!r} for feature {feature!r} at data row {row}"
        )
        self.feature = feature
        self.row = row
        self.value = value


class IncompleteDataError(DataError):
    pass


class BalanceError(DataError):
    pass


class StratificationError(DataError):
    pass


class InsufficientDataError(DataError):
    pass


class GroupingError(DataError):
    pass


class UndefinedAUCError(DataError):
    pass


class FitError(DataError):
    pass


class ShapeError(DataError, ValueError):
    pass


class ComparisonError(HeartselError):
    pass


class FeatureLookupError(DataError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""
