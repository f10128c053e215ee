class LiftCurvError(Exception):
    """
    Base class for all exceptions raised by liftcurv
    """
    pass


class DomainError(LiftCurvError):
    """
    Exception raised whenever a scalar function or a base chart is evaluated
    outside of its validity domain
    """
    pass


class StencilDomainError(DomainError):
    """
    Exception raised whenever a finite-difference stencil reaches outside of
    the domain of the metric being differentiated
    """
    pass


class DegenerateError(LiftCurvError):
    """
    Exception raised whenever a jet is divided by a jet with zero value
    """
    pass


class DegenerateMetricError(DegenerateError):
    """
    Exception raised whenever one of the nondegeneracy gates of the lifted
    metric fails at a point
    """
    pass


class ConfigurationError(LiftCurvError):
    """
    Exception raised whenever a configuration, a record dict or a family
    specification fails validation
    """
    pass


class LoadReportError(LiftCurvError):
    """
    Exception raised whenever saved config or report data cannot be loaded
    because of a JSON or TOML parser error
    """
    pass


class InvalidSchemaVersionError(LiftCurvError):
    """
    Exception raised whenever a nested Record has a 'schema_version' attribute
    """
    pass
