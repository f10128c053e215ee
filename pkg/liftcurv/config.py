"""
Run configuration.

Values are resolved with the precedence

    defaults < config file (TOML or JSON, partial) < LIFTCURV_SEED < CLI flags
"""

import logging
import os

from liftcurv.base import MAX_DIM, MIN_DIM, parse_base_spec
from liftcurv.exceptions import ConfigurationError
from liftcurv.families import FAMILY_NAMES, FamilySpec
from liftcurv.lift import VARIANTS
from liftcurv.record import VERSION_FIELD, Record, migration
from liftcurv.sampling import Sampler
from liftcurv.serializer import Serializer


logger = logging.getLogger(__name__)


SEED_ENV = 'LIFTCURV_SEED'

DIRECT = 'direct'
CONTRAPOSITIVE = 'contrapositive'
MODES = (DIRECT, CONTRAPOSITIVE)


class BaseSection(Record):
    kind = 'flat'
    dim = 3


class CustomCoefficients(Record):
    """
    Polynomial coefficients of the six functions of a custom family,
    constant term first
    """
    c1 = [1.0]
    c2 = [1.0]
    c3 = [0.0]
    d1 = [0.0]
    d2 = [0.0]
    d3 = [0.0]


class FamilySection(Record):
    name = 'thm44'
    k = 2.0
    eps = 0.0
    alpha = [1.0, 1.0]
    beta = [1.0]
    gamma = [0.0]
    custom = CustomCoefficients


class SamplerSection(Record):
    count = 100
    seed = 0
    x_range = [-0.5, 0.5]
    y_range = [0.3, 1.0]
    y_min = 1e-3
    at_zero = False


class Tolerances(Record):
    flat = 1e-8
    nonflat = 1e-4
    oracle_rel = 1e-4
    fd_step = 1e-4
    trace = 1e-7
    scaling = 1e-9


class RunConfig(Record):
    schema_version = 1

    base = BaseSection
    family = FamilySection
    sampler = SamplerSection
    tolerances = Tolerances
    variant = 'corrected'
    mode = DIRECT
    output = ''


@migration(RunConfig, None, 1)
def _unversioned_config(attrs):
    # hand-written config files may leave out schema_version
    return dict(attrs, **{VERSION_FIELD: 1})


def load_config(filename=None, overrides=None, environ=None):
    """
    Build and validate a RunConfig

    :param str filename: optional TOML or JSON file, may set any subset of\
        the fields
    :param dict overrides: dotted field names to values, applied last
    :param dict environ: environment to read LIFTCURV_SEED from, defaults to\
        os.environ

    :raises liftcurv.exceptions.ConfigurationError: if a value is invalid
    :raises liftcurv.exceptions.LoadReportError: if the file cannot be parsed
    :rtype: RunConfig
    """
    config = RunConfig()
    if filename:
        result = Serializer(config).from_file(filename, partial=True)
        if (result is not None) and (not result.success):
            raise ConfigurationError(f"Cannot migrate config schema version {result.old_version} "
                                     f"to {result.target_version}")

    environ = os.environ if environ is None else environ
    if environ.get(SEED_ENV):
        try:
            config['sampler.seed'] = int(environ[SEED_ENV])
        except ValueError:
            raise ConfigurationError(f"{SEED_ENV} must be an integer, got '{environ[SEED_ENV]}'") from None

    for dotname, value in (overrides or {}).items():
        if value is not None:
            config[dotname] = value

    validate_config(config)
    logger.debug("configuration: %s", Serializer(config).to_json(indent=None))
    return config


def _check_range(name, value, lowest=None):
    if (not isinstance(value, (list, tuple))) or len(value) != 2:
        raise ConfigurationError(f"'{name}' must be a pair [low, high], got {value}")

    lo, hi = value
    if lo > hi or (lowest is not None and lo < lowest):
        raise ConfigurationError(f"Invalid '{name}' {value}")


def validate_config(config):
    """
    Check every value of a RunConfig before any computation

    :raises liftcurv.exceptions.ConfigurationError: naming the first invalid\
        field
    """
    dim = config.base.dim
    if (not isinstance(dim, int)) or isinstance(dim, bool) or not (MIN_DIM <= dim <= MAX_DIM):
        raise ConfigurationError(f"'base.dim' must be an integer in [{MIN_DIM}, {MAX_DIM}], got {dim}")

    parse_base_spec(config.base.kind, dim)

    if config.family.name not in FAMILY_NAMES:
        raise ConfigurationError(f"Unknown family '{config.family.name}', must be one of {FAMILY_NAMES}")

    for name in ('alpha', 'beta', 'gamma'):
        if not getattr(config.family, name):
            raise ConfigurationError(f"'family.{name}' needs at least one coefficient")

    if config.variant not in VARIANTS:
        raise ConfigurationError(f"'variant' must be one of {VARIANTS}, got '{config.variant}'")

    if config.mode not in MODES:
        raise ConfigurationError(f"'mode' must be one of {MODES}, got '{config.mode}'")

    if config.sampler.count < 0:
        raise ConfigurationError(f"'sampler.count' must be >= 0, got {config.sampler.count}")

    _check_range('sampler.x_range', config.sampler.x_range)
    _check_range('sampler.y_range', config.sampler.y_range, lowest=0.0)
    if config.sampler.y_min <= 0.0:
        raise ConfigurationError(f"'sampler.y_min' must be > 0, got {config.sampler.y_min}")

    for dotname in config:
        if dotname.startswith('tolerances.') and not config[dotname] > 0.0:
            raise ConfigurationError(f"'{dotname}' must be > 0, got {config[dotname]}")

    if config.tolerances.flat > config.tolerances.nonflat:
        raise ConfigurationError("'tolerances.flat' must not exceed 'tolerances.nonflat'")


def make_base(config):
    """
    :rtype: liftcurv.base.BaseGeometry
    """
    return parse_base_spec(config.base.kind, config.base.dim)


def family_spec(config):
    """
    :rtype: liftcurv.families.FamilySpec
    """
    f = config.family
    custom = {key: list(f.custom[key]) for key in f.custom}
    return FamilySpec(name=f.name, k=f.k, eps=f.eps, alpha=list(f.alpha), beta=list(f.beta),
                      gamma=list(f.gamma), custom=custom)


def make_sampler(config, base, at_zero=None):
    """
    :param bool at_zero: overrides 'sampler.at_zero' when given
    :rtype: liftcurv.sampling.Sampler
    """
    s = config.sampler
    return Sampler(base, s.count, seed=s.seed, x_range=tuple(s.x_range), y_range=tuple(s.y_range),
                   y_min=s.y_min, at_zero=s.at_zero if at_zero is None else at_zero)
