__version__ = "0.3.0"

from liftcurv.jets import Jet3, ParamFamily, jet_eval
from liftcurv.base import make_base, parse_base_spec, contract_y, is_constant_curvature
from liftcurv.lift import lifted_point, metric_blocks, inverse_blocks, block_derivatives, CORRECTED, PRINTED
from liftcurv.connection import conn_coeffs, conn_derivs, nabla
from liftcurv.curvature import curvature_blocks, ricci_scalar
from liftcurv.weyl import ln_blocks, weyl_blocks, base_weyl, conformal_flatness_report
from liftcurv.families import FamilySpec, build_family, family_selfcheck
from liftcurv.lemmas import lemma_rank
from liftcurv.exceptions import (LiftCurvError, DomainError, StencilDomainError, DegenerateError,
                                 DegenerateMetricError, ConfigurationError, LoadReportError,
                                 InvalidSchemaVersionError)
