"""Exact blow ups of affine schemes over the rationals."""

from .blowup import (
    BlowupError,
    BlowupStep,
    Center,
    Chart,
    ChartTree,
    DivisibilityError,
    blowup_charts,
    controlled_transform,
    strict_transform,
    strict_transform_closure,
    total_transform,
)
from .divisors import (
    DivisorError,
    FactoredDivisor,
    SncVerdict,
    StepsExhausted,
    monomial_check,
    separate_components,
    snc_check_at_point,
    snc_check_global,
    strnorm_surface,
)
from .groebner import GroebnerBasis, Limits, ResourceCapExceeded, limits
from .ideal import (
    Ideal,
    NotZeroDimensional,
    QuotientPresentation,
    contains_one,
    dimension,
    eliminate,
    intersection,
    normal_form,
    quotient,
    radical_membership,
    saturation,
)
from .poly import (
    GREVLEX,
    LEX,
    MonomialOrder,
    Polynomial,
    PolynomialSyntaxError,
    PolyRing,
    UnknownVariableError,
    block_order,
    format_polynomial,
    parse_polynomial,
)
from .resolve import (
    PrincipalizationResult,
    ResolutionError,
    ResolutionTrace,
    principalize_strict_transform,
    resolve_plane_curve,
    separate_and_principalize,
)
from .singularity import is_smooth, jacobian_ideal, max_order_locus, singular_locus_ideal
from .verify import verify_resolution

__version__ = "0.1.0"
