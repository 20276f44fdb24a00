"""
Loop Factor

Exact factorization of rational loops in SO(n), CSp(n) and G2 into simple
elements, over the Gaussian rationals Q(i).

Supports:
- Simple elements, their inverses, dressing and permutability
- Factorization of real, normalized loops, untwisted and twisted
- Octonion multiplication and the g2 relations
- The affine algebra g2 x| C^7 and its flat connections
- Seeded random loops for round-trip testing
"""

__version__ = "0.1.0"

from .errors import AlgorithmFailure, LoopFactorError, ParseError, ValidationError
from .exactnum import Polynomial, RationalFunction, format_scalar, gq, parse_scalar
from .formsla import FormContext, MatrixC, Subspace, extend_to_lagrangian, isotropic_classify
from .loops import (
    GroupContext,
    GroupKind,
    MatrixLoop,
    TwistContext,
    TwistFlavor,
    laurent_at,
    loop_det,
    loop_inv,
    membership,
    pole_spectrum,
    symmetry_check,
)
from .simplefactor import SimpleFactorSpec, TwistedQSpec, inverse_spec, materialize, moved_spec
from .dressperm import dress, permute
from .factorize import (
    FactorizationResult,
    factor_csp,
    factor_g2,
    factor_loop,
    factor_so,
    factor_twisted,
    verify_product,
)
from .sampler import LoopSampler
from .reporter import JsonReporter, MarkdownReporter, TerminalReporter, get_reporter
from .run_config import RunConfig, load_run_config

__all__ = [
    "AlgorithmFailure",
    "LoopFactorError",
    "ParseError",
    "ValidationError",
    "Polynomial",
    "RationalFunction",
    "format_scalar",
    "gq",
    "parse_scalar",
    "FormContext",
    "MatrixC",
    "Subspace",
    "extend_to_lagrangian",
    "isotropic_classify",
    "GroupContext",
    "GroupKind",
    "MatrixLoop",
    "TwistContext",
    "TwistFlavor",
    "laurent_at",
    "loop_det",
    "loop_inv",
    "membership",
    "pole_spectrum",
    "symmetry_check",
    "SimpleFactorSpec",
    "TwistedQSpec",
    "inverse_spec",
    "materialize",
    "moved_spec",
    "dress",
    "permute",
    "FactorizationResult",
    "factor_csp",
    "factor_g2",
    "factor_loop",
    "factor_so",
    "factor_twisted",
    "verify_product",
    "LoopSampler",
    "JsonReporter",
    "MarkdownReporter",
    "TerminalReporter",
    "get_reporter",
    "RunConfig",
    "load_run_config",
]
