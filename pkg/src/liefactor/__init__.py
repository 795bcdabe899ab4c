"""Exact factorization of formal exponentials over graded Lie algebras.

The package solves log(e^X e^Y) = H order by order in sparse formal series
with exact rational (or Grassmann) coefficients, rewrites wrong-order
exponential products into graded normal position, and independently verifies
every identity by normal ordering in the truncated enveloping algebra.
"""

from .algebras import (
    AffinePlugin,
    NSPlugin,
    VirasoroPlugin,
    get_plugin,
    sl2_plugin,
    validate_plugin,
)
from .cbh import BracketTerm, CbhSchema, assoc_log_of_product, cbh_schema, dynkin_project
from .errors import (
    ConfigError,
    ConvergenceError,
    DomainError,
    LieFactorError,
    PluginMismatchError,
    ResidualError,
)
from .factor import (
    MINUS_ZERO_PLUS,
    PLUS_ZERO,
    SplitSpec,
    TripleResult,
    factorize,
    split_central,
    triple_factorize,
    uniformize,
)
from .pbw import (
    Straightener,
    UElement,
    VerifyReport,
    straighten,
    u_exp,
    u_mul,
    verify_factorization,
    verify_switch,
    verify_triple,
)
from .scalars import GrassmannScalar, Rational, bernoulli
from .series import (
    AUX_S,
    AUX_T,
    LieSeries,
    VarLabel,
    attach_aux,
    avar,
    bvar,
    cbh_eval,
    cbh_eval_degree,
    erase_aux,
    mono,
)

__all__ = [
    "AffinePlugin",
    "AUX_S",
    "AUX_T",
    "BracketTerm",
    "CbhSchema",
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "GrassmannScalar",
    "LieFactorError",
    "LieSeries",
    "MINUS_ZERO_PLUS",
    "NSPlugin",
    "PLUS_ZERO",
    "PluginMismatchError",
    "Rational",
    "ResidualError",
    "SplitSpec",
    "Straightener",
    "TripleResult",
    "UElement",
    "VarLabel",
    "VerifyReport",
    "VirasoroPlugin",
    "assoc_log_of_product",
    "attach_aux",
    "avar",
    "bernoulli",
    "bvar",
    "cbh_eval",
    "cbh_eval_degree",
    "cbh_schema",
    "dynkin_project",
    "erase_aux",
    "factorize",
    "get_plugin",
    "mono",
    "sl2_plugin",
    "split_central",
    "straighten",
    "triple_factorize",
    "u_exp",
    "u_mul",
    "uniformize",
    "validate_plugin",
    "verify_factorization",
    "verify_switch",
    "verify_triple",
]

__version__ = "0.1.0"
