"""Prove univariate inequalities f(x) >= 0 on a closed segment.

The method: extend the quotient f(x)/((x-a)^n (b-x)^m) continuously to the
segment, approximate it by a minimax polynomial P with error estimate delta
(second Remez algorithm), and certify P(x) - delta > 0 rigorously by
interval bisection.  Positive endpoint limits plus the certificate prove
f >= 0 with roots admitted at the endpoints.
"""

from .certify import (
    CAVEAT,
    GridStatistics,
    Outcome,
    PositivityCertificate,
    ProofReport,
    ProofSettings,
    certify_positive,
    precondition_check,
    prove_inequality,
    report_to_json,
    residual_check,
)
from .errors import (
    AlternationError,
    CertificationError,
    ConfigurationError,
    ConvergenceError,
    DivergentLimitError,
    DomainError,
    ExpressionSyntaxError,
    IneqproveError,
    LimitError,
    MultiplicityError,
    PrecisionUnreachableError,
    RootBracketError,
    SingularSystemError,
    UnknownIdentifierError,
    UnstableLimitError,
    ZeroLimitError,
)
from .expr import Expression, differentiate, evaluate, parse
from .precision import Precision, decimal_str, to_mpf, working
from .quadrature import (
    QuadratureResult,
    find_inflection,
    gauss_legendre_nodes,
    kurepa,
    kurepa_derivative,
)
from .quotient import (
    LimitMethod,
    QuotientFunction,
    SignCheckReport,
    build_quotient_function,
    endpoint_limits_numeric,
    endpoint_limits_taylor,
    sign_equivalence_check,
)
from .remez import (
    CachedFunction,
    EquioscillationReport,
    ExchangeResult,
    MinimaxResult,
    Polynomial,
    exchange,
    initial_nodes,
    minimax,
    solve_levelled_system,
    verify_equioscillation,
)

__version__ = "0.1.0"

__all__ = [
    "CAVEAT",
    "AlternationError",
    "CachedFunction",
    "CertificationError",
    "ConfigurationError",
    "ConvergenceError",
    "DivergentLimitError",
    "DomainError",
    "EquioscillationReport",
    "ExchangeResult",
    "Expression",
    "ExpressionSyntaxError",
    "GridStatistics",
    "IneqproveError",
    "LimitError",
    "LimitMethod",
    "MinimaxResult",
    "MultiplicityError",
    "Outcome",
    "Polynomial",
    "PositivityCertificate",
    "Precision",
    "PrecisionUnreachableError",
    "ProofReport",
    "ProofSettings",
    "QuadratureResult",
    "QuotientFunction",
    "RootBracketError",
    "SignCheckReport",
    "SingularSystemError",
    "UnknownIdentifierError",
    "UnstableLimitError",
    "ZeroLimitError",
    "build_quotient_function",
    "certify_positive",
    "decimal_str",
    "differentiate",
    "endpoint_limits_numeric",
    "endpoint_limits_taylor",
    "evaluate",
    "exchange",
    "find_inflection",
    "gauss_legendre_nodes",
    "initial_nodes",
    "kurepa",
    "kurepa_derivative",
    "minimax",
    "parse",
    "precondition_check",
    "prove_inequality",
    "report_to_json",
    "residual_check",
    "sign_equivalence_check",
    "solve_levelled_system",
    "to_mpf",
    "verify_equioscillation",
    "working",
]
