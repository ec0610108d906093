"""Pisano periods through the roots of x^2 - x - 1 over Z/nZ and its quadratic extension."""

from .errors import (
    CapExceeded,
    HypothesisViolated,
    IncompleteFactorization,
    InternalInconsistency,
    ModulusMismatch,
    NotAnExponentMultiple,
    NotAUnit,
)
from .linalg2 import Mat2, change_of_basis, fibonacci_matrix
from .numtheory import (
    Factorization,
    OrderResult,
    factor,
    is_prime,
    lcm,
    order_from_multiple,
    sqrt_lift_prime_power,
    sqrt_mod_prime,
)
from .pisano import (
    CaseTag,
    FibMethod,
    LocalPeriod,
    Location,
    Method,
    PeriodCertificate,
    RootPair,
    classify,
    fib,
    local_period,
    pisano_brute,
    pisano_period,
    solve_E,
    verify_lemma1,
)
from .quadext import QuadElem, embed
from .residue import Residue

__version__ = "0.1.0"
