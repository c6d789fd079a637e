"""Dihedral Gauss hypergeometric functions: closed forms, terminating double sums,
exact pull-back coverings and an identity catalog."""
from .numcore import DomainError, pochhammer, pochhammer_derivative
from .hypseries import HyperValue, TERMINATING, TRUNCATED, Truncated, gauss_2f1, hyp_pfq
from .dihedral import DihedralParams, SolutionKind, classify_degenerate, classify_integer_a, evaluate
from .transforms import KleinCovering, RatPoly, SqrtPoly, klein_covering, theta_pair
from .idcatalog import DomainViolation, eval_identity, list_identities, lookup, sweep

__version__ = "0.1.0"

__all__ = [
    "DomainError", "pochhammer", "pochhammer_derivative", "HyperValue", "TERMINATING", "TRUNCATED",
    "Truncated", "gauss_2f1", "hyp_pfq", "DihedralParams", "SolutionKind", "classify_degenerate",
    "classify_integer_a", "evaluate", "KleinCovering", "RatPoly", "SqrtPoly", "klein_covering",
    "theta_pair", "DomainViolation", "eval_identity", "list_identities", "lookup", "sweep",
]
