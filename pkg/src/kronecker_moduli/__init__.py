"""Exact invariants of Kronecker and weighted bipartite quiver moduli."""
from .closed_forms import (
    asymptotic_ratio,
    chi_q1_staircase,
    chi_q1_two_row,
    douglas_estimate,
    log_ratio,
    weist_chi,
)
from .errors import (
    ComputationError,
    CoprimalityViolation,
    DomainError,
    NonIntegerResult,
    NotPolynomial,
    StructureViolation,
    ZeroDenominator,
)
from .exact_arith import LaurentPolynomial, RationalFunction, parse_laurent
from .mps_formula import compare_poincare, euler_polynomial_in_m, mps_euler, mps_poincare
from .quiver_model import Partition, PartitionPair, Quiver, bipartite, kronecker, partitions
from .reineke_engine import InvariantRecord, euler_characteristic, poincare_polynomial

__version__ = "0.1.0"

__all__ = [
    "ComputationError",
    "CoprimalityViolation",
    "DomainError",
    "InvariantRecord",
    "LaurentPolynomial",
    "NonIntegerResult",
    "NotPolynomial",
    "Partition",
    "PartitionPair",
    "Quiver",
    "RationalFunction",
    "StructureViolation",
    "ZeroDenominator",
    "asymptotic_ratio",
    "bipartite",
    "chi_q1_staircase",
    "chi_q1_two_row",
    "compare_poincare",
    "douglas_estimate",
    "euler_characteristic",
    "euler_polynomial_in_m",
    "kronecker",
    "log_ratio",
    "mps_euler",
    "mps_poincare",
    "parse_laurent",
    "partitions",
    "poincare_polynomial",
    "weist_chi",
]
