"""Exact arithmetic and verification tools for the orthosymplectic super-Yangians X(osp(2n|2m))."""
from .errors import (
    ContextMismatch,
    InvalidInput,
    NotApplicable,
    PoleError,
    SingularSeries,
    UnsupportedRoot,
    ViolationError,
    YospError,
)
from .exact import Polynomial, RationalFunction, RootMultiset, arrow_scalar, rational_roots, rf_reduce, shift_quotient_witness
from .hw import (
    HighestWeight,
    LinearWeight,
    YoungDiagram,
    chain_reflection,
    classify_linear,
    consistency_extend,
    fd_criterion_osp22,
    fd_symmetry_check,
    necessary_conditions,
    odd_reflection_A,
    odd_reflection_osp22,
    tensor_highest_weight,
    twist,
)
from .report import Report
from .series import FactoredSeries, TruncatedSeries
from .superlinalg import AlgebraContext, check_yang_baxter, r_matrix, super_transpose

__version__ = "0.1.0"

__all__ = [
    "AlgebraContext",
    "ContextMismatch",
    "FactoredSeries",
    "HighestWeight",
    "InvalidInput",
    "LinearWeight",
    "NotApplicable",
    "PoleError",
    "Polynomial",
    "RationalFunction",
    "Report",
    "RootMultiset",
    "SingularSeries",
    "TruncatedSeries",
    "UnsupportedRoot",
    "ViolationError",
    "YospError",
    "YoungDiagram",
    "arrow_scalar",
    "chain_reflection",
    "check_yang_baxter",
    "classify_linear",
    "consistency_extend",
    "fd_criterion_osp22",
    "fd_symmetry_check",
    "necessary_conditions",
    "odd_reflection_A",
    "odd_reflection_osp22",
    "r_matrix",
    "rational_roots",
    "rf_reduce",
    "shift_quotient_witness",
    "super_transpose",
    "tensor_highest_weight",
    "twist",
]
