"""Exact Fourier-side analysis of P u = X u - q u - p conj(u) on T^d x SU(2)^k."""

from .classify import Verdict, classify_gh, classify_gs, find_delta_zeros
from .coeffs import FourierData, estimate_decay, plancherel_norm, random_fourier_data
from .counterexample import gh_counterexample, gs_obstruction, singular_kernel
from .dual import GroupSpec, RepIndex, Slot, VectorFieldSpec
from .estimator import VekuaOperator
from .exact import CFReal, ExactComplex, ExactReal, parse_complex, parse_real
from .operator import OperatorSpec, apply, delta, operator_from_json, operator_to_json
from .solve import check_admissible, make_admissible, residual, solve

__version__ = "0.1.0"

__all__ = [
    "CFReal",
    "ExactComplex",
    "ExactReal",
    "FourierData",
    "GroupSpec",
    "OperatorSpec",
    "RepIndex",
    "Slot",
    "Verdict",
    "VectorFieldSpec",
    "VekuaOperator",
    "apply",
    "check_admissible",
    "classify_gh",
    "classify_gs",
    "delta",
    "estimate_decay",
    "find_delta_zeros",
    "gh_counterexample",
    "gs_obstruction",
    "make_admissible",
    "operator_from_json",
    "operator_to_json",
    "parse_complex",
    "parse_real",
    "plancherel_norm",
    "random_fourier_data",
    "residual",
    "singular_kernel",
    "solve",
]
