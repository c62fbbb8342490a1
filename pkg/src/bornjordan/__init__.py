"""Born-Jordan and Weyl quantization of phase-space polynomials, with a
discrete-torus numeric backend and torus dynamics."""

from .classical import ClassicalPoly, partial_p, partial_q, poisson_bracket
from .exact import HBAR, I, GaussianRational, HBarPolynomial, hbar_divide
from .operators import InexactHbarDivision, OperatorPoly, adjoint, commutator, op_mul, quantum_bracket
from .parser import ParseError, parse, print_canonical
from .polybase import DofMismatch
from .quantizer import (
    MixedVariableInput,
    OrderingRule,
    dirac_rule_residual,
    ehrenfest_residual,
    groenewold_candidates,
    groenewold_discrepancy,
    heisenberg_covariance_residual,
    quantize,
    strengthened_rule_residual,
)

__version__ = "0.1.0"

__all__ = [
    "ClassicalPoly", "partial_p", "partial_q", "poisson_bracket",
    "HBAR", "I", "GaussianRational", "HBarPolynomial", "hbar_divide",
    "InexactHbarDivision", "OperatorPoly", "adjoint", "commutator", "op_mul", "quantum_bracket",
    "ParseError", "parse", "print_canonical", "DofMismatch",
    "MixedVariableInput", "OrderingRule", "dirac_rule_residual", "ehrenfest_residual",
    "groenewold_candidates", "groenewold_discrepancy", "heisenberg_covariance_residual",
    "quantize", "strengthened_rule_residual",
]
