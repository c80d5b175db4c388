"""Numerical verification of reverse Cauchy-Schwarz and triangle inequalities for Lorentz-Finsler norms."""

from .errors import DomainError, EvaluationError, InvariantError, SamplingExhaustedError
from .linalg import Signature, SignatureClass, SymTensor, bilinear, classify_signature, sym_eigenvalues
from .norms import (
    BerwaldMoor,
    Bimetric,
    DegenerateMinkowski,
    EuclideanP,
    Family,
    Kropina,
    MinkowskiBilinear,
    NormSpec,
    PPseudoNorm,
    Stationary,
    WeightedGeometric,
    check_domain,
    domain_contains,
    evaluate,
    expected_signature,
    fundamental_tensor_analytic,
    gradient_analytic,
    make_spec,
    spec_from_json,
    spec_to_json,
)
from .calculus import FDConfig, differential, fd_fundamental_tensor, fd_gradient, hessian_F, integrate_unit_interval
from .inequalities import IneqReport, Verdict
from .sampling import SampleConfig, sample_domain, sample_pairs

__version__ = "0.1.0"
