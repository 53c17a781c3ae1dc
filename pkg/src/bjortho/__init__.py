"""Birkhoff-James orthogonality and smoothness for finite-dimensional real operators."""

from .errors import BjorthoError, ConvergenceError, InputError, NumericalError, ZeroOperatorError
from .harness import DiagonalFamily, VerificationReport, diagonal_family, replay_record, run_suite
from .linalg import (
    EigenDecomposition,
    minimize_scalar_convex,
    operator_norm,
    singular_values,
    sym_eigen,
)
from .operator import (
    DescentCertificate,
    NormAttainingSet,
    adjoint_invariance,
    bj_operator_oracle,
    bj_operator_spectral,
    descent_lambda,
    norm_attaining_set,
)
from .smoothness import (
    CompactSmoothReport,
    SmoothnessReport,
    additivity_probe,
    compact_smooth_conditions,
    hyperplane_sup,
    nonsmooth_witness,
    operator_smooth,
)
from .vector import (
    SupportFunctional,
    bj_vector,
    bj_vector_oracle,
    right_additivity_probe,
    support_functionals,
    vector_smooth,
)
from .verdict import BjVerdict

__version__ = "0.1.0"
