"""Truncated-matrix toolkit for the Cesaro operator on the Hardy space.

Submodules
----------
hardy       coefficient vectors, operator matrices, the Cesaro matrix
semigroup   composition semigroup, generator, resolvent, cogenerator, norms
quadrature  half-line rules for t^(beta-1) e^(-lam t) kernels
fractional  fractional and resolvent powers, the square root
line_model  evaluation trees, transform chain, weights, Domar diagnostics
invariant   invariant-subspace constructions and certificates
serialize   CSV / JSON matrix round-tripping
cli         command-line entry point
"""

from .errors import CancellationError, ConvergenceError, QuadratureError, ShapeError, StructureError
from .fractional import (
    FracPowerSpec,
    frac_cesaro_matrix,
    phillips_apply,
    resolvent_power_matrix,
    semigroup_property_residual,
    square_root_matrix,
)
from .hardy import (
    CoeffVector,
    OperatorMatrix,
    apply_cesaro,
    cesaro_adjoint_matrix,
    cesaro_matrix,
    h2_norm,
    identity,
    inner,
    matmul,
)
from .quadrature import QuadratureRule, integrate_gamma_kernel, laplace_resolvent_entry
from .semigroup import (
    FlowParams,
    adjoint_composition_matrix,
    cogenerator_matrix,
    composition_matrix,
    generator_matrix,
    operator_norm_truncation,
    resolvent_T_matrix,
    semigroup_law_residual,
)

__version__ = "0.1.0"
