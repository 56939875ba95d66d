"""displacement-kit: closed-form operator calculus for displacement mappings
Id - R of linear isometries R of finite order.

The closed forms (resolvents, Yosida approximations, fixed-space projectors,
skew companion, Moore-Penrose and set-valued inverses) are all polynomials in
R and are evaluated matrix-free; an independent dense-linear-algebra oracle
verifies them at desk scale.
"""

from .errors import DisplacementKitError, NumericError, ParameterError, ValidationError
from .isometry_core import (
    FiniteOrderIsometry,
    adjoint_apply,
    apply,
    apply_power,
    make_circular_shift,
    make_dense,
    make_rotator,
)
from .displacement_calculus import (
    AffineSubspace,
    PolynomialOperator,
    displacement,
    displacement_apply,
    fixed_space_basis,
    orthonormal_columns,
    projector_fix,
    projector_fix_complement,
    pseudo_inverse,
    set_valued_inverse,
    skew_part,
    skew_part_folded,
)
from .resolvent_yosida import (
    asymptotic_limit,
    resolvent,
    resolvent_apply,
    resolvent_coefficients,
    resolvent_inverse,
    resolvent_inverse_apply,
    series_resolvent_apply,
    yosida,
    yosida_apply,
    yosida_inverse,
    yosida_inverse_apply,
)
from .dense_oracle import (
    ComparisonReport,
    compare,
    materialize,
    oracle_pinv,
    oracle_projector_fix,
    oracle_resolvent,
)
from .iteration_lab import Trajectory, ergodic_mean, lipschitz_estimate, proximal_point
from .verification import reproduce_worked_examples, run_verification, standard_instances

__version__ = "0.1.0"

__all__ = [
    "AffineSubspace",
    "ComparisonReport",
    "DisplacementKitError",
    "FiniteOrderIsometry",
    "NumericError",
    "ParameterError",
    "PolynomialOperator",
    "Trajectory",
    "ValidationError",
    "adjoint_apply",
    "apply",
    "apply_power",
    "asymptotic_limit",
    "compare",
    "displacement",
    "displacement_apply",
    "ergodic_mean",
    "fixed_space_basis",
    "lipschitz_estimate",
    "make_circular_shift",
    "make_dense",
    "make_rotator",
    "materialize",
    "oracle_pinv",
    "oracle_projector_fix",
    "oracle_resolvent",
    "orthonormal_columns",
    "projector_fix",
    "projector_fix_complement",
    "proximal_point",
    "pseudo_inverse",
    "reproduce_worked_examples",
    "resolvent",
    "resolvent_apply",
    "resolvent_coefficients",
    "resolvent_inverse",
    "resolvent_inverse_apply",
    "run_verification",
    "series_resolvent_apply",
    "set_valued_inverse",
    "skew_part",
    "skew_part_folded",
    "standard_instances",
    "yosida",
    "yosida_apply",
    "yosida_inverse",
    "yosida_inverse_apply",
]
