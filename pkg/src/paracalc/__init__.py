"""paracalc: complex paravector algebra, space-time operators, verification CLI."""

from .algebra import (
    BASIS,
    Event,
    IDENTITY,
    Paravector,
    SingularParavector,
    act_left,
    act_right,
    conjugate_rotate,
    det,
    event_as_paravector,
    inverse,
    is_orthogonal,
    mul,
    norm_inf,
    norm_sq,
    normalize_orthogonal,
    paravector_as_event,
    reverse,
    scale,
)
from .diffops import (
    EXACT,
    Exact,
    Numeric,
    additivity_residual,
    box4,
    bundle,
    div4,
    div4_field,
    grad4,
    grad4_field,
    grad_paravector,
    leibniz_residual,
    product_rule_failure_witness,
    scalar_order_gap,
)
from .electromag import (
    EMValue,
    NonTransverse,
    PhysConstants,
    PotentialField,
    SourceValue,
    ZeroWaveVector,
    em_field_from_potential,
    em_from_potential,
    lorenz_gauge_potential,
    plane_wave_potential,
    source_field_from_em,
    sources_from_em,
    wave_residual,
)
from .fields import (
    Field,
    FieldValue,
    LeftMulField,
    LinearMap,
    MonomialTerm,
    PlaneWaveField,
    PolynomialField,
    PullbackField,
    RightMulField,
    ScalarField,
    ScalarScaledField,
    SumField,
    eval_field,
    exact_partial,
    left_mul_field,
    null_plane_wave,
    numeric_partial,
    pullback,
    random_event,
    random_field,
    random_orthogonal,
    random_paravector,
    random_plane_wave,
    random_scalar_field,
    right_mul_field,
    scalar_scale_field,
    sum_fields,
)
from .harness import (
    CaseReport,
    ConfigError,
    SuiteConfig,
    SuiteReport,
    run_convergence,
    run_suite,
)
from .kernels import BACKEND, HAS_NUMBA
from .transforms import (
    InvarianceForm,
    NotOrthogonal,
    TransformCase,
    TransformedValues,
    div_left_transport_residual,
    div_right_transport_residual,
    grad_left_transport_residual,
    grad_right_transport_residual,
    observer_rotation_residual,
    right_factor_residuals,
    transformed_field_values,
    transformed_wave_field,
    wave_invariance_residual,
)

__version__ = "0.1.0"
