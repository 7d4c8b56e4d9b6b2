"""Permutation separability criteria for multipartite quantum states.

Enumerates the independent slot-permutation entanglement criteria for r
equal-dimension subsystems and evaluates them on explicit density matrices
via trace norms.
"""

from .criteria import (
    CriterionClass,
    Role,
    canonical_roles,
    canonicalize,
    class_of,
    class_to_dict,
    classes_by_label,
    count_classes,
    describe,
    enumerate_classes,
    label_for,
    roles_from_string,
    roles_to_string,
    to_permutation,
)
from .perms import (
    Permutation,
    compose,
    cycle_string,
    dependent,
    from_transpositions,
    global_transpose,
    identity,
    inverse,
    is_norm_preserving,
    norm_group,
    random_norm_preserving,
    to_cycles,
)
from .states import (
    DensityMatrix,
    apply_criterion,
    bell_state,
    chessboard_state,
    density_matrix,
    load_state,
    maximally_mixed,
    mix_with_noise,
    random_density_matrix,
    random_separable,
    random_state,
    random_unitary,
    reorder_parties,
    simplex_weights,
    state_from_dict,
    state_to_dict,
    tensor_product,
    trace_norm,
)
from .verify import (
    BetaSweepReport,
    DistinctnessReport,
    EvaluationReport,
    Rule5Report,
    VerificationConfig,
    beta_sweep,
    brute_force_class_count,
    census,
    class_norms,
    evaluate_state,
    verify_distinctness,
    verify_rule5,
)

__version__ = "0.1.0"
