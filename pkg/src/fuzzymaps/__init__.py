"""Multi-expert fuzzy and neutrosophic map algebra.

Scalars carry an indeterminate part (`a + bI` with `I*I = I`), matrices
come in plain and component-union flavors, and the dynamics engine
iterates expert opinions to their hidden patterns: fixed points, limit
cycles, and domain/range binary pairs. A relational-equation solver
handles the maximum solution of `p o Q = r` under max-min composition.
"""

from .errors import (
    BudgetExceeded,
    ClassViolation,
    ComponentCountMismatch,
    DomainError,
    EmptyUnion,
    FuzzymapsError,
    InvalidInput,
    IterationCapExceeded,
    ModeMismatch,
    NonCMComponent,
    NonRMComponent,
    NonSquareCM,
    NonzeroDiagonal,
    OrderUndefined,
    ParseError,
    ShapeMismatch,
    WrongEntryPoint,
)
from .values import (
    I,
    ONE,
    OrderPolicy,
    Scalar,
    TCONORM_KINDS,
    TNORM_KINDS,
    ThresholdMode,
    ValueDomain,
    ZERO,
    coerce,
    domain_join,
    parse_scalar,
    render_scalar,
    scalar_add,
    scalar_max,
    scalar_min,
    scalar_mul,
    tconorm,
    threshold_scalar,
    tnorm,
)
from .matrices import (
    Matrix,
    col_vector,
    elementwise_max,
    elementwise_min,
    identity,
    mat_add,
    mat_mul,
    maxmin_compose,
    minmax_compose,
    row_vector,
    transpose,
    vec_mat_maxmin,
    zeros,
)
from .special import (
    CM,
    ComponentTag,
    DOMAIN_SIDE,
    RANGE_SIDE,
    RM,
    SpecialMatrix,
    SpecialStateVector,
    classify,
    make_special,
    make_state,
    other_side,
    plain_transpose,
    render_part,
    special_apply,
    special_apply_mixed,
    special_transpose,
)
from .dynamics import (
    FixedPoint,
    HiddenPattern,
    InputMask,
    IterationRecord,
    LimitCycle,
    NotYet,
    describe_outcome,
    detect_cycle,
    run_cm,
    run_mixed,
    run_rm,
    threshold_update,
)
from .models import (
    Model,
    ModelClass,
    build_model,
    class_diagnostics,
    combine_maps,
    diagonal_diagnostics,
    run,
    validate_input,
)
from .fre import (
    FreProblem,
    FreSolution,
    check_necessary,
    failing_columns,
    minimal_solutions_bruteforce,
    sigma,
    solve_matrix,
    solve_max,
    solve_special,
)
from .fileformats import (
    ModelFile,
    parse_matrix_text,
    parse_model_structure,
    parse_model_text,
    parse_vector_text,
    serialize_matrix,
    serialize_model,
    serialize_vector,
)
from .trace import TraceError, parse_trace, render_trace, verify_trace

__version__ = "1.0.0"
