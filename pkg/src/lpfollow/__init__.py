"""Standard-form LP solver toolkit.

Primal-dual path following with trust-region step-size control, a
pivoted-QR preprocessing pass that repairs rank-deficient and
noise-inconsistent constraint systems, a classical path-following
baseline, and seeded problem generation/benchmark tooling.
"""

from .baseline import BaselineConfig, solve_baseline
from .generate import make_rank_deficient, random_full_rank
from .linalg import (
    BACKEND,
    PivotedQR,
    SingularFactorError,
    SingularSystemError,
    ThinQR,
    qr_column_pivoting,
    solve_lower_triangular,
    solve_upper_triangular,
    thin_qr,
)
from .model import (
    Iterate,
    Residuals,
    StandardFormLP,
    mu_rule,
    residuals,
    sigma_rule,
)
from .newton import (
    IllConditionedStepError,
    InteriorViolationError,
    StepDirection,
    apply_step,
    newton_direction,
)
from .preprocess import (
    DegenerateProblemError,
    ReducedProblem,
    lsq_residual_norm,
    recover,
    reduce,
)
from .problem_io import (
    GeneralFormLP,
    ParseError,
    StandardFormMap,
    UnsupportedFeatureError,
    inject_noise,
    read_coordinate_lp,
    read_mps,
    to_standard_form,
    write_coordinate_lp,
)
from .rng import SplitMix64
from .trust_region import (
    SolveReport,
    SolverConfig,
    TraceRecord,
    solve,
    solve_with_trace,
)

__version__ = "0.1.0"
