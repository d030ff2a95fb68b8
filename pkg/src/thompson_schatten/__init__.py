"""Thompson metric, Schatten norms and the bounds that connect them."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .linalg import (  # noqa: F401
    cholesky,
    eig_sym,
    inv_pd,
    is_psd,
    jacobi_eigh,
    loewner_scale,
    sqrt_psd,
    sym_matrix,
)
from .metrics import (  # noqa: F401
    ThompsonDistance,
    cone_angle,
    schatten_norm,
    schatten_order,
    thompson_distance,
    trace_inner,
)
from .bounds import (  # noqa: F401
    BoundReport,
    ScalePair,
    audit_pair,
    corrected_eig_envelope,
    frobenius_bound,
    lemma1_claimed_envelope,
    lemma2_claimed_envelope,
    theorem1_bound,
    theorem2_claimed_envelope,
    theorem3_bound,
    tight_scale_pair,
)
from .harness import (  # noqa: F401
    SweepConfig,
    TrialSpec,
    gen_pair_at_distance,
    gen_random_pd,
    parse_config,
    run_sweep,
    tight_family,
)
from .solver import Certificate, SolverProblem, error_certificate, solve_fixed_point  # noqa: F401
from .textio import format_matrix, parse_matrix, read_matrix, write_matrix  # noqa: F401
