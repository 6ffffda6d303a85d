"""Mod-p lambda algebra toolkit.

Straightening into the admissible basis, the differential, unstable spans
and their homology charts, the algebraic Hopf map with its span checks, and
nonvanishing certificates for homotopy groups of the 2-sphere.
"""

__version__ = "0.1.0"

from .algebra import (  # noqa: F401
    BasisKey,
    Ideal,
    ResourceBudgetError,
    basis,
    degree,
    enumerate_up_to,
    is_admissible,
    lam,
    mu,
)
from .differential import (  # noqa: F401
    DEFAULT_SIGN_CONVENTION,
    SignConvention,
    d,
    d_generator,
    is_cycle,
    select_sign_convention,
)
from .fparith import (  # noqa: F401
    PrimeContext,
    binom_mod_p,
    bound_N,
    bound_Nprime,
    coeff_a,
    coeff_b,
    get_context,
    valuation_p,
)
from .homology import E2Cell, FpMatrix, d_matrix, e2_page, pi_index, rank_fp  # noqa: F401
from .hopf import (  # noqa: F401
    hopf_map,
    lemma_matrix,
    lemma_verdict,
    proposition_check,
    ses_dimension_check,
)
from .coverage import (  # noqa: F401
    Certificate,
    MoriParams,
    all_certificates,
    certify_dimension,
    final_remark_instance,
    mori_check,
    statement_A_applies,
    statement_B_applies,
)
from .rewrite import Element, multiply, normalize, parse_element, straighten_pair  # noqa: F401
