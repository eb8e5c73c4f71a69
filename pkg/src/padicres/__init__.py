"""Exact iterated p-power cyclic resultants, their p-adic limits, and
first-homology orders of branched p-power coverings of links.

Everything is exact big-integer arithmetic; the only floating point in the
package lives in the two independent complex-float oracles used for
cross-checking (complex_root_product, character_oracle).
"""

from .errors import (
    BudgetExceededError,
    DegenerateValueError,
    ExactDivisionError,
    OracleMismatchError,
    PadicResError,
    PolyParseError,
    PrecisionExhaustedError,
    VanishingResultantError,
    WindowTooShortError,
)
from .multipoly import MultiPoly, eval_int
from .parsing import parse_poly
from .unipoly import UniPoly, cyclotomic, is_prime, power_minus_one, shift_one
from .newton import NewtonPolygon, newton_polygon
from .resultants import (
    CyclicResultantRequest,
    bareiss_det,
    complex_root_product,
    cyclic_resultant,
    cyclic_resultant_baseline,
    resultant_prs,
    sylvester_matrix,
    sylvester_resultant,
)
from .padic import PadicApprox, nonp_part, padic_log, padic_log_unit, teichmuller, vp
from .cyclo import (
    CycloPadic,
    cyclo_log,
    evaluate_at_unity,
    log_with_shift,
    nu_zeta,
    phi_degree,
    pi_valuation,
)
from .limits import (
    IwasawaInvariants,
    LimitEstimate,
    OrderInvarianceReport,
    closed_form_limit,
    iwasawa_fit,
    lambda_mu_structural,
    limit_estimate,
    order_invariance_check,
    sign_of,
    zero_limit_predicate,
)
from .links import (
    CoveringSpec,
    H1Result,
    LinkSpec,
    TwoPartReport,
    WhiteheadLimit,
    character_oracle,
    h1_nonp_limit,
    h1_order,
    load_link_spec,
    trefoil_spec,
    two_part_exponent_check,
    whitehead_closed_form,
    whitehead_delta,
    whitehead_link_spec,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
