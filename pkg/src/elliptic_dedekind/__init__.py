"""Exact and numerical evaluation of elliptic Dedekind sums.

The exact engine computes the classical Dedekind sum, the Hardy-Berndt
sum, the rational part Q(a; b) by three independent routes, and the
integral part M(a; b), all in arbitrary-precision rational arithmetic.
The numerical engine evaluates the elliptic lattice sum through Jacobi
theta series and confirms the rationality decomposition
s_tau(a; b) = Q(a; b) (1/3 - lambda(tau)/6).
"""

from .errors import (
    CoprimalityError,
    DomainError,
    NonConvergentError,
    PoleError,
    ScaleFactorError,
    UndefinedRationalPartError,
)
from .exact import (
    DenominatorClass,
    InversionCheck,
    ZeroCharacterization,
    bq_from_m,
    dedekind_sum,
    denominator_class,
    hardy_berndt,
    inversion_check,
    m_reciprocity_defect,
    m_value,
    q_euclidean,
    q_value,
    rao_identity_defect,
    reciprocity_constant,
    zero_characterization,
)
from .lattice import (
    DegenerationResult,
    LatticeSumResult,
    ModularImageResiduals,
    RationalExtraction,
    apostol_reciprocity_report,
    apostol_reciprocity_residual,
    apostol_sum,
    degeneration_check,
    elliptic_sum,
    modular_corollary_check,
    rational_extract,
    scale_factor,
)
from .pairs import CoprimePair, Route, SumKind, SumRecord, parse_rational, rational_str
from .scan import ScanLaw, ScanReport, ScanViolation, conjecture_scan, merge_reports
from .sequences import (
    PairExpectation,
    SignRelation,
    ZeroPairRecord,
    cassini_defect,
    neighbor_sign_relations,
    p_sequence,
    p_term,
    zero_pairs,
)
from .special import (
    EllipticContext,
    Precision,
    TauPoint,
    build_context,
    cs_derivative_eval,
    cs_eval,
    lambda_transform_check,
    laurent_coefficient,
    laurent_g,
    laurent_g_polynomial,
    theta_eval,
)
from .tables import TableKind, TableSpec, default_spec, render_table, table_value
from .verify import CheckResult, VerifyReport, VerifyScope, format_report, verify_suite

__version__ = "0.1.0"
