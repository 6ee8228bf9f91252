"""gcdbound: exact-arithmetic toolkit for generalized-GCD heights on
projective space over the rationals.

Compute Hilbert dimensions of ideal powers, search for auxiliary divisors
certifying a slope bound, evaluate Weil and GCD heights of rational points,
and verify the bound empirically with machine-checkable certificates.
"""

__version__ = "0.1.0"

from .polyalgebra import (  # noqa: E402
    ExactMatrix,
    ParseError,
    Poly,
    PolyError,
    eval_poly,
    graded_monomials,
    parse_poly,
)
from .ideals import (  # noqa: E402
    EmptySubschemeError,
    GeomProfile,
    Ideal,
    IdealError,
    IdealFileError,
    WindowInstabilityError,
    graded_piece_dim,
    groebner_basis,
    hilbert_profile,
    ideal_from_text,
    ideal_power,
    load_ideal,
    membership,
    normal_form,
    quotient_dim,
    quotient_dim_via_standard_monomials,
)
from .heights import (  # noqa: E402
    HeightBreakdown,
    HeightEngine,
    HeightError,
    factorize,
    gcd_height,
    normalize_point,
    valuation,
    weil_height,
)
from .rr_lab import (  # noqa: E402
    AsymptoticFit,
    InconsistentProfileError,
    InsufficientDataError,
    check_lemma_h0,
    check_rr_inequality,
    colength_linear,
    lemma_h0_gap,
    rr_growth_in_m,
)
from .auxdiv import (  # noqa: E402
    BudgetExhaustedError,
    Certificate,
    CertificateFormatError,
    InvalidProfileError,
    bound_coefficient,
    certificate_from_json,
    certificate_to_json,
    certificate_digest,
    dimension_criterion,
    find_section,
    load_certificate,
    save_certificate,
    search_certificate,
    verify_certificate,
)
from .harness import (  # noqa: E402
    AllExcludedError,
    ReportRow,
    SampleOverflowError,
    SampleSpec,
    Summary,
    evaluate_bound,
    iter_evaluate_bound,
    iter_sample_points,
    sample_points,
    summarize,
    write_report_csv,
    write_summary_json,
)
