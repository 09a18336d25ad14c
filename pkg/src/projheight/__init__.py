"""Heights of points in finite projective space over F_p, with applications
to minimum feedback arc sets of Cayley digraphs on Z/pZ."""

from .cayley import (
    DEFAULT_EXACT_CAP,
    BetaReport,
    CapExceededError,
    CayleyGraph,
    CssScanReport,
    DeletionSet,
    ScanRow,
    beta_exact,
    beta_upper,
    css_check,
    deletion_set,
    edges,
    gamma,
    gamma_direct,
    is_acyclic,
    is_triangle_free,
    scan_css,
    shortest_cycle,
)
from .heights import (
    DEFAULT_POINT_BUDGET,
    BudgetExceededError,
    GapScanReport,
    HeightRecord,
    HeightSpectrum,
    KFreeSearchReport,
    SpectrumBoundsReport,
    SumFreeCertificate,
    gap_scan,
    height,
    height_upper_bound,
    is_k_sum_free,
    line_bound_certificates,
    line_height_fast,
    line_height_table,
    max_height_k_free,
    spectrum,
    spectrum_bounds_check,
)
from .modular import (
    MAX_MODULUS,
    PrimeModulus,
    ProjectivePoint,
    canonical_connection_sets,
    canonicalize,
    connection_set_canonical,
    d_star,
    is_prime,
    mod_inverse,
    mod_reduce,
    primes_up_to,
)

__version__ = "0.1.0"

__all__ = [
    "BetaReport",
    "BudgetExceededError",
    "CapExceededError",
    "CayleyGraph",
    "CssScanReport",
    "DEFAULT_EXACT_CAP",
    "DEFAULT_POINT_BUDGET",
    "DeletionSet",
    "GapScanReport",
    "HeightRecord",
    "HeightSpectrum",
    "KFreeSearchReport",
    "MAX_MODULUS",
    "PrimeModulus",
    "ProjectivePoint",
    "ScanRow",
    "SpectrumBoundsReport",
    "SumFreeCertificate",
    "beta_exact",
    "beta_upper",
    "canonical_connection_sets",
    "canonicalize",
    "connection_set_canonical",
    "css_check",
    "d_star",
    "deletion_set",
    "edges",
    "gamma",
    "gamma_direct",
    "gap_scan",
    "height",
    "height_upper_bound",
    "is_acyclic",
    "is_k_sum_free",
    "is_prime",
    "is_triangle_free",
    "line_bound_certificates",
    "line_height_fast",
    "line_height_table",
    "max_height_k_free",
    "mod_inverse",
    "mod_reduce",
    "primes_up_to",
    "scan_css",
    "shortest_cycle",
    "spectrum",
    "spectrum_bounds_check",
    "__version__",
]
