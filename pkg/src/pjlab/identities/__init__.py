from .algebraic import check_difference_system, check_discrete_sigma, check_recurrence_formulas
from .anchors import check_n0_kummer, check_t0_closed_forms
from .flows import SigmaFormPoint, check_sigma_ode, check_toda, sigma_point
from .ladder import annulus_sample, check_core_structure, check_ladder, check_ladder_oracle
from .p3 import check_p3_limit
from .registry import REGISTRY, REQUIRED_IDENTITIES, SUITES, TOLERANCE_CLASSES, tolerance_for
from .report import ResidualReport, normalized_residual
from .riccati import check_riccati_pv
from .runner import DEFAULT_VERIFY_SUITES, all_pass, lock_coverage, run_verify, sort_reports

__all__ = [
    "check_difference_system",
    "check_discrete_sigma",
    "check_recurrence_formulas",
    "check_n0_kummer",
    "check_t0_closed_forms",
    "SigmaFormPoint",
    "check_sigma_ode",
    "check_toda",
    "sigma_point",
    "annulus_sample",
    "check_core_structure",
    "check_ladder",
    "check_ladder_oracle",
    "check_p3_limit",
    "REGISTRY",
    "REQUIRED_IDENTITIES",
    "SUITES",
    "TOLERANCE_CLASSES",
    "tolerance_for",
    "ResidualReport",
    "normalized_residual",
    "check_riccati_pv",
    "DEFAULT_VERIFY_SUITES",
    "all_pass",
    "lock_coverage",
    "run_verify",
    "sort_reports",
]
