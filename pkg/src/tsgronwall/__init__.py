"""Two-variable calculus on time-scale windows with certified
integral-inequality bounds.

The package splits into a small calculus kernel (timescale, grid2), the
bound computations (bounds), their brute-force certification (oracle),
the squared-solution boundary problem (ibvp), a config expression
language (exprlang) and a CLI front end (cli, config).
"""

from .bounds import (
    BoundReport,
    BoundScenario,
    THEOREMS,
    best_linear_bound,
    compute_bound,
    cor31_bound,
    kernel_value,
    thm1_bound_in2,
    thm1_bound_in6,
    thm2_bound,
    thm3_bound,
    thm4_bound,
)
from .grid2 import GridFunction2, MonotoneFlags
from .ibvp import IbvpProblem, check_estimate, estimate_in7, solve_ibvp
from .numeric import Mode, Scalar, format_scalar, parse_scalar
from .oracle import (
    CampaignSummary,
    OracleResult,
    check_domination,
    equality_case_kernel,
    equality_case_linear,
    equality_case_power,
    run_campaign,
)
from .timescale import TimeScale, exp_prefix_from_increments

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BoundScenario",
    "CampaignSummary",
    "GridFunction2",
    "IbvpProblem",
    "Mode",
    "MonotoneFlags",
    "OracleResult",
    "Scalar",
    "THEOREMS",
    "TimeScale",
    "best_linear_bound",
    "check_domination",
    "check_estimate",
    "compute_bound",
    "cor31_bound",
    "equality_case_kernel",
    "equality_case_linear",
    "equality_case_power",
    "estimate_in7",
    "exp_prefix_from_increments",
    "format_scalar",
    "kernel_value",
    "parse_scalar",
    "run_campaign",
    "solve_ibvp",
    "thm1_bound_in2",
    "thm1_bound_in6",
    "thm2_bound",
    "thm3_bound",
    "thm4_bound",
]
