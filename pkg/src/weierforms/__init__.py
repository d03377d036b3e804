"""weierforms: certified Weierstrass lattice-function evaluation and the
weight-2 / weight-1 modular families built from torsion values."""

from .arith import (
    CertifiedValue,
    Rational,
    as_rational,
    bernoulli,
    e_of,
    zeta_even,
    zeta_r_enclosure,
)
from .cusp import (
    CuspValueReport,
    cusp_report,
    cusp_value,
    cusp_value_f,
    cusp_value_f_series,
    cusp_value_h,
    lattice_row_sum_truncated,
    lemma_eies_bound,
    verify_zeta2_recovery,
)
from .errors import DomainError, PoleError, PrecisionError, WeierError
from .evaluate import (
    DEFAULT_TOL,
    describe_route,
    eta12,
    shell_value,
    wp,
    wp_lattice,
    wzeta,
    wzeta_lattice,
)
from .forms import (
    IDENTITY,
    S_MATRIX,
    T_MATRIX,
    FormSpec,
    ModularMatrix,
    RationalPair,
    defect_coefficients,
    eval_f,
    eval_g,
    eval_h,
    eval_hU,
    gamma1_contains,
    gamma_st_contains,
    hecke_contains,
    pair_act,
    principal_congruence_contains,
    random_in_group,
    random_sl2,
    slash,
)
from .lattice import Lattice, TauLattice
from .shells import TruncationPlan, plan_truncation, shell_sum
from .verify import SUITES, SuiteReport, VerifyRow, run_suite

__version__ = "0.1.0"

__all__ = [
    "CertifiedValue",
    "Rational",
    "as_rational",
    "bernoulli",
    "e_of",
    "zeta_even",
    "zeta_r_enclosure",
    "CuspValueReport",
    "cusp_report",
    "cusp_value",
    "cusp_value_f",
    "cusp_value_f_series",
    "cusp_value_h",
    "lattice_row_sum_truncated",
    "lemma_eies_bound",
    "verify_zeta2_recovery",
    "DomainError",
    "PoleError",
    "PrecisionError",
    "WeierError",
    "DEFAULT_TOL",
    "describe_route",
    "eta12",
    "shell_value",
    "wp",
    "wp_lattice",
    "wzeta",
    "wzeta_lattice",
    "IDENTITY",
    "S_MATRIX",
    "T_MATRIX",
    "FormSpec",
    "ModularMatrix",
    "RationalPair",
    "defect_coefficients",
    "eval_f",
    "eval_g",
    "eval_h",
    "eval_hU",
    "gamma1_contains",
    "gamma_st_contains",
    "hecke_contains",
    "pair_act",
    "principal_congruence_contains",
    "random_in_group",
    "random_sl2",
    "slash",
    "Lattice",
    "TauLattice",
    "TruncationPlan",
    "plan_truncation",
    "shell_sum",
    "SUITES",
    "SuiteReport",
    "VerifyRow",
    "run_suite",
    "__version__",
]
