"""btescan: Born transmission eigenvalues as zeros of B_n(k).

The library evaluates the entire functions

    B_n(k) = int_0^1 f(t) J_n^2(kt) dt          (d = 2, f = t + 1)
    B_n(k) = int_0^1 f(t) j_n^2(kt) dt          (d = 3, f = (t + 1)^2)

for complex k, locates their zeros in boxes of the k-plane by the
argument principle with Newton refinement, and verifies the structural
facts about them numerically: no zeros on the real or imaginary axes,
an eigenvalue-free horizontal strip, symmetry under reflection, and
the asymptotic regimes n << |k|, n ~ |k| (Airy turning point) and
n >> |k|, including the Mellin-Parseval evaluation of the window
integrals that drive the k-dominant regime.
"""

from .asymptotics import (airy_regime_prediction, airy_tail_integral,
                          comparable_regime_limit, i3_direct, i3_limit,
                          k_dominant_prediction, log_growth_decomposition,
                          mellin_j_squared, mellin_j_squared_direct,
                          mellin_weight, n_dominant_probe, parseval_direct,
                          parseval_eval)
from .btefun import (bte_derivative, bte_value, bte_value_scaled,
                     bte_values_batch, direct_route_ok, mode_truncation_bound,
                     scaled_prefactor_log, weight_f)
from .errors import (BoundaryTooClose, BranchCutViolation, BtescanError,
                     ConfigError, DomainViolation, EmptyReport, NoConvergence,
                     OverflowDomain, PoleHit, QuadratureFailure,
                     TruncationInsufficient)
from .report import format_table, parse_table, write_table
from .specfun import (AsymptoticForm, EvalMethod, TurningSide, airy_ai,
                      airy_ai_prime, airy_argument, airy_correction,
                      bessel_j, bessel_j_prime, bessel_j_squared_asymptotic,
                      bessel_j_uniform, decay_exponent,
                      decay_exponent_reduced, last_eval_method,
                      phase_function, spherical_j, turning_side)
from .types import (ContourBox, EigenvalueRecord, MellinConfig, ModeSpec,
                    QuadratureConfig, ScanReport, WindingResult)
from .verify import (SUITE_NAMES, CheckResult, VerificationReport, run_suite,
                     run_suites)
from .zerofind import (boundary_winding, isolate_zeros, newton_refine,
                       refine_report, scan_box, strip_margin)

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
