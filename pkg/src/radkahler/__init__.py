"""radkahler: exact diagnostics for radial extremal Kahler metrics.

The package classifies the four-parameter family of radial extremal metric
profiles, generates the space-form resolvability obstruction sequences with
exact rational arithmetic, certifies their signs on intervals via Sturm
chains, and reconstructs metric trajectories numerically.
"""

from fractions import Fraction

from .errors import RadKahlerError
from .family import (
    ExtremalParams,
    MetricClass,
    build_psi,
    classify,
    positivity_domain,
    scalar_curvature,
    scale_params,
)
from .ke import KEDiagnostics, falling_factorial_check, ke_invariants, stability_scan
from .laurent import LaurentPoly, normalize
from .profiles import (
    MetricProfile,
    domain_endpoints,
    exfond_coefficients,
    extremality_residual,
    integrate_profile,
    interior_series,
)
from .registry import builtin_profile, example_ids, reproduce
from .resolvability import (
    ObstructionReport,
    QSequence,
    det_test_dim1,
    detect_space_form,
    extremes_closed_form,
    obstruction_scan,
    p_from_q,
    q_sequence,
    zero_index,
)
from .roots import (
    Interval,
    PositivityCertificate,
    certify_sign_on_interval,
    isolate_positive_roots,
)

__version__ = "0.1.0"

__all__ = [
    "Fraction",
    "RadKahlerError",
    "ExtremalParams",
    "MetricClass",
    "build_psi",
    "classify",
    "positivity_domain",
    "scalar_curvature",
    "scale_params",
    "KEDiagnostics",
    "falling_factorial_check",
    "ke_invariants",
    "stability_scan",
    "LaurentPoly",
    "normalize",
    "MetricProfile",
    "domain_endpoints",
    "exfond_coefficients",
    "extremality_residual",
    "integrate_profile",
    "interior_series",
    "builtin_profile",
    "example_ids",
    "reproduce",
    "ObstructionReport",
    "QSequence",
    "det_test_dim1",
    "detect_space_form",
    "extremes_closed_form",
    "obstruction_scan",
    "p_from_q",
    "q_sequence",
    "zero_index",
    "Interval",
    "PositivityCertificate",
    "certify_sign_on_interval",
    "isolate_positive_roots",
]
