"""Graph solutions of the planar capillarity equation in universal coordinates.

In ``xi = sqrt(kappa) x`` and ``U = sqrt(kappa) u`` every meniscus curve obeys
``(sin psi)_xi = U``, ``U_xi = tan psi`` and keeps ``U^2/2 + cos psi = c``
constant.  The value of ``c`` sorts curves into repelling (``0 < c < 1``),
critical (``c = 1``) and attracting (``c > 1``) families.

``BACKEND`` reports whether the compiled kernels or the pure-Python fallback
are in use.
"""

from ._backend import BACKEND
from .core import (CRITICAL_TOL, HALF_PI, CurvePoint, FamilyParameter, PhysicalScale, Regime, Route,
                   SampledCurve, arclength_invariant, classify, family_of, first_integral,
                   reflect_height, reflect_xi, to_nondimensional, to_physical)
from .curves import (CriticalAnchor, IntegratorSettings, attracting_curve, critical_curve,
                     critical_point, critical_xi, curvature_at, curve_point, integrate_arclength,
                     integrate_arclength_both, repelling_curve)
from .errors import (CapillaryError, ConvergenceError, DomainError, InfeasibleConfigurationError,
                     NoSolutionError)
from .forces import (ForceResult, PlateConfig, PlateGeometry, PlateSide, PlateSolution,
                     attracting_force, force_of, plate_inclination, plate_separation,
                     repelling_force, solve_plates)
from .quadrature import (QuadratureSettings, RepellingExtent, SingularStrategy, cumulative_delta_xi,
                         delta_xi, delta_xi_estimate, dxi0_dU0, xi0)
from .regions import (EnvelopeLocus, LimitSweepReport, attracting_envelope, critical_height_at,
                      limit_sweep, repelling_envelope)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
