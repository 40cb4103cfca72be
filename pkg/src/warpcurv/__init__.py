"""Curvature verification for the warped Einstein metrics on complex hyperbolic branched covers.

The family is

    lambda = u^2 c_{n-1} + u^2 V(u) dtheta^2 + du^2 / V(u),

with V_alpha(u) = u^2 - 1 + alpha / u^(2n) giving Einstein metrics with
constant -2(n+1).  The package computes its curvature two ways (a generic
moving-frames engine and closed forms), the cone geometry at the collapsing
circle, sectional-curvature pinching and the Einstein deficit of a cutoff
interpolation back to complex hyperbolic space.
"""

from .closed_forms import ricci_diagonal, riemann_alpha, riemann_closed_form
from .cone import alpha_for_cone_angle, alpha_max, cone_angle_numeric, cone_data, largest_root
from .deficit import InterpolatedWarp, chi, deficit_diagonal, deficit_report
from .engine import CurvatureTensor, riemann_numeric
from .errors import DegenerateError, DomainError, InputError, NumericsError, ParameterError, WarpcurvError
from .frame import FramePoint
from .planes import TwoPlane, curvature_bounds, sectional_curvature, verify_bounds_by_sampling
from .warp import EinsteinWarp, PlainHyperbolic, einstein_profile

__version__ = "0.1.0"
