"""Shared numerical kernels: dual-number AD, adaptive quadrature, the
exp(-a z^2)/z integral family, an embedded Runge-Kutta integrator,
finite-difference stencils, and compensated reductions."""

from . import dual
from .dual import Dual
from .fd import fd_derivative, richardson_order
from .ode import IntegrationError, OdeSpec, Trajectory, ode_integrate
from .quadrature import QuadratureError, QuadratureSpec, quad_adaptive
from .special import (SingularEndpointError, exp_over_z_integral,
                      exp_over_z_quadrature)

__all__ = [
    "Dual", "dual",
    "fd_derivative", "richardson_order",
    "IntegrationError", "OdeSpec", "Trajectory", "ode_integrate",
    "QuadratureError", "QuadratureSpec", "quad_adaptive",
    "SingularEndpointError", "exp_over_z_integral", "exp_over_z_quadrature",
    "neumaier_sum",
]


def neumaier_sum(values):
    """Compensated sequential sum; deterministic for a fixed input order."""
    total = 0.0
    comp = 0.0
    for v in values:
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    return total + comp
