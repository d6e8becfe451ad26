"""Lie group actions on fields and their verification checks.

Each group element acts by pullback: the transformed field evaluates the
source field at the inverse-mapped point and transforms the components.
The result is again a field, so jets and residuals apply to it unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .core_model import ConstitutiveTriplet, PhysConstants, PowerLawTriplet
from .jets import AnalyticEngine, Field, JetProvider
from .numerics.dd import DD
from .numerics.dual import cos, lift, sin
from .residuals import ResidualReport, SampleSet, governing_residual
from .solutions import BoundaryCircle, SolutionFamily

__all__ = ["Rotation", "Galilei", "PressureShift", "TimeTranslation",
           "Scale", "GroupElement", "TransformedField", "transform_field",
           "orbit_residual", "boundary_invariance",
           "InapplicableSymmetryError"]


class InapplicableSymmetryError(ValueError):
    """Group element requires structure the given triplet does not have."""


def _tcall(fn: Callable, dfn: Optional[Callable], t):
    """Evaluate a user time-function with its analytic derivative.

    User callables see plain floats even when the jet engine runs on wider
    scalars.
    """
    if dfn is None:
        dfn = lambda tv: 0.0
    return lift(t, lambda tv: fn(_plain(tv)), lambda tv: dfn(_plain(tv)))


def _plain(z):
    return z.to_float() if isinstance(z, DD) else z


@dataclass(frozen=True)
class Rotation:
    """Generalized rotation by angle f(t)*eps with velocity corrections."""

    f: Callable
    fdot: Callable
    eps: float

    def pull_values(self, field: Field, t, x, y):
        a = _tcall(self.f, self.fdot, t) * self.eps
        fd_eps = _tcall(self.fdot, None, t) * self.eps
        ca, sa = cos(a), sin(a)
        xs = x * ca - y * sa
        ys = x * sa + y * ca
        alpha, u1s, u2s, p = field.values(t, xs, ys)
        u1 = (u1s + fd_eps * ys) * ca + (u2s - fd_eps * xs) * sa
        u2 = -(u1s + fd_eps * ys) * sa + (u2s - fd_eps * xs) * ca
        return alpha, u1, u2, p

    def inverse(self):
        return Rotation(self.f, self.fdot, -self.eps)


@dataclass(frozen=True)
class Galilei:
    """Boost x -> x + eps*g(t) (or y) with the gdot velocity shift."""

    g: Callable
    gdot: Callable
    eps: float
    axis: str = "x"

    def __post_init__(self):
        if self.axis not in ("x", "y"):
            raise ValueError(f"axis must be 'x' or 'y', got {self.axis!r}")

    def pull_values(self, field: Field, t, x, y):
        shift = _tcall(self.g, self.gdot, t) * self.eps
        dshift = _tcall(self.gdot, None, t) * self.eps
        if self.axis == "x":
            alpha, u1, u2, p = field.values(t, x - shift, y)
            return alpha, u1 + dshift, u2, p
        alpha, u1, u2, p = field.values(t, x, y - shift)
        return alpha, u1, u2 + dshift, p

    def inverse(self):
        return Galilei(self.g, self.gdot, -self.eps, self.axis)


@dataclass(frozen=True)
class PressureShift:
    """Add eps*F(t) to the pressure; F supplied with its derivative."""

    F: Callable
    Fdot: Callable
    eps: float = 1.0

    def pull_values(self, field: Field, t, x, y):
        alpha, u1, u2, p = field.values(t, x, y)
        return alpha, u1, u2, p + _tcall(self.F, self.Fdot, t) * self.eps

    def inverse(self):
        return PressureShift(self.F, self.Fdot, -self.eps)


@dataclass(frozen=True)
class TimeTranslation:
    eps: float

    def pull_values(self, field: Field, t, x, y):
        return field.values(t - self.eps, x, y)

    def inverse(self):
        return TimeTranslation(-self.eps)


@dataclass(frozen=True)
class Scale:
    """One-parameter scale action for the power-law model exponents."""

    eps: float
    m: float
    n: float

    def pull_values(self, field: Field, t, x, y):
        e = self.eps
        ts = math.exp(-2.0 * (1.0 - self.n) * e) * t
        sx = math.exp(-(1.0 + self.m) * e)
        alpha, u1, u2, p = field.values(ts, sx * x, sx * y)
        cu = math.exp((self.m + 2.0 * self.n - 1.0) * e)
        return (math.exp(2.0 * e) * alpha, cu * u1, cu * u2,
                math.exp(2.0 * self.n * e) * p)

    def inverse(self):
        return Scale(-self.eps, self.m, self.n)


GroupElement = Rotation | Galilei | PressureShift | TimeTranslation | Scale


class TransformedField(Field):
    def __init__(self, elem: GroupElement, source: Field):
        self.elem = elem
        self.source = source

    def values(self, t, x, y):
        return self.elem.pull_values(self.source, t, x, y)


def transform_field(elem: GroupElement, field: Field) -> TransformedField:
    return TransformedField(elem, field)


def orbit_residual(elem: GroupElement, sol: SolutionFamily,
                   triplet: ConstitutiveTriplet, phys: PhysConstants,
                   samples: SampleSet,
                   boundary: Optional[BoundaryCircle] = None
                   ) -> ResidualReport:
    """Governing residual of the transformed solution.

    A valid symmetry keeps this in the magnitude class of the base
    residual; the scale action is only a symmetry of the power-law model
    with matching exponents, anything else is rejected up front.
    """
    if isinstance(elem, Scale):
        if not isinstance(triplet, PowerLawTriplet):
            raise InapplicableSymmetryError(
                "scale action requires the power-law constitutive triplet")
        if (triplet.params.m, triplet.params.n) != (elem.m, elem.n):
            raise InapplicableSymmetryError(
                f"scale exponents ({elem.m}, {elem.n}) do not match the "
                f"triplet ({triplet.params.m}, {triplet.params.n})")
    if boundary is None:
        boundary = sol.boundary()
    provider = JetProvider(transform_field(elem, sol), AnalyticEngine())
    return governing_residual(provider, triplet, phys, samples, boundary)


def boundary_invariance(elem: GroupElement, boundary: BoundaryCircle,
                        m: float, n: float, t: float = 1.0) -> float:
    """Residual of the Lie invariance criterion on the moving circle.

    The criterion applies the element's infinitesimal generator to the
    front function and evaluates on the front itself; zero means the
    element maps the moving boundary to itself.
    """
    if isinstance(elem, (Rotation, PressureShift)):
        return 0.0
    if isinstance(elem, TimeTranslation):
        return abs(boundary.level_t(t))
    if isinstance(elem, Galilei):
        return abs(2.0 * boundary.radius(t) * elem.g(t))
    if isinstance(elem, Scale):
        w = boundary.radius(t) ** 2
        return abs(2.0 * (1.0 - n) * t * boundary.level_t(t)
                   + (1.0 + m) * 2.0 * w)
    raise TypeError(f"unknown group element {elem!r}")
