"""Symmetry reductions: radial profiles, their ODE systems, and lifts.

The radial profile systems here are coded in polar form exactly as the
reduced equations read; the Cartesian residual module never shares these
expressions, so agreement between the two is a real cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .core_model import (ConstitutiveTriplet, PhysConstants, PowerLawParams,
                         constitutive_eval, scale_exponents)
from .jets import Field
from .numerics import (IntegrationError, OdeSpec, QuadratureSpec,
                       ode_integrate, quad_adaptive)
from .numerics.dual import atan2, cos, ddr, exp, log, sin, sqrt, value
from .residuals import ResidualReport, _collect

__all__ = ["ReducedProfiles", "ReducedPlaneFields", "lift_profiles",
           "reduced_ode_residual", "reduced_bc_residual", "BcResiduals",
           "first_integral_R", "integrate_ode_4_6", "LambdaTrajectory",
           "overdetermined_residual", "pressure_from_lambda",
           "steady_residual"]

REDUCED_NAMES = ("radial_mass", "radial_divergence",
                 "radial_momentum_phi", "radial_momentum_r")


@dataclass(frozen=True)
class ReducedProfiles:
    """Radial profiles (concentration, pressure, speed, flow angle).

    The four callables accept dual arguments, so first and second
    derivatives are available by forward differentiation.
    """

    lam: Callable
    P: Callable
    R: Callable
    Phi: Callable
    m: Optional[float]
    n: Optional[float]
    lam_visc: float
    d0: float
    s0: Optional[float] = None
    sigma0: Optional[float] = None
    beta: float = 0.0
    steady: bool = False


@dataclass(frozen=True)
class ReducedPlaneFields:
    """The capital unknowns on the scaled plane (omega1, omega2)."""

    U1: Callable
    U2: Callable
    Lam: Callable
    P: Callable

    @classmethod
    def from_profiles(cls, profiles: ReducedProfiles):
        def polar(w1, w2):
            return sqrt(w1 * w1 + w2 * w2), atan2(w2, w1)

        def U1(w1, w2):
            r, phi = polar(w1, w2)
            return profiles.R(r) * cos(profiles.Phi(r) + phi)

        def U2(w1, w2):
            r, phi = polar(w1, w2)
            return profiles.R(r) * sin(profiles.Phi(r) + phi)

        def Lam(w1, w2):
            r, _ = polar(w1, w2)
            return profiles.lam(r)

        def P(w1, w2):
            r, _ = polar(w1, w2)
            return profiles.P(r)

        return cls(U1=U1, U2=U2, Lam=Lam, P=P)


class LiftedField(Field):
    def __init__(self, plane: ReducedPlaneFields, m, n, steady):
        self.plane = plane
        self.steady = steady
        if steady:
            self.gamma = None
        else:
            self.gamma = scale_exponents(m, n).gamma
            self.n = n

    def values(self, t, x, y):
        if value(t) <= 0.0:
            raise ValueError("lifted field needs t > 0")
        if self.steady:
            return (self.plane.Lam(x, y), self.plane.U1(x, y),
                    self.plane.U2(x, y), self.plane.P(x, y))
        g, n = self.gamma, self.n
        w1 = x * t ** g
        w2 = y * t ** g
        tu = t ** (-g - 1.0)
        return (t ** (1.0 / (1.0 - n)) * self.plane.Lam(w1, w2),
                tu * self.plane.U1(w1, w2),
                tu * self.plane.U2(w1, w2),
                t ** (n / (1.0 - n)) * self.plane.P(w1, w2))


def lift_profiles(profiles: ReducedProfiles, m=None, n=None, delta=None,
                  steady=False) -> LiftedField:
    """Compose the polar and scale ansatz maps into a full (t,x,y) field.

    With steady=True the time-translation reduction is inverted instead
    and no time factors appear.
    """
    if m is None:
        m = profiles.m
    if n is None:
        n = profiles.n
    plane = ReducedPlaneFields.from_profiles(profiles)
    return LiftedField(plane, m, n, steady or profiles.steady)


def reduced_ode_residual(profiles: ReducedProfiles,
                         samples_r) -> ResidualReport:
    """Residuals of the four reduced radial ODEs at the given radii."""
    m, n = profiles.m, profiles.n
    lamv, d0 = profiles.lam_visc, profiles.d0
    s0, sigma0 = profiles.s0, profiles.sigma0
    gamma = (m + 1.0) / (2.0 * (n - 1.0))
    L, P, R, Phi = profiles.lam, profiles.P, profiles.R, profiles.Phi
    dL, dP, dR, dPhi = ddr(L), ddr(P), ddr(R), ddr(Phi)

    d_mass_flux = ddr(lambda r: r * L(r) * R(r) * cos(Phi(r)))
    d_vol_flux = ddr(lambda r: r * R(r) * cos(Phi(r)))
    d_darcy = ddr(lambda r: d0 * r * L(r) ** m * dP(r))
    d_swirl = ddr(lambda r: r * R(r) * L(r) * dPhi(r))
    d_shear = ddr(lambda r: r * L(r) * dR(r))
    d_ln = ddr(lambda r: sigma0 * L(r) ** n)

    rows, locations, rejected = [], [], []
    for idx, r in enumerate(samples_r):
        if r <= 0.0:
            rejected.append(idx)
            continue
        lam_p = dL(r)
        phi = Phi(r)
        src = d_ln(r) + dP(r)
        eq1 = gamma * r * r * lam_p + d_mass_flux(r) \
            - s0 * r * L(r) ** n - r * L(r) / (n - 1.0)
        eq2 = d_vol_flux(r) - d_darcy(r)
        eq3 = (1.0 + lamv) * R(r) * lam_p * sin(2.0 * phi) \
            - (2.0 + lamv) * d_swirl(r) \
            - (2.0 + lamv) * r * L(r) * dR(r) * dPhi(r) \
            - r * src * sin(phi)
        eq4 = (1.0 + lamv) * r * R(r) * lam_p * cos(2.0 * phi) \
            + (2.0 + lamv) * r * d_shear(r) \
            - (2.0 + lamv) * L(r) * R(r) * (1.0 + (r * dPhi(r)) ** 2) \
            - r * R(r) * lam_p - r * r * src * cos(phi)
        rows.append((eq1, eq2, eq3, eq4))
        locations.append((0.0, r, 0.0))
    return _collect(REDUCED_NAMES, rows, locations, "reduced-ode",
                    rejected)


@dataclass(frozen=True)
class BcResiduals:
    """Front-condition residuals: the general set and the simplified set."""

    kinematic: float
    pressure: float
    traction_1: float
    traction_2: float
    simplified: tuple  # (R, P, R')

    @property
    def general_max(self):
        return max(abs(self.kinematic), abs(self.pressure),
                   abs(self.traction_1), abs(self.traction_2))

    @property
    def simplified_max(self):
        return max(abs(v) for v in self.simplified)


def reduced_bc_residual(profiles: ReducedProfiles, delta: float,
                        phys: PhysConstants, m=None, n=None) -> BcResiduals:
    if m is None:
        m = profiles.m
    if n is None:
        n = profiles.n
    lamv = phys.lam
    L, P, R, Phi = profiles.lam, profiles.P, profiles.R, profiles.Phi
    dR, dPhi = ddr(R), ddr(Phi)
    phi = Phi(delta)
    if profiles.steady:
        kin = R(delta) * cos(phi)
    else:
        gamma = (m + 1.0) / (2.0 * (n - 1.0))
        kin = gamma * delta + R(delta) * cos(phi)
    t1 = (2.0 + lamv) * delta * dR(delta) \
        + R(delta) * ((1.0 + lamv) * cos(2.0 * phi) - 1.0)
    t2 = R(delta) * ((2.0 + lamv) * delta * dPhi(delta)
                     - (1.0 + lamv) * sin(2.0 * phi))
    return BcResiduals(
        kinematic=kin, pressure=P(delta), traction_1=t1, traction_2=t2,
        simplified=(R(delta), P(delta), dR(delta)))


def first_integral_R(beta: float, d0: float, m: float,
                     lambda_profile: Callable,
                     p_prime_profile: Callable) -> Callable:
    """Radial speed implied by the zero-swirl divergence equation."""
    def R(r):
        return beta / r + d0 * lambda_profile(r) ** m * p_prime_profile(r)
    return R


class LambdaTrajectory:
    """Callable concentration profile wrapping an ODE trajectory."""

    def __init__(self, traj, transform=None):
        self.trajectory = traj
        self._transform = transform

    def __call__(self, r):
        v = self.trajectory(r)[0]
        return self._transform(v) if self._transform else v


def integrate_ode_4_6(params: PowerLawParams, phys: PhysConstants,
                      beta: float, r0: float, r1: float, lambda0: float,
                      spec: Optional[OdeSpec] = None,
                      dlambda0: Optional[float] = None) -> LambdaTrajectory:
    """Integrate the first-order concentration ODE of the profile chain.

    The ODE is separable with the bracketed coefficient of the derivative
    inverted; a zero-crossing of that coefficient along the trajectory is
    an integration error.  On the fully degenerate parameter set (the
    bracket vanishes identically) the equation carries no information, so
    the second-order equation of the overdetermined pair is integrated
    instead; that path needs the initial slope dlambda0.
    """
    if spec is None:
        spec = OdeSpec()
    m, n = params.m, params.n
    d0, s0, sigma0 = params.d0, params.s0, params.sigma0
    lamv = phys.lam
    link = (n - 1.0) * (n * sigma0 - (n - 1.0) * (2.0 + lamv) * s0)

    def bracket(lam):
        return (1.0 + m) * (1.0 + lamv) * lam ** m \
            + link * lam ** (m + n - 1.0)

    def forcing(r):
        return (1.0 + m) * r / (2.0 * d0) + (n - 1.0) * beta / (d0 * r)

    b0 = bracket(lambda0)
    degenerate = (1.0 + m == 0.0 and abs(link) < 1e-13
                  * max(1.0, abs(n * sigma0), abs((n - 1.0) * s0)))
    if degenerate and beta == 0.0:
        if dlambda0 is None:
            raise IntegrationError(
                "the first-order equation is identically 0 = 0 for this "
                "parameter set; supply the initial slope dlambda0 to "
                "integrate the second-order profile equation instead")
        y0 = [math.log(lambda0), dlambda0 / lambda0]

        def rhs2(r, y):
            _, dl = y
            return [dl, lamv / ((2.0 + lamv) * r) * dl
                    - math.exp(-(1.0 + m) * y[0]) / (d0 * (2.0 + lamv))]

        traj = ode_integrate(rhs2, y0, r0, r1, spec)
        return LambdaTrajectory(traj, transform=math.exp)

    if b0 == 0.0:
        raise IntegrationError(
            f"coefficient of the derivative vanishes at r0={r0}")
    sign0 = math.copysign(1.0, b0)

    def rhs(r, y):
        b = bracket(y[0])
        if b == 0.0 or math.copysign(1.0, b) != sign0:
            raise IntegrationError(
                f"coefficient of the derivative crosses zero near r={r}")
        return [forcing(r) / b]

    traj = ode_integrate(rhs, [lambda0], r0, r1, spec)
    return LambdaTrajectory(traj)


def overdetermined_residual(lambda_profile: Callable,
                            params: Optional[PowerLawParams],
                            phys: PhysConstants, system: str,
                            samples_r, beta: float = 0.0,
                            triplet: Optional[ConstitutiveTriplet] = None):
    """L-infinity residuals of both equations of an overdetermined pair.

    system 'eq_4_5' is the power-law pair in (m, n, s0, sigma0);
    system 'eq_4_23' takes a general triplet and checks its
    function-valued second equation with the given beta.
    """
    lamv = phys.lam
    L = lambda__p = lambda_profile
    dL = ddr(L)
    d2L = ddr(dL)
    worst1 = worst2 = 0.0
    for r in samples_r:
        lam, lp, lpp = L(r), dL(r), d2L(r)
        if system == "eq_4_5":
            m, n = params.m, params.n
            d0, s0, sigma0 = params.d0, params.s0, params.sigma0
            e1 = lam ** m * lpp - lam ** (m - 1.0) * lp * lp \
                - lamv / ((2.0 + lamv) * r) * lam ** m * lp \
                + 1.0 / (d0 * (2.0 + lamv))
            e2 = ((1.0 + m) * r + 2.0 * (n - 1.0) * beta / r) \
                * (lpp - lp * lp / lam) \
                + 2.0 * (n - 1.0) * (n * sigma0 / (2.0 + lamv)
                                     - (n - 1.0) * s0) \
                * lam ** (n - 1.0) * lp \
                + (1.0 + m
                   - 2.0 * (n - 1.0) * beta * lamv
                   / ((2.0 + lamv) * r * r)) * lp
        elif system == "eq_4_23":
            c = constitutive_eval(triplet, lam)
            e1 = lpp - lp * lp / lam - lamv / ((2.0 + lamv) * r) * lp \
                + 1.0 / ((2.0 + lamv) * c.D)
            e2 = c.D * (c.S / lam - c.dS
                        + c.d_alpha_sigma / (2.0 + lamv)) * lp \
                - beta / ((2.0 + lamv) * r)
        else:
            raise ValueError(f"unknown system {system!r}")
        worst1 = max(worst1, abs(e1))
        worst2 = max(worst2, abs(e2))
    return worst1, worst2


def pressure_from_lambda(lambda_profile: Callable, source: Callable,
                         d0: float, c3: float, c4: float, delta: float,
                         quad: Optional[QuadratureSpec] = None) -> Callable:
    """Pressure profile by double quadrature of the mass source.

    The inner antiderivative of rho*S(lam(rho)) is fixed by requiring
    decay at infinity, which reproduces the closed exponential-integral
    forms for Gaussian-decaying concentration profiles.
    """
    if quad is None:
        quad = QuadratureSpec(rel_tol=1e-12, abs_tol=1e-15)

    def inner(rho):
        # -int_rho^inf z S(lam(z)) dz, truncated once segments are dust
        total = 0.0
        lo = rho
        width = max(1.0, 0.5 * rho)
        while True:
            seg, _ = quad_adaptive(lambda z: z * source(lambda_profile(z)),
                                   lo, lo + width, quad)
            total += seg
            lo += width
            width *= 2.0
            if abs(seg) < quad.abs_tol and lo > rho + 4.0:
                break
        return -total

    def P(r):
        tail, _ = quad_adaptive(lambda rho: inner(rho) / rho, r, delta, quad)
        return c4 + c3 * math.log(r) - tail / d0

    return P


def steady_residual(profiles: ReducedProfiles, triplet: ConstitutiveTriplet,
                    phys: PhysConstants, samples_r,
                    delta: float) -> ResidualReport:
    """Residuals of the steady radial system plus its front conditions."""
    lamv = phys.lam
    L, P, R, Phi = profiles.lam, profiles.P, profiles.R, profiles.Phi
    dL, dP, dR, dPhi = ddr(L), ddr(P), ddr(R), ddr(Phi)
    d2P = ddr(dP)
    d_mass_flux = ddr(lambda r: r * L(r) * R(r) * cos(Phi(r)))
    d_vol_flux = ddr(lambda r: r * R(r) * cos(Phi(r)))
    d_swirl = ddr(lambda r: r * R(r) * L(r) * dPhi(r))
    d_shear = ddr(lambda r: r * L(r) * dR(r))

    rows, locations, rejected = [], [], []
    for idx, r in enumerate(samples_r):
        if r <= 0.0:
            rejected.append(idx)
            continue
        lam = L(r)
        c = constitutive_eval(triplet, lam)
        lam_p = dL(r)
        phi = Phi(r)
        # (r D P')' expanded by hand: D P' + r D' lam' P' + r D P''
        darcy = c.D * dP(r) + r * c.dD * lam_p * dP(r) + r * c.D * d2P(r)
        src = c.d_alpha_sigma * lam_p + dP(r)
        eq1 = d_mass_flux(r) - r * c.S
        eq2 = d_vol_flux(r) - darcy
        eq3 = (1.0 + lamv) * R(r) * lam_p * sin(2.0 * phi) \
            - (2.0 + lamv) * d_swirl(r) \
            - (2.0 + lamv) * r * lam * dR(r) * dPhi(r) \
            - r * src * sin(phi)
        eq4 = (1.0 + lamv) * r * R(r) * lam_p * cos(2.0 * phi) \
            + (2.0 + lamv) * r * d_shear(r) \
            - (2.0 + lamv) * lam * R(r) * (1.0 + (r * dPhi(r)) ** 2) \
            - r * R(r) * lam_p - r * r * src * cos(phi)
        rows.append((eq1, eq2, eq3, eq4))
        locations.append((0.0, r, 0.0))
    return _collect(REDUCED_NAMES, rows, locations, "steady-ode", rejected)
