"""Governing-equation and boundary-condition residuals in Cartesian form.

The four governing residuals are assembled term by term exactly as the
model system is written, from jet entries only.  This module is coded
independently of the polar reduced system so that the two formulations
cross-check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core_model import ConstitutiveTriplet, PhysConstants, constitutive_eval
from .jets import FieldJet, JetProvider
from .numerics import neumaier_sum
from .numerics.dd import two_prod
from .solutions import BoundaryCircle, SingularityError

__all__ = ["SampleSet", "EquationNorms", "ResidualReport",
           "governing_residual", "boundary_residual", "cross_engine_check",
           "governing_residual_at", "boundary_residual_at"]

GOVERNING_NAMES = ("mass", "divergence", "momentum_x", "momentum_y")
BOUNDARY_NAMES = ("kinematic", "pressure", "traction_1", "traction_2")


@dataclass(frozen=True)
class SampleSet:
    """Deterministic annulus sampling: concentric rings inside the front.

    Radii are log-spaced on [r_min_fraction * radius(t), radius(t)] so the
    near-origin region and the boundary layer are both resolved.
    """

    times: tuple = (1.0,)
    r_min_fraction: float = 1e-2
    n_r: int = 12
    n_theta: int = 8

    def __post_init__(self):
        if any(t <= 0 for t in self.times):
            raise ValueError("all sample times must be positive")
        if not 0.0 < self.r_min_fraction < 1.0:
            raise ValueError("r_min_fraction must lie in (0, 1)")
        if self.n_r < 1 or self.n_theta < 1:
            raise ValueError("grid counts must be positive")

    def points(self, boundary: BoundaryCircle):
        """Yield (t, x, y) in deterministic t-major, r, theta order."""
        for t in self.times:
            rad = boundary.radius(t)
            r_lo = self.r_min_fraction * rad
            for i in range(self.n_r):
                if self.n_r == 1:
                    r = rad
                else:
                    frac = i / (self.n_r - 1)
                    r = r_lo * (rad / r_lo) ** frac
                for j in range(self.n_theta):
                    theta = 2.0 * math.pi * j / self.n_theta
                    yield t, r * math.cos(theta), r * math.sin(theta)


@dataclass(frozen=True)
class EquationNorms:
    name: str
    linf: float
    linf_location: tuple
    l2: float


@dataclass(frozen=True)
class ResidualReport:
    equations: tuple
    sample_count: int
    engine: str
    rejected: tuple = ()

    @property
    def linf(self) -> float:
        return max(eq.linf for eq in self.equations)

    def norm(self, name: str) -> EquationNorms:
        for eq in self.equations:
            if eq.name == name:
                return eq
        raise KeyError(name)

    def lines(self):
        out = []
        for eq in self.equations:
            t, x, y = eq.linf_location
            out.append(f"{eq.name}: Linf={eq.linf:.6e} at "
                       f"(t={t:.6g}, x={x:.6g}, y={y:.6g}) L2={eq.l2:.6e}")
        return out


def _acc(terms):
    """Exactly accumulated sum of c*a*b terms.

    Individual momentum terms grow like r^-3 near the inner sampling rim
    while the residual stays near zero, so every product is split into its
    error-free parts before the single fsum.
    """
    parts = []
    for c, a, b in terms:
        p, e = two_prod(a, b)
        q, f = two_prod(p, c)
        parts.append(q)
        parts.append(f)
        parts.append(e * c)
    return math.fsum(parts)


def governing_residual_at(jet: FieldJet, triplet: ConstitutiveTriplet,
                          phys: PhysConstants):
    """The four governing residuals at a single jet."""
    lam = phys.lam
    c = constitutive_eval(triplet, jet.alpha)
    r_mass = _acc([
        (1.0, jet.alpha_t, 1.0),
        (1.0, jet.alpha_x, jet.u1), (1.0, jet.alpha, jet.u1_x),
        (1.0, jet.alpha_y, jet.u2), (1.0, jet.alpha, jet.u2_y),
        (-1.0, c.S, 1.0)])
    r_div = _acc([
        (1.0, jet.u1_x, 1.0), (1.0, jet.u2_y, 1.0),
        (-c.dD, jet.alpha_x, jet.p_x), (-c.dD, jet.alpha_y, jet.p_y),
        (-c.D, jet.p_xx, 1.0), (-c.D, jet.p_yy, 1.0)])
    r_mx = _acc([
        (2.0 + lam, jet.alpha_x, jet.u1_x),
        (2.0 + lam, jet.alpha, jet.u1_xx),
        (lam, jet.alpha_x, jet.u2_y), (lam, jet.alpha, jet.u2_xy),
        (1.0, jet.alpha_y, jet.u1_y), (1.0, jet.alpha_y, jet.u2_x),
        (1.0, jet.alpha, jet.u1_yy), (1.0, jet.alpha, jet.u2_xy),
        (-1.0, jet.p_x, 1.0),
        (-c.d_alpha_sigma, jet.alpha_x, 1.0)])
    r_my = _acc([
        (1.0, jet.alpha_x, jet.u1_y), (1.0, jet.alpha_x, jet.u2_x),
        (1.0, jet.alpha, jet.u1_xy), (1.0, jet.alpha, jet.u2_xx),
        (2.0 + lam, jet.alpha_y, jet.u2_y),
        (2.0 + lam, jet.alpha, jet.u2_yy),
        (lam, jet.alpha_y, jet.u1_x), (lam, jet.alpha, jet.u1_xy),
        (-1.0, jet.p_y, 1.0),
        (-c.d_alpha_sigma, jet.alpha_y, 1.0)])
    return r_mass, r_div, r_mx, r_my


def _collect(names, rows, locations, engine, rejected):
    equations = []
    for k, name in enumerate(names):
        col = [abs(row[k]) for row in rows]
        if not col:
            raise ValueError("no valid samples")
        linf = max(col)
        where = locations[col.index(linf)]
        l2 = math.sqrt(neumaier_sum([v * v for v in col]))
        equations.append(EquationNorms(name, linf, where, l2))
    return ResidualReport(tuple(equations), len(rows), engine,
                          tuple(rejected))


def governing_residual(jets: JetProvider, triplet: ConstitutiveTriplet,
                       phys: PhysConstants, samples: SampleSet,
                       boundary: BoundaryCircle) -> ResidualReport:
    rows, locations, rejected = [], [], []
    for idx, (t, x, y) in enumerate(samples.points(boundary)):
        try:
            jet = jets.jet(t, x, y)
        except SingularityError:
            rejected.append(idx)
            continue
        rows.append(governing_residual_at(jet, triplet, phys))
        locations.append((t, x, y))
    return _collect(GOVERNING_NAMES, rows, locations, jets.descriptor,
                    rejected)


def boundary_residual_at(jet: FieldJet, boundary: BoundaryCircle,
                         phys: PhysConstants):
    """The four moving-boundary condition residuals at a front point."""
    lam = phys.lam
    gx, gy = 2.0 * jet.x, 2.0 * jet.y
    b_kin = jet.u1 * gx + jet.u2 * gy + boundary.level_t(jet.t)
    b_p = jet.p
    b_t1 = ((2.0 + lam) * jet.u1_x + lam * jet.u2_y) * gx \
        + (jet.u1_y + jet.u2_x) * gy
    b_t2 = (jet.u1_y + jet.u2_x) * gx \
        + (lam * jet.u1_x + (2.0 + lam) * jet.u2_y) * gy
    return b_kin, b_p, b_t1, b_t2


def boundary_residual(jets: JetProvider, boundary: BoundaryCircle,
                      phys: PhysConstants, t: float,
                      n_theta: int = 64) -> ResidualReport:
    if t <= 0:
        raise ValueError("t must be positive")
    rad = boundary.radius(t)
    rows, locations = [], []
    for j in range(n_theta):
        theta = 2.0 * math.pi * j / n_theta
        x, y = rad * math.cos(theta), rad * math.sin(theta)
        jet = jets.jet(t, x, y)
        rows.append(boundary_residual_at(jet, boundary, phys))
        locations.append((t, x, y))
    return _collect(BOUNDARY_NAMES, rows, locations, jets.descriptor, [])


_JET_ENTRIES = ("alpha", "u1", "u2", "p",
                "alpha_t", "u1_t", "u2_t", "p_t",
                "alpha_x", "alpha_y",
                "u1_x", "u1_y", "u2_x", "u2_y",
                "u1_xx", "u1_xy", "u1_yy", "u2_xx", "u2_xy", "u2_yy",
                "p_x", "p_y", "p_xx", "p_yy")


def cross_engine_check(analytic: JetProvider, fd: JetProvider,
                       samples: SampleSet,
                       boundary: BoundaryCircle) -> float:
    """Worst relative disagreement between the two jet engines."""
    worst = 0.0
    for t, x, y in samples.points(boundary):
        ja = analytic.jet(t, x, y)
        jf = fd.jet(t, x, y)
        for name in _JET_ENTRIES:
            a, f = getattr(ja, name), getattr(jf, name)
            rel = abs(a - f) / max(abs(a), abs(f), 1.0)
            if rel > worst:
                worst = rel
    return worst
