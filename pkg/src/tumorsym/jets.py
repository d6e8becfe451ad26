"""Field jets: values of (alpha, u1, u2, p) at a space-time point together
with every partial derivative the governing and boundary residuals consume.

A *field* is any object with a ``values(t, x, y) -> (alpha, u1, u2, p)``
method written in generic arithmetic, so it accepts dual-number seeds.  The
analytic engine builds jets from nested dual evaluations; the
finite-difference engine rebuilds the spatial entries from value calls only
and serves as the independent cross-check.  Time derivatives always come
from the analytic path: two families carry fractional powers of t that make
time differencing unreliable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .numerics import fd_derivative
from .numerics.dd import DD
from .numerics.dual import Dual, seed1, seed2, seed_pair, value

__all__ = ["FieldJet", "Field", "JetEngine", "AnalyticEngine", "FdEngine",
           "JetProvider", "FIRST_SPACE", "SECOND_SPACE"]


@dataclass(frozen=True)
class FieldJet:
    t: float
    x: float
    y: float
    alpha: float
    u1: float
    u2: float
    p: float
    alpha_t: float
    u1_t: float
    u2_t: float
    p_t: float
    alpha_x: float
    alpha_y: float
    u1_x: float
    u1_y: float
    u2_x: float
    u2_y: float
    u1_xx: float
    u1_xy: float
    u1_yy: float
    u2_xx: float
    u2_xy: float
    u2_yy: float
    p_x: float
    p_y: float
    p_xx: float
    p_yy: float


FIRST_SPACE = ("alpha_x", "alpha_y", "u1_x", "u1_y", "u2_x", "u2_y",
               "p_x", "p_y")
SECOND_SPACE = ("u1_xx", "u1_xy", "u1_yy", "u2_xx", "u2_xy", "u2_yy",
                "p_xx", "p_yy")


class Field:
    """Base class for jet-capable fields; subclasses implement ``values``."""

    def values(self, t, x, y):
        raise NotImplementedError


def _v(z):
    return value(z)


def _d(z):
    # first-order dual component (0 when the result does not depend on the seed)
    if isinstance(z, Dual):
        return value(z.dot)
    return 0.0


def _d2(z):
    if isinstance(z, Dual) and isinstance(z.dot, Dual):
        return value(z.dot.dot)
    return 0.0


def analytic_jet(field: Field, t, x, y, extended: bool = True) -> FieldJet:
    """Jet via nested forward-mode AD: four field evaluations per point.

    With ``extended`` the dual components carry double-double scalars, so
    each returned entry is correct to about one ulp even where the field
    formulas lose a dozen digits to cancellation near the inner rim.
    """
    if extended:
        t, x, y = DD.of(t), DD.of(x), DD.of(y)
    exx = field.values(t, seed2(x), y)
    eyy = field.values(t, x, seed2(y))
    sx, sy = seed_pair(x, y)
    exy = field.values(t, sx, sy)
    et = field.values(seed1(t), x, y)

    a_xx, u1_xx, u2_xx, p_xx = exx
    a_yy, u1_yy, u2_yy, p_yy = eyy
    _, u1_xy, u2_xy, _ = exy
    a_t, u1_t, u2_t, p_t = et

    return FieldJet(
        t=_v(t), x=_v(x), y=_v(y),
        alpha=_v(a_xx), u1=_v(u1_xx), u2=_v(u2_xx), p=_v(p_xx),
        alpha_t=_d(a_t), u1_t=_d(u1_t), u2_t=_d(u2_t), p_t=_d(p_t),
        alpha_x=_d(a_xx), alpha_y=_d(a_yy),
        u1_x=_d(u1_xx), u1_y=_d(u1_yy),
        u2_x=_d(u2_xx), u2_y=_d(u2_yy),
        u1_xx=_d2(u1_xx), u1_xy=_d2(u1_xy), u1_yy=_d2(u1_yy),
        u2_xx=_d2(u2_xx), u2_xy=_d2(u2_xy), u2_yy=_d2(u2_yy),
        p_x=_d(p_xx), p_y=_d(p_yy), p_xx=_d2(p_xx), p_yy=_d2(p_yy),
    )


def fd_jet(field: Field, t, x, y, h, scheme_order=4) -> FieldJet:
    """Jet with spatial derivatives from central differences of the values.

    Time derivatives still come from the analytic path (see module note).
    """
    def comp(i):
        return lambda xx, yy: value(field.values(t, xx, yy)[i])

    a, u1, u2, p = (value(c) for c in field.values(t, x, y))
    et = field.values(seed1(t), x, y)

    def dx(f):
        return fd_derivative(lambda s: f(s, y), x, 1, scheme_order, h)

    def dy(f):
        return fd_derivative(lambda s: f(x, s), y, 1, scheme_order, h)

    def dxx(f):
        return fd_derivative(lambda s: f(s, y), x, 2, scheme_order, h)

    def dyy(f):
        return fd_derivative(lambda s: f(x, s), y, 2, scheme_order, h)

    def dxy(f):
        return fd_derivative(
            lambda sy: fd_derivative(lambda sx: f(sx, sy), x, 1,
                                     scheme_order, h),
            y, 1, scheme_order, h)

    fa, fu1, fu2, fp = comp(0), comp(1), comp(2), comp(3)
    return FieldJet(
        t=t, x=x, y=y, alpha=a, u1=u1, u2=u2, p=p,
        alpha_t=_d(et[0]), u1_t=_d(et[1]), u2_t=_d(et[2]), p_t=_d(et[3]),
        alpha_x=dx(fa), alpha_y=dy(fa),
        u1_x=dx(fu1), u1_y=dy(fu1), u2_x=dx(fu2), u2_y=dy(fu2),
        u1_xx=dxx(fu1), u1_xy=dxy(fu1), u1_yy=dyy(fu1),
        u2_xx=dxx(fu2), u2_xy=dxy(fu2), u2_yy=dyy(fu2),
        p_x=dx(fp), p_y=dy(fp), p_xx=dxx(fp), p_yy=dyy(fp),
    )


@dataclass(frozen=True)
class AnalyticEngine:
    descriptor: str = "analytic"
    extended: bool = True

    def jet(self, field, t, x, y):
        return analytic_jet(field, t, x, y, self.extended)


@dataclass(frozen=True)
class FdEngine:
    h: float = 1e-4
    scheme_order: int = 4

    @property
    def descriptor(self):
        return f"fd{{order={self.scheme_order},h={self.h}}}"

    def jet(self, field, t, x, y):
        return fd_jet(field, t, x, y, self.h, self.scheme_order)


JetEngine = AnalyticEngine | FdEngine


class JetProvider:
    """Binds a field to a jet engine; the unit the residual operators consume."""

    def __init__(self, field: Field, engine: JetEngine = AnalyticEngine()):
        self.field = field
        self.engine = engine

    @property
    def descriptor(self):
        return self.engine.descriptor

    def jet(self, t, x, y) -> FieldJet:
        return self.engine.jet(self.field, t, x, y)

    def values(self, t, x, y):
        return self.field.values(t, x, y)
