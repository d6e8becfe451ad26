"""Double-double arithmetic: unevaluated sums hi + lo of two floats.

Near the inner rim of a solution annulus the momentum-equation terms grow
like r^-3 while their sum stays near zero, so plain double evaluation of the
jet entries leaves a rounding floor of a few units of maxterm * eps.  The
analytic jet engine therefore evaluates field formulas on :class:`DD`
numbers, which track roughly 32 significant digits, and rounds only the
finished jet entries.  Error-free transforms (two_sum, two_prod) follow
Dekker and Knuth; products are split multiplicatively because fused
multiply-add is not available.
"""

from __future__ import annotations

import math

__all__ = ["DD", "two_sum", "two_prod", "split"]

_SPLITTER = 134217729.0  # 2^27 + 1


def two_sum(a: float, b: float):
    """Error-free sum: returns (s, e) with s = fl(a+b) and a+b = s+e."""
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a: float, b: float):
    # requires |a| >= |b|
    s = a + b
    return s, b - (s - a)


def split(a: float):
    """Dekker split of a float into high and low 26-bit halves."""
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a: float, b: float):
    """Error-free product: returns (p, e) with p = fl(a*b) and a*b = p+e."""
    p = a * b
    ah, al = split(a)
    bh, bl = split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


class DD:
    """A double-double number hi + lo with |lo| <= ulp(hi)/2."""

    __slots__ = ("hi", "lo")

    def __init__(self, hi: float, lo: float = 0.0):
        self.hi = hi
        self.lo = lo

    @staticmethod
    def of(x):
        if isinstance(x, DD):
            return x
        return DD(float(x))

    def to_float(self) -> float:
        return self.hi + self.lo

    def __repr__(self):
        return f"DD({self.hi!r}, {self.lo!r})"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, DD):
            s, e = two_sum(self.hi, other.hi)
            e += self.lo + other.lo
        elif isinstance(other, (int, float)):
            s, e = two_sum(self.hi, other)
            e += self.lo
        else:
            return NotImplemented
        s, e = _quick_two_sum(s, e)
        return DD(s, e)

    __radd__ = __add__

    def __neg__(self):
        return DD(-self.hi, -self.lo)

    def __sub__(self, other):
        if isinstance(other, DD):
            s, e = two_sum(self.hi, -other.hi)
            e += self.lo - other.lo
        elif isinstance(other, (int, float)):
            s, e = two_sum(self.hi, -other)
            e += self.lo
        else:
            return NotImplemented
        s, e = _quick_two_sum(s, e)
        return DD(s, e)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, DD):
            p, e = two_prod(self.hi, other.hi)
            e += self.hi * other.lo + self.lo * other.hi
        elif isinstance(other, (int, float)):
            p, e = two_prod(self.hi, other)
            e += self.lo * other
        else:
            return NotImplemented
        p, e = _quick_two_sum(p, e)
        return DD(p, e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (DD, int, float)):
            return NotImplemented
        o = DD.of(other)
        q1 = self.hi / o.hi
        r = self - o * q1
        q2 = r.hi / o.hi
        r = r - o * q2
        q3 = r.hi / o.hi
        s, e = _quick_two_sum(q1, q2)
        return DD(s, e) + q3

    def __rtruediv__(self, other):
        if not isinstance(other, (int, float)):
            return NotImplemented
        return DD.of(other) / self

    def __abs__(self):
        return -self if self.hi < 0.0 else self

    def __pow__(self, p):
        if isinstance(p, int) or (isinstance(p, float) and p == int(p)
                                  and abs(p) <= 64):
            k = int(p)
            if k < 0:
                return 1.0 / (self ** (-k))
            out, base = DD(1.0), self
            while k:
                if k & 1:
                    out = out * base
                base = base * base
                k >>= 1
            return out
        return (self.log() * p).exp()

    def __rpow__(self, base):
        return (self * math.log(base)).exp()

    # -- comparisons (on the exact value) -----------------------------------

    def _cmp(self, other):
        d = self - other
        if d.hi < 0.0:
            return -1
        if d.hi > 0.0:
            return 1
        return -1 if d.lo < 0.0 else (1 if d.lo > 0.0 else 0)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (DD, int, float)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.hi, self.lo))

    # -- elementary functions -----------------------------------------------

    def exp(self):
        # one Newton-style refinement of the double result; relative error
        # ~ eps * |x|, which is far below eps where the small-argument
        # accuracy actually matters
        y = math.exp(self.hi)
        if y == 0.0 or math.isinf(y):
            return DD(y)
        corr = (self.hi - math.log(y)) + self.lo
        return DD.of(y) * (1.0 + corr)

    def expm1(self):
        m = math.expm1(self.hi)
        if math.isinf(m):
            return DD(m)
        corr = (self.hi - math.log1p(m)) + self.lo
        return DD.of(m) + (1.0 + m) * corr

    def log(self):
        y = math.log(self.hi)
        # refine: log x = y + log(x * e^-y) with the residual near zero
        r = self * DD(-y).exp() - 1.0
        return r.to_float() + DD.of(y)

    def sqrt(self):
        y = math.sqrt(self.hi)
        if y == 0.0:
            return DD(0.0)
        r = self - DD.of(y) * y
        return DD.of(y) + r.to_float() / (2.0 * y)

    def sin(self):
        h = math.sin(self.hi)
        return DD.of(h) + self.lo * math.cos(self.hi)

    def cos(self):
        h = math.cos(self.hi)
        return DD.of(h) - self.lo * math.sin(self.hi)

    def atan(self):
        h = math.atan(self.hi)
        return DD.of(h) + self.lo / (1.0 + self.hi * self.hi)
