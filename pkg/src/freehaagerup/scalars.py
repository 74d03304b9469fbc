"""
Exact scalars and rational interval enclosures.

Every moment, cumulant, Weingarten entry and norm power in the package is an
exact rational or Gaussian rational (``p/q + i r/s``). Transcendental
constants that enter inequality verdicts (``e``, square roots) are handled
by :class:`RationalInterval` enclosures with rational endpoints.
"""

from fractions import Fraction
from math import factorial, floor, isqrt
import numbers

__all__ = [
    "GaussianRational",
    "RationalInterval",
    "as_exact",
    "conj",
    "abs2",
    "real_value",
    "format_rational",
    "parse_rational",
    "scalar_to_json",
    "scalar_from_json",
    "e_interval",
    "sqrt_interval",
    "abs_interval",
]


class GaussianRational:
    """
    Complex number with arbitrary-precision rational parts.

    Compares and hashes equal to the corresponding :class:`~fractions.Fraction`
    when the imaginary part is zero, so real results mix freely with plain
    rationals.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return GaussianRational(1) / (self ** -e)
        result = GaussianRational(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self):
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def as_exact(x):
    """Coerce ``x`` to an exact scalar; floats are refused."""
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, (GaussianRational, Fraction)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, dict):
        return scalar_from_json(x)
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    raise TypeError(f"refusing inexact or unsupported scalar {x!r}")


def conj(x):
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return x


def abs2(x):
    if isinstance(x, GaussianRational):
        return x.abs2()
    return Fraction(x) * x


def real_value(x):
    """Return the rational value of a scalar known to be real."""
    if isinstance(x, GaussianRational):
        if x.im != 0:
            raise ValueError(f"expected a real value, got {x}")
        return x.re
    return Fraction(x)


def format_rational(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s):
    s = s.strip()
    if "/" in s:
        p, q = s.split("/")
        return Fraction(int(p), int(q))
    return Fraction(int(s))


def scalar_to_json(x):
    if isinstance(x, GaussianRational):
        return {"re": format_rational(x.re), "im": format_rational(x.im)}
    return {"re": format_rational(x), "im": "0/1"}


def scalar_from_json(obj):
    if isinstance(obj, (int, str)):
        return as_exact(obj)
    re = parse_rational(str(obj.get("re", "0")))
    im = parse_rational(str(obj.get("im", "0")))
    if im == 0:
        return re
    return GaussianRational(re, im)


class RationalInterval:
    """Closed interval ``[lo, hi]`` with rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, x):
        return cls(x, x)

    @staticmethod
    def _wrap(x):
        if isinstance(x, RationalInterval):
            return x
        return RationalInterval(x)

    def __add__(self, other):
        o = self._wrap(other)
        return RationalInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._wrap(other)
        return RationalInterval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        o = self._wrap(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RationalInterval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._wrap(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        return self * RationalInterval(1 / o.hi, 1 / o.lo)

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        if self.lo >= 0:
            return RationalInterval(self.lo ** e, self.hi ** e)
        result = RationalInterval(1)
        for _ in range(e):
            result = result * self
        return result

    def outward(self, bits):
        """Widen to the grid ``2^-bits``; the result still contains ``self``."""
        scale = 1 << bits
        lo = Fraction(floor(self.lo * scale), scale)
        hi = Fraction(-floor(-self.hi * scale), scale)
        return RationalInterval(lo, hi)

    @property
    def width(self):
        return self.hi - self.lo

    def contains(self, x):
        return self.lo <= Fraction(x) <= self.hi

    def certainly_le(self, other):
        """True iff every point of ``self`` is <= every point of ``other``."""
        o = self._wrap(other)
        return self.hi <= o.lo

    def certainly_gt(self, other):
        o = self._wrap(other)
        return self.lo > o.hi

    def to_json(self):
        return [format_rational(self.lo), format_rational(self.hi)]

    def __repr__(self):
        return f"RationalInterval({self.lo}, {self.hi})"


def e_interval(terms=20):
    """
    Rational enclosure of Euler's number from the first ``terms`` terms of
    the exponential series; the tail is bounded by ``2/terms!``.
    """
    if terms < 2:
        raise ValueError("need at least two series terms")
    s = Fraction(0)
    for k in range(terms):
        s += Fraction(1, factorial(k))
    return RationalInterval(s, s + Fraction(2, factorial(terms)))


def sqrt_interval(q, bits=64):
    """Enclosure of ``sqrt(q)`` for rational ``q >= 0``, exact when ``q`` is a rational square."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("square root of a negative rational")
    p, r = q.numerator, q.denominator
    sp, sr = isqrt(p), isqrt(r)
    if sp * sp == p and sr * sr == r:
        return RationalInterval(Fraction(sp, sr))
    scale = 1 << bits
    # sqrt(p/r) = sqrt(p*r)/r
    n = p * r * scale * scale
    s = isqrt(n)
    lo = Fraction(s, scale * r)
    hi = Fraction(s + 1, scale * r)
    return RationalInterval(lo, hi)


def abs_interval(x, bits=64):
    """Enclosure of the modulus of an exact scalar."""
    if isinstance(x, GaussianRational) and x.im != 0:
        return sqrt_interval(x.abs2(), bits)
    return RationalInterval(abs(real_value(x)))
