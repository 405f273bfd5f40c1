"""Exact scalars in the field Q(i, sqrt2).

A Scalar is r + s*sqrt2 + (u + v*sqrt2)*i with rational coordinates, kept
reduced at all times so equality is coordinate comparison.  The involution
(complex conjugation) fixes the real subfield Q(sqrt2), on which sign and
comparison are decided exactly.
"""

from __future__ import annotations

from fractions import Fraction

# Rational values throughout the package are stdlib Fractions: they are
# always reduced and carry a positive denominator.
Rational = Fraction

_RAT_TYPES = (int, Fraction)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational value: {x!r}")


class Scalar:
    """Element of Q(i, sqrt2), immutable and hashable."""

    __slots__ = ("r", "s", "u", "v")

    def __init__(self, r=0, s=0, u=0, v=0):
        object.__setattr__(self, "r", _frac(r))
        object.__setattr__(self, "s", _frac(s))
        object.__setattr__(self, "u", _frac(u))
        object.__setattr__(self, "v", _frac(v))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- construction helpers ------------------------------------------

    @staticmethod
    def of(x) -> "Scalar":
        """Coerce an int, Fraction or Scalar."""
        if isinstance(x, Scalar):
            return x
        return Scalar(_frac(x))

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not (self.r or self.s or self.u or self.v)

    def is_real(self) -> bool:
        return not (self.u or self.v)

    def is_rational(self) -> bool:
        return not (self.s or self.u or self.v)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"not a rational scalar: {self}")
        return self.r

    # -- field operations ------------------------------------------------

    def __add__(self, other):
        o = Scalar.of(other)
        return Scalar(self.r + o.r, self.s + o.s, self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.r, -self.s, -self.u, -self.v)

    def __sub__(self, other):
        return self + (-Scalar.of(other))

    def __rsub__(self, other):
        return Scalar.of(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, _RAT_TYPES):  # rational scaling, 4 mults not 16
            return Scalar(self.r * other, self.s * other,
                          self.u * other, self.v * other)
        o = Scalar.of(other)
        a, b, c, d = self.r, self.s, self.u, self.v
        e, f, g, h = o.r, o.s, o.u, o.v
        # (A + Bi)(C + Di) with A, B, C, D in Q(sqrt2); (x,y) codes x + y*sqrt2.
        re_r = a * e + 2 * b * f - (c * g + 2 * d * h)
        re_s = a * f + b * e - (c * h + d * g)
        im_r = a * g + 2 * b * h + c * e + 2 * d * f
        im_s = a * h + b * g + c * f + d * e
        return Scalar(re_r, re_s, im_r, im_s)

    __rmul__ = __mul__

    def conj(self) -> "Scalar":
        return Scalar(self.r, self.s, -self.u, -self.v)

    def inv(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("scalar inverse of zero")
        # 1/(A + Bi) = (A - Bi) / (A^2 + B^2), then invert in Q(sqrt2).
        num = self.conj()
        nr = self * num  # real and >= 0
        a, b = nr.r, nr.s
        den = a * a - 2 * b * b  # norm of a + b*sqrt2 down to Q
        return num * Scalar(a / den, -b / den)

    def __truediv__(self, other):
        return self * Scalar.of(other).inv()

    def __rtruediv__(self, other):
        return Scalar.of(other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, _RAT_TYPES):
            other = Scalar.of(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return (self.r, self.s, self.u, self.v) == (other.r, other.s, other.u, other.v)

    def __hash__(self):
        return hash((self.r, self.s, self.u, self.v))

    def __bool__(self):
        return not self.is_zero()

    def sign(self) -> int:
        """Exact sign of a real scalar r + s*sqrt2, in {-1, 0, +1}."""
        if not self.is_real():
            raise ValueError(f"sign of non-real scalar: {self}")
        r, s = self.r, self.s
        sr = (r > 0) - (r < 0)
        ss = (s > 0) - (s < 0)
        if sr == 0:
            return ss
        if ss == 0 or ss == sr:
            return sr
        # opposite signs: compare r^2 against 2 s^2 (sqrt2 is irrational, so
        # equality would force r = s = 0)
        d = r * r - 2 * s * s
        return sr * ((d > 0) - (d < 0))

    def __lt__(self, other):
        return (self - Scalar.of(other)).sign() < 0

    def __le__(self, other):
        return (self - Scalar.of(other)).sign() <= 0

    def __gt__(self, other):
        return (self - Scalar.of(other)).sign() > 0

    def __ge__(self, other):
        return (self - Scalar.of(other)).sign() >= 0

    # -- conversions -------------------------------------------------------

    def __complex__(self):
        rt2 = 2 ** 0.5
        return complex(float(self.r) + float(self.s) * rt2,
                       float(self.u) + float(self.v) * rt2)

    def __float__(self):
        if not self.is_real():
            raise ValueError(f"float of non-real scalar: {self}")
        return float(self.r) + float(self.s) * 2 ** 0.5

    # -- printing ----------------------------------------------------------

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        parts = []
        for coef, unit in ((self.r, ""), (self.s, "sqrt2"), (self.u, "i"), (self.v, "i*sqrt2")):
            if not coef:
                continue
            mag = -coef if coef < 0 else coef
            if unit and mag == 1:
                body = unit
            elif unit:
                body = f"{mag}*{unit}"
            else:
                body = str(mag)
            if not parts:
                parts.append(body if coef > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coef > 0 else f"- {body}")
        return " ".join(parts) if parts else "0"


ZERO = Scalar(0)
ONE = Scalar(1)
SQRT2 = Scalar(0, 1)
I = Scalar(0, 0, 1)
HALF = Scalar(Fraction(1, 2))
INV_SQRT2 = Scalar(0, Fraction(1, 2))  # 1/sqrt2 = sqrt2/2


def sign(x: Scalar) -> int:
    """Module-level alias for :meth:`Scalar.sign`."""
    return Scalar.of(x).sign()


def parse_rational(text: str) -> Fraction:
    """Parse 'p', 'p/q' or a decimal literal into an exact Fraction."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    if "." in text:
        whole, frac = text.split(".", 1)
        if not frac.isdigit() or not (whole.lstrip("+-").isdigit() or whole.lstrip("+-") == ""):
            raise ValueError(f"bad decimal literal: {text!r}")
        base = Fraction(int(whole) if whole.lstrip("+-") else 0)
        tail = Fraction(int(frac), 10 ** len(frac))
        return base - tail if text.lstrip().startswith("-") else base + tail
    return Fraction(int(text))
