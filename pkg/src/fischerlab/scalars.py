"""Exact coefficient fields: rationals and Gaussian rationals.

Field "Q" is served by fractions.Fraction, field "Qi" by GaussianRational,
a pair of Fractions (re, im).  Floating point never enters coefficient
arithmetic; floats appear only when callers evaluate polynomials at sampled
points.  All values are immutable and safe to share across threads.
"""

from __future__ import annotations

from fractions import Fraction

FIELD_Q = "Q"
FIELD_QI = "Qi"
FIELDS = (FIELD_Q, FIELD_QI)


def validate_field(field):
    if field not in FIELDS:
        raise ValueError(f"unknown field {field!r}; expected one of {FIELDS}")


class GaussianRational:
    """An element a + b*i of the Gaussian rationals, with exact a and b.

    Arithmetic accepts int and Fraction operands (the natural subfield
    action); equality with anything but another GaussianRational is False.
    Mixing whole polynomials or matrices across fields is rejected at the
    Poly / ExactMatrix level.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _coerce(value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
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
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / norm,
            (self.im * o.re - self.re * o.im) / norm,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return GaussianRational(1) / self ** (-exponent)
        result = GaussianRational(1)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


GAUSSIAN_I = GaussianRational(0, 1)


def as_scalar(value, field):
    """Coerce a value into the given field, loudly rejecting narrowing.

    Field Q accepts int and Fraction; a GaussianRational is refused even when
    its imaginary part is zero, so real-coefficient mode never silently
    absorbs complex data.
    """
    validate_field(field)
    if field == FIELD_Q:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        raise ValueError(f"field Q cannot hold {value!r}")
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    raise ValueError(f"field Qi cannot hold {value!r}")


def scalar_zero(field):
    return as_scalar(0, field)


def scalar_one(field):
    return as_scalar(1, field)


def format_fraction(value):
    """Decimal string "n" or "n/d" for a Fraction."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _fraction_to_json(value):
    return {"num": str(value.numerator), "den": str(value.denominator)}


def _fraction_from_json(obj):
    return Fraction(int(obj["num"]), int(obj["den"]))


def scalar_to_json(value):
    """JSON form with integers as decimal strings (bit-exact, unbounded)."""
    if isinstance(value, Fraction):
        return _fraction_to_json(value)
    if isinstance(value, GaussianRational):
        return {"re": _fraction_to_json(value.re), "im": _fraction_to_json(value.im)}
    raise ValueError(f"not a scalar: {value!r}")


def scalar_from_json(obj, field):
    validate_field(field)
    if field == FIELD_Q:
        return _fraction_from_json(obj)
    return GaussianRational(_fraction_from_json(obj["re"]), _fraction_from_json(obj["im"]))
