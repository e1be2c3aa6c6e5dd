"""Exact coefficient fields: the rationals and rational functions in one parameter ``s``.

Rationals are ``gmpy2.mpq`` values. Elements of Q(s) are :class:`RatFunc`
instances kept in lowest terms with a monic denominator, so equality is a
structural comparison.
"""

from fractions import Fraction

import flint
from gmpy2 import mpq, mpz

from ..errors import InputError

_RATIONAL_TYPES = (int, type(mpz(0)), type(mpq(0)), Fraction)


def to_mpq(value):
    """Coerce an int/Fraction/mpq/fmpq or a ``"p/q"`` string to ``mpq``."""
    if isinstance(value, str):
        return mpq(Fraction(value.strip()))
    if isinstance(value, flint.fmpq):
        return mpq(int(value.p), int(value.q))
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    return mpq(value)


def _fmpq(value):
    v = to_mpq(value)
    return flint.fmpq(int(v.numerator), int(v.denominator))


def _poly_str(p, var):
    # fmpq_poly prints with "x"; rename to the parameter name
    return str(p).replace("x", var)


class RatFunc:
    """An element num/den of Q(s), with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _canonical=False):
        if not isinstance(num, flint.fmpq_poly):
            num = flint.fmpq_poly([_fmpq(num)])
        if den is None:
            den = flint.fmpq_poly([1])
        elif not isinstance(den, flint.fmpq_poly):
            den = flint.fmpq_poly([_fmpq(den)])
        if not _canonical:
            if den == 0:
                raise ZeroDivisionError("rational function with zero denominator")
            if num == 0:
                den = flint.fmpq_poly([1])
            elif den.degree() > 0:
                g = num.gcd(den)
                if g.degree() > 0:
                    num = num // g
                    den = den // g
            lead = den.coeffs()[-1]
            if lead != 1:
                num = num / lead
                den = den / lead
        self.num = num
        self.den = den

    @classmethod
    def s(cls):
        return cls(flint.fmpq_poly([0, 1]), _canonical=True)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, _RATIONAL_TYPES) or isinstance(other, flint.fmpq):
            return RatFunc(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            if self.den.degree() == 0:
                return RatFunc(self.num + o.num, self.den, _canonical=True)
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.degree() == 0 and o.den.degree() == 0:
            # both denominators are 1 (monic constants)
            return RatFunc(self.num * o.num, self.den, _canonical=True)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num == 0:
            raise ZeroDivisionError("division by zero in Q(s)")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _canonical=True)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den.degree() == 0 and self.num.degree() <= 0:
            return hash(self.constant_value())
        return hash((tuple(str(c) for c in self.num.coeffs()), tuple(str(c) for c in self.den.coeffs())))

    def __bool__(self):
        return self.num != 0

    def is_constant(self):
        return self.num.degree() <= 0 and self.den.degree() == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        c = self.num.coeffs()
        return to_mpq(c[0]) if c else mpq(0)

    def evaluate(self, value):
        """Specialize s to a rational value; raises if the denominator vanishes."""
        v = _fmpq(value)
        d = self.den(v)
        if d == 0:
            raise ZeroDivisionError(f"denominator {self.den} vanishes at s={value}")
        return to_mpq(self.num(v) / d)

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        n = _poly_str(self.num, "s")
        if self.den == 1:
            return n
        d = _poly_str(self.den, "s")
        if self.num.degree() > 0 and len([c for c in self.num.coeffs() if c != 0]) > 1:
            n = f"({n})"
        if self.den.degree() > 0 and len([c for c in self.den.coeffs() if c != 0]) > 1:
            d = f"({d})"
        return f"{n}/{d}"


class Field:
    """Descriptor for one of the two supported coefficient fields."""

    def __init__(self, name, param=None):
        self.name = name
        self.param = param

    @property
    def zero(self):
        return self.convert(0)

    @property
    def one(self):
        return self.convert(1)

    def convert(self, value):
        if self.param is None:
            if isinstance(value, RatFunc):
                return value.constant_value()
            return to_mpq(value)
        if isinstance(value, RatFunc):
            return value
        return RatFunc(value)

    def parameter(self):
        if self.param is None:
            raise ValueError(f"field {self.name} has no parameter")
        return RatFunc.s()

    def __eq__(self, other):
        return isinstance(other, Field) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name


QQ = Field("Q")
QQs = Field("Q(s)", param="s")


def field_from_name(name):
    """Parse a field descriptor; only ``Q`` and ``Q(s)`` are accepted."""
    key = name.replace(" ", "")
    if key in ("Q", "QQ"):
        return QQ
    if key in ("Q(s)", "QQ(s)"):
        return QQs
    raise InputError(f"unsupported coefficient field {name!r}: only Q and Q(s) are available")


def format_scalar(c):
    if isinstance(c, RatFunc):
        return str(c)
    c = to_mpq(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"
