"""
Exact arithmetic over the Gaussian rationals Q(i).
"""
from fractions import Fraction
import attr
import math
import re
import typing as tp


_numberRegex = r'[+-]?\d+(?:/\d+)?'
_complexRegex = re.compile(
    r'^(?:(?P<re>%s)(?P<im>[+-](?:\d+(?:/\d+)?)?)i|(?P<imOnly>[+-]?(?:\d+(?:/\d+)?)?)i|(?P<reOnly>%s))$'
    % (_numberRegex, _numberRegex))


def _toFraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError('Cannot convert %r exactly to a rational' % (value,))


@attr.s(frozen=True, slots=True, eq=False, repr=False)
class GaussianRational:
    re: Fraction = attr.ib(default=Fraction(0), converter=_toFraction)
    im: Fraction = attr.ib(default=Fraction(0), converter=_toFraction)

    @classmethod
    def coerce(cls, value) -> 'GaussianRational':
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, str):
            return cls.fromString(value)
        raise TypeError('Cannot convert %r to an exact Gaussian rational' % (value,))

    @classmethod
    def fromString(cls, s: str) -> 'GaussianRational':
        """
        Parse forms like ``3``, ``-1/2``, ``i``, ``-2/3i`` and ``1/2-3/4i``.
        """
        text = s.strip().replace(' ', '').replace('*', '')
        match = _complexRegex.match(text)
        if match is None:
            raise ValueError('Not a Gaussian rational: %r' % s)
        if match.group('reOnly') is not None:
            return cls(Fraction(match.group('reOnly')))
        if match.group('imOnly') is not None:
            return cls(0, _imaginaryPart(match.group('imOnly')))
        return cls(Fraction(match.group('re')), _imaginaryPart(match.group('im')))

    @classmethod
    def fromFloat(cls, value: complex, maxDenominator: int = 10**9) -> 'GaussianRational':
        """ Nearest Gaussian rational with bounded denominators; used for approximate results only. """
        value = complex(value)
        return cls(Fraction(value.real).limit_denominator(maxDenominator),
                   Fraction(value.imag).limit_denominator(maxDenominator))

    def toString(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.im == 1:
            imStr = 'i'
        elif self.im == -1:
            imStr = '-i'
        else:
            imStr = '%si' % self.im
        if self.re == 0:
            return imStr
        if not imStr.startswith('-'):
            imStr = '+' + imStr
        return '%s%s' % (self.re, imStr)

    def __str__(self):
        return self.toString()

    def __repr__(self):
        return 'GaussianRational(%s)' % self.toString()

    def toComplex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def sortKey(self) -> tp.Tuple[Fraction, Fraction]:
        return self.re, self.im

    def isZero(self) -> bool:
        return self.re == 0 and self.im == 0

    def isReal(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.isZero()

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

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        other = _coerceOperand(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerceOperand(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerceOperand(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerceOperand(other)
        if other is None:
            return NotImplemented
        if self.im == 0 and other.im == 0:
            return GaussianRational(self.re * other.re)
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conjugate(self) -> 'GaussianRational':
        return GaussianRational(self.re, -self.im)

    def normSquared(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> 'GaussianRational':
        if self.isZero():
            raise ZeroDivisionError('Inverse of zero')
        if self.im == 0:
            return GaussianRational(1 / self.re)
        norm = self.normSquared()
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        other = _coerceOperand(other)
        if other is None:
            return NotImplemented
        if other.im == 0:
            if other.re == 0:
                raise ZeroDivisionError('Division by zero')
            return GaussianRational(self.re / other.re, self.im / other.re)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerceOperand(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def denominatorLcm(self) -> int:
        a, b = self.re.denominator, self.im.denominator
        return a * b // math.gcd(a, b)


def _imaginaryPart(token: str) -> Fraction:
    if token in ('', '+'):
        return Fraction(1)
    if token == '-':
        return Fraction(-1)
    return Fraction(token)


def _coerceOperand(value) -> tp.Optional[GaussianRational]:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    return None


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
