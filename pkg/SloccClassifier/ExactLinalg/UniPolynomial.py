import attr
import typing as tp

from SloccClassifier.ExactLinalg.GaussianRational import GaussianRational, ZERO, ONE


def _normalizeCoefficients(coefficients) -> tp.Tuple[GaussianRational, ...]:
    coeffs = [GaussianRational.coerce(c) for c in coefficients]
    while coeffs and coeffs[-1].isZero():
        coeffs.pop()
    return tuple(coeffs)


@attr.s(frozen=True)
class UniPolynomial:
    """
    Univariate polynomial over Q(i), coefficients stored lowest degree first.
    """
    coefficients: tp.Tuple[GaussianRational, ...] = attr.ib(converter=_normalizeCoefficients)

    @classmethod
    def constant(cls, value) -> 'UniPolynomial':
        return cls((value,))

    @classmethod
    def fromRoots(cls, roots: tp.Iterable[tp.Any]) -> 'UniPolynomial':
        result = cls((ONE,))
        for r in roots:
            result = result * cls((-GaussianRational.coerce(r), ONE))
        return result

    @classmethod
    def interpolate(cls, xs: tp.Sequence[GaussianRational], ys: tp.Sequence[GaussianRational]) -> 'UniPolynomial':
        """ Newton divided differences; xs must be distinct. """
        n = len(xs)
        table = list(ys)
        newtonCoeffs = [table[0]]
        for level in range(1, n):
            table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(n - level)]
            newtonCoeffs.append(table[0])
        result = cls(())
        for k in reversed(range(n)):
            result = result * cls((-xs[k], ONE)) + cls((newtonCoeffs[k],))
        return result

    @property
    def degree(self) -> int:
        """ Degree; -1 for the zero polynomial. """
        return len(self.coefficients) - 1

    def isZero(self) -> bool:
        return not self.coefficients

    @property
    def leadingCoefficient(self) -> GaussianRational:
        return self.coefficients[-1] if self.coefficients else ZERO

    def __call__(self, x: GaussianRational) -> GaussianRational:
        acc = ZERO
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def evaluateComplex(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coefficients):
            acc = acc * z + c.toComplex()
        return acc

    def toComplexArray(self) -> tp.List[complex]:
        """ Coefficients highest degree first, as numpy.roots expects. """
        return [c.toComplex() for c in reversed(self.coefficients)]

    def __add__(self, other: 'UniPolynomial') -> 'UniPolynomial':
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return UniPolynomial([(a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO)
                              for i in range(n)])

    def __neg__(self) -> 'UniPolynomial':
        return UniPolynomial([-c for c in self.coefficients])

    def __sub__(self, other: 'UniPolynomial') -> 'UniPolynomial':
        return self + (-other)

    def __mul__(self, other: 'UniPolynomial') -> 'UniPolynomial':
        if self.isZero() or other.isZero():
            return UniPolynomial(())
        out = [ZERO] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a.isZero():
                continue
            for j, b in enumerate(other.coefficients):
                if not b.isZero():
                    out[i + j] = out[i + j] + a * b
        return UniPolynomial(out)

    def scale(self, factor) -> 'UniPolynomial':
        factor = GaussianRational.coerce(factor)
        return UniPolynomial([factor * c for c in self.coefficients])

    def divmod(self, divisor: 'UniPolynomial') -> tp.Tuple['UniPolynomial', 'UniPolynomial']:
        if divisor.isZero():
            raise ZeroDivisionError('Polynomial division by zero')
        remainder = list(self.coefficients)
        dDeg = divisor.degree
        leadInv = divisor.leadingCoefficient.inverse()
        quotient = [ZERO] * max(0, len(remainder) - dDeg)
        for k in range(len(remainder) - 1 - dDeg, -1, -1):
            coeff = remainder[k + dDeg] * leadInv
            quotient[k] = coeff
            if coeff.isZero():
                continue
            for j, d in enumerate(divisor.coefficients):
                remainder[k + j] = remainder[k + j] - coeff * d
        return UniPolynomial(quotient), UniPolynomial(remainder[:dDeg])

    def __floordiv__(self, divisor: 'UniPolynomial') -> 'UniPolynomial':
        return self.divmod(divisor)[0]

    def __mod__(self, divisor: 'UniPolynomial') -> 'UniPolynomial':
        return self.divmod(divisor)[1]

    def derivative(self) -> 'UniPolynomial':
        return UniPolynomial([c * k for k, c in enumerate(self.coefficients)][1:])

    def monic(self) -> 'UniPolynomial':
        if self.isZero():
            return self
        return self.scale(self.leadingCoefficient.inverse())

    def toString(self, var: str = 't') -> str:
        if self.isZero():
            return '0'
        terms = []
        for k in reversed(range(len(self.coefficients))):
            c = self.coefficients[k]
            if c.isZero():
                continue
            cStr = c.toString()
            if not c.isReal() and c.re != 0:
                cStr = '(%s)' % cStr
            if k == 0:
                terms.append(cStr)
                continue
            mono = var if k == 1 else '%s^%d' % (var, k)
            if c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append('-' + mono)
            else:
                terms.append('%s*%s' % (cStr, mono))
        return ' + '.join(terms).replace('+ -', '- ')

    def __str__(self):
        return self.toString()


def polyGcd(a: UniPolynomial, b: UniPolynomial) -> UniPolynomial:
    """ Monic greatest common divisor (zero if both inputs are zero). """
    while not b.isZero():
        a, b = b, a % b
    return a.monic()
