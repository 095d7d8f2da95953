import attr
import typing as tp

from SloccClassifier.Errors import IllConditionedError

# values closer than tol are the same; farther than GUARD_FACTOR * tol are distinct
GUARD_FACTOR = 100.0


@attr.s(auto_attribs=True, frozen=True)
class ApproxComplex:
    """
    A complex number known only to within an absolute tolerance.
    """
    re: float
    im: float
    tol: float

    @classmethod
    def fromComplex(cls, value: complex, tol: float) -> 'ApproxComplex':
        value = complex(value)
        return cls(re=value.real, im=value.imag, tol=tol)

    def toComplex(self) -> complex:
        return complex(self.re, self.im)

    def sortKey(self) -> tp.Tuple[float, float]:
        return self.re, self.im

    def toString(self) -> str:
        return '~%.10g%+.10gi' % (self.re, self.im)

    def __str__(self):
        return self.toString()

    def isCloseTo(self, other: tp.Union['ApproxComplex', complex]) -> bool:
        """
        Decide whether two values coincide.

        Raises IllConditionedError when the distance sits between the tolerance and the guard band.
        """
        if isinstance(other, ApproxComplex):
            otherValue = other.toComplex()
            tol = max(self.tol, other.tol)
        else:
            otherValue = complex(other)
            tol = self.tol
        dist = abs(self.toComplex() - otherValue)
        if dist <= tol:
            return True
        if dist > GUARD_FACTOR * tol:
            return False
        raise IllConditionedError('Values %s and %s differ by %.3g, inside guard band (%.3g, %.3g]'
                                  % (self, otherValue, dist, tol, GUARD_FACTOR * tol))

    def isZero(self) -> bool:
        return self.isCloseTo(0j)
