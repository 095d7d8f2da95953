"""
Polynomials attached to a pencil a + t*b: its determinant and the gcd of its k x k minors.
"""
import itertools
import logging

from SloccClassifier.ExactLinalg.ExactMatrix import ExactMatrix, determinant
from SloccClassifier.ExactLinalg.GaussianRational import GaussianRational
from SloccClassifier.ExactLinalg.UniPolynomial import UniPolynomial, polyGcd

logger = logging.getLogger(__name__)


def _samplePencil(a: ExactMatrix, b: ExactMatrix, numPoints: int):
    ts = [GaussianRational(k) for k in range(numPoints)]
    return ts, [a + b.scale(t) for t in ts]


def pencilDetPoly(a: ExactMatrix, b: ExactMatrix) -> UniPolynomial:
    """ det(a + t*b) recovered exactly from N+1 evaluations. """
    if a.shape != b.shape or not a.isSquare:
        raise ValueError('Pencil needs two square matrices of equal size')
    n = a.numRows
    ts, samples = _samplePencil(a, b, n + 1)
    return UniPolynomial.interpolate(ts, [determinant(m) for m in samples])


def minorsGcdPoly(a: ExactMatrix, b: ExactMatrix, k: int) -> UniPolynomial:
    """
    Monic gcd of all k x k minors of a + t*b (zero polynomial if they all vanish identically).
    """
    if k == 0:
        return UniPolynomial.constant(1)
    ts, samples = _samplePencil(a, b, k + 1)
    gcd = UniPolynomial(())
    for rowIdx in itertools.combinations(range(a.numRows), k):
        for colIdx in itertools.combinations(range(a.numCols), k):
            values = [determinant(m.submatrix(rowIdx, colIdx)) for m in samples]
            minor = UniPolynomial.interpolate(ts, values)
            if minor.isZero():
                continue
            gcd = polyGcd(gcd, minor)
            if gcd.degree == 0:
                return gcd
    logger.debug('gcd of %d x %d minors: %s', k, k, gcd)
    return gcd
