"""
Roots of polynomials over Q(i) with exact multiplicities.

Multiplicities come from an exact squarefree decomposition. Roots inside Q(i) are recovered
exactly: a numeric root is refined by exact Newton steps, replaced by the nearest fraction whose
denominator respects the bound set by the leading coefficient, and kept only if it annihilates
the polynomial. Anything else is reported as an approximate value.
"""
import attr
import cmath
import itertools
import math
import logging
import numpy as np
import typing as tp
from fractions import Fraction

from SloccClassifier.Configuration.Tolerances import Tolerances
from SloccClassifier.Errors import IllConditionedError
from SloccClassifier.ExactLinalg.ApproxComplex import ApproxComplex
from SloccClassifier.ExactLinalg.GaussianRational import GaussianRational, ONE
from SloccClassifier.ExactLinalg.UniPolynomial import UniPolynomial, polyGcd

logger = logging.getLogger(__name__)

NEWTON_STEPS = 4
# extra binary digits beyond twice the denominator bound
GUARD_BITS = 16
MAX_REFINE_STEPS = 64


@attr.s(auto_attribs=True, frozen=True)
class PolyRoot:
    value: tp.Union[GaussianRational, ApproxComplex]
    multiplicity: int

    @property
    def isExact(self) -> bool:
        return isinstance(self.value, GaussianRational)

    def toComplex(self) -> complex:
        return self.value.toComplex()


def squareFreeDecomposition(p: UniPolynomial) -> tp.List[tp.Tuple[UniPolynomial, int]]:
    """
    Yun's algorithm: monic pairwise coprime squarefree factors with their multiplicities.
    """
    if p.degree < 1:
        return []
    factors = []
    dp = p.derivative()
    a = polyGcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    multiplicity = 1
    while b.degree > 0:
        a = polyGcd(b, d)
        if a.degree > 0:
            factors.append((a, multiplicity))
        b = b // a
        c = d // a
        d = c - b.derivative()
        multiplicity += 1
    return factors


def _denominatorLcm(p: UniPolynomial) -> int:
    lcm = 1
    for c in p.coefficients:
        for den in (c.re.denominator, c.im.denominator):
            lcm = lcm * den // math.gcd(lcm, den)
    return lcm


def denominatorBound(f: UniPolynomial) -> int:
    """
    Common bound on the denominators of the real and imaginary parts of every root of f in Q(i).

    With coefficients cleared to Gaussian integers and leading coefficient a, a*r is a Gaussian
    integer for each root r, so the parts of r have denominators dividing |a|^2 (|a| when a is real).
    """
    scale = _denominatorLcm(f)
    ints = [(int(c.re * scale), int(c.im * scale)) for c in f.coefficients]
    content = 0
    for re, im in ints:
        content = math.gcd(content, re, im)
    re, im = (v // content for v in ints[-1])
    return abs(re) if im == 0 else re * re + im * im


def _roundTo(x: GaussianRational, scale: int) -> GaussianRational:
    return GaussianRational(Fraction(round(x.re * scale), scale), Fraction(round(x.im * scale), scale))


def _liftRoot(f: UniPolynomial, df: UniPolynomial, z: complex, bound: int) -> tp.Optional[GaussianRational]:
    """
    The root of f in Q(i) that Newton's method reaches from z, or None.

    Newton steps run in exact arithmetic, rounded to a fixed binary precision fine enough that
    the nearest fraction with denominator at most bound is the only candidate left to test.
    """
    if not cmath.isfinite(z):
        return None
    scale = 1 << (2 * bound.bit_length() + GUARD_BITS)
    x = _roundTo(GaussianRational(Fraction(z.real), Fraction(z.imag)), scale)
    for _ in range(MAX_REFINE_STEPS):
        slope = df(x)
        if slope.isZero():
            break
        step = f(x) / slope
        x = _roundTo(x - step, scale)
        if abs(step.re) * scale < 1 and abs(step.im) * scale < 1:
            break
    candidate = GaussianRational(x.re.limit_denominator(bound), x.im.limit_denominator(bound))
    return candidate if f(candidate).isZero() else None


def _exactRootsOfSquarefree(f: UniPolynomial) -> tp.Tuple[tp.List[GaussianRational], UniPolynomial]:
    """
    Peel off the roots of a monic squarefree factor that lie in Q(i).

    Numeric roots only seed the search; every root returned has been checked by exact substitution.
    """
    exact = []
    while f.degree >= 1:
        if f.degree == 1:
            exact.append(-f.coefficients[0] / f.coefficients[1])
            f = UniPolynomial.constant(1)
            break
        bound = denominatorBound(f)
        df = f.derivative()
        found = None
        for z in np.roots(f.toComplexArray()):
            found = _liftRoot(f, df, complex(z), bound)
            if found is not None:
                break
        if found is None:
            break
        exact.append(found)
        f = f // UniPolynomial((-found, ONE))
    return exact, f


def _polish(f: UniPolynomial, z: complex) -> complex:
    df = f.derivative()
    for _ in range(NEWTON_STEPS):
        slope = df.evaluateComplex(z)
        if slope == 0:
            break
        z = z - f.evaluateComplex(z) / slope
    return z


def polyRoots(p: UniPolynomial, tol: tp.Optional[Tolerances] = None) -> tp.List[PolyRoot]:
    """
    Distinct roots of p with exact multiplicities, exact roots first.
    """
    if p.isZero():
        raise ValueError('Roots of the zero polynomial are undefined')
    if tol is None:
        tol = Tolerances.fromConfiguration()
    exactRoots: tp.List[PolyRoot] = []
    approxRoots: tp.List[PolyRoot] = []
    for factor, multiplicity in squareFreeDecomposition(p):
        exact, rest = _exactRootsOfSquarefree(factor)
        exactRoots.extend(PolyRoot(value=r, multiplicity=multiplicity) for r in exact)
        if rest.degree < 1:
            continue
        coeffNorm = float(np.linalg.norm(rest.toComplexArray()))
        for z in np.roots(rest.toComplexArray()):
            z = _polish(rest, complex(z))
            residual = abs(rest.evaluateComplex(z))
            if residual > tol.root * max(1.0, coeffNorm) * 10:
                raise IllConditionedError('Root %s of %s has residual %.3g' % (z, rest, residual))
            approxRoots.append(PolyRoot(value=ApproxComplex.fromComplex(z, tol.cluster), multiplicity=multiplicity))
        logger.debug('Factor %s (multiplicity %d) has %d roots outside Q(i)', rest, multiplicity, rest.degree)

    allRoots = exactRoots + approxRoots
    if approxRoots:
        for r1, r2 in itertools.combinations(allRoots, 2):
            if abs(r1.toComplex() - r2.toComplex()) < tol.cluster:
                raise IllConditionedError('Distinct roots %s and %s are closer than %.3g'
                                          % (r1.value, r2.value, tol.cluster))

    exactRoots.sort(key=lambda r: r.value.sortKey())
    approxRoots.sort(key=lambda r: r.value.sortKey())
    return exactRoots + approxRoots
