from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from SloccClassifier.ExactLinalg import (ExactMatrix, GaussianRational, UniPolynomial, polyGcd, pencilDetPoly,
                                         minorsGcdPoly, I)

from strategies import gaussianRationals

polynomials = st.lists(gaussianRationals(), min_size=0, max_size=5).map(UniPolynomial)


def linear(root) -> UniPolynomial:
    return UniPolynomial((-GaussianRational.coerce(root), 1))


def test_normalizationAndDegree():
    assert UniPolynomial((1, 2, 0, 0)).degree == 1
    assert UniPolynomial(()).degree == -1
    assert UniPolynomial((0,)).isZero()
    assert UniPolynomial.fromRoots([1, 2]) == UniPolynomial((2, -3, 1))


@settings(max_examples=50, deadline=None)
@given(polynomials, polynomials.filter(lambda p: not p.isZero()))
def test_divmod(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(st.lists(gaussianRationals(), min_size=1, max_size=5, unique=True), st.data())
def test_interpolate(xs, data):
    ys = [data.draw(gaussianRationals()) for _ in xs]
    p = UniPolynomial.interpolate(xs, ys)
    assert p.degree < len(xs)
    assert [p(x) for x in xs] == ys


def test_gcd():
    a = UniPolynomial.fromRoots([1, 2, I])
    b = UniPolynomial.fromRoots([1, 3, I]).scale(5)
    assert polyGcd(a, b) == UniPolynomial.fromRoots([1, I])
    assert polyGcd(a, UniPolynomial.constant(7)) == UniPolynomial.constant(1)
    assert polyGcd(UniPolynomial(()), b) == b.monic()


def test_derivativeAndString():
    p = UniPolynomial((1, 0, 3))
    assert p.derivative() == UniPolynomial((0, 6))
    assert p.toString() == '3*t^2 + 1'
    assert UniPolynomial((0, -1)).toString() == '-t'
    assert UniPolynomial((Fraction(1, 2), 0, 0, 1)).toString('x') == 'x^3 + 1/2'


def test_pencilDeterminant():
    a = ExactMatrix.identity(2)
    b = ExactMatrix.diagonal([1, 2])
    assert pencilDetPoly(a, b) == UniPolynomial((1, 3, 2))
    # degree drops when the second matrix is singular
    assert pencilDetPoly(a, ExactMatrix.diagonal([0, 2])).degree == 1


def test_minorsGcd():
    zero = ExactMatrix.zeros(2)
    eye = ExactMatrix.identity(2)
    assert minorsGcdPoly(zero, eye, 1) == UniPolynomial((0, 1))
    assert minorsGcdPoly(zero, eye, 2) == UniPolynomial((0, 0, 1))
    ghzFirst = ExactMatrix.diagonal([1, 0])
    ghzSecond = ExactMatrix.diagonal([0, 1])
    assert minorsGcdPoly(ghzFirst, ghzSecond, 1) == UniPolynomial.constant(1)
    assert minorsGcdPoly(zero, zero, 1).isZero()
