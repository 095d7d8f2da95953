from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from SloccClassifier.Errors import SingularMatrixError
from SloccClassifier.ExactLinalg import (ExactMatrix, GaussianRational, ZERO, determinant, invert, kernelBasis,
                                         rankExact, solve)
from SloccClassifier.ExactLinalg.ExactMatrix import applyToVector

from strategies import exactMatrices, gaussianIntegers


def toSympy(m: ExactMatrix) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(v.re.numerator, v.re.denominator)
                          + sympy.I * sympy.Rational(v.im.numerator, v.im.denominator) for v in row]
                         for row in m.rows])


def scalarToSympy(v: GaussianRational):
    return sympy.Rational(v.re.numerator, v.re.denominator) + sympy.I * sympy.Rational(v.im.numerator, v.im.denominator)


lowRank = st.integers(1, 4).flatmap(
    lambda n: st.tuples(exactMatrices(n, 2), exactMatrices(2, n)).map(lambda ab: ab[0] @ ab[1]))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: exactMatrices(n)))
def test_determinantMatchesSympy(m):
    assert sympy.expand(toSympy(m).det() - scalarToSympy(determinant(m))) == 0


@settings(max_examples=40, deadline=None)
@given(st.one_of(lowRank, st.integers(1, 4).flatmap(lambda n: exactMatrices(n, n + 1))))
def test_rankMatchesSympy(m):
    assert rankExact(m) == toSympy(m).rank(simplify=True)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: exactMatrices(n)))
def test_inverse(m):
    if determinant(m).isZero():
        with pytest.raises(SingularMatrixError):
            invert(m)
        return
    eye = ExactMatrix.identity(m.numRows)
    assert m @ m.inverse() == eye
    assert m.inverse() @ m == eye


@settings(max_examples=40, deadline=None)
@given(st.one_of(lowRank, st.integers(1, 4).flatmap(lambda n: exactMatrices(n, n + 2))))
def test_kernelBasis(m):
    basis = kernelBasis(m)
    assert len(basis) == m.numCols - m.rank()
    for v in basis:
        assert all(x.isZero() for x in applyToVector(m, v))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(exactMatrices(n), exactMatrices(n, 2))))
def test_solveConsistentSystem(args):
    m, x = args
    rhs = m @ x
    assert m @ solve(m, rhs) == rhs


def test_solveInconsistent():
    m = ExactMatrix.fromRows([[1, 0], [0, 0]])
    with pytest.raises(SingularMatrixError):
        solve(m, ExactMatrix.fromRows([[1], [1]]))


def test_constructors():
    a = ExactMatrix.fromRows([[1, 2], [3, 4]])
    b = ExactMatrix.identity(1)
    d = ExactMatrix.blockDiagonal(a, b)
    assert d.shape == (3, 3)
    assert d[2, 2] == 1 and d[0, 2] == 0 and d[1, 1] == 4
    assert a.transpose() == ExactMatrix.fromRows([[1, 3], [2, 4]])
    assert ExactMatrix.fromRows([['i', 0], [0, 1]]).adjoint() == ExactMatrix.fromRows([['-i', 0], [0, 1]])
    assert a.trace() == 5
    assert a.power(2) == a @ a
    assert ExactMatrix.fromColumns([[1, 3], [2, 4]], 2) == a
    assert a.withEntry(0, 0, 7)[0, 0] == 7
    assert (a - a).isZero()
    assert a.scale(0) == ExactMatrix.zeros(2)
    with pytest.raises(ValueError):
        ExactMatrix([[1, 2], [3]])
    with pytest.raises(ValueError):
        a @ ExactMatrix.identity(3)


def test_determinantWithZeroPivots():
    m = ExactMatrix.fromRows([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    assert determinant(m) == 1
    m = ExactMatrix.fromRows([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    assert determinant(m) == -1
    assert determinant(ExactMatrix.fromRows([[1, 2], [2, 4]])) == ZERO


def test_numpyRoundTrip():
    m = ExactMatrix.fromRows([['1/2', '-i'], [3, '2+i']])
    assert ExactMatrix.fromNumpy(m.toNumpy()) == m


@pytest.mark.parametrize('rows, rank', [
    ([[0, 0, 0], [0, 0, 1], [1, 0, 0]], 2),
    ([[0, 2, 4, 1], [0, 1, 2, 0], [0, 3, 6, 1]], 2),
    ([[10**12, 1], [10**12 + 1, Fraction(10**12 + 1, 10**12)]], 1),
    ([[0, 0], [0, 0]], 0),
])
def test_rankWithSkippedColumns(rows, rank):
    assert rankExact(ExactMatrix.fromRows(rows)) == rank


def test_rankIsFractionFree(monkeypatch):
    import importlib
    module = importlib.import_module('SloccClassifier.ExactLinalg.ExactMatrix')
    modes = []
    eliminate = module._eliminate

    def spy(rows, numCols, fractionFree=True):
        modes.append(fractionFree)
        return eliminate(rows, numCols, fractionFree)

    monkeypatch.setattr(module, '_eliminate', spy)
    assert rankExact(ExactMatrix.fromRows([[1, 2], [3, 4]])) == 2
    assert modes == [True]
