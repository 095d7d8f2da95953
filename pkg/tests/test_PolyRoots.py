from fractions import Fraction

import pytest

from SloccClassifier.Configuration import Tolerances
from SloccClassifier.Errors import IllConditionedError
from SloccClassifier.ExactLinalg import GaussianRational, UniPolynomial, polyRoots, squareFreeDecomposition, I
from SloccClassifier.ExactLinalg.PolyRoots import denominatorBound


def test_squareFreeDecomposition():
    p = UniPolynomial.fromRoots([1, 1, 2, 2, 2])
    assert squareFreeDecomposition(p) == [(UniPolynomial.fromRoots([1]), 2), (UniPolynomial.fromRoots([2]), 3)]
    q = UniPolynomial.fromRoots([0, 3]).scale(4)
    assert squareFreeDecomposition(q) == [(UniPolynomial.fromRoots([0, 3]), 1)]
    assert squareFreeDecomposition(UniPolynomial.constant(5)) == []


def test_exactRootsWithMultiplicities():
    p = UniPolynomial.fromRoots([Fraction(1, 3), Fraction(1, 3), -2, I, -I, GaussianRational(Fraction(1, 2), -1)])
    roots = polyRoots(p, Tolerances())
    assert all(r.isExact for r in roots)
    found = {r.value: r.multiplicity for r in roots}
    assert found == {GaussianRational(Fraction(1, 3)): 2, GaussianRational(-2): 1, I: 1, -I: 1,
                     GaussianRational(Fraction(1, 2), -1): 1}
    # sorted by (re, im)
    assert [r.value for r in roots] == sorted(found, key=lambda v: v.sortKey())


def test_irrationalRootsAreApproximate():
    p = UniPolynomial((-2, 0, 1)) * UniPolynomial.fromRoots([5])
    roots = polyRoots(p, Tolerances())
    assert [r.isExact for r in roots] == [True, False, False]
    assert roots[0].value == 5
    approx = sorted(r.toComplex().real for r in roots[1:])
    assert approx[0] == pytest.approx(-2 ** 0.5, abs=1e-9)
    assert approx[1] == pytest.approx(2 ** 0.5, abs=1e-9)


def test_repeatedIrrationalRoot():
    p = UniPolynomial((-3, 0, 1)) * UniPolynomial((-3, 0, 1))
    roots = polyRoots(p, Tolerances())
    assert [r.multiplicity for r in roots] == [2, 2]


def test_closeApproximateRootsAreIllConditioned():
    # roots sqrt(2) and sqrt(2) + 1e-8 cannot be told apart at the default cluster tolerance
    eps = Fraction(1, 10 ** 8)
    p = UniPolynomial((-2, 0, 1)) * UniPolynomial(((1 + eps) ** 2 * -2, 0, 1))
    with pytest.raises(IllConditionedError):
        polyRoots(p, Tolerances())


def test_zeroPolynomial():
    with pytest.raises(ValueError):
        polyRoots(UniPolynomial(()))


@pytest.mark.parametrize('count', [4, 8, 10])
def test_rootsWithLargeDenominators(count):
    expected = [GaussianRational(Fraction(j, 97)) for j in range(1, count + 1)]
    roots = polyRoots(UniPolynomial.fromRoots(expected), Tolerances())
    assert all(r.isExact for r in roots)
    assert [r.value for r in roots] == expected


def test_gaussianRootsWithLargeDenominators():
    expected = [GaussianRational(Fraction(j, 101), Fraction(2, 7919)) for j in range(1, 7)]
    expected += [GaussianRational(Fraction(-1, 9973)), GaussianRational(0, Fraction(5, 3))]
    p = UniPolynomial.fromRoots(expected + expected[:1])
    roots = polyRoots(p, Tolerances())
    assert all(r.isExact for r in roots)
    counts = {v: 1 for v in expected}
    counts[expected[0]] = 2
    assert {r.value: r.multiplicity for r in roots} == counts


def test_denominatorBound():
    p = UniPolynomial.fromRoots([Fraction(1, 6), Fraction(3, 4)])
    assert denominatorBound(p) == 24
    assert denominatorBound(UniPolynomial.fromRoots([I, 2])) == 1
    assert denominatorBound(UniPolynomial((-2, 0, 1))) == 1
