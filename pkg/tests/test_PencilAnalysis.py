import itertools

import pytest
from hypothesis import given, settings

from SloccClassifier.Canonicalizer import BShape, jordanMatrix
from SloccClassifier.Errors import NotTrueEntangledError
from SloccClassifier.ExactLinalg import ExactMatrix, GaussianRational
from SloccClassifier.PencilAnalysis import (ProjPoint, sweepDirections, genericRank, singularPoints, minimalIndices,
                                            localSegre, pencilProfile)
from SloccClassifier.PencilAnalysis import _segreFromRankSequence
from SloccClassifier.StateModel import MatrixPair, applyIlo

from conftest import singularPair
from strategies import iloTriples


def locations(profile):
    return [(p.location.toString(), p.segre) for p in profile.points]


def test_sweepDirections():
    assert list(itertools.islice(sweepDirections(), 8)) == [
        (1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (1, -2), (2, 1), (2, -1)]


@pytest.mark.parametrize('ranks, segre', [
    ([3, 1, 0], (2, 1)),
    ([3, 2, 1, 0], (3,)),
    ([2, 0], (1, 1)),
    ([4, 2, 0], (2, 2)),
])
def test_segreFromRankSequence(ranks, segre):
    assert _segreFromRankSequence(ranks) == segre


def test_projPoint():
    inf = ProjPoint.infinity()
    half = ProjPoint.finite('1/2')
    assert inf.isInfinity and inf.toString() == 'inf'
    assert half.homogeneous() == (GaussianRational.fromString('1/2'), 1)
    assert half.direction() == (GaussianRational.fromString('1/2'), -1)
    assert inf.direction() == (1, 0)
    assert sorted([inf, half, ProjPoint.finite(0)], key=ProjPoint.sortKey) == [ProjPoint.finite(0), half, inf]


def test_ghzProfile(ghz):
    profile = pencilProfile(ghz)
    assert (profile.genericRank, profile.minRank) == (2, 1)
    assert locations(profile) == [('0', (1,)), ('inf', (1,))]
    assert profile.isFullRank and profile.isExact


def test_wProfile(w):
    profile = pencilProfile(w)
    assert (profile.genericRank, profile.minRank) == (2, 1)
    assert locations(profile) == [('0', (2,))]


def test_jordanStructureAtPoints():
    # J = J2(0) + (1) + (1)
    j = jordanMatrix([(GaussianRational(1), 1), (GaussianRational(1), 1), (GaussianRational(0), 2)])
    pair = MatrixPair(ExactMatrix.identity(4), j)
    points = singularPoints(pair)
    assert [(p.location.toString(), p.segre, p.rankAt) for p in points] == [('0', (2,), 3), ('1', (1, 1), 2)]
    assert pencilProfile(pair).minRank == 2


def test_pointsAreEigenvaluesOfJ():
    j = jordanMatrix([(GaussianRational(5), 1), (GaussianRational(0), 2), (GaussianRational(0), 1)])
    points = singularPoints(MatrixPair(ExactMatrix.identity(4), j))
    assert [(p.location.toString(), p.segre, p.rankAt) for p in points] == [('0', (2, 1), 2), ('5', (1,), 3)]


def test_infinityWhenFirstSliceIsSingular():
    pair = MatrixPair(ExactMatrix.diagonal([1, 1, 0]), ExactMatrix.diagonal([3, 0, 1]))
    points = singularPoints(pair)
    assert [(p.location.toString(), p.segre) for p in points] == [('0', (1,)), ('3', (1,)), ('inf', (1,))]


def test_notTrueEntangled(productState):
    with pytest.raises(NotTrueEntangledError) as info:
        pencilProfile(productState)
    assert info.value.exitCode == 1
    assert info.value.ranks == (1, 1, 1)


@pytest.mark.parametrize('traces, cols, rows', [
    (('',), (1,), (1,)),
    (('c',), (2,), (1,)),
    (('r',), (1,), (2,)),
    (('cr', ''), (2, 1), (2, 1)),
])
def test_minimalIndicesOfSingularBlocks(traces, cols, rows):
    pair = singularPair(*traces)
    assert genericRank(pair) == pair.n - len(traces)
    assert minimalIndices(pair) == (cols, rows)
    assert BShape.fromMinimalIndices(cols, rows) == BShape(traces)


def test_regularPartOfSingularPencil():
    shape = BShape(('',))
    j = jordanMatrix([(GaussianRational(2), 1), (GaussianRational(0), 2)])
    pair = MatrixPair(ExactMatrix.blockDiagonal(ExactMatrix.identity(3), shape.lambdaMatrix()),
                      ExactMatrix.blockDiagonal(j, shape.matrix()))
    profile = pencilProfile(pair)
    assert (profile.genericRank, profile.columnIndices, profile.rowIndices) == (5, (1,), (1,))
    assert locations(profile) == [('0', (2,)), ('2', (1,))]
    assert profile.minRank == 4
    assert localSegre(pair, ProjPoint.finite(0), 5) == (2,)
    assert localSegre(pair, ProjPoint.finite(2), 5) == (1,)
    assert localSegre(pair, ProjPoint.finite(1), 5) == ()
    assert localSegre(pair, ProjPoint.infinity(), 5) == ()


@settings(max_examples=10, deadline=None)
@given(iloTriples(4))
def test_profileInvariants(op):
    pair = MatrixPair(ExactMatrix.identity(4),
                      jordanMatrix([(GaussianRational(3), 1), (GaussianRational(0), 2), (GaussianRational(0), 1)]))
    before = pencilProfile(pair)
    after = pencilProfile(applyIlo(pair, op))
    assert (after.genericRank, after.minRank) == (before.genericRank, before.minRank)
    assert sorted(p.segre for p in after.points) == sorted(p.segre for p in before.points)


@settings(max_examples=10, deadline=None)
@given(iloTriples(4))
def test_singularProfileInvariants(op):
    pair = singularPair('c')
    after = pencilProfile(applyIlo(pair, op))
    assert (after.genericRank, after.minRank, after.columnIndices, after.rowIndices) == (3, 3, (2,), (1,))
    assert after.points == ()
