import pytest
from hypothesis import given, settings, strategies as st

from SloccClassifier.Canonicalizer import BShape, jordanDecomposition, normalizeFirstSlice, peelSingularPart
from SloccClassifier.Errors import NotTrueEntangledError, SingularMatrixError
from SloccClassifier.ExactLinalg import ExactMatrix, GaussianRational
from SloccClassifier.StateModel import MatrixPair, ILOTriple, applyIlo, randomIlo

from conftest import kroneckerPair, singularPair
from strategies import bShapes

G = GaussianRational.fromString


def sideImage(pair: MatrixPair, seed: int) -> MatrixPair:
    """ Image under the second and third local operators only, so the first slice keeps its rank. """
    op = randomIlo(pair.n, seed)
    return applyIlo(pair, ILOTriple(ExactMatrix.identity(2), op.p, op.q))


def layoutOf(shape: BShape) -> BShape:
    return BShape.fromMinimalIndices(shape.columnIndices, shape.rowIndices)


def checkPeeling(source: MatrixPair, peeled, shape: BShape):
    assert applyIlo(source, ILOTriple(ExactMatrix.identity(2), peeled.p, peeled.q)) == peeled.result
    k = peeled.regularSize
    assert peeled.result.gamma1 == ExactMatrix.blockDiagonal(ExactMatrix.identity(k), shape.lambdaMatrix())
    assert peeled.result.gamma2 == ExactMatrix.blockDiagonal(peeled.regularPart, shape.matrix())


def test_normalizeFirstSlice():
    pair = sideImage(singularPair('c', ''), 5)
    p, q, rank = normalizeFirstSlice(pair.gamma1)
    assert rank == 5
    assert p @ pair.gamma1 @ q == ExactMatrix.diagonal([1] * 5 + [0] * 2)
    tail = range(5, 7)
    assert (p @ pair.gamma2 @ q).submatrix(tail, tail).isZero()


@pytest.mark.parametrize('traces', [('',), ('c',), ('r',), ('cc',), ('cr',), ('', ''), ('c', ''), ('r', 'c')])
def test_peelSingularBlocks(traces):
    image = sideImage(singularPair(*traces), 23)
    shape = layoutOf(BShape(traces))
    peeled = peelSingularPart(image, shape)
    assert peeled.regularSize == 0
    assert peeled.bShape == shape
    assert len(peeled.chains) == 2 * len(traces)
    checkPeeling(image, peeled, shape)


def test_blocksArePairedByLength():
    # minimal indices (2, 1) and (1, 2) lay out as B5(cr) + B3
    peeled = peelSingularPart(singularPair('r', 'c'), layoutOf(BShape(('r', 'c'))))
    assert peeled.bShape == BShape(('cr', ''))
    assert peeled.result == singularPair('cr', '')


def test_peelRegularPart():
    blocks = [(G('2'), 1), (G('0'), 2)]
    shape = BShape(('c',))
    image = sideImage(kroneckerPair(blocks, shape), 31)
    peeled = peelSingularPart(image, shape)
    assert peeled.regularSize == 3
    checkPeeling(image, peeled, shape)
    _, found = jordanDecomposition(peeled.regularPart, [G('2'), G('0')])
    assert set(found) == set(blocks)


@settings(max_examples=10, deadline=None)
@given(bShapes(maxSize=7), st.integers(0, 2 ** 31))
def test_peelRandomShapes(shape, seed):
    image = sideImage(singularPair(*shape.traces), seed)
    expected = layoutOf(shape)
    checkPeeling(image, peelSingularPart(image, expected), expected)


@pytest.mark.parametrize('second', [
    [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
    [[0, 0, 0], [0, 0, 0], [1, 0, 0]],
])
def test_emptyTrailingLine(second):
    pair = MatrixPair(ExactMatrix.diagonal([1, 1, 0]), ExactMatrix.fromRows(second))
    with pytest.raises(NotTrueEntangledError):
        peelSingularPart(pair, BShape(('',)))


def test_wrongBlockCount():
    with pytest.raises(SingularMatrixError):
        peelSingularPart(singularPair('', ''), BShape(('c',)))


def test_wrongChainLengths():
    with pytest.raises(SingularMatrixError):
        peelSingularPart(singularPair('c'), BShape(('r',)))
