import pytest
from hypothesis import given, settings

from SloccClassifier.Canonicalizer import BShape, jordanMatrix
from SloccClassifier.Classifier import descriptorOf, sloccEquivalent, nonlocalParamCount, classLabel
from SloccClassifier.Errors import IndeterminateError, NotTrueEntangledError
from SloccClassifier.ExactLinalg import ExactMatrix, GaussianRational
from SloccClassifier.StateModel import MatrixPair, applyIlo, randomIlo

from conftest import singularPair
from strategies import iloTriples

G = GaussianRational.fromString


def fivePoints(lam1, lam2) -> MatrixPair:
    """ Points 0, 1, lam1, lam2 and infinity. """
    return MatrixPair(ExactMatrix.diagonal([1, 1, 1, 1, 0]),
                      ExactMatrix.diagonal([0, 1, GaussianRational.coerce(lam1), GaussianRational.coerce(lam2), 1]))


def test_ghz(ghz):
    d = descriptorOf(ghz)
    assert (d.dimension, d.n, d.l, d.bShape, d.paramCount, d.exact) == (2, 2, 1, None, 0, True)
    assert [(e.point.toString(), e.segre) for e in d.configKey] == [('0', (1,)), ('1', (1,))]
    assert d.familyName == 'c_{2,1}'
    assert classLabel(d) == 'GHZ-type'


def test_w(w):
    d = descriptorOf(w)
    assert [(e.point.toString(), e.segre) for e in d.configKey] == [('0', (2,))]
    assert classLabel(d) == 'W-type'


def test_toJson(ghz):
    data = descriptorOf(ghz).toJson()
    assert data['schema'] == '1'
    assert data['family'] == 'c_{2,1}'
    assert data['label'] == 'GHZ-type'
    assert data['bShape'] is None
    assert data['configKey'] == [dict(point='0', segre=[1]), dict(point='1', segre=[1])]


def test_singularDescriptor(symmetryPair):
    column, row = (descriptorOf(p) for p in symmetryPair)
    assert (column.n, column.l) == (3, 3)
    assert column.bShape == BShape(('c',))
    assert row.bShape == BShape(('r',))
    assert column.configKey == () and column.paramCount == 0
    assert column.toJson()['bShape'] == dict(traces=['c'], columnIndices=[2], rowIndices=[1])
    assert classLabel(column) == 'c_{3,3}'


def test_notTrueEntangled(productState):
    with pytest.raises(NotTrueEntangledError):
        descriptorOf(productState)
    with pytest.raises(NotTrueEntangledError):
        sloccEquivalent(productState, productState)


def test_fivePoints():
    d = descriptorOf(fivePoints(2, -3))
    assert (d.familyName, d.paramCount, nonlocalParamCount(d)) == ('c_{5,4}', 2, 2)


@pytest.mark.parametrize('lam1, lam2', [(-3, 2), (-1, 4), ('1/2', '-1/3'), ('1/2', '-3/2')])
def test_fivePointRelations(lam1, lam2):
    assert descriptorOf(fivePoints(lam1, lam2)) == descriptorOf(fivePoints(2, -3))


@settings(max_examples=10)
@given(iloTriples(2))
def test_ghzImagesAreEquivalent(ghz, op):
    image = applyIlo(ghz, op)
    assert descriptorOf(image) == descriptorOf(ghz)
    equivalent, witness = sloccEquivalent(ghz, image)
    assert equivalent
    assert witness.verify(ghz, image)


def test_inequivalent(ghz, w, symmetryPair):
    assert sloccEquivalent(ghz, w) == (False, None)
    assert sloccEquivalent(*symmetryPair) == (False, None)


@pytest.mark.parametrize('pair', [
    MatrixPair(ExactMatrix.identity(3), ExactMatrix.diagonal([0, 1, 2])),
    MatrixPair(ExactMatrix.identity(4), ExactMatrix.diagonal([0, 1, 3, -1])),
    MatrixPair(ExactMatrix.identity(4), jordanMatrix([(G('2'), 2), (G('1'), 1), (G('0'), 1)])),
])
@pytest.mark.parametrize('seed', [4, 5])
def test_equivalenceAcrossCharts(pair, seed):
    image = applyIlo(pair, randomIlo(pair.n, seed))
    equivalent, witness = sloccEquivalent(pair, image)
    assert equivalent
    assert witness.exact and witness.verify(pair, image)
    equivalent, witness = sloccEquivalent(image, pair)
    assert equivalent and witness.verify(image, pair)


def test_equivalenceWithSingularPart():
    shape = BShape(('',))
    pair = MatrixPair(ExactMatrix.blockDiagonal(ExactMatrix.identity(3), shape.lambdaMatrix()),
                      ExactMatrix.blockDiagonal(ExactMatrix.diagonal([0, 1, 2]), shape.matrix()))
    image = applyIlo(pair, randomIlo(6, 9))
    equivalent, witness = sloccEquivalent(pair, image)
    assert equivalent and witness.verify(pair, image)


def test_differentCrossRatio():
    a = MatrixPair(ExactMatrix.identity(4), ExactMatrix.diagonal([0, 1, 3, -1]))
    b = MatrixPair(ExactMatrix.identity(4), ExactMatrix.diagonal([0, 1, 3, -2]))
    assert descriptorOf(a).discreteKey() == descriptorOf(b).discreteKey()
    assert sloccEquivalent(a, b) == (False, None)


def test_inexactDescriptor(ghz):
    pair = MatrixPair.fromRows([[1, 0], [0, 1]], [[0, 2], [1, 0]])
    d = descriptorOf(pair)
    assert not d.exact
    assert d.discreteKey() == descriptorOf(ghz).discreteKey()
    with pytest.raises(IndeterminateError):
        sloccEquivalent(pair, ghz)
    assert sloccEquivalent(pair, MatrixPair.fromRows([[1, 0], [0, 1]], [[0, 1], [0, 0]])) == (False, None)
