import pytest
from hypothesis import HealthCheck, settings

from SloccClassifier.Canonicalizer import BShape, jordanMatrix
from SloccClassifier.Configuration import Tolerances, refreshGlobalConfiguration
from SloccClassifier.ExactLinalg import ExactMatrix
from SloccClassifier.StateModel import MatrixPair

# fixtures used together with @given are immutable
settings.register_profile('slocc', deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile('slocc')


@pytest.fixture(autouse=True)
def defaultConfiguration():
    refreshGlobalConfiguration()
    yield
    refreshGlobalConfiguration()


@pytest.fixture
def tol() -> Tolerances:
    return Tolerances()


@pytest.fixture
def ghz() -> MatrixPair:
    return MatrixPair.fromRows([[1, 0], [0, 0]], [[0, 0], [0, 1]])


@pytest.fixture
def w() -> MatrixPair:
    return MatrixPair.fromRows([[0, 1], [1, 0]], [[1, 0], [0, 0]])


@pytest.fixture
def productState() -> MatrixPair:
    return MatrixPair.fromRows([[1, 0], [0, 0]], [[0, 0], [0, 0]])


def singularPair(*traces: str) -> MatrixPair:
    shape = BShape(tuple(traces))
    return MatrixPair(shape.lambdaMatrix(), shape.matrix())


def kroneckerPair(blocks, shape=None) -> MatrixPair:
    """ (E + Lambda', J + B) for Jordan blocks J and an optional singular part B. """
    k = sum(size for _, size in blocks)
    if shape is None:
        return MatrixPair(ExactMatrix.identity(k), jordanMatrix(blocks))
    return MatrixPair(ExactMatrix.blockDiagonal(ExactMatrix.identity(k), shape.lambdaMatrix()),
                      ExactMatrix.blockDiagonal(jordanMatrix(blocks), shape.matrix()))


@pytest.fixture
def symmetryPair():
    """ The column-type and row-type four dimensional singular blocks. """
    return singularPair('c'), singularPair('r')
