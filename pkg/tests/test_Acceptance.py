"""
Longer end-to-end checks; run with ``pytest -m slow``.
"""
import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from SloccClassifier.Canonicalizer import (BShape, buildMixtureEliminators, buildPrimedEliminators, buildFlipOperators,
                                           canonicalize)
from SloccClassifier.Classifier import bruteForceMatch, descriptorOf, moebiusNormalize, sloccEquivalent
from SloccClassifier.Enumerator import enumerateClasses
from SloccClassifier.ExactLinalg import ExactMatrix, GaussianRational
from SloccClassifier.Fuzzing import fuzzInvariance
from SloccClassifier.Moebius import applyMoebius
from SloccClassifier.PencilAnalysis import ProjPoint
from SloccClassifier.StateModel import MatrixPair, applyIlo, randomIlo

from strategies import decoratedConfigurations

pytestmark = pytest.mark.slow


@pytest.fixture(scope='module')
def familiesN4():
    return enumerateClasses(4)


def test_fuzzN4(familiesN4):
    report = fuzzInvariance(4, numTrials=200, seed=0, numWorkers=1, families=familiesN4)
    assert len(report.results) == 16 * 200
    assert report.failures == []


def test_witnessSoundness(familiesN4):
    rng = random.Random(1)
    for k in range(100):
        family = familiesN4[k % len(familiesN4)]
        image = applyIlo(family.representative, randomIlo(4, rng.getrandbits(32)))
        canonical, witness, note = canonicalize(image)
        assert note is None
        assert witness.verify(image, canonical.asMatrixPair())
        assert descriptorOf(canonical.asMatrixPair()) == family.descriptor


def _fivePoints(lam1, lam2) -> MatrixPair:
    return MatrixPair(ExactMatrix.diagonal([1, 1, 1, 1, 0]),
                      ExactMatrix.diagonal([0, 1, GaussianRational(lam1), GaussianRational(lam2), 1]))


def _relatedParameters(lam1, lam2):
    return [(lam2, lam1), (1 - lam1, 1 - lam2), (1 / lam1, 1 / lam2), (1 / lam1, lam2 / lam1)]


def _generic(lam1, lam2) -> bool:
    values = {Fraction(0), Fraction(1), lam1, lam2}
    return len(values) == 4


def test_fivePointRelations():
    rng = random.Random(7)
    checked = 0
    while checked < 20:
        lam1 = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        lam2 = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        if not _generic(lam1, lam2):
            continue
        related = _relatedParameters(lam1, lam2)
        if not all(_generic(a, b) for a, b in related):
            continue
        base = _fivePoints(lam1, lam2)
        assert descriptorOf(base).paramCount == 2
        for a, b in related:
            equivalent, witness = sloccEquivalent(base, _fivePoints(a, b))
            assert equivalent
            assert witness.verify(base, _fivePoints(a, b))
        checked += 1


@settings(max_examples=1000)
@given(decoratedConfigurations(maxPoints=6), st.integers(0, 2 ** 31), st.booleans())
def test_normalizationAgreesWithBruteForce(points, seed, perturb):
    m = randomIlo(2, seed).t
    image = [(applyMoebius(m, p), s) for p, s in points]
    if perturb:
        taken = {p.sortKey() for p, _ in image}
        candidates = (ProjPoint.finite(GaussianRational(50 + k, 2)) for k in range(20))
        fresh = next(c for c in candidates if c.sortKey() not in taken)
        image[0] = (fresh, image[0][1])
    sameKey = moebiusNormalize(points)[0] == moebiusNormalize(image)[0]
    assert sameKey == bruteForceMatch(points, image)


def _allShapes(maxSize: int = 8):
    traces = [''.join(t) for length in range(maxSize - 2) for t in itertools.product('cr', repeat=length)]
    shapes = []
    for count in range(1, maxSize // 3 + 1):
        for combo in itertools.combinations_with_replacement(traces, count):
            shape = BShape(combo)
            if shape.size <= maxSize:
                shapes.append(shape)
    return shapes


def test_eliminatorIdentities():
    rng = random.Random(3)
    shapes = _allShapes()
    assert len(shapes) > 63
    for shape in shapes:
        lam, b = shape.lambdaMatrix(), shape.matrix()
        for _ in range(10):
            c = GaussianRational(Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 3)), rng.randint(-2, 2))
            p, q = buildMixtureEliminators(lam, b, c)
            assert p @ (lam + b.scale(c)) @ q == lam and p @ b @ q == b
            p, q = buildPrimedEliminators(lam, b, c)
            assert p @ (b + lam.scale(c)) @ q == b and p @ lam @ q == lam
            p, q, (s1, s2) = buildFlipOperators(lam, b, c)
            assert p @ lam @ q == b.scale(s1) and p @ b @ q == lam.scale(s2)
