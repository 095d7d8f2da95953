from hypothesis import given, settings, strategies as st

from SloccClassifier.Classifier import ConfigEntry, moebiusNormalize, bruteForceMatch, moebiusFromTriples
from SloccClassifier.Classifier.ConfigKey import normalizeWithMap, sortedDecorations
from SloccClassifier.ExactLinalg import GaussianRational
from SloccClassifier.Moebius import applyMoebius
from SloccClassifier.PencilAnalysis import ProjPoint
from SloccClassifier.StateModel import randomIlo

from strategies import decoratedConfigurations

P = ProjPoint.finite
INF = ProjPoint.infinity()


def moved(points, seed):
    m = randomIlo(2, seed).t
    return [(applyMoebius(m, p), s) for p, s in points]


def test_sortedDecorations():
    points = [(P(0), (1,)), (P(1), (2,)), (INF, (1, 1))]
    assert sortedDecorations(points) == [(1, 1), (2,), (1,)]


def test_fewPointsGoToAnchors():
    key, m = normalizeWithMap([(P(5), (1,)), (P(7), (2,))])
    assert m is None
    assert key == (ConfigEntry(P(0), (2,)), ConfigEntry(P(1), (1,)))
    key, paramCount = moebiusNormalize([(P('1/2'), (1, 1))])
    assert key == (ConfigEntry(P(0), (1, 1)),) and paramCount == 0


def test_fourPoints():
    key, paramCount = moebiusNormalize([(P(0), (1,)), (P(1), (1,)), (INF, (1,)), (P(-1), (1,))])
    assert paramCount == 1
    assert [e.point for e in key[:3]] == [P(0), P(1), INF]
    assert key[3].point == P(-1)
    assert key[3].toJson() == dict(point='-1', segre=[1])


def test_mapRealisesKey():
    points = [(P(2), (1,)), (P(3), (1,)), (P(5), (1,)), (P(7), (1,))]
    key, m = normalizeWithMap(points)
    images = sorted((applyMoebius(m, p).sortKey(), s) for p, s in points)
    assert images == sorted((e.point.sortKey(), e.segre) for e in key)


def test_moebiusFromTriples():
    source = [P(2).homogeneous(), P(3).homogeneous(), INF.homogeneous()]
    target = [P(0).homogeneous(), INF.homogeneous(), P(1).homogeneous()]
    m = moebiusFromTriples(source, target)
    assert [applyMoebius(m, p) for p in (P(2), P(3), INF)] == [P(0), INF, P(1)]


@settings(max_examples=50)
@given(decoratedConfigurations(), st.integers(0, 2 ** 31))
def test_invariance(points, seed):
    assert moebiusNormalize(moved(points, seed)) == moebiusNormalize(points)


@settings(max_examples=50)
@given(decoratedConfigurations())
def test_idempotence(points):
    key, _ = moebiusNormalize(points)
    assert moebiusNormalize([(e.point, e.segre) for e in key])[0] == key


@settings(max_examples=50)
@given(decoratedConfigurations(), st.integers(0, 2 ** 31), st.booleans(), st.integers(0, 10))
def test_anchorsAgreeWithBruteForce(points, seed, perturb, which):
    image = moved(points, seed)
    if perturb:
        taken = {p.sortKey() for p, _ in image}
        candidates = (P(GaussianRational(100 + k, 1)) for k in range(20))
        fresh = next(c for c in candidates if c.sortKey() not in taken)
        idx = which % len(image)
        image[idx] = (fresh, image[idx][1])
    sameKey = moebiusNormalize(points)[0] == moebiusNormalize(image)[0]
    assert sameKey == bruteForceMatch(points, image)
    if not perturb:
        assert sameKey


def test_decorationsMustMatch():
    a = [(P(0), (1,)), (P(1), (1,)), (INF, (2,))]
    b = [(P(0), (1,)), (P(1), (2,)), (INF, (2,))]
    assert not bruteForceMatch(a, b)
    assert moebiusNormalize(a)[0] != moebiusNormalize(b)[0]
