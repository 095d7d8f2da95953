"""
Normal form of a decorated point configuration on the projective line up to fractional linear maps.
"""
import attr
import itertools
import logging
import numpy as np
import typing as tp

from SloccClassifier.ExactLinalg import ApproxComplex
from SloccClassifier.Moebius import toStandard, toStandardComplex, applyMoebius
from SloccClassifier.PencilAnalysis import ProjPoint, Segre

logger = logging.getLogger(__name__)

DecoratedPoint = tp.Tuple[ProjPoint, Segre]

ANCHOR_VALUES = (ProjPoint.finite(0), ProjPoint.finite(1), ProjPoint.infinity())


def decorationKey(segre: Segre):
    return sum(segre), len(segre), tuple(segre)


def sortedDecorations(points: tp.Iterable[DecoratedPoint]) -> tp.List[Segre]:
    """ Decorations, largest first. """
    return sorted((tuple(s) for _, s in points), key=decorationKey, reverse=True)


@attr.s(auto_attribs=True, frozen=True)
class ConfigEntry:
    point: ProjPoint
    segre: Segre

    def sortKey(self):
        return self.point.sortKey(), self.segre

    def toJson(self) -> tp.Dict[str, tp.Any]:
        return dict(point=self.point.toString(), segre=list(self.segre))


def _standardMap(triple: tp.Sequence[DecoratedPoint], exact: bool):
    if exact:
        return toStandard(*(p.homogeneous() for p, _ in triple))
    return toStandardComplex(*(p.homogeneousComplex() for p, _ in triple))


def _anchorTriples(points: tp.Sequence[DecoratedPoint], anchors: tp.Sequence[Segre]) -> tp.Iterator[tp.Tuple[DecoratedPoint, ...]]:
    for triple in itertools.permutations(points, 3):
        if all(tuple(s) == a for (_, s), a in zip(triple, anchors)):
            yield triple


def normalizeWithMap(points: tp.Sequence[DecoratedPoint]) -> tp.Tuple[tp.Tuple[ConfigEntry, ...], tp.Optional[tp.Any]]:
    """
    Canonical key and the map realising it (None when fewer than three points).

    The three largest decorations are sent to 0, 1 and infinity; among all admissible ordered
    triples the lexicographically smallest resulting configuration wins.
    """
    if not points:
        raise ValueError('Configuration must contain at least one point')
    decorations = sortedDecorations(points)
    if len(points) < 3:
        return tuple(ConfigEntry(v, s) for v, s in zip(ANCHOR_VALUES, decorations)), None
    exact = all(p.isExact for p, _ in points)
    best = None
    for triple in _anchorTriples(points, decorations[:3]):
        m = _standardMap(triple, exact)
        rest = [ConfigEntry(applyMoebius(m, p), tuple(s)) for p, s in points
                if not any(p is q for q, _ in triple)]
        rest.sort(key=ConfigEntry.sortKey)
        entries = tuple(ConfigEntry(v, s) for v, s in zip(ANCHOR_VALUES, decorations[:3])) + tuple(rest)
        key = tuple(e.sortKey() for e in entries)
        if best is None or key < best[0]:
            best = (key, entries, m)
    return best[1], best[2]


def moebiusNormalize(points: tp.Sequence[DecoratedPoint]) -> tp.Tuple[tp.Tuple[ConfigEntry, ...], int]:
    """ (config key, number of continuous parameters). """
    key, _ = normalizeWithMap(points)
    return key, max(0, len(points) - 3)


def _sameConfiguration(a: tp.Sequence[DecoratedPoint], b: tp.Sequence[DecoratedPoint]) -> bool:
    if all(p.isExact for p, _ in itertools.chain(a, b)):
        return sorted((p.sortKey(), tuple(s)) for p, s in a) == sorted((p.sortKey(), tuple(s)) for p, s in b)
    unmatched = list(b)
    for p, s in a:
        for idx, (q, t) in enumerate(unmatched):
            if tuple(s) != tuple(t) or p.isInfinity != q.isInfinity:
                continue
            if p.isInfinity or _approx(p).isCloseTo(_approx(q)):
                del unmatched[idx]
                break
        else:
            return False
    return True


def _approx(p: ProjPoint) -> ApproxComplex:
    if isinstance(p.value, ApproxComplex):
        return p.value
    return ApproxComplex.fromComplex(p.value.toComplex(), 0.0)


def bruteForceMatch(a: tp.Sequence[DecoratedPoint], b: tp.Sequence[DecoratedPoint]) -> bool:
    """
    Whether some fractional linear map carries configuration a onto b with decorations preserved.

    Fixes one ordered triple of a and tries every decoration-compatible ordered triple of b.
    """
    if len(a) != len(b) or sortedDecorations(a) != sortedDecorations(b):
        return False
    if len(a) < 3:
        return True
    exact = all(p.isExact for p, _ in itertools.chain(a, b))
    source = list(a[:3])
    sourceMap = _standardMap(source, exact)
    for triple in _anchorTriples(b, [tuple(s) for _, s in source]):
        targetMap = _standardMap(triple, exact)
        if exact:
            m = targetMap.inverse() @ sourceMap
        else:
            m = np.linalg.solve(targetMap, sourceMap)
        images = [(applyMoebius(m, p), s) for p, s in a]
        if _sameConfiguration(images, b):
            return True
    return False


def keyMatchesApproximately(a: tp.Sequence[ConfigEntry], b: tp.Sequence[ConfigEntry]) -> bool:
    return bruteForceMatch([(e.point, e.segre) for e in a], [(e.point, e.segre) for e in b])

