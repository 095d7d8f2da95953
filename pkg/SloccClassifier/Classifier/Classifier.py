"""
SLOCC class descriptors and equivalence decisions with constructive witnesses.
"""
import attr
import logging
import typing as tp

from SloccClassifier.Canonicalizer import (BShape, CanonicalPair, Witness, canonicalize, jordanDecomposition,
                                           restoreBlockChart)
from SloccClassifier.Classifier.ConfigKey import (ConfigEntry, DecoratedPoint, moebiusNormalize, normalizeWithMap,
                                                  keyMatchesApproximately, sortedDecorations)
from SloccClassifier.Configuration import Tolerances
from SloccClassifier.Errors import IllConditionedError, IndeterminateError
from SloccClassifier.ExactLinalg import ExactMatrix
from SloccClassifier.PencilAnalysis import ProjPoint, pencilProfile
from SloccClassifier.StateModel import MatrixPair, ILOTriple, applyIlo, composeIlo, inverseIlo

logger = logging.getLogger(__name__)

DESCRIPTOR_SCHEMA = '1'


@attr.s(auto_attribs=True, frozen=True)
class ClassDescriptor:
    dimension: int
    n: int
    l: int
    bShape: tp.Optional[BShape]
    configKey: tp.Tuple[ConfigEntry, ...]
    paramCount: int
    exact: bool = True

    @property
    def familyName(self) -> str:
        return 'c_{%d,%d}' % (self.n, self.l)

    @property
    def decorations(self) -> tp.List[tp.Tuple[int, ...]]:
        return sortedDecorations((e.point, e.segre) for e in self.configKey)

    def discreteKey(self):
        """ Everything except the positions of the points. """
        return self.dimension, self.n, self.l, self.bShape, tuple(self.decorations)

    def toJson(self) -> tp.Dict[str, tp.Any]:
        return dict(
            schema=DESCRIPTOR_SCHEMA,
            dimension=self.dimension,
            n=self.n,
            l=self.l,
            family=self.familyName,
            label=classLabel(self),
            bShape=self.bShape.toJson() if self.bShape is not None else None,
            configKey=[e.toJson() for e in self.configKey],
            paramCount=self.paramCount,
            exact=self.exact,
        )


def descriptorOf(pair: MatrixPair, tol: tp.Optional[Tolerances] = None) -> ClassDescriptor:
    if tol is None:
        tol = Tolerances.fromConfiguration()
    profile = pencilProfile(pair, tol)
    shape = None
    if not profile.isFullRank:
        shape = BShape.fromMinimalIndices(profile.columnIndices, profile.rowIndices)
    points = [(p.location, p.segre) for p in profile.points]
    if points:
        key, paramCount = moebiusNormalize(points)
    else:
        key, paramCount = (), 0
    descriptor = ClassDescriptor(dimension=pair.n, n=profile.genericRank, l=profile.minRank, bShape=shape,
                                 configKey=key, paramCount=paramCount, exact=profile.isExact)
    logger.debug('Descriptor: %s, %d points, %d parameters', descriptor.familyName, len(key), paramCount)
    return descriptor


def nonlocalParamCount(descriptor: ClassDescriptor) -> int:
    return descriptor.paramCount


def classLabel(descriptor: ClassDescriptor) -> str:
    """ Conventional names for two-qubit-pair states, the family name otherwise. """
    if descriptor.dimension == 2 and descriptor.n == 2:
        if len(descriptor.configKey) == 2:
            return 'GHZ-type'
        if len(descriptor.configKey) == 1 and descriptor.configKey[0].segre == (2,):
            return 'W-type'
    return descriptor.familyName


def _eigenConfiguration(canonical: CanonicalPair) -> tp.List[DecoratedPoint]:
    return [(ProjPoint.finite(value), segre) for value, segre in canonical.spectrum()]


def _chartChangeBetween(ca: CanonicalPair, cb: CanonicalPair) -> ILOTriple:
    """
    A local operation carrying canonical pair ca onto cb when both have the same descriptor
    but their regular eigenvalues sit in different charts.
    """
    _, ma = normalizeWithMap(_eigenConfiguration(ca))
    _, mb = normalizeWithMap(_eigenConfiguration(cb))
    if ma is None or mb is None:
        raise IllConditionedError('Canonical pairs with fewer than three regular eigenvalues should coincide')
    m = mb.inverse() @ ma
    # eigenvalue map mu -> (m00 mu + m01) / (m10 mu + m11) is realised by this slice mixing
    t = ExactMatrix([[m[1, 1], m[1, 0]], [m[0, 1], m[0, 0]]], 2)
    (a, b), (c, d) = t.rows
    r = ca.regularSize
    eyeR = ExactMatrix.identity(r)
    ja = ca.second.submatrix(range(r), range(r))
    f = eyeR.scale(a) + ja.scale(b)
    fInv = f.inverse()
    mixed = fInv @ (eyeR.scale(c) + ja.scale(d))
    distinct = []
    for value, _ in cb.jordanBlocks:
        if value not in distinct:
            distinct.append(value)
    s, blocks = jordanDecomposition(mixed, distinct)
    if tuple(blocks) != cb.jordanBlocks:
        raise IllConditionedError('Regular parts of the two canonical pairs do not correspond')
    ps, qs = [s.inverse() @ fInv], [s]
    if ca.bShape is not None:
        idx = range(r, ca.n)
        pB, qB = restoreBlockChart(ca.first.submatrix(idx, idx), ca.second.submatrix(idx, idx), t)
        ps.append(pB)
        qs.append(qB)
    return ILOTriple(t, ExactMatrix.blockDiagonal(*ps), ExactMatrix.blockDiagonal(*qs))


def sloccEquivalent(a: MatrixPair, b: MatrixPair,
                    tol: tp.Optional[Tolerances] = None) -> tp.Tuple[bool, tp.Optional[Witness]]:
    """
    Decide SLOCC equivalence; when equivalent, the witness maps a exactly onto b.
    """
    if tol is None:
        tol = Tolerances.fromConfiguration()
    da, db = descriptorOf(a, tol), descriptorOf(b, tol)
    if not (da.exact and db.exact):
        if da.discreteKey() != db.discreteKey():
            return False, None
        if keyMatchesApproximately(da.configKey, db.configKey):
            raise IndeterminateError('Approximate descriptors of %s agree within tolerance' % da.familyName)
        return False, None
    if da != db:
        return False, None

    ca, wa, _ = canonicalize(a, tol)
    cb, wb, _ = canonicalize(b, tol)
    if ca == cb:
        ops = composeIlo(wa.ops, inverseIlo(wb.ops))
    else:
        bridge = _chartChangeBetween(ca, cb)
        if applyIlo(ca.asMatrixPair(), bridge) != cb.asMatrixPair():
            raise IllConditionedError('Chart change between canonical pairs failed to verify')
        ops = composeIlo(wa.ops, bridge, inverseIlo(wb.ops))
    witness = Witness(ops)
    if not witness.verify(a, b):
        raise IllConditionedError('Equivalence witness failed to verify')
    return True, witness
