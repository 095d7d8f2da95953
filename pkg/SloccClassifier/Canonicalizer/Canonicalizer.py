"""
Reduction of a matrix pair to its canonical pair, together with the local operation achieving it.

Full generic rank gives (E, J); deficient generic rank gives (E_r + Lambda', J + B) with the
singular part in the BShape layout. In both cases one nonsingular direction of the pencil is sent
to infinity, a point of minimal rank to 0 and a second singular point to 1. Among the admissible
anchor choices the one giving the lexicographically smallest block list is taken, so reducing a
canonical pair again reproduces it.
"""
import attr
import logging
import numpy as np
import typing as tp

from SloccClassifier.Canonicalizer.BShape import BShape
from SloccClassifier.Canonicalizer.Eliminators import restoreBlockChart
from SloccClassifier.Canonicalizer.Jordan import (JordanBlock, blockSortKey, sortBlocks, jordanMatrix,
                                                  jordanDecomposition, numericJordanDecomposition)
from SloccClassifier.Canonicalizer.Peeling import peelSingularPart
from SloccClassifier.Configuration import Tolerances
from SloccClassifier.Errors import IllConditionedError, InexactEigenvaluesError
from SloccClassifier.ExactLinalg import ExactMatrix, GaussianRational
from SloccClassifier.Moebius import bracket, toStandard, applyMoebius
from SloccClassifier.PencilAnalysis import PencilProfile, pencilProfile, sweepDirections
from SloccClassifier.StateModel import MatrixPair, ILOTriple, applyIlo

logger = logging.getLogger(__name__)

FULL_RANK = 'fullRank'
RANK_DEFICIENT = 'rankDeficient'


@attr.s(auto_attribs=True, frozen=True)
class CanonicalPair:
    first: ExactMatrix
    second: ExactMatrix
    kind: str
    jordanBlocks: tp.Tuple[JordanBlock, ...]
    bShape: tp.Optional[BShape] = None
    exact: bool = True

    @property
    def n(self) -> int:
        return self.first.numRows

    @property
    def regularSize(self) -> int:
        return sum(size for _, size in self.jordanBlocks)

    def asMatrixPair(self) -> MatrixPair:
        return MatrixPair(self.first, self.second)

    def spectrum(self) -> tp.List[tp.Tuple[GaussianRational, tp.Tuple[int, ...]]]:
        """ Distinct eigenvalues of the regular part with their block sizes. """
        grouped: tp.Dict[GaussianRational, tp.List[int]] = {}
        for value, size in self.jordanBlocks:
            grouped.setdefault(value, []).append(size)
        return [(value, tuple(sorted(sizes, reverse=True))) for value, sizes in grouped.items()]


@attr.s(auto_attribs=True, frozen=True)
class Witness:
    """ A local operation together with how exactly it maps source onto target. """
    ops: ILOTriple
    exact: bool = True
    residualBound: float = 0.0

    def residual(self, source: MatrixPair, target: MatrixPair) -> float:
        image = applyIlo(source, self.ops)
        if self.exact:
            return 0.0 if image == target else float('inf')
        return float(max(np.max(np.abs(image.gamma1.toNumpy() - target.gamma1.toNumpy())),
                         np.max(np.abs(image.gamma2.toNumpy() - target.gamma2.toNumpy()))))

    def verify(self, source: MatrixPair, target: MatrixPair) -> bool:
        if self.exact:
            return applyIlo(source, self.ops) == target
        return self.residual(source, target) <= 10 * max(self.residualBound, 1e-12)


@attr.s(auto_attribs=True, frozen=True)
class Chart:
    """ Slice mixing t sending the pencil to the eigenvalue chart, and the resulting Jordan blocks. """
    t: ExactMatrix
    blocks: tp.Tuple[JordanBlock, ...]
    approxSpectrum: tp.Optional[tp.Tuple[tp.Tuple[complex, tp.Tuple[int, ...]], ...]] = None

    @property
    def exact(self) -> bool:
        return self.approxSpectrum is None


def _homFromDirection(alpha: int, beta: int) -> tp.Tuple[GaussianRational, GaussianRational]:
    return GaussianRational(alpha), -GaussianRational(beta)


def _chartMatrix(m: ExactMatrix) -> ExactMatrix:
    """ Slice mixing realising the eigenvalue map m on the projective line of pencil points. """
    return ExactMatrix([[m[1, 1], m[1, 0]], [m[0, 1], m[0, 0]]], 2)


def _auxiliaryPoints(pair: MatrixPair, profile: PencilProfile, rank: int, count: int):
    """ The nonsingular anchor g followed by further sweep directions distinct from g and all points. """
    occupied = [p.location.homogeneous() for p in profile.points if p.location.isExact]
    g = None
    extra = []
    for alpha, beta in sweepDirections():
        hom = _homFromDirection(alpha, beta)
        if g is None:
            if pair.direction(alpha, beta).rank() == rank:
                g = hom
            continue
        if bracket(hom, g).isZero() or any(bracket(hom, o).isZero() for o in occupied):
            continue
        if any(bracket(hom, e).isZero() for e in extra):
            continue
        extra.append(hom)
        if len(extra) == count:
            return g, extra


def chooseChart(pair: MatrixPair, profile: PencilProfile, rank: int) -> Chart:
    points = profile.points
    g, (aux1, aux2) = _auxiliaryPoints(pair, profile, rank, 2)
    if not profile.isExact:
        m = toStandard(aux1, aux2, g)
        spectrum = []
        for p in points:
            image = applyMoebius(m, p.location)
            if image.isInfinity:
                raise IllConditionedError('Singular point %s is too close to the chart anchor' % p.location)
            spectrum.append((image.value.toComplex(), p.segre))
        spectrum.sort(key=lambda s: (abs(s[0]) == 0, s[0].real, s[0].imag))
        return Chart(t=_chartMatrix(m), blocks=(), approxSpectrum=tuple(spectrum))

    if not points:
        return Chart(t=_chartMatrix(toStandard(aux1, aux2, g)), blocks=())
    maxParts = max(len(p.segre) for p in points)
    candidates = []
    for p0 in points:
        if len(p0.segre) != maxParts:
            continue
        others = [p for p in points if p is not p0] or [None]
        for p1 in others:
            unit = aux1 if p1 is None else p1.location.homogeneous()
            candidates.append(toStandard(p0.location.homogeneous(), unit, g))
    best = None
    for m in candidates:
        blocks = sortBlocks((applyMoebius(m, p.location).value, size) for p in points for size in p.segre)
        key = tuple(blockSortKey(b) for b in blocks)
        if best is None or key < best[0]:
            best = (key, m, blocks)
    _, m, blocks = best
    return Chart(t=_chartMatrix(m), blocks=tuple(blocks))


def _distinctEigenvalues(blocks: tp.Iterable[JordanBlock]) -> tp.List[GaussianRational]:
    seen = []
    for value, _ in blocks:
        if value not in seen:
            seen.append(value)
    return seen


def reduceFullRank(pair: MatrixPair, tol: tp.Optional[Tolerances] = None,
                   profile: tp.Optional[PencilProfile] = None) -> tp.Tuple[CanonicalPair, Witness]:
    if tol is None:
        tol = Tolerances.fromConfiguration()
    if profile is None:
        profile = pencilProfile(pair, tol)
    n = pair.n
    chart = chooseChart(pair, profile, n)
    eye = ExactMatrix.identity(n)
    moved = applyIlo(pair, ILOTriple(chart.t, eye, eye))
    gInv = moved.gamma1.inverse()
    a = gInv @ moved.gamma2

    if chart.exact:
        s, blocks = jordanDecomposition(a, _distinctEigenvalues(chart.blocks))
        if tuple(blocks) != chart.blocks:
            raise IllConditionedError('Jordan structure %s disagrees with the pencil profile %s' % (blocks, chart.blocks))
        p = s.inverse() @ gInv
        canonical = CanonicalPair(first=eye, second=jordanMatrix(blocks), kind=FULL_RANK, jordanBlocks=tuple(blocks))
        witness = Witness(ILOTriple(chart.t, p, s))
        logger.debug('Full rank reduction: blocks %s', [(v.toString(), k) for v, k in blocks])
        return canonical, witness

    sNum, _ = numericJordanDecomposition(a.toNumpy(), chart.approxSpectrum, tol)
    pNum = np.linalg.solve(sNum, gInv.toNumpy())
    p, q = ExactMatrix.fromNumpy(pNum), ExactMatrix.fromNumpy(sNum)
    blocks = []
    for value, segre in chart.approxSpectrum:
        blocks.extend((GaussianRational.fromFloat(value), size) for size in sorted(segre, reverse=True))
    canonical = CanonicalPair(first=eye, second=jordanMatrix(blocks), kind=FULL_RANK,
                              jordanBlocks=tuple(blocks), exact=False)
    witness = Witness(ILOTriple(chart.t, p, q), exact=False)
    residual = witness.residual(pair, canonical.asMatrixPair())
    witness = attr.evolve(witness, residualBound=residual)
    raise InexactEigenvaluesError('Eigenvalues outside Q(i); canonical form is approximate (residual %.3g)' % residual,
                                  canonical=canonical, witness=witness, residualBound=residual)


def _frameMatrix(pair: MatrixPair, rank: int) -> ExactMatrix:
    """ Slice mixing whose first slice is the first sweep direction of generic rank. """
    for alpha, beta in sweepDirections():
        if pair.direction(alpha, beta).rank() == rank:
            return ExactMatrix([[alpha, beta], [0, 1] if alpha else [1, 0]], 2)


def reduceRankDeficient(pair: MatrixPair, tol: tp.Optional[Tolerances] = None,
                        profile: tp.Optional[PencilProfile] = None) -> tp.Tuple[CanonicalPair, Witness]:
    """
    Peel the singular part off in a frame whose first slice has generic rank, then move the frame to
    the canonical chart: Jordan reduction on the regular part, block eliminators and rescaling on
    (Lambda', B).
    """
    if tol is None:
        tol = Tolerances.fromConfiguration()
    if profile is None:
        profile = pencilProfile(pair, tol)
    if not profile.isExact:
        raise IllConditionedError('Regular part has eigenvalues outside Q(i); only the descriptor is available')
    n = pair.n
    shape = BShape.fromMinimalIndices(profile.columnIndices, profile.rowIndices)
    chart = chooseChart(pair, profile, profile.genericRank)
    frame = _frameMatrix(pair, profile.genericRank)
    eye = ExactMatrix.identity(n)
    peeled = peelSingularPart(applyIlo(pair, ILOTriple(frame, eye, eye)), shape)
    k = peeled.regularSize

    t = chart.t @ frame.inverse()
    (a, b), (c, d) = t.rows
    ps, qs = [], []
    if k:
        eyeR = ExactMatrix.identity(k)
        regular = peeled.regularPart
        fInv = (eyeR.scale(a) + regular.scale(b)).inverse()
        s, blocks = jordanDecomposition(fInv @ (eyeR.scale(c) + regular.scale(d)),
                                        _distinctEigenvalues(chart.blocks))
        if tuple(blocks) != chart.blocks:
            raise IllConditionedError('Jordan structure %s disagrees with the pencil profile %s' % (blocks, chart.blocks))
        ps.append(s.inverse() @ fInv)
        qs.append(s)
    pB, qB = restoreBlockChart(shape.lambdaMatrix(), shape.matrix(), t)
    ps.append(pB)
    qs.append(qB)

    first = ExactMatrix.blockDiagonal(ExactMatrix.identity(k), shape.lambdaMatrix())
    second = ExactMatrix.blockDiagonal(jordanMatrix(chart.blocks), shape.matrix())
    canonical = CanonicalPair(first=first, second=second, kind=RANK_DEFICIENT,
                              jordanBlocks=chart.blocks, bShape=shape)
    witness = Witness(ILOTriple(chart.t, ExactMatrix.blockDiagonal(*ps) @ peeled.p,
                                peeled.q @ ExactMatrix.blockDiagonal(*qs)))
    if not witness.verify(pair, canonical.asMatrixPair()):
        raise IllConditionedError('Rank deficient reduction to %s failed to verify' % shape)
    logger.debug('Rank deficient reduction: %s with %d regular blocks', shape, len(chart.blocks))
    return canonical, witness


def canonicalize(pair: MatrixPair, tol: tp.Optional[Tolerances] = None) -> tp.Tuple[CanonicalPair, Witness, tp.Optional[str]]:
    """
    Canonical pair and witness; the note is set when only an approximate reduction was possible.
    """
    if tol is None:
        tol = Tolerances.fromConfiguration()
    profile = pencilProfile(pair, tol)
    if profile.isFullRank:
        try:
            canonical, witness = reduceFullRank(pair, tol, profile)
        except InexactEigenvaluesError as e:
            logger.warning('%s', e)
            return e.canonical, e.witness, str(e)
        return canonical, witness, None
    canonical, witness = reduceRankDeficient(pair, tol, profile)
    return canonical, witness, None

