"""
Invariants of the pencil alpha*Gamma1 + beta*Gamma2 attached to a matrix pair.

A projective point lambda stands for the direction lambda*Gamma1 - Gamma2, so for (E, J) the points are
the eigenvalues of J; infinity stands for Gamma1.
"""
import attr
import logging
import numpy as np
import typing as tp

from SloccClassifier.Configuration import Tolerances
from SloccClassifier.Errors import IllConditionedError, NotTrueEntangledError
from SloccClassifier.ExactLinalg import (ApproxComplex, ExactMatrix, GaussianRational, ZERO, ONE,
                                         pencilDetPoly, minorsGcdPoly, polyRoots)
from SloccClassifier.ExactLinalg.ApproxComplex import GUARD_FACTOR
from SloccClassifier.StateModel import MatrixPair, reducedDensityRanks

logger = logging.getLogger(__name__)

Segre = tp.Tuple[int, ...]
PointValue = tp.Optional[tp.Union[GaussianRational, ApproxComplex]]


@attr.s(auto_attribs=True, frozen=True)
class ProjPoint:
    """ A point of the projective line; value None is infinity. """
    value: PointValue = None

    @classmethod
    def infinity(cls) -> 'ProjPoint':
        return cls(None)

    @classmethod
    def finite(cls, value) -> 'ProjPoint':
        if not isinstance(value, ApproxComplex):
            value = GaussianRational.coerce(value)
        return cls(value)

    @property
    def isInfinity(self) -> bool:
        return self.value is None

    @property
    def isExact(self) -> bool:
        return not isinstance(self.value, ApproxComplex)

    def homogeneous(self) -> tp.Tuple[GaussianRational, GaussianRational]:
        """ (x, y) with value x / y. Exact points only. """
        if self.isInfinity:
            return ONE, ZERO
        return self.value, ONE

    def homogeneousComplex(self) -> tp.Tuple[complex, complex]:
        if self.isInfinity:
            return 1 + 0j, 0j
        return self.value.toComplex(), 1 + 0j

    def direction(self) -> tp.Tuple[GaussianRational, GaussianRational]:
        """ Coefficients (alpha, beta) of the pencil direction at this point. """
        x, y = self.homogeneous()
        return x, -y

    def sortKey(self):
        if self.isInfinity:
            return (2,)
        if self.isExact:
            return (0,) + self.value.sortKey()
        return (1,) + self.value.sortKey()

    def toString(self) -> str:
        if self.isInfinity:
            return 'inf'
        return self.value.toString()

    def __str__(self):
        return self.toString()


@attr.s(auto_attribs=True, frozen=True)
class SingularPoint:
    location: ProjPoint
    rankAt: int
    segre: Segre


@attr.s(auto_attribs=True, frozen=True)
class PencilProfile:
    n: int
    genericRank: int
    minRank: int
    points: tp.Tuple[SingularPoint, ...]
    columnIndices: Segre = ()
    rowIndices: Segre = ()

    @property
    def isFullRank(self) -> bool:
        return self.genericRank == self.n

    @property
    def isExact(self) -> bool:
        return all(p.location.isExact for p in self.points)


def sweepDirections() -> tp.Iterator[tp.Tuple[int, int]]:
    """ (1:0), (0:1), (1:1), (1:-1), (1:2), (1:-2), (2:1), (2:-1), ... """
    yield 1, 0
    yield 0, 1
    seen = set()
    k = 1
    while True:
        for d in ((1, k), (1, -k), (k, 1), (k, -1)):
            if d not in seen:
                seen.add(d)
                yield d
        k += 1


def numericRank(arr: np.ndarray, tol: Tolerances, scale: tp.Optional[float] = None) -> int:
    """ Rank from singular values; values inside the guard band raise IllConditionedError. """
    if arr.size == 0:
        return 0
    s = np.linalg.svd(arr, compute_uv=False)
    if scale is None:
        scale = max(float(s[0]), 1.0)
    cutoff = tol.rank * scale
    ambiguous = (s > cutoff) & (s <= GUARD_FACTOR * cutoff)
    if np.any(ambiguous):
        raise IllConditionedError('Singular values %s fall inside the rank guard band (%.3g, %.3g]'
                                  % (s[ambiguous], cutoff, GUARD_FACTOR * cutoff))
    return int(np.sum(s > cutoff))


def _segreFromRankSequence(ranks: tp.Sequence[int]) -> Segre:
    """ ranks[k] = rank of the k-th power; returns block sizes, largest first. """
    atLeast = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))] + [0]
    sizes = []
    for k in range(1, len(atLeast)):
        sizes.extend([k] * (atLeast[k - 1] - atLeast[k]))
    return tuple(sorted(sizes, reverse=True))


def genericRank(m: MatrixPair) -> int:
    ranks = [m.gamma2.rank()]
    for t in range(m.n + 1):
        ranks.append(m.direction(1, t).rank())
        if ranks[-1] == m.n:
            break
    return max(ranks)


@attr.s(auto_attribs=True)
class _EigenFrame:
    """
    Reference chart for a regular pencil: G = w.Gamma nonsingular and A = G^-1 (u.Gamma), so the
    direction x*w + y*u is singular exactly when -x/y is an eigenvalue of A.
    """
    w: tp.Tuple[GaussianRational, GaussianRational]
    u: tp.Tuple[GaussianRational, GaussianRational]
    a: ExactMatrix

    @classmethod
    def build(cls, m: MatrixPair) -> '_EigenFrame':
        for alpha, beta in sweepDirections():
            g = m.direction(alpha, beta)
            if not g.det().isZero():
                break
        w = (GaussianRational(alpha), GaussianRational(beta))
        u = (ZERO, ONE) if alpha != 0 else (ONE, ZERO)
        return cls(w=w, u=u, a=g.inverse() @ m.direction(*u))

    def eigenvalueAt(self, point: ProjPoint) -> tp.Union[GaussianRational, complex]:
        (w0, w1), (u0, u1) = self.w, self.u
        if point.isExact:
            v0, v1 = point.direction()
        else:
            w0, w1, u0, u1 = (c.toComplex() for c in (w0, w1, u0, u1))
            x, y = point.homogeneousComplex()
            v0, v1 = x, -y
        det = w0 * u1 - w1 * u0
        x = (v0 * u1 - v1 * u0) / det
        y = (w0 * v1 - w1 * v0) / det
        return -x / y

    def segreAt(self, point: ProjPoint, tol: Tolerances) -> Segre:
        n = self.a.numRows
        mu = self.eigenvalueAt(point)
        ranks = [n]
        if isinstance(mu, GaussianRational):
            shifted = self.a - ExactMatrix.identity(n).scale(mu)
            power = ExactMatrix.identity(n)
            while True:
                power = power @ shifted
                ranks.append(power.rank())
                if ranks[-1] == ranks[-2]:
                    break
        else:
            shifted = self.a.toNumpy() - mu * np.eye(n)
            power = np.eye(n, dtype=complex)
            scale = max(1.0, float(np.linalg.norm(shifted, 2)))
            while True:
                power = power @ shifted
                ranks.append(numericRank(power, tol, scale ** (len(ranks))))
                if ranks[-1] == ranks[-2]:
                    break
        return _segreFromRankSequence(ranks)


def singularPoints(m: MatrixPair, tol: tp.Optional[Tolerances] = None) -> tp.List[SingularPoint]:
    """ Singular points of a pencil of full generic rank, each with its Segre characteristic. """
    if tol is None:
        tol = Tolerances.fromConfiguration()
    n = m.n
    det = pencilDetPoly(-m.gamma2, m.gamma1)
    if det.isZero():
        raise ValueError('Pencil has deficient generic rank')
    frame = _EigenFrame.build(m)
    points = []
    located = [(ProjPoint.finite(r.value), r.multiplicity) for r in polyRoots(det, tol)]
    if det.degree < n:
        located.append((ProjPoint.infinity(), n - det.degree))
    for loc, multiplicity in located:
        segre = frame.segreAt(loc, tol)
        if sum(segre) != multiplicity:
            raise IllConditionedError('Segre characteristic %s at %s disagrees with root multiplicity %d'
                                      % (segre, loc, multiplicity))
        points.append(SingularPoint(location=loc, rankAt=n - len(segre), segre=segre))
    return points


def _blockToeplitz(diag: ExactMatrix, sub: ExactMatrix, numRowBlocks: int, numColBlocks: int) -> ExactMatrix:
    r, c = diag.shape
    rows = [[ZERO] * (c * numColBlocks) for _ in range(r * numRowBlocks)]
    for j in range(numColBlocks):
        for block, i in ((diag, j), (sub, j + 1)):
            if i >= numRowBlocks:
                continue
            for a, row in enumerate(block.rows):
                rows[i * r + a][j * c:(j + 1) * c] = row
    return ExactMatrix(rows, c * numColBlocks)


def _minimalIndicesOf(g: ExactMatrix, k: ExactMatrix, count: int) -> Segre:
    """
    Right minimal indices of g + s*k, from kernel dimensions of the block Toeplitz matrices
    with k+1 column blocks: dim ker = sum over indices e <= k of (k - e + 1).
    """
    n = g.numCols
    indices: tp.List[int] = []
    prevKer = 0
    prevAtMost = 0
    degree = 0
    while len(indices) < count:
        if degree > n:
            raise IllConditionedError('Minimal index search did not terminate')
        toeplitz = _blockToeplitz(g, k, degree + 2, degree + 1)
        ker = toeplitz.numCols - toeplitz.rank()
        atMost = ker - prevKer
        indices.extend([degree] * (atMost - prevAtMost))
        prevKer, prevAtMost = ker, atMost
        degree += 1
    return tuple(sorted(indices, reverse=True))


def minimalIndices(m: MatrixPair) -> tp.Tuple[Segre, Segre]:
    """ Column and row minimal indices of the pencil, each sorted descending. """
    deficiency = m.n - genericRank(m)
    if deficiency == 0:
        return (), ()
    cols = _minimalIndicesOf(m.gamma1, m.gamma2, deficiency)
    rows = _minimalIndicesOf(m.gamma1.transpose(), m.gamma2.transpose(), deficiency)
    return cols, rows


def localSegre(m: MatrixPair, point: ProjPoint, rank: int, tol: tp.Optional[Tolerances] = None) -> Segre:
    """
    Sizes of the regular Jordan blocks at point, read off the local Smith form.

    The kernel of the k-th local Toeplitz matrix has dimension k*(N - rank) + sum(min(size, k)).
    """
    if tol is None:
        tol = Tolerances.fromConfiguration()
    n = m.n
    if point.isInfinity:
        f0, f1 = m.gamma1, m.gamma2
    elif point.isExact:
        f0, f1 = m.direction(point.value, -ONE), m.gamma1
    else:
        f0, f1 = None, None
    singularPart = n - rank
    counts = []
    prevKer = 0
    k = 1
    while True:
        if f0 is not None:
            w = _blockToeplitz(f0, f1, k, k)
            ker = w.numCols - w.rank()
        else:
            lam = point.value.toComplex()
            f0c = lam * m.gamma1.toNumpy() - m.gamma2.toNumpy()
            f1c = m.gamma1.toNumpy()
            w = np.zeros((k * n, k * n), dtype=complex)
            for j in range(k):
                w[j * n:(j + 1) * n, j * n:(j + 1) * n] = f0c
                if j + 1 < k:
                    w[(j + 1) * n:(j + 2) * n, j * n:(j + 1) * n] = f1c
            ker = k * n - numericRank(w, tol)
        atLeastK = ker - prevKer - singularPart
        if atLeastK <= 0:
            break
        counts.append(atLeastK)
        prevKer = ker
        k += 1
        if k > n + 1:
            raise IllConditionedError('Local Segre search at %s did not terminate' % point)
    sizes = []
    for size in range(1, len(counts) + 1):
        nextCount = counts[size] if size < len(counts) else 0
        sizes.extend([size] * (counts[size - 1] - nextCount))
    return tuple(sorted(sizes, reverse=True))


def _regularPartPoints(m: MatrixPair, rank: int, regularSize: int, tol: Tolerances) -> tp.List[SingularPoint]:
    gcd = minorsGcdPoly(-m.gamma2, m.gamma1, rank)
    located = [ProjPoint.finite(r.value) for r in polyRoots(gcd, tol)]
    if m.gamma1.rank() < rank:
        located.append(ProjPoint.infinity())
    points = []
    for loc in located:
        segre = localSegre(m, loc, rank, tol)
        if not segre:
            raise IllConditionedError('No regular Jordan block found at %s' % loc)
        points.append(SingularPoint(location=loc, rankAt=rank - len(segre), segre=segre))
    total = sum(sum(p.segre) for p in points)
    if total != regularSize:
        raise IllConditionedError('Regular part blocks sum to %d, expected %d' % (total, regularSize))
    return points


def pencilProfile(m: MatrixPair, tol: tp.Optional[Tolerances] = None) -> PencilProfile:
    if tol is None:
        tol = Tolerances.fromConfiguration()
    ranks = reducedDensityRanks(m)
    if ranks != (2, m.n, m.n):
        raise NotTrueEntangledError(ranks, m.n)
    n = genericRank(m)
    if n == m.n:
        points = singularPoints(m, tol)
        cols, rows = (), ()
    else:
        cols, rows = minimalIndices(m)
        regularSize = m.n - sum(cols) - sum(rows) - (m.n - n)
        points = _regularPartPoints(m, n, regularSize, tol)
    points.sort(key=lambda p: p.location.sortKey())
    minRank = min((p.rankAt for p in points), default=n)
    logger.debug('Pencil profile: N=%d, generic rank %d, min rank %d, %d points, indices %s / %s',
                 m.n, n, minRank, len(points), cols, rows)
    return PencilProfile(n=m.n, genericRank=n, minRank=minRank, points=tuple(points),
                         columnIndices=cols, rowIndices=rows)

