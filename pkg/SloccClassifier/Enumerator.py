"""
Enumeration of the SLOCC families of truly entangled 2 x N x N states.
"""
import attr
import itertools
import logging
import math
import pandas as pd
import typing as tp

from SloccClassifier.Canonicalizer import BShape, sortBlocks, jordanMatrix
from SloccClassifier.Classifier import ClassDescriptor, descriptorOf, decorationKey
from SloccClassifier.Configuration import Tolerances
from SloccClassifier.ExactLinalg import ExactMatrix, GaussianRational
from SloccClassifier.PencilAnalysis import Segre
from SloccClassifier.StateFile import matrixToJson
from SloccClassifier.StateModel import MatrixPair

logger = logging.getLogger(__name__)

# distinct sample values for the free eigenvalues of a family representative
PARAMETER_SAMPLES = (2, 3, 5, 7, 11, 13, 17)


@attr.s(auto_attribs=True, frozen=True)
class ClassFamily:
    dimension: int
    n: int
    l: int
    bShape: tp.Optional[BShape]
    # regular part Segre characteristics, in the order eigenvalues 0, 1, λ1, ... are assigned
    pattern: tp.Tuple[Segre, ...]
    slotNames: tp.Tuple[str, ...]
    representative: MatrixPair
    descriptor: ClassDescriptor

    @property
    def familyName(self) -> str:
        return 'c_{%d,%d}' % (self.n, self.l)

    @property
    def paramCount(self) -> int:
        return max(0, len(self.pattern) - 3)

    @property
    def freeSlots(self) -> int:
        """ Eigenvalues other than 0 and 1; with three or more points one of them is redundant. """
        return max(0, len(self.pattern) - 2)

    def symbolicSecond(self) -> str:
        """ Second matrix of the representative with the free eigenvalues written as names. """
        names = {GaussianRational(v): name for v, name in zip(self._slotValues(), self.slotNames)}
        rows = []
        r = sum(sum(s) for s in self.pattern)
        for i, row in enumerate(self.representative.gamma2.rows):
            cells = []
            for j, v in enumerate(row):
                if i == j and i < r and v in names:
                    cells.append(names[v])
                else:
                    cells.append('.' if v.isZero() else v.toString())
            rows.append(' '.join(cells))
        return '; '.join(rows)

    def _slotValues(self) -> tp.List[int]:
        return [0, 1][:len(self.pattern)] + list(PARAMETER_SAMPLES[:max(0, len(self.pattern) - 2)])

    def toJson(self) -> tp.Dict[str, tp.Any]:
        return dict(
            family=self.familyName,
            n=self.n,
            l=self.l,
            bShape=self.bShape.toJson() if self.bShape is not None else None,
            pattern=[list(s) for s in self.pattern],
            parameters=self.paramCount,
            representative=dict(gamma1=matrixToJson(self.representative.gamma1),
                                gamma2=matrixToJson(self.representative.gamma2)),
            symbolic=self.symbolicSecond(),
            descriptor=self.descriptor.toJson(),
        )


def familyTable(n: int) -> tp.List[tp.Tuple[int, int]]:
    """ Admissible (generic rank, minimal rank) pairs. """
    table = [(n, l) for l in range(1, n)]
    for rank in range(n - 1, math.ceil(2 * n / 3) - 1, -1):
        table.extend((rank, l) for l in range(2 * (n - rank), rank + 1))
    return table


def partitions(total: int, maxPart: tp.Optional[int] = None) -> tp.Iterator[Segre]:
    if maxPart is None:
        maxPart = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, maxPart), 0, -1):
        for rest in partitions(total - first, first):
            yield (first,) + rest


def segreMultisets(total: int) -> tp.List[tp.Tuple[Segre, ...]]:
    """ Multisets of Segre characteristics (one per distinct eigenvalue) whose sizes add up to total. """
    items = [p for size in range(1, total + 1) for p in partitions(size)]

    def build(remaining: int, start: int) -> tp.Iterator[tp.Tuple[Segre, ...]]:
        if remaining == 0:
            yield ()
            return
        for idx in range(start, len(items)):
            size = sum(items[idx])
            if size <= remaining:
                for rest in build(remaining - size, idx):
                    yield (items[idx],) + rest

    return list(build(total, 0))


def _orderPattern(pattern: tp.Sequence[Segre]) -> tp.Tuple[Segre, ...]:
    """ Point of minimal rank first, the rest largest decoration first. """
    if not pattern:
        return ()
    ordered = sorted(pattern, key=decorationKey, reverse=True)
    first = max(ordered, key=lambda s: (len(s), decorationKey(s)))
    ordered.remove(first)
    return (first,) + tuple(ordered)


def jordanPatterns(n: int, l: int) -> tp.List[tp.Tuple[Segre, ...]]:
    """ Coincidence patterns of a full rank pencil with minimal rank l. """
    return [_orderPattern(p) for p in segreMultisets(n) if max(len(s) for s in p) == n - l]


def bShapes(n: int, rank: int) -> tp.List[BShape]:
    """ Singular-part shapes of an N x N pencil of generic rank rank (no zero minimal indices). """
    count = n - rank
    shapes = []
    available = n - count
    for cols in itertools.combinations_with_replacement(range(available, 0, -1), count):
        for rows in itertools.combinations_with_replacement(range(available, 0, -1), count):
            if sum(cols) + sum(rows) <= available:
                shapes.append(BShape.fromMinimalIndices(cols, rows))
    return sorted(set(shapes), key=lambda s: (-s.size, s.traces))


def _representative(pattern: tp.Tuple[Segre, ...], shape: tp.Optional[BShape], n: int,
                    params: tp.Optional[tp.Sequence] = None) -> tp.Tuple[MatrixPair, tp.Tuple[str, ...]]:
    values = [0, 1] + list(PARAMETER_SAMPLES if params is None else params)
    names = ['0', '1'] + ['λ%d' % k for k in range(1, len(values) - 1)]
    if len(values) < len(pattern):
        raise ValueError('Pattern with %d points needs %d parameters' % (len(pattern), len(pattern) - 2))
    values = [GaussianRational.coerce(v) for v in values[:len(pattern)]]
    if len(set(values)) != len(values):
        raise ValueError('Parameters must be distinct and differ from 0 and 1')
    blocks = sortBlocks((values[idx], size)
                        for idx, segre in enumerate(pattern) for size in segre)
    regular = sum(sum(s) for s in pattern)
    first = [ExactMatrix.identity(regular)]
    second = [jordanMatrix(blocks)]
    if shape is not None:
        first.append(shape.lambdaMatrix())
        second.append(shape.matrix())
    pair = MatrixPair(ExactMatrix.blockDiagonal(*first), ExactMatrix.blockDiagonal(*second))
    assert pair.n == n
    return pair, tuple(names[:len(pattern)])


def _makeFamily(n: int, rank: int, l: int, pattern, shape: tp.Optional[BShape], tol: Tolerances) -> ClassFamily:
    pair, slots = _representative(pattern, shape, n)
    descriptor = descriptorOf(pair, tol)
    assert (descriptor.n, descriptor.l, descriptor.bShape) == (rank, l, shape), \
        'Representative of %s classified as %s' % ((rank, l, shape), descriptor.familyName)
    return ClassFamily(dimension=n, n=rank, l=l, bShape=shape, pattern=pattern, slotNames=slots,
                       representative=pair, descriptor=descriptor)


def enumerateClasses(n: int, tol: tp.Optional[Tolerances] = None) -> tp.List[ClassFamily]:
    """ Every family, ordered by generic rank (descending) then minimal rank. """
    if n < 2:
        raise ValueError('Need N >= 2, got %d' % n)
    if tol is None:
        tol = Tolerances.fromConfiguration()
    families = []
    seen = set()
    for rank, l in familyTable(n):
        if rank == n:
            candidates = [(p, None) for p in jordanPatterns(n, l)]
        else:
            candidates = []
            for shape in bShapes(n, rank):
                for p in segreMultisets(n - shape.size):
                    maxParts = max((len(s) for s in p), default=0)
                    if rank - maxParts == l:
                        candidates.append((_orderPattern(p), shape))
        for pattern, shape in candidates:
            family = _makeFamily(n, rank, l, pattern, shape, tol)
            key = family.descriptor.discreteKey()
            if family.paramCount == 0:
                key = family.descriptor
            if key in seen:
                continue
            seen.add(key)
            families.append(family)
        logger.debug('c_{%d,%d}: %d families', rank, l, sum(1 for f in families if (f.n, f.l) == (rank, l)))
    logger.info('N=%d: %d families', n, len(families))
    return families


def familyRepresentative(family: ClassFamily, params: tp.Sequence = ()) -> MatrixPair:
    """
    The family member with its free eigenvalues (slots λ1, λ2, ...) set to params.

    Parameter values must be distinct from each other and from 0 and 1; other values
    still give a state, but of a more degenerate family.
    """
    if len(params) != family.freeSlots:
        raise ValueError('%s needs %d eigenvalues, got %d' % (family.familyName, family.freeSlots, len(params)))
    if not params:
        return family.representative
    pair, _ = _representative(family.pattern, family.bShape, family.dimension, params)
    return pair


def atlasFrame(families: tp.Sequence[ClassFamily]) -> pd.DataFrame:
    return pd.DataFrame([dict(
        family=f.familyName,
        n=f.n,
        l=f.l,
        bShape=str(f.bShape) if f.bShape is not None else '',
        pattern=' '.join('[%s]' % ','.join(str(k) for k in s) for s in f.pattern),
        representative=f.symbolicSecond(),
        parameters=f.paramCount,
    ) for f in families])


def atlasMarkdown(families: tp.Sequence[ClassFamily]) -> str:
    return atlasFrame(families).to_markdown(index=False)
