"""
Normal form (Lambda', B) of the singular part of a pencil.

Each block grows from the 1 x 1 zero pair B1. A c-extension prepends a row and a column, hooking the
new row onto the current head of the column chain; an r-extension does the same for the row chain.
B3 = r(c(B1)) carries minimal indices (1, 1); every further c raises the column index and every
further r raises the row index.
"""
import attr
import typing as tp

from SloccClassifier.ExactLinalg import ExactMatrix, ZERO, ONE

_BASE_STEPS = 'cr'


@attr.s(auto_attribs=True, frozen=True)
class BlockPattern:
    """ 0/1 patterns of one block together with the positions of its two chain heads. """
    lambdaRows: tp.List[tp.List[int]]
    bRows: tp.List[tp.List[int]]
    columnHead: int
    rowHead: int


def growBlock(steps: str) -> BlockPattern:
    lam = [[0]]
    b = [[0]]
    colHead, rowHead = 0, 0
    for step in steps:
        size = len(b) + 1
        newLam = [[0] * size for _ in range(size)]
        newB = [[0] * size for _ in range(size)]
        newLam[0][0] = 1
        for i in range(size - 1):
            for j in range(size - 1):
                newLam[i + 1][j + 1] = lam[i][j]
                newB[i + 1][j + 1] = b[i][j]
        if step == 'c':
            newB[0][1 + colHead] = 1
            colHead, rowHead = 0, rowHead + 1
        elif step == 'r':
            newB[1 + rowHead][0] = 1
            colHead, rowHead = colHead + 1, 0
        else:
            raise ValueError('Unknown extension step %r' % step)
        lam, b = newLam, newB
    return BlockPattern(lambdaRows=lam, bRows=b, columnHead=colHead, rowHead=rowHead)


def _toExact(pattern: tp.List[tp.List[int]]) -> ExactMatrix:
    return ExactMatrix([[ONE if v else ZERO for v in row] for row in pattern], len(pattern))


@attr.s(auto_attribs=True, frozen=True)
class BShape:
    """
    Direct sum of singular blocks, one extension trace per block (the steps applied after B3).
    """
    traces: tp.Tuple[str, ...]

    def __attrs_post_init__(self):
        for trace in self.traces:
            if set(trace) - set('cr'):
                raise ValueError('Trace %r may only contain c and r' % trace)

    @classmethod
    def fromMinimalIndices(cls, columnIndices: tp.Sequence[int], rowIndices: tp.Sequence[int]) -> 'BShape':
        if len(columnIndices) != len(rowIndices):
            raise ValueError('Need as many column as row minimal indices')
        if any(e < 1 for e in columnIndices) or any(h < 1 for h in rowIndices):
            raise ValueError('Zero minimal indices do not occur in truly entangled states')
        pairs = zip(sorted(columnIndices, reverse=True), sorted(rowIndices, reverse=True))
        return cls(tuple('c' * (e - 1) + 'r' * (h - 1) for e, h in pairs))

    @property
    def blocks(self) -> tp.List[tp.Tuple[int, int]]:
        """ (column index, row index) per block. """
        return [(1 + t.count('c'), 1 + t.count('r')) for t in self.traces]

    @property
    def columnIndices(self) -> tp.Tuple[int, ...]:
        return tuple(sorted((e for e, _ in self.blocks), reverse=True))

    @property
    def rowIndices(self) -> tp.Tuple[int, ...]:
        return tuple(sorted((h for _, h in self.blocks), reverse=True))

    @property
    def blockSizes(self) -> tp.List[int]:
        return [e + h + 1 for e, h in self.blocks]

    @property
    def size(self) -> int:
        return sum(self.blockSizes)

    @property
    def rank(self) -> int:
        """ Rank of Lambda' (and of B). """
        return self.size - len(self.traces)

    def patterns(self) -> tp.List[BlockPattern]:
        return [growBlock(_BASE_STEPS + t) for t in self.traces]

    def lambdaMatrix(self) -> ExactMatrix:
        return ExactMatrix.blockDiagonal(*(_toExact(p.lambdaRows) for p in self.patterns()))

    def matrix(self) -> ExactMatrix:
        return ExactMatrix.blockDiagonal(*(_toExact(p.bRows) for p in self.patterns()))

    def toString(self) -> str:
        return ' + '.join('B%d%s' % (3 + len(t), ('(%s)' % t) if t else '') for t in self.traces)

    def __str__(self):
        return self.toString()

    def toJson(self) -> tp.Dict[str, tp.Any]:
        return dict(traces=list(self.traces),
                    columnIndices=list(self.columnIndices),
                    rowIndices=list(self.rowIndices))

    @classmethod
    def fromJson(cls, d: tp.Dict[str, tp.Any]) -> 'BShape':
        return cls(tuple(d['traces']))
