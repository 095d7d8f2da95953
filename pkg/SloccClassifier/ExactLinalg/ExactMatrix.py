"""
Dense matrices over the Gaussian rationals with exact rank, determinant, inverse and kernel.
"""
import attr
import logging
import numpy as np
import typing as tp

from SloccClassifier.Errors import SingularMatrixError
from SloccClassifier.ExactLinalg.GaussianRational import GaussianRational, ZERO, ONE

logger = logging.getLogger(__name__)

Vector = tp.Tuple[GaussianRational, ...]


def _toRows(rows) -> tp.Tuple[Vector, ...]:
    return tuple(tuple(GaussianRational.coerce(v) for v in row) for row in rows)


@attr.s(frozen=True, eq=False, repr=False)
class ExactMatrix:
    _rows: tp.Tuple[Vector, ...] = attr.ib(converter=_toRows)
    numCols: int = attr.ib(default=None)

    def __attrs_post_init__(self):
        if self.numCols is None:
            object.__setattr__(self, 'numCols', len(self._rows[0]) if self._rows else 0)
        for row in self._rows:
            if len(row) != self.numCols:
                raise ValueError('Ragged matrix rows')

    @classmethod
    def fromRows(cls, rows: tp.Sequence[tp.Sequence[tp.Any]]) -> 'ExactMatrix':
        rows = list(rows)
        return cls(rows, len(rows[0]) if rows else 0)

    @classmethod
    def zeros(cls, numRows: int, numCols: tp.Optional[int] = None) -> 'ExactMatrix':
        if numCols is None:
            numCols = numRows
        return cls([[ZERO] * numCols for _ in range(numRows)], numCols)

    @classmethod
    def identity(cls, n: int) -> 'ExactMatrix':
        return cls.diagonal([ONE] * n)

    @classmethod
    def diagonal(cls, values: tp.Sequence[tp.Any]) -> 'ExactMatrix':
        n = len(values)
        rows = [[ZERO] * n for _ in range(n)]
        for i, v in enumerate(values):
            rows[i][i] = v
        return cls(rows, n)

    @classmethod
    def fromColumns(cls, columns: tp.Sequence[tp.Sequence[tp.Any]], numRows: int) -> 'ExactMatrix':
        return cls([[col[i] for col in columns] for i in range(numRows)], len(columns))

    @classmethod
    def blockDiagonal(cls, *blocks: 'ExactMatrix') -> 'ExactMatrix':
        numRows = sum(b.numRows for b in blocks)
        numCols = sum(b.numCols for b in blocks)
        rows = [[ZERO] * numCols for _ in range(numRows)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                rows[r0 + i][c0:c0 + b.numCols] = row
            r0 += b.numRows
            c0 += b.numCols
        return cls(rows, numCols)

    @classmethod
    def fromNumpy(cls, arr: np.ndarray, maxDenominator: int = 10**9) -> 'ExactMatrix':
        return cls([[GaussianRational.fromFloat(v, maxDenominator) for v in row] for row in arr],
                   arr.shape[1])

    @property
    def rows(self) -> tp.Tuple[Vector, ...]:
        return self._rows

    @property
    def numRows(self) -> int:
        return len(self._rows)

    @property
    def shape(self) -> tp.Tuple[int, int]:
        return self.numRows, self.numCols

    @property
    def isSquare(self) -> bool:
        return self.numRows == self.numCols

    def __getitem__(self, index: tp.Tuple[int, int]) -> GaussianRational:
        i, j = index
        return self._rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self._rows)

    def toLists(self) -> tp.List[tp.List[GaussianRational]]:
        return [list(row) for row in self._rows]

    def toNumpy(self) -> np.ndarray:
        arr = np.zeros(self.shape, dtype=complex)
        for i, row in enumerate(self._rows):
            for j, v in enumerate(row):
                if not v.isZero():
                    arr[i, j] = v.toComplex()
        return arr

    def isZero(self) -> bool:
        return all(v.isZero() for row in self._rows for v in row)

    def submatrix(self, rowIndices: tp.Sequence[int], colIndices: tp.Sequence[int]) -> 'ExactMatrix':
        return ExactMatrix([[self._rows[i][j] for j in colIndices] for i in rowIndices], len(colIndices))

    def withEntry(self, i: int, j: int, value) -> 'ExactMatrix':
        rows = self.toLists()
        rows[i][j] = GaussianRational.coerce(value)
        return ExactMatrix(rows, self.numCols)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __add__(self, other: 'ExactMatrix') -> 'ExactMatrix':
        self._checkSameShape(other)
        return ExactMatrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)],
                           self.numCols)

    def __sub__(self, other: 'ExactMatrix') -> 'ExactMatrix':
        self._checkSameShape(other)
        return ExactMatrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)],
                           self.numCols)

    def __neg__(self) -> 'ExactMatrix':
        return self.scale(-ONE)

    def scale(self, factor) -> 'ExactMatrix':
        factor = GaussianRational.coerce(factor)
        if factor.isZero():
            return ExactMatrix.zeros(self.numRows, self.numCols)
        return ExactMatrix([[factor * v for v in row] for row in self._rows], self.numCols)

    def __matmul__(self, other: 'ExactMatrix') -> 'ExactMatrix':
        if self.numCols != other.numRows:
            raise ValueError('Shape mismatch %s @ %s' % (self.shape, other.shape))
        cols = [other.column(j) for j in range(other.numCols)]
        out = []
        for row in self._rows:
            nz = [(k, v) for k, v in enumerate(row) if not v.isZero()]
            outRow = []
            for col in cols:
                acc = ZERO
                for k, v in nz:
                    c = col[k]
                    if not c.isZero():
                        acc = acc + v * c
                outRow.append(acc)
            out.append(outRow)
        return ExactMatrix(out, other.numCols)

    def transpose(self) -> 'ExactMatrix':
        return ExactMatrix([[row[j] for row in self._rows] for j in range(self.numCols)], self.numRows)

    def adjoint(self) -> 'ExactMatrix':
        return ExactMatrix([[v.conjugate() for v in col] for col in zip(*self._rows)], self.numRows)

    def trace(self) -> GaussianRational:
        acc = ZERO
        for i in range(min(self.shape)):
            acc = acc + self._rows[i][i]
        return acc

    def power(self, k: int) -> 'ExactMatrix':
        result = ExactMatrix.identity(self.numRows)
        for _ in range(k):
            result = result @ self
        return result

    def rank(self) -> int:
        return rankExact(self)

    def det(self) -> GaussianRational:
        return determinant(self)

    def inverse(self) -> 'ExactMatrix':
        return invert(self)

    def __str__(self):
        strs = [[v.toString() for v in row] for row in self._rows]
        width = max((len(s) for row in strs for s in row), default=1)
        return '\n'.join(' '.join(s.rjust(width) for s in row) for row in strs)

    def __repr__(self):
        return 'ExactMatrix(%s)' % [[v.toString() for v in row] for row in self._rows]

    def _checkSameShape(self, other: 'ExactMatrix'):
        if self.shape != other.shape:
            raise ValueError('Shape mismatch %s vs %s' % (self.shape, other.shape))


def _eliminate(rows: tp.List[tp.List[GaussianRational]], numCols: int,
               fractionFree: bool = True) -> tp.Tuple[int, int, bool]:
    """
    In-place forward elimination (Bareiss when fractionFree).

    Returns (rank, sign of the row permutation, whether a pivot column was skipped).
    """
    numRows = len(rows)
    rank = 0
    sign = 1
    skipped = False
    prevPivot = ONE
    for col in range(numCols):
        if rank == numRows:
            break
        pivotRow = next((r for r in range(rank, numRows) if not rows[r][col].isZero()), None)
        if pivotRow is None:
            skipped = True
            continue
        if pivotRow != rank:
            rows[rank], rows[pivotRow] = rows[pivotRow], rows[rank]
            sign = -sign
        pivot = rows[rank][col]
        pivotRowVals = rows[rank]
        for r in range(rank + 1, numRows):
            row = rows[r]
            factor = row[col]
            if factor.isZero():
                if fractionFree and not skipped:
                    for c in range(col + 1, numCols):
                        if not row[c].isZero():
                            row[c] = pivot * row[c] / prevPivot
                continue
            if fractionFree and not skipped:
                for c in range(col + 1, numCols):
                    row[c] = (pivot * row[c] - factor * pivotRowVals[c]) / prevPivot
            else:
                ratio = factor / pivot
                for c in range(col + 1, numCols):
                    if not pivotRowVals[c].isZero():
                        row[c] = row[c] - ratio * pivotRowVals[c]
            row[col] = ZERO
        prevPivot = pivot
        rank += 1
    return rank, sign, skipped


def rankExact(m: ExactMatrix) -> int:
    """ Rank by fraction-free (Bareiss) elimination. """
    if m.numRows == 0 or m.numCols == 0:
        return 0
    rows = m.toLists()
    rank, _, _ = _eliminate(rows, m.numCols, fractionFree=True)
    return rank


def determinant(m: ExactMatrix) -> GaussianRational:
    """ Determinant by fraction-free (Bareiss) elimination. """
    if not m.isSquare:
        raise ValueError('Determinant of non-square matrix')
    n = m.numRows
    if n == 0:
        return ONE
    rows = m.toLists()
    rank, sign, skipped = _eliminate(rows, n, fractionFree=True)
    if rank < n or skipped:
        return ZERO
    return rows[n - 1][n - 1] if sign > 0 else -rows[n - 1][n - 1]


def _rref(rows: tp.List[tp.List[GaussianRational]], numCols: int) -> tp.List[int]:
    """ In-place reduced row echelon form; returns pivot columns. """
    numRows = len(rows)
    pivots = []
    r = 0
    for col in range(numCols):
        if r == numRows:
            break
        pivotRow = next((i for i in range(r, numRows) if not rows[i][col].isZero()), None)
        if pivotRow is None:
            continue
        rows[r], rows[pivotRow] = rows[pivotRow], rows[r]
        pivotInv = rows[r][col].inverse()
        rows[r] = [v * pivotInv if not v.isZero() else v for v in rows[r]]
        pivotVals = rows[r]
        nzCols = [c for c in range(col, len(pivotVals)) if not pivotVals[c].isZero()]
        for i in range(numRows):
            if i == r:
                continue
            factor = rows[i][col]
            if factor.isZero():
                continue
            row = rows[i]
            for c in nzCols:
                row[c] = row[c] - factor * pivotVals[c]
        pivots.append(col)
        r += 1
    return pivots


def kernelBasis(m: ExactMatrix) -> tp.List[Vector]:
    """ Basis of the right null space {x : m x = 0}. """
    rows = m.toLists()
    pivots = _rref(rows, m.numCols)
    pivotSet = set(pivots)
    basis = []
    for free in range(m.numCols):
        if free in pivotSet:
            continue
        vec = [ZERO] * m.numCols
        vec[free] = ONE
        for r, p in enumerate(pivots):
            vec[p] = -rows[r][free]
        basis.append(tuple(vec))
    return basis


def invert(m: ExactMatrix) -> ExactMatrix:
    if not m.isSquare:
        raise ValueError('Inverse of non-square matrix')
    n = m.numRows
    rows = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m.rows)]
    pivots = _rref(rows, n)
    if len(pivots) < n:
        raise SingularMatrixError('Matrix of size %d is singular (rank %d)' % (n, len(pivots)))
    return ExactMatrix([row[n:] for row in rows], n)


def solve(m: ExactMatrix, rhs: ExactMatrix) -> ExactMatrix:
    """
    One solution X of m X = rhs (free variables set to zero).
    """
    if rhs.numRows != m.numRows:
        raise ValueError('Shape mismatch in solve: %s, %s' % (m.shape, rhs.shape))
    rows = [list(a) + list(b) for a, b in zip(m.rows, rhs.rows)]
    pivots = _rref(rows, m.numCols)
    for r in range(len(pivots), m.numRows):
        if any(not v.isZero() for v in rows[r][m.numCols:]):
            raise SingularMatrixError('Inconsistent linear system')
    out = [[ZERO] * rhs.numCols for _ in range(m.numCols)]
    for r, p in enumerate(pivots):
        out[p] = rows[r][m.numCols:]
    return ExactMatrix(out, rhs.numCols)


def vectorsRank(vectors: tp.Sequence[Vector]) -> int:
    if not vectors:
        return 0
    return rankExact(ExactMatrix([list(v) for v in vectors], len(vectors[0])))


def applyToVector(m: ExactMatrix, v: Vector) -> Vector:
    out = []
    for row in m.rows:
        acc = ZERO
        for a, b in zip(row, v):
            if not a.isZero() and not b.isZero():
                acc = acc + a * b
        out.append(acc)
    return tuple(out)
