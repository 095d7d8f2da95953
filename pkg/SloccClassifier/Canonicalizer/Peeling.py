"""
Peeling the singular part off a pencil whose first slice already has the generic rank r.

The first slice is brought to diag(E_r, 0). The trailing block of the second slice then has to vanish,
and the coupling rows and columns of the trailing indices must have full rank; a rank drop there is a
zero last row or column after a change of basis, so one party's reduced density matrix is deficient.

Column chains are peeled first, each time one of minimal length, then row chains on the transposed
remainder. A peeled chain is cut loose from the rest by one linear solve; minimality of its length is
what makes that solve consistent. What is left is the regular part with an invertible first slice.
The chains are finally permuted into the BShape layout, chain for chain of equal length.
"""
import attr
import logging
import typing as tp

from SloccClassifier.Canonicalizer.BShape import BShape
from SloccClassifier.Canonicalizer.Eliminators import walkChains
from SloccClassifier.Errors import NotTrueEntangledError, SingularMatrixError
from SloccClassifier.ExactLinalg import ExactMatrix, ZERO, ONE, kernelBasis, solve
from SloccClassifier.ExactLinalg.ExactMatrix import Vector, applyToVector, vectorsRank
from SloccClassifier.StateModel import MatrixPair, reducedDensityRanks

logger = logging.getLogger(__name__)

COLUMN_CHAIN = 'c'
ROW_CHAIN = 'r'


@attr.s(auto_attribs=True, frozen=True)
class PeeledChain:
    kind: str
    length: int
    rowStart: int
    colStart: int


@attr.s(auto_attribs=True, frozen=True)
class Peeling:
    """ P, Q with P pair Q = (E_k + Lambda', A + B), the singular part in the BShape layout. """
    p: ExactMatrix
    q: ExactMatrix
    regularSize: int
    bShape: BShape
    result: MatrixPair
    chains: tp.Tuple[PeeledChain, ...] = ()

    @property
    def regularPart(self) -> ExactMatrix:
        idx = range(self.regularSize)
        return self.result.gamma2.submatrix(idx, idx)


def _unit(dim: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(dim))


def _completeBasis(vectors: tp.Sequence[Vector], dim: int) -> tp.List[Vector]:
    """ vectors followed by unit vectors up to a basis. """
    basis = list(vectors)
    if basis and vectorsRank(basis) < len(basis):
        raise SingularMatrixError('Chain vectors are linearly dependent')
    for i in range(dim):
        if len(basis) == dim:
            break
        candidate = basis + [_unit(dim, i)]
        if vectorsRank(candidate) == len(candidate):
            basis = candidate
    return basis


def _shear(corner: ExactMatrix, size: int) -> ExactMatrix:
    """ Identity with corner in its top right. """
    rows = ExactMatrix.identity(size).toLists()
    offset = size - corner.numCols
    for i, row in enumerate(corner.rows):
        rows[i][offset:] = row
    return ExactMatrix(rows, size)


def normalizeFirstSlice(first: ExactMatrix) -> tp.Tuple[ExactMatrix, ExactMatrix, int]:
    """ P, Q and r with P first Q = diag(E_r, 0). """
    n = first.numRows
    kernel = kernelBasis(first)
    rank = n - len(kernel)
    cols = _completeBasis(kernel, n)
    cols = cols[len(kernel):] + cols[:len(kernel)]
    q = ExactMatrix.fromColumns(cols, n)
    image = [applyToVector(first, v) for v in cols[:rank]]
    p = ExactMatrix.fromColumns(_completeBasis(image, n), n).inverse()
    return p, q, rank


def _checkTrailing(normalized: MatrixPair, rank: int, source: MatrixPair):
    n = normalized.n
    zone, tail = range(rank), range(rank, n)
    second = normalized.gamma2
    if not second.submatrix(tail, tail).isZero():
        raise SingularMatrixError('Trailing block of the second slice does not vanish at generic rank %d' % rank)
    if second.submatrix(zone, tail).rank() < n - rank or second.submatrix(tail, zone).rank() < n - rank:
        raise NotTrueEntangledError(reducedDensityRanks(source), n)


def _minimalColumnChain(f1: ExactMatrix, f2: ExactMatrix) -> tp.List[Vector]:
    """
    Shortest x_0..x_e with f2 x_0 = 0, f1 x_i = f2 x_(i+1) and f1 x_e = 0.
    """
    numRows, numCols = f1.shape
    for e in range(numCols):
        width = (e + 1) * numCols
        rows = []
        for block in range(e + 2):
            for i in range(numRows):
                row = [ZERO] * width
                if block <= e:
                    # -f2 x_block, plain f2 for the head equation
                    for j in range(numCols):
                        if not f2[i, j].isZero():
                            row[block * numCols + j] = f2[i, j] if block == 0 else -f2[i, j]
                if block >= 1:
                    for j in range(numCols):
                        if not f1[i, j].isZero():
                            row[(block - 1) * numCols + j] = f1[i, j]
                rows.append(row)
        basis = kernelBasis(ExactMatrix(rows, width))
        if basis:
            v = basis[0]
            return [v[i * numCols:(i + 1) * numCols] for i in range(e + 1)]
    raise SingularMatrixError('Pencil of shape %s has no column chain' % (f1.shape,))


def _decouple(heads: tp.Sequence[ExactMatrix], couplings: tp.Sequence[ExactMatrix],
              tails: tp.Sequence[ExactMatrix]) -> tp.Tuple[ExactMatrix, ExactMatrix]:
    """ X, Y with L_a X + Y H_a = -G_a for both slices a. """
    e, width = couplings[0].shape
    height = tails[0].numRows
    chainWidth = heads[0].numCols
    numX = chainWidth * width
    numUnknowns = numX + e * height
    rows, rhs = [], []
    for l, g, h in zip(heads, couplings, tails):
        for i in range(e):
            for j in range(width):
                row = [ZERO] * numUnknowns
                for k in range(chainWidth):
                    if not l[i, k].isZero():
                        row[k * width + j] = l[i, k]
                for k in range(height):
                    if not h[k, j].isZero():
                        row[numX + i * height + k] = h[k, j]
                rows.append(row)
                rhs.append([-g[i, j]])
    if not rows:
        return ExactMatrix.zeros(chainWidth, width), ExactMatrix.zeros(e, height)
    sol = solve(ExactMatrix(rows, numUnknowns), ExactMatrix(rhs, 1))
    values = [sol[i, 0] for i in range(numUnknowns)]
    x = ExactMatrix([values[k * width:(k + 1) * width] for k in range(chainWidth)], width)
    y = ExactMatrix([values[numX + i * height:numX + (i + 1) * height] for i in range(e)], height)
    return x, y


def _peelColumnChain(f1: ExactMatrix, f2: ExactMatrix) -> tp.Tuple[ExactMatrix, ExactMatrix, int]:
    """
    P, Q and e with P f Q = L_e + rest, L_e = ([E_e | 0], [0 | E_e]) in the top left corner.
    """
    numRows, numCols = f1.shape
    chain = _minimalColumnChain(f1, f2)
    e = len(chain) - 1
    ys = [applyToVector(f2, x) for x in chain[1:]]
    q = ExactMatrix.fromColumns(_completeBasis(chain, numCols), numCols)
    p = ExactMatrix.fromColumns(_completeBasis(ys, numRows), numRows).inverse()
    m1, m2 = p @ f1 @ q, p @ f2 @ q
    head, rest = range(e), range(e, numRows)
    chainCols, restCols = range(e + 1), range(e + 1, numCols)
    assert m1.submatrix(rest, chainCols).isZero() and m2.submatrix(rest, chainCols).isZero()
    x, y = _decouple([m1.submatrix(head, chainCols), m2.submatrix(head, chainCols)],
                     [m1.submatrix(head, restCols), m2.submatrix(head, restCols)],
                     [m1.submatrix(rest, restCols), m2.submatrix(rest, restCols)])
    return _shear(y, numRows) @ p, q @ _shear(x, numCols), e


def _layoutPermutations(chains: tp.Sequence[PeeledChain], shape: BShape, regularSize: int,
                        regularStart: int) -> tp.Tuple[ExactMatrix, ExactMatrix]:
    """ Permutations carrying the peeled chains onto the chains of the BShape layout. """
    n = regularSize + shape.size
    rowMap = {i: regularStart + i for i in range(regularSize)}
    colMap = dict(rowMap)
    pool = {kind: sorted((c for c in chains if c.kind == kind), key=lambda c: c.length)
            for kind in (COLUMN_CHAIN, ROW_CHAIN)}

    def take(kind: str, length: int) -> PeeledChain:
        for c in pool[kind]:
            if c.length == length:
                pool[kind].remove(c)
                return c
        raise SingularMatrixError('No peeled %s-chain of length %d left' % (kind, length))

    target = walkChains(shape.lambdaMatrix(), shape.matrix())
    for cols, rows in target.columnChains:
        chain = take(COLUMN_CHAIN, len(rows))
        colMap.update((regularSize + c, chain.colStart + i) for i, c in enumerate(cols))
        rowMap.update((regularSize + r, chain.rowStart + i) for i, r in enumerate(rows))
    for rows, cols in target.rowChains:
        chain = take(ROW_CHAIN, len(cols))
        rowMap.update((regularSize + r, chain.rowStart + i) for i, r in enumerate(rows))
        colMap.update((regularSize + c, chain.colStart + i) for i, c in enumerate(cols))
    if len(rowMap) != n or len(colMap) != n:
        raise SingularMatrixError('Peeled chains do not cover the pencil')
    piR = [[ZERO] * n for _ in range(n)]
    piC = [[ZERO] * n for _ in range(n)]
    for dst, src in rowMap.items():
        piR[dst][src] = ONE
    for dst, src in colMap.items():
        piC[src][dst] = ONE
    return ExactMatrix(piR, n), ExactMatrix(piC, n)


def peelSingularPart(pair: MatrixPair, shape: BShape) -> Peeling:
    n = pair.n
    p, q, rank = normalizeFirstSlice(pair.gamma1)
    f1, f2 = p @ pair.gamma1 @ q, p @ pair.gamma2 @ q
    _checkTrailing(MatrixPair(f1, f2), rank, pair)
    m = n - rank
    if m != len(shape.traces):
        raise SingularMatrixError('First slice has rank %d, %s needs %d' % (rank, shape, n - len(shape.traces)))

    chains = []
    rowOff = colOff = 0
    for kind in (COLUMN_CHAIN,) * m + (ROW_CHAIN,) * m:
        rows, cols = range(rowOff, n), range(colOff, n)
        a1, a2 = f1.submatrix(rows, cols), f2.submatrix(rows, cols)
        if kind == COLUMN_CHAIN:
            pl, ql, e = _peelColumnChain(a1, a2)
            height, width = e, e + 1
        else:
            pt, qt, e = _peelColumnChain(a1.transpose(), a2.transpose())
            pl, ql = qt.transpose(), pt.transpose()
            height, width = e + 1, e
        chains.append(PeeledChain(kind, e, rowOff, colOff))
        logger.debug('Peeled %s-chain of length %d at (%d, %d)', kind, e, rowOff, colOff)
        pEmb = ExactMatrix.blockDiagonal(ExactMatrix.identity(rowOff), pl)
        qEmb = ExactMatrix.blockDiagonal(ExactMatrix.identity(colOff), ql)
        p, q = pEmb @ p, q @ qEmb
        f1, f2 = pEmb @ f1 @ qEmb, pEmb @ f2 @ qEmb
        rowOff += height
        colOff += width
    assert rowOff == colOff

    found = (tuple(sorted((c.length for c in chains if c.kind == COLUMN_CHAIN), reverse=True)),
             tuple(sorted((c.length for c in chains if c.kind == ROW_CHAIN), reverse=True)))
    if found != (shape.columnIndices, shape.rowIndices):
        raise SingularMatrixError('Peeled chain lengths %s disagree with %s' % (found, shape))

    k = n - rowOff
    if k:
        reg = range(rowOff, n)
        pEmb = ExactMatrix.blockDiagonal(ExactMatrix.identity(rowOff), f1.submatrix(reg, reg).inverse())
        p, f1, f2 = pEmb @ p, pEmb @ f1, pEmb @ f2

    piR, piC = _layoutPermutations(chains, shape, k, rowOff)
    result = MatrixPair(piR @ f1 @ piC, piR @ f2 @ piC)
    assert result.gamma1 == ExactMatrix.blockDiagonal(ExactMatrix.identity(k), shape.lambdaMatrix())
    return Peeling(p=piR @ p, q=q @ piC, regularSize=k, bShape=shape, result=result, chains=tuple(chains))
