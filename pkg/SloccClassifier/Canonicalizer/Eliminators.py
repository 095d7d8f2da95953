"""
Local operations that move the singular part (Lambda', B) between charts of the pencil.

All constructions follow the block recursion: a block of size n+1 is a block of size n extended
by one c- or r-step, so the operators are built by extending those of the smaller block.
"""
import attr
import logging
import typing as tp

from SloccClassifier.Errors import SingularMatrixError
from SloccClassifier.ExactLinalg import ExactMatrix, GaussianRational, ZERO, ONE, solve

logger = logging.getLogger(__name__)

OperatorPair = tp.Tuple[ExactMatrix, ExactMatrix]


def _splitBlocks(lam: ExactMatrix, b: ExactMatrix) -> tp.List[tp.Tuple[int, int]]:
    """ Contiguous [start, stop) ranges of the direct summands. """
    n = lam.numRows
    ranges = []
    start = 0
    reach = 0
    for i in range(n):
        for j in range(n):
            if not lam[i, j].isZero() or not b[i, j].isZero() or not lam[j, i].isZero() or not b[j, i].isZero():
                reach = max(reach, j)
        if reach <= i:
            ranges.append((start, i + 1))
            start = i + 1
            reach = i + 1
    return ranges


def _blockSlice(m: ExactMatrix, start: int, stop: int) -> ExactMatrix:
    idx = range(start, stop)
    return m.submatrix(idx, idx)


def _row(m: ExactMatrix, i: int, cols: tp.Iterable[int]) -> ExactMatrix:
    return ExactMatrix([[m[i, j] for j in cols]])


def _col(m: ExactMatrix, j: int, rows: tp.Iterable[int]) -> ExactMatrix:
    return ExactMatrix([[m[i, j]] for i in rows], 1)


def _stack(topLeft: ExactMatrix, topRight: ExactMatrix, bottomLeft: ExactMatrix, bottomRight: ExactMatrix) -> ExactMatrix:
    rows = [list(a) + list(b) for a, b in zip(topLeft.rows, topRight.rows)]
    rows += [list(a) + list(b) for a, b in zip(bottomLeft.rows, bottomRight.rows)]
    return ExactMatrix(rows, topLeft.numCols + topRight.numCols)


def _blockEliminators(lam: ExactMatrix, b: ExactMatrix, coeff: GaussianRational) -> OperatorPair:
    """
    P, Q with P (Lambda' + coeff*B) Q = Lambda' and P B Q = B for a single block.
    """
    size = lam.numRows
    if size == 1:
        return ExactMatrix.identity(1), ExactMatrix.identity(1)
    inner = range(1, size)
    lamN, bN = lam.submatrix(inner, inner), b.submatrix(inner, inner)
    pN, qN = _blockEliminators(lamN, bN, coeff)
    eye = ExactMatrix.identity(size - 1)
    one = ExactMatrix([[ONE]])
    zRow, zCol = ExactMatrix.zeros(1, size - 1), ExactMatrix.zeros(size - 1, 1)
    r = _row(b, 0, inner)
    if not r.isZero():
        # c-step: X bN = r (E - qN), Y = coeff r qN + X lamN
        x = solve(bN.transpose(), (r @ (eye - qN)).transpose()).transpose()
        y = (r @ qN).scale(coeff) + x @ lamN
        p = _stack(one, x, zCol, eye) @ ExactMatrix.blockDiagonal(one, pN)
        q = ExactMatrix.blockDiagonal(one, qN) @ _stack(one, -y, zCol, eye)
    else:
        # r-step: bN X' = (E - pN) c, Y' = coeff pN c + lamN X'
        c = _col(b, 0, inner)
        x = solve(bN, (eye - pN) @ c)
        y = (pN @ c).scale(coeff) + lamN @ x
        p = _stack(one, zRow, -y, eye) @ ExactMatrix.blockDiagonal(one, pN)
        q = ExactMatrix.blockDiagonal(one, qN) @ _stack(one, zRow, x, eye)
    return p, q


def buildMixtureEliminators(lam: ExactMatrix, b: ExactMatrix, coeff) -> OperatorPair:
    """
    P, Q with P (Lambda' + coeff*B) Q = Lambda' and P B Q = B.
    """
    coeff = GaussianRational.coerce(coeff)
    ps, qs = [], []
    for start, stop in _splitBlocks(lam, b):
        p, q = _blockEliminators(_blockSlice(lam, start, stop), _blockSlice(b, start, stop), coeff)
        ps.append(p)
        qs.append(q)
    return ExactMatrix.blockDiagonal(*ps), ExactMatrix.blockDiagonal(*qs)


@attr.s(auto_attribs=True)
class Chains:
    """ Column chains (columns x0..xe, rows y1..ye) and row chains (rows w0..wh, columns z1..zh). """
    columnChains: tp.List[tp.Tuple[tp.List[int], tp.List[int]]]
    rowChains: tp.List[tp.Tuple[tp.List[int], tp.List[int]]]


def walkChains(first: ExactMatrix, second: ExactMatrix) -> Chains:
    """ Chains of the pair in which first plays Lambda' and second plays B. """
    n = first.numRows
    nonzero = lambda m, i, j: not m[i, j].isZero()
    colChains = []
    for head in range(n):
        if any(nonzero(second, i, head) for i in range(n)):
            continue
        cols, rows = [head], []
        while True:
            y = next((i for i in range(n) if nonzero(first, i, cols[-1])), None)
            if y is None:
                break
            x = next(j for j in range(n) if nonzero(second, y, j))
            rows.append(y)
            cols.append(x)
        colChains.append((cols, rows))
    rowChains = []
    for head in range(n):
        if any(nonzero(second, head, j) for j in range(n)):
            continue
        rows, cols = [head], []
        while True:
            z = next((j for j in range(n) if nonzero(first, rows[-1], j)), None)
            if z is None:
                break
            w = next(i for i in range(n) if nonzero(second, i, z))
            cols.append(z)
            rows.append(w)
        rowChains.append((rows, cols))
    return Chains(colChains, rowChains)


def _roleSwapPermutations(lam: ExactMatrix, b: ExactMatrix) -> OperatorPair:
    """
    Permutations (Pi_r, Pi_c) with Pi_r B Pi_c = Lambda' and Pi_r Lambda' Pi_c = B.
    """
    n = lam.numRows
    std = walkChains(lam, b)
    swapped = walkChains(b, lam)
    rowMap: tp.Dict[int, int] = {}
    colMap: tp.Dict[int, int] = {}
    byLength = lambda chains: sorted(chains, key=lambda ch: len(ch[0]))
    for (sCols, sRows), (wCols, wRows) in zip(byLength(std.columnChains), byLength(swapped.columnChains)):
        if len(sCols) != len(wCols):
            raise SingularMatrixError('Column chains do not match under role swap')
        colMap.update(zip(sCols, wCols))
        rowMap.update(zip(sRows, wRows))
    for (sRows, sCols), (wRows, wCols) in zip(byLength(std.rowChains), byLength(swapped.rowChains)):
        if len(sRows) != len(wRows):
            raise SingularMatrixError('Row chains do not match under role swap')
        rowMap.update(zip(sRows, wRows))
        colMap.update(zip(sCols, wCols))
    if len(rowMap) != n or len(colMap) != n:
        raise SingularMatrixError('Chains do not cover the singular block')
    piR = [[ZERO] * n for _ in range(n)]
    piC = [[ZERO] * n for _ in range(n)]
    for a, src in rowMap.items():
        piR[a][src] = ONE
    for c, src in colMap.items():
        piC[src][c] = ONE
    return ExactMatrix(piR, n), ExactMatrix(piC, n)


def buildPrimedEliminators(lam: ExactMatrix, b: ExactMatrix, coeff) -> OperatorPair:
    """
    P', Q' with P' (B + coeff*Lambda') Q' = B and P' Lambda' Q' = Lambda'.
    """
    piR, piC = _roleSwapPermutations(lam, b)
    p, q = buildMixtureEliminators(lam, b, coeff)
    return piR.transpose() @ p @ piR, piC @ q @ piC.transpose()


def buildFlipOperators(lam: ExactMatrix, b: ExactMatrix, coeff=ONE) -> tp.Tuple[ExactMatrix, ExactMatrix, tp.Tuple[GaussianRational, GaussianRational]]:
    """
    P, Q and scale factors (s1, s2) with P Lambda' Q = s1*B and P B Q = s2*Lambda'.
    """
    coeff = GaussianRational.coerce(coeff)
    if coeff.isZero():
        raise ValueError('Flip needs a nonzero coefficient')
    p1, q1 = buildMixtureEliminators(lam, b, coeff)
    p2, q2 = buildPrimedEliminators(lam, b, -coeff.inverse())
    return p1 @ p2 @ p1, q1 @ q2 @ q1, (-coeff, coeff.inverse())


def _diagonalRescaling(lam: ExactMatrix, b: ExactMatrix, lamScale: GaussianRational,
                       bScale: GaussianRational) -> OperatorPair:
    """ Diagonal P, Q with P (lamScale*Lambda') Q = Lambda' and P (bScale*B) Q = B. """
    n = lam.numRows
    edges: tp.Dict[tp.Tuple[str, int], tp.List[tp.Tuple[tp.Tuple[str, int], GaussianRational]]] = {}
    for i in range(n):
        for j in range(n):
            for m, factor in ((lam, lamScale), (b, bScale)):
                if not m[i, j].isZero():
                    weight = m[i, j] * factor
                    edges.setdefault(('p', i), []).append((('q', j), weight))
                    edges.setdefault(('q', j), []).append((('p', i), weight))
    values: tp.Dict[tp.Tuple[str, int], GaussianRational] = {}
    for root in [('p', i) for i in range(n)] + [('q', j) for j in range(n)]:
        if root in values:
            continue
        values[root] = ONE
        stack = [root]
        while stack:
            node = stack.pop()
            for other, weight in edges.get(node, []):
                # p_i * weight * q_j = original entry (a 0/1 pattern, here 1)
                want = (weight * values[node]).inverse()
                if other in values:
                    if values[other] != want:
                        raise SingularMatrixError('Singular block pattern contains a cycle')
                    continue
                values[other] = want
                stack.append(other)
    p = ExactMatrix.diagonal([values[('p', i)] for i in range(n)])
    q = ExactMatrix.diagonal([values[('q', j)] for j in range(n)])
    return p, q


def restoreBlockChart(lam: ExactMatrix, b: ExactMatrix, t: ExactMatrix) -> OperatorPair:
    """
    P, Q returning the singular part to (Lambda', B) after the slice mixing t, which turned it into
    (t00*Lambda' + t01*B, t10*Lambda' + t11*B).
    """
    (a, c1), (c, d) = t.rows
    ops: tp.List[OperatorPair] = []
    if a.isZero():
        p, q, _ = buildFlipOperators(lam, b, ONE)
        ops.append((p, q))
        # Lambda' -> -B, B -> Lambda'
        a, c1, c, d = c1, -a, d, -c
    beta = c1 / a
    if not beta.isZero():
        ops.append(buildMixtureEliminators(lam, b, beta))
        d = d - c * beta
    if d.isZero():
        raise SingularMatrixError('Slice mixing is singular')
    mu = c / d
    if not mu.isZero():
        ops.append(buildPrimedEliminators(lam, b, mu))
    ops.append(_diagonalRescaling(lam, b, a, d))
    p = ExactMatrix.identity(lam.numRows)
    q = ExactMatrix.identity(lam.numRows)
    for opP, opQ in ops:
        p = opP @ p
        q = q @ opQ
    return p, q
