"""
Tripartite 2 x N x N states, their matrix-pair form and local invertible operations on them.
"""
import attr
import logging
import random
import typing as tp
from fractions import Fraction

from SloccClassifier.Errors import SingularMatrixError, ParseError
from SloccClassifier.ExactLinalg import ExactMatrix, GaussianRational, ZERO, ONE, determinant

logger = logging.getLogger(__name__)

Index = tp.Tuple[int, int, int]

PARTITES = ('A', 'B', 'C')


def _normalizeEntries(entries) -> tp.Tuple[tp.Tuple[Index, GaussianRational], ...]:
    if isinstance(entries, dict):
        entries = entries.items()
    out = {}
    for idx, val in entries:
        val = GaussianRational.coerce(val)
        if not val.isZero():
            out[tuple(idx)] = val
    return tuple(sorted(out.items()))


@attr.s(auto_attribs=True, frozen=True)
class StateTensor:
    """ Sparse amplitudes a_ijk with i in {0, 1} and j, k in [0, n). """
    n: int
    entries: tp.Tuple[tp.Tuple[Index, GaussianRational], ...] = attr.ib(converter=_normalizeEntries)

    def __attrs_post_init__(self):
        if self.n < 2:
            raise ValueError('Dimension must be at least 2, got %d' % self.n)
        for (i, j, k), _ in self.entries:
            if i not in (0, 1) or not 0 <= j < self.n or not 0 <= k < self.n:
                raise ValueError('Index (%d, %d, %d) out of range for N=%d' % (i, j, k, self.n))
        if not self.entries:
            raise ValueError('State has no nonzero amplitude')

    def entry(self, i: int, j: int, k: int) -> GaussianRational:
        return dict(self.entries).get((i, j, k), ZERO)


@attr.s(auto_attribs=True, frozen=True)
class MatrixPair:
    gamma1: ExactMatrix
    gamma2: ExactMatrix

    def __attrs_post_init__(self):
        if not self.gamma1.isSquare or self.gamma1.shape != self.gamma2.shape:
            raise ValueError('Matrix pair needs two square matrices of equal size, got %s and %s'
                             % (self.gamma1.shape, self.gamma2.shape))
        if self.gamma1.isZero() and self.gamma2.isZero():
            raise ValueError('Matrix pair is identically zero')

    @classmethod
    def fromRows(cls, rows1, rows2) -> 'MatrixPair':
        return cls(ExactMatrix.fromRows(rows1), ExactMatrix.fromRows(rows2))

    @property
    def n(self) -> int:
        return self.gamma1.numRows

    def direction(self, alpha, beta) -> ExactMatrix:
        """ alpha*gamma1 + beta*gamma2 """
        return self.gamma1.scale(alpha) + self.gamma2.scale(beta)

    def __str__(self):
        return gridRender(self)


@attr.s(auto_attribs=True, frozen=True)
class ILOTriple:
    """
    Invertible local operation: t mixes the two slices, p acts on the left, q on the right.
    """
    t: ExactMatrix
    p: ExactMatrix
    q: ExactMatrix

    def __attrs_post_init__(self):
        if self.t.shape != (2, 2):
            raise ValueError('T must be 2 x 2, got %s' % (self.t.shape,))
        if not self.p.isSquare or self.p.shape != self.q.shape:
            raise ValueError('P and Q must be square of equal size, got %s and %s' % (self.p.shape, self.q.shape))
        for name, m in (('T', self.t), ('P', self.p), ('Q', self.q)):
            if determinant(m).isZero():
                raise SingularMatrixError('%s is singular' % name)

    @classmethod
    def identity(cls, n: int) -> 'ILOTriple':
        return cls(ExactMatrix.identity(2), ExactMatrix.identity(n), ExactMatrix.identity(n))

    @property
    def n(self) -> int:
        return self.p.numRows


def toMatrixPair(s: StateTensor) -> MatrixPair:
    slices = [[[ZERO] * s.n for _ in range(s.n)] for _ in range(2)]
    for (i, j, k), val in s.entries:
        slices[i][j][k] = val
    return MatrixPair(ExactMatrix(slices[0], s.n), ExactMatrix(slices[1], s.n))


def fromMatrixPair(m: MatrixPair) -> StateTensor:
    entries = {}
    for i, g in enumerate((m.gamma1, m.gamma2)):
        for j, row in enumerate(g.rows):
            for k, val in enumerate(row):
                if not val.isZero():
                    entries[(i, j, k)] = val
    return StateTensor(m.n, entries)


def applyIlo(m: MatrixPair, op: ILOTriple) -> MatrixPair:
    if op.n != m.n:
        raise ValueError('Operation of size %d applied to pair of size %d' % (op.n, m.n))
    a = op.p @ m.gamma1 @ op.q
    b = op.p @ m.gamma2 @ op.q
    t = op.t
    return MatrixPair(a.scale(t[0, 0]) + b.scale(t[0, 1]),
                      a.scale(t[1, 0]) + b.scale(t[1, 1]))


def composeIlo(*ops: ILOTriple) -> ILOTriple:
    """ The single operation equal to applying ops in the given order. """
    result = ops[0]
    for op in ops[1:]:
        result = ILOTriple(op.t @ result.t, op.p @ result.p, result.q @ op.q)
    return result


def inverseIlo(op: ILOTriple) -> ILOTriple:
    return ILOTriple(op.t.inverse(), op.p.inverse(), op.q.inverse())


def reducedDensityRanks(m: MatrixPair) -> tp.Tuple[int, int, int]:
    """ Ranks of the single-party reduced density matrices for parties A, B and C. """
    g1, g2 = m.gamma1, m.gamma2
    gram = ExactMatrix.fromRows([[(gi @ gj.adjoint()).trace() for gj in (g1, g2)] for gi in (g1, g2)])
    rhoB = g1 @ g1.adjoint() + g2 @ g2.adjoint()
    rhoC = g1.adjoint() @ g1 + g2.adjoint() @ g2
    return gram.rank(), rhoB.rank(), rhoC.rank()


def isTrueEntangled(m: MatrixPair) -> bool:
    return reducedDensityRanks(m) == (2, m.n, m.n)


def _randomEntry(rng: random.Random, entryRange: int) -> GaussianRational:
    return GaussianRational(Fraction(rng.randint(-entryRange, entryRange), rng.randint(1, 2)),
                            rng.randint(-1, 1))


def _randomInvertible(rng: random.Random, n: int, entryRange: int) -> ExactMatrix:
    while True:
        m = ExactMatrix([[_randomEntry(rng, entryRange) for _ in range(n)] for _ in range(n)], n)
        if not determinant(m).isZero():
            return m


def randomIlo(n: int, seed: int, entryRange: int = 3) -> ILOTriple:
    """ Reproducible random operation with small Gaussian rational entries. """
    rng = random.Random(seed)
    return ILOTriple(_randomInvertible(rng, 2, entryRange),
                     _randomInvertible(rng, n, entryRange),
                     _randomInvertible(rng, n, entryRange))


def elementaryIlo(n: int, partite: str, kind: str, i: int, j: tp.Optional[int] = None,
                  factor=ONE) -> ILOTriple:
    """
    A single elementary operation on one party.

    kind is 'swap' (exchange i and j), 'scale' (multiply i by factor) or 'add' (add factor times j to i).
    Party A acts on the slice index, B on rows and C on columns.
    """
    if partite not in PARTITES:
        raise ValueError('Unknown party %r' % partite)
    size = 2 if partite == 'A' else n
    factor = GaussianRational.coerce(factor)
    rows = ExactMatrix.identity(size).toLists()
    if kind == 'swap':
        rows[i][i], rows[j][j] = ZERO, ZERO
        rows[i][j], rows[j][i] = ONE, ONE
    elif kind == 'scale':
        if factor.isZero():
            raise SingularMatrixError('Scaling by zero is not invertible')
        rows[i][i] = factor
    elif kind == 'add':
        if i == j:
            raise ValueError('Row addition needs two distinct indices')
        rows[i][j] = factor
    else:
        raise ValueError('Unknown elementary operation %r' % kind)
    m = ExactMatrix(rows, size)
    eye2, eyeN = ExactMatrix.identity(2), ExactMatrix.identity(n)
    if partite == 'A':
        return ILOTriple(m, eyeN, eyeN)
    if partite == 'B':
        return ILOTriple(eye2, m, eyeN)
    # acting on columns from the right, so transpose to match the row convention
    return ILOTriple(eye2, eyeN, m.transpose())


def gridRender(m: MatrixPair) -> str:
    """ Rear and front slices as aligned grids, zeros shown as '.'. """
    strs = [[[('.' if v.isZero() else v.toString()) for v in row] for row in g.rows]
            for g in (m.gamma1, m.gamma2)]
    width = max(len(s) for g in strs for row in g for s in row)
    lines = []
    for title, g in (('rear (Gamma1):', strs[0]), ('front (Gamma2):', strs[1])):
        lines.append(title)
        lines.extend(' '.join(s.rjust(width) for s in row) for row in g)
    return '\n'.join(lines)


def parseGrid(text: str) -> MatrixPair:
    """ Inverse of gridRender. """
    sections: tp.List[tp.List[tp.List[str]]] = []
    for lineNum, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.endswith(':'):
            sections.append([])
            continue
        if not sections:
            raise ParseError('grid row before any slice header', 'line %d' % lineNum)
        sections[-1].append(stripped.split())
    if len(sections) != 2:
        raise ParseError('expected 2 slices, found %d' % len(sections))
    mats = []
    for rows in sections:
        try:
            mats.append(ExactMatrix.fromRows([[ZERO if tok == '.' else GaussianRational.fromString(tok)
                                               for tok in row] for row in rows]))
        except ValueError as e:
            raise ParseError(str(e))
    try:
        return MatrixPair(*mats)
    except ValueError as e:
        raise ParseError(str(e))
