"""
Jordan forms with explicit similarity transforms, exact over Q(i) and numeric as a fallback.
"""
import logging
import numpy as np
import typing as tp

from SloccClassifier.Configuration import Tolerances
from SloccClassifier.Errors import IllConditionedError
from SloccClassifier.ExactLinalg import ExactMatrix, GaussianRational, ONE, kernelBasis
from SloccClassifier.ExactLinalg.ExactMatrix import vectorsRank, applyToVector
from SloccClassifier.PencilAnalysis import numericRank

logger = logging.getLogger(__name__)

JordanBlock = tp.Tuple[GaussianRational, int]


def blockSortKey(block: JordanBlock):
    """ Nonzero eigenvalues first by (re, im), zero last, larger blocks first. """
    value, size = block
    return value.isZero(), value.sortKey(), -size


def sortBlocks(blocks: tp.Iterable[JordanBlock]) -> tp.List[JordanBlock]:
    return sorted(blocks, key=blockSortKey)


def jordanMatrix(blocks: tp.Sequence[JordanBlock]) -> ExactMatrix:
    n = sum(size for _, size in blocks)
    rows = ExactMatrix.zeros(n).toLists()
    offset = 0
    for value, size in blocks:
        for k in range(size):
            rows[offset + k][offset + k] = value
            if k + 1 < size:
                rows[offset + k][offset + k + 1] = ONE
        offset += size
    return ExactMatrix(rows, n)


def _chainsForEigenvalue(a: ExactMatrix, value: GaussianRational) -> tp.List[tp.List[tuple]]:
    """
    Jordan chains [N^(k-1) v, ..., N v, v] of N = a - value*E, heads chosen from the top level down.
    """
    n = a.numRows
    shifted = a - ExactMatrix.identity(n).scale(value)
    kernels = [[]]
    power = ExactMatrix.identity(n)
    while True:
        power = power @ shifted
        basis = kernelBasis(power)
        if len(basis) == len(kernels[-1]):
            break
        kernels.append(basis)
    top = len(kernels) - 1
    heads: tp.List[tp.Tuple[tuple, int]] = []
    for level in range(top, 0, -1):
        covered = list(kernels[level - 1])
        for v, headLevel in heads:
            image = v
            for _ in range(headLevel - level):
                image = applyToVector(shifted, image)
            covered.append(image)
        rank = vectorsRank(covered)
        for x in kernels[level]:
            if vectorsRank(covered + [x]) > rank:
                covered.append(x)
                rank += 1
                heads.append((x, level))
    chains = []
    for v, level in heads:
        chain = [v]
        for _ in range(level - 1):
            chain.insert(0, applyToVector(shifted, chain[0]))
        chains.append(chain)
    return chains


def jordanDecomposition(a: ExactMatrix, eigenvalues: tp.Sequence[GaussianRational]) -> tp.Tuple[ExactMatrix, tp.List[JordanBlock]]:
    """
    S and the sorted block list with S^-1 a S = jordanMatrix(blocks).

    eigenvalues must be the distinct eigenvalues of a, all in Q(i).
    """
    n = a.numRows
    chained: tp.List[tp.Tuple[JordanBlock, tp.List[tuple]]] = []
    for value in eigenvalues:
        for chain in _chainsForEigenvalue(a, value):
            chained.append(((value, len(chain)), chain))
    if sum(size for (_, size), _ in chained) != n:
        raise IllConditionedError('Eigenvalues %s do not account for the whole space'
                                  % [v.toString() for v in eigenvalues])
    chained.sort(key=lambda item: blockSortKey(item[0]))
    columns = [vec for _, chain in chained for vec in chain]
    s = ExactMatrix.fromColumns(columns, n)
    return s, [block for block, _ in chained]


def _nullSpace(m: np.ndarray, tol: Tolerances, scale: float) -> np.ndarray:
    rank = numericRank(m, tol, scale)
    _, _, vh = np.linalg.svd(m)
    return vh[rank:].conj().T


def numericJordanDecomposition(a: np.ndarray, spectrum: tp.Sequence[tp.Tuple[complex, tp.Sequence[int]]],
                               tol: Tolerances) -> tp.Tuple[np.ndarray, np.ndarray]:
    """
    Approximate S, J with S^-1 a S ~ J, spectrum giving each eigenvalue with its block sizes.
    Blocks appear in the order given.
    """
    n = a.shape[0]
    columns = []
    blocks = []
    for value, segre in spectrum:
        shifted = a - value * np.eye(n)
        scale = max(1.0, float(np.linalg.norm(shifted, 2)))
        top = max(segre)
        kernels = [np.zeros((n, 0), dtype=complex)]
        power = np.eye(n, dtype=complex)
        for k in range(1, top + 1):
            power = power @ shifted
            kernels.append(_nullSpace(power, tol, scale ** k))
        heads = []
        for level in range(top, 0, -1):
            covered = [kernels[level - 1]]
            for v, headLevel in heads:
                covered.append((np.linalg.matrix_power(shifted, headLevel - level) @ v).reshape(n, 1))
            base = np.hstack(covered)
            for x in kernels[level].T:
                trial = np.hstack([base, x.reshape(n, 1)])
                if numericRank(trial, tol) > numericRank(base, tol):
                    base = trial
                    heads.append((x, level))
        sizes = sorted((lvl for _, lvl in heads), reverse=True)
        if sizes != sorted(segre, reverse=True):
            raise IllConditionedError('Numeric Jordan chains %s disagree with Segre characteristic %s'
                                      % (sizes, list(segre)))
        for v, level in sorted(heads, key=lambda h: -h[1]):
            chain = [v]
            for _ in range(level - 1):
                chain.insert(0, shifted @ chain[0])
            columns.extend(chain)
            blocks.append((value, level))
    s = np.column_stack(columns)
    j = np.zeros((n, n), dtype=complex)
    offset = 0
    for value, size in blocks:
        for k in range(size):
            j[offset + k, offset + k] = value
            if k + 1 < size:
                j[offset + k, offset + k + 1] = 1
        offset += size
    return s, j
