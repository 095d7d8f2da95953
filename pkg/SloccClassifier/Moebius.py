"""
Fractional linear maps of the projective line, as 2 x 2 matrices acting on (x, y) with value x / y.
"""
import numpy as np
import typing as tp

from SloccClassifier.ExactLinalg import ApproxComplex, ExactMatrix, GaussianRational
from SloccClassifier.PencilAnalysis import ProjPoint

Homogeneous = tp.Tuple[GaussianRational, GaussianRational]


def bracket(u: tp.Sequence, v: tp.Sequence):
    return u[0] * v[1] - u[1] * v[0]


def toStandard(p: Homogeneous, q: Homogeneous, r: Homogeneous) -> ExactMatrix:
    """ The map sending p to 0, q to 1 and r to infinity. """
    qr, qp = bracket(q, r), bracket(q, p)
    if bracket(p, r).isZero() or qr.isZero() or qp.isZero():
        raise ValueError('Anchor points must be distinct')
    return ExactMatrix([[qr * p[1], -(qr * p[0])], [qp * r[1], -(qp * r[0])]], 2)


def toStandardComplex(p, q, r) -> np.ndarray:
    qr, qp = bracket(q, r), bracket(q, p)
    return np.array([[qr * p[1], -qr * p[0]], [qp * r[1], -qp * r[0]]], dtype=complex)


def moebiusFromTriples(source: tp.Sequence[Homogeneous], target: tp.Sequence[Homogeneous]) -> ExactMatrix:
    """ The unique map sending the three source points onto the three target points, in order. """
    return toStandard(*target).inverse() @ toStandard(*source)


def applyMoebius(m: tp.Union[ExactMatrix, np.ndarray], point: ProjPoint, tol: tp.Optional[float] = None) -> ProjPoint:
    if isinstance(m, ExactMatrix) and point.isExact:
        x, y = point.homogeneous()
        nx = m[0, 0] * x + m[0, 1] * y
        ny = m[1, 0] * x + m[1, 1] * y
        if ny.isZero():
            return ProjPoint.infinity()
        return ProjPoint.finite(nx / ny)
    mc = m.toNumpy() if isinstance(m, ExactMatrix) else m
    if tol is None:
        tol = point.value.tol if isinstance(point.value, ApproxComplex) else 0.0
    x, y = point.homogeneousComplex()
    nx = mc[0, 0] * x + mc[0, 1] * y
    ny = mc[1, 0] * x + mc[1, 1] * y
    if abs(ny) <= tol * max(1.0, abs(nx)):
        return ProjPoint.infinity()
    return ProjPoint.finite(ApproxComplex.fromComplex(nx / ny, tol))
