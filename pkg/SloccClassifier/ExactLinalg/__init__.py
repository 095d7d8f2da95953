from .GaussianRational import GaussianRational, ZERO, ONE, I
from .ApproxComplex import ApproxComplex
from .ExactMatrix import ExactMatrix, rankExact, determinant, invert, kernelBasis, solve
from .UniPolynomial import UniPolynomial, polyGcd
from .PencilPolynomials import pencilDetPoly, minorsGcdPoly
from .PolyRoots import PolyRoot, polyRoots, squareFreeDecomposition
