from .BShape import BShape, growBlock
from .Eliminators import buildMixtureEliminators, buildPrimedEliminators, buildFlipOperators, restoreBlockChart
from .Jordan import jordanDecomposition, jordanMatrix, sortBlocks
from .Peeling import Peeling, normalizeFirstSlice, peelSingularPart
from .Canonicalizer import (CanonicalPair, Witness, Chart, canonicalize, chooseChart,
                            reduceFullRank, reduceRankDeficient, FULL_RANK, RANK_DEFICIENT)
