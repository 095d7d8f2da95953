"""
Exception hierarchy shared by the library and the command line tool.

Every error carries the process exit code the CLI maps it to.
"""
import typing as tp


class SloccError(Exception):
    exitCode: tp.ClassVar[int] = 3


class NotTrueEntangledError(SloccError):
    """ The state has a single-party reduced density matrix of deficient rank. """
    exitCode: tp.ClassVar[int] = 1

    def __init__(self, ranks: tp.Tuple[int, int, int], n: int):
        super().__init__('State is not truly entangled: reduced density ranks %s (need 2, %d, %d)'
                         % (ranks, n, n))
        self.ranks = ranks


class ParseError(SloccError):
    exitCode: tp.ClassVar[int] = 2

    def __init__(self, msg: str, location: tp.Optional[str] = None):
        if location is not None:
            msg = '%s: %s' % (location, msg)
        super().__init__(msg)
        self.location = location


class IllConditionedError(SloccError):
    """ A numeric decision fell inside the guard band and could not be resolved. """
    pass


class IndeterminateError(SloccError):
    """ Approximate descriptors agree within tolerance; equivalence is neither asserted nor denied. """
    pass


class SingularMatrixError(SloccError):
    pass


class InexactEigenvaluesError(SloccError):
    """
    Raised when a reduction could only be carried out with approximate eigenvalues.

    The approximate result travels with the exception so callers can still report it.
    """
    def __init__(self, msg: str, canonical=None, witness=None, residualBound: float = float('nan')):
        super().__init__(msg)
        self.canonical = canonical
        self.witness = witness
        self.residualBound = residualBound
