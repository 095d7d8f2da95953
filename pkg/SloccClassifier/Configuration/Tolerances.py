import attr
import typing as tp

from SloccClassifier.Configuration.Configuration import Configuration, globalConfiguration


@attr.s(auto_attribs=True, frozen=True)
class Tolerances:
    """
    Numeric thresholds for the approximate fallback path.

    root: residual bound when accepting a numeric polynomial root.
    cluster: minimum separation of distinct approximate roots.
    rank: relative singular value cutoff for numeric rank decisions.
    """
    root: float = 1e-9
    cluster: float = 1e-7
    rank: float = 1e-9

    @classmethod
    def fromConfiguration(cls, conf: tp.Optional[Configuration] = None) -> 'Tolerances':
        if conf is None:
            conf = globalConfiguration
        return cls(root=conf.getFloat('RootTolerance'),
                   cluster=conf.getFloat('ClusterTolerance'),
                   rank=conf.getFloat('RankTolerance'))

    def scaledTo(self, root: float) -> 'Tolerances':
        """ Same proportions, with the root tolerance replaced. """
        factor = root / self.root
        return Tolerances(root=root, cluster=self.cluster * factor, rank=self.rank * factor)
