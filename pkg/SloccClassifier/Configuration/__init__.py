from .Configuration import globalConfiguration, Configuration, refreshGlobalConfiguration
from .Tolerances import Tolerances
