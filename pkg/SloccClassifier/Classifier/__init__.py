from .ConfigKey import ConfigEntry, moebiusNormalize, bruteForceMatch, decorationKey
from SloccClassifier.Moebius import moebiusFromTriples
from .Classifier import ClassDescriptor, descriptorOf, sloccEquivalent, nonlocalParamCount, classLabel
