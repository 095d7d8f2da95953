"""
Layered settings: package defaults, then an optional machine-specific file, then any files
or overrides added at run time (for example from the command line). Later layers win.
"""
import attr
import json
import logging
import os
import re
import socket
import typing as tp

logger = logging.getLogger(__name__)

thisDir, _ = os.path.split(os.path.realpath(__file__))
hostname = socket.gethostname()

_substitutionRegex = re.compile(r'<(\w+)>')


@attr.s(auto_attribs=True)
class Configuration:
    _dicts: tp.List[tp.Dict[str, tp.Any]] = attr.ib(factory=list)
    _dictSourcePaths: tp.List[tp.Optional[str]] = attr.ib(factory=list)

    def getAttr(self, item: str, skipNumLevels: int = 0):
        for iD, d in enumerate(self._dicts):
            if iD < skipNumLevels or item not in d:
                continue
            val = d[item]
            if not isinstance(val, str):
                return val
            if val.startswith('~'):
                val = os.path.expanduser(val)
            elif val.startswith('./') and self._dictSourcePaths[iD] is not None:
                # relative to the file that defined the value
                srcDir, _ = os.path.split(self._dictSourcePaths[iD])
                val = os.path.join(srcDir, val[2:])

            match = _substitutionRegex.search(val)
            while match is not None:
                subItem = match.group(1)
                if subItem == item:
                    subVal = self.getAttr(subItem, skipNumLevels=iD + 1)
                else:
                    subVal = self.getAttr(subItem)
                val = val.replace('<%s>' % subItem, str(subVal))
                match = _substitutionRegex.search(val)
            return val
        raise KeyError('No configuration value for key %s' % item)

    def __getattr__(self, item):
        if item.startswith('_'):
            raise AttributeError(item)
        return self.getAttr(item)

    def getFloat(self, item: str) -> float:
        return float(self.getAttr(item))

    def getInt(self, item: str) -> int:
        return int(self.getAttr(item))

    def clear(self):
        self._dicts = list()
        self._dictSourcePaths = list()

    def addConfiguration(self, pathToJson: str):
        with open(pathToJson, 'r') as f:
            d = json.load(f)
        if not isinstance(d, dict):
            raise ValueError('Configuration file %s must contain a JSON object' % pathToJson)
        logger.debug('Loaded %d configuration values from %s', len(d), pathToJson)
        self._dicts.insert(0, d)
        self._dictSourcePaths.insert(0, pathToJson)

    def addOverrides(self, **overrides):
        overrides = {key: val for key, val in overrides.items() if val is not None}
        if overrides:
            self._dicts.insert(0, overrides)
            self._dictSourcePaths.insert(0, None)

    def addDefaultConfiguration(self):
        self.addConfiguration(os.path.join(thisDir, 'DefaultConfiguration.json'))
        self.addOverrides(hostname=hostname)

    def addMachineConfiguration(self):
        configPath = os.path.join(thisDir, 'MachineConfiguration-%s.json' % hostname)
        if os.path.exists(configPath):
            self.addConfiguration(configPath)
        else:
            logger.debug('No machine specific config for \'%s\'', hostname)

    def resetToDefaultConfiguration(self):
        self.clear()
        self.addDefaultConfiguration()
        self.addMachineConfiguration()


globalConfiguration = Configuration()


def refreshGlobalConfiguration():
    globalConfiguration.resetToDefaultConfiguration()


refreshGlobalConfiguration()
