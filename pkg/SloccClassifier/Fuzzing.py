"""
Randomised check that class descriptors do not change under local invertible operations.
"""
import attr
import concurrent.futures
import logging
import os
import random
import typing as tp

import pandas as pd

from SloccClassifier.Classifier import ClassDescriptor, descriptorOf
from SloccClassifier.Configuration import Tolerances, globalConfiguration
from SloccClassifier.Enumerator import ClassFamily, enumerateClasses
from SloccClassifier.Errors import SloccError
from SloccClassifier.StateFile import emitStateFile, emitIloFile, parseStateFile, parseIloFile
from SloccClassifier.StateModel import MatrixPair, ILOTriple, applyIlo, randomIlo, toMatrixPair

logger = logging.getLogger(__name__)


@attr.s(auto_attribs=True, frozen=True)
class FuzzTrial:
    familyName: str
    familyIndex: int
    trial: int
    seed: int
    representative: MatrixPair
    expected: ClassDescriptor


@attr.s(auto_attribs=True, frozen=True)
class FuzzResult:
    trial: FuzzTrial
    op: ILOTriple
    got: tp.Optional[ClassDescriptor]
    error: tp.Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and self.got == self.trial.expected


@attr.s(auto_attribs=True)
class FuzzReport:
    n: int
    seed: int
    results: tp.List[FuzzResult] = attr.ib(factory=list)

    @property
    def failures(self) -> tp.List[FuzzResult]:
        return [r for r in self.results if not r.passed]

    def summaryFrame(self) -> pd.DataFrame:
        """ One row per family: trials run and trials whose descriptor changed. """
        df = pd.DataFrame([dict(familyIndex=r.trial.familyIndex, family=r.trial.familyName, failed=not r.passed)
                           for r in self.results],
                          columns=['familyIndex', 'family', 'failed'])
        summary = df.groupby(['familyIndex', 'family'], sort=True).agg(
            trials=('failed', 'size'), failures=('failed', 'sum')).reset_index()
        summary['failures'] = summary['failures'].astype(int)
        return summary.drop(columns='familyIndex')


def runTrial(trial: FuzzTrial, entryRange: int, tol: Tolerances) -> FuzzResult:
    op = randomIlo(trial.representative.n, trial.seed, entryRange)
    try:
        got = descriptorOf(applyIlo(trial.representative, op), tol)
    except SloccError as e:
        return FuzzResult(trial, op, None, '%s: %s' % (type(e).__name__, e))
    return FuzzResult(trial, op, got)


def _runBatch(trials: tp.Sequence[FuzzTrial], entryRange: int, tol: Tolerances) -> tp.List[FuzzResult]:
    return [runTrial(t, entryRange, tol) for t in trials]


def planTrials(families: tp.Sequence[ClassFamily], numTrials: int, seed: int) -> tp.List[FuzzTrial]:
    """ Trial seeds are drawn up front so results do not depend on scheduling. """
    rng = random.Random(seed)
    trials = []
    for iF, family in enumerate(families):
        for k in range(numTrials):
            trials.append(FuzzTrial(familyName=family.familyName, familyIndex=iF, trial=k,
                                    seed=rng.getrandbits(32), representative=family.representative,
                                    expected=family.descriptor))
    return trials


def fuzzInvariance(n: int, numTrials: tp.Optional[int] = None, seed: tp.Optional[int] = None,
                   numWorkers: tp.Optional[int] = None, tol: tp.Optional[Tolerances] = None,
                   families: tp.Optional[tp.Sequence[ClassFamily]] = None) -> FuzzReport:
    conf = globalConfiguration
    if numTrials is None:
        numTrials = conf.getInt('FuzzTrials')
    if seed is None:
        seed = conf.getInt('FuzzSeed')
    if numWorkers is None:
        numWorkers = conf.getInt('FuzzWorkers')
    if tol is None:
        tol = Tolerances.fromConfiguration()
    entryRange = conf.getInt('EntryRange')
    if families is None:
        families = enumerateClasses(n, tol)
    trials = planTrials(families, numTrials, seed)
    logger.info('Fuzzing %d families with %d operations each (seed %d, %d workers)',
                len(families), numTrials, seed, numWorkers)

    report = FuzzReport(n=n, seed=seed)
    if numWorkers <= 1:
        report.results = _runBatch(trials, entryRange, tol)
    else:
        batches = [trials[i::numWorkers] for i in range(numWorkers)]
        with concurrent.futures.ProcessPoolExecutor(max_workers=numWorkers) as executor:
            futures = [executor.submit(_runBatch, batch, entryRange, tol) for batch in batches]
            results = [r for future in futures for r in future.result()]
        report.results = sorted(results, key=lambda r: (r.trial.familyIndex, r.trial.trial))

    for failure in report.failures:
        logger.warning('%s trial %d (seed %d): expected %s, got %s', failure.trial.familyName, failure.trial.trial,
                       failure.trial.seed, failure.trial.expected.familyName,
                       failure.error if failure.got is None else failure.got.familyName)
    return report


def dumpFailures(report: FuzzReport, dumpDir: tp.Optional[str] = None) -> tp.List[tp.Tuple[str, str]]:
    """
    Write each failure as a state file (the representative) and an operation file.

    Returns the (state, operation) path pairs.
    """
    if dumpDir is None:
        dumpDir = globalConfiguration.FuzzDumpDirectory
    paths = []
    for k, failure in enumerate(report.failures):
        statePath = os.path.join(dumpDir, 'failure-%d-state.json' % k)
        iloPath = os.path.join(dumpDir, 'failure-%d-ilo.json' % k)
        emitStateFile(failure.trial.representative, statePath)
        emitIloFile(failure.op, iloPath, family=failure.trial.familyName, seed=failure.trial.seed,
                    expected=failure.trial.expected.toJson(),
                    got=None if failure.got is None else failure.got.toJson(),
                    error=failure.error)
        paths.append((statePath, iloPath))
    if paths:
        logger.info('Wrote %d fuzz failures to %s', len(paths), dumpDir)
    return paths


def replayFailure(statePath: str, iloPath: str,
                  tol: tp.Optional[Tolerances] = None) -> tp.Tuple[ClassDescriptor, ClassDescriptor]:
    """ Descriptors of the dumped state before and after the dumped operation. """
    pair = toMatrixPair(parseStateFile(statePath))
    op = parseIloFile(iloPath)
    return descriptorOf(pair, tol), descriptorOf(applyIlo(pair, op), tol)
