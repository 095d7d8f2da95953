"""
Command line front end: classify, canonicalize and compare state files, enumerate families and fuzz.

JSON goes to stdout, log messages to stderr.
"""
import argparse
import json
import logging
import sys
import typing as tp

import pandas as pd

from SloccClassifier._version import __version__
from SloccClassifier.Canonicalizer import CanonicalPair, Witness, canonicalize
from SloccClassifier.Classifier import descriptorOf, sloccEquivalent
from SloccClassifier.Configuration import Tolerances, globalConfiguration, refreshGlobalConfiguration
from SloccClassifier.Enumerator import enumerateClasses, atlasMarkdown
from SloccClassifier.Errors import SloccError, IllConditionedError, IndeterminateError, ParseError
from SloccClassifier.Fuzzing import fuzzInvariance, dumpFailures
from SloccClassifier.Misc import exceptionToStr
from SloccClassifier.StateFile import parseStateFile, iloToJson, matrixToJson, emitIloFile
from SloccClassifier.StateModel import MatrixPair, gridRender, toMatrixPair

logger = logging.getLogger(__name__)

# exit code for failures outside the SloccError taxonomy
INTERNAL_ERROR_EXIT_CODE = 4


def canonicalToJson(canonical: CanonicalPair) -> tp.Dict[str, tp.Any]:
    return dict(
        kind=canonical.kind,
        first=matrixToJson(canonical.first),
        second=matrixToJson(canonical.second),
        jordanBlocks=[[value.toString(), size] for value, size in canonical.jordanBlocks],
        bShape=canonical.bShape.toJson() if canonical.bShape is not None else None,
        exact=canonical.exact,
    )


def witnessToJson(witness: Witness, source: MatrixPair, target: MatrixPair) -> tp.Dict[str, tp.Any]:
    d = iloToJson(witness.ops)
    d.update(exact=witness.exact,
             residualBound=witness.residualBound,
             verified=witness.verify(source, target))
    return d


def classificationReport(pair: MatrixPair, tol: Tolerances) -> tp.Dict[str, tp.Any]:
    warnings = []
    maxDim = globalConfiguration.getInt('MaxDimension')
    if pair.n > maxDim:
        warnings.append('N=%d exceeds MaxDimension=%d' % (pair.n, maxDim))
    descriptor = descriptorOf(pair, tol)
    if not descriptor.exact:
        warnings.append('spectrum outside Q(i): singular points are approximate')
    report = dict(descriptor=descriptor.toJson(), canonical=None, witness=None, warnings=warnings)
    try:
        canonical, witness, note = canonicalize(pair, tol)
    except IllConditionedError as e:
        warnings.append('no canonical form: %s' % e)
        return report
    if note is not None:
        warnings.append(note)
    report['canonical'] = canonicalToJson(canonical)
    report['witness'] = witnessToJson(witness, pair, canonical.asMatrixPair())
    return report


def _reportTable(report: tp.Dict[str, tp.Any]) -> str:
    descriptor = report['descriptor']
    row = dict(
        family=descriptor['family'],
        label=descriptor['label'],
        n=descriptor['n'],
        l=descriptor['l'],
        bShape=(' + '.join(descriptor['bShape']['traces']) if descriptor['bShape'] else ''),
        points=' '.join('%s%s' % (e['point'], e['segre']) for e in descriptor['configKey']),
        parameters=descriptor['paramCount'],
        exact=descriptor['exact'],
        witness=('verified' if report['witness'] and report['witness']['verified'] else 'none'),
    )
    return pd.DataFrame([row]).to_markdown(index=False)


def _readPair(path: str) -> MatrixPair:
    state = parseStateFile(path)
    try:
        return toMatrixPair(state)
    except ValueError as e:
        raise ParseError(str(e), path)


def _printJson(data):
    print(json.dumps(data, indent=2))


def _classify(args, tol: Tolerances) -> int:
    report = classificationReport(_readPair(args.file), tol)
    if args.table:
        print(_reportTable(report))
    else:
        _printJson(report)
    if report['canonical'] is None:
        return IllConditionedError.exitCode
    return 0


def _canonicalize(args, tol: Tolerances) -> int:
    pair = _readPair(args.file)
    canonical, witness, note = canonicalize(pair, tol)
    if note is not None:
        logger.warning('%s', note)
    if args.grid:
        print(gridRender(canonical.asMatrixPair()))
    else:
        _printJson(canonicalToJson(canonical))
    if args.witness is not None:
        emitIloFile(witness.ops, args.witness, exact=witness.exact, residualBound=witness.residualBound,
                    verified=witness.verify(pair, canonical.asMatrixPair()))
        logger.info('Wrote witness to %s', args.witness)
    return 0


def _equiv(args, tol: Tolerances) -> int:
    a, b = _readPair(args.fileA), _readPair(args.fileB)
    try:
        equivalent, witness = sloccEquivalent(a, b, tol)
    except IndeterminateError as e:
        logger.warning('%s', e)
        print('indeterminate')
        return IndeterminateError.exitCode
    print('equivalent' if equivalent else 'inequivalent')
    if equivalent and args.witness is not None:
        emitIloFile(witness.ops, args.witness, exact=witness.exact, verified=witness.verify(a, b))
        logger.info('Wrote witness to %s', args.witness)
    return 0


def _enumerate(args, tol: Tolerances) -> int:
    families = enumerateClasses(args.n, tol)
    if args.markdown:
        print(atlasMarkdown(families))
    else:
        _printJson([f.toJson() for f in families])
    return 0


def _fuzz(args, tol: Tolerances) -> int:
    report = fuzzInvariance(args.n, numTrials=args.trials, seed=args.seed, numWorkers=args.workers, tol=tol)
    print(report.summaryFrame().to_markdown(index=False))
    failures = report.failures
    print('%d failures in %d trials' % (len(failures), len(report.results)))
    if failures:
        paths = dumpFailures(report, args.dumpDir)
        for statePath, iloPath in paths:
            print('%s %s' % (statePath, iloPath))
        return 3
    return 0


def _grid(args, tol: Tolerances) -> int:
    print(gridRender(_readPair(args.file)))
    return 0


def buildParser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='slocc-classifier',
                                     description='SLOCC classification of 2 x N x N pure states')
    parser.add_argument('--tol', type=float, default=None,
                        help='Root and rank tolerance for the approximate fallback (cluster tolerance scales with it)')
    parser.add_argument('--maxDim', type=int, default=None,
                        help='Largest N handled without a warning')
    parser.add_argument('--config', default=None,
                        help='Extra JSON configuration layer')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for info, -vv for debug logging')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    subparsers = parser.add_subparsers(dest='command', required=True)

    p = subparsers.add_parser('classify', help='Descriptor, canonical pair and witness of a state')
    p.add_argument('file')
    p.add_argument('--table', action='store_true', help='Print a table instead of JSON')
    p.set_defaults(func=_classify)

    p = subparsers.add_parser('canonicalize', help='Canonical pair of a state')
    p.add_argument('file')
    p.add_argument('--witness', default=None, help='Write the witness operation to this file')
    p.add_argument('--grid', action='store_true', help='Print the canonical pair as a grid')
    p.set_defaults(func=_canonicalize)

    p = subparsers.add_parser('equiv', help='Decide SLOCC equivalence of two states')
    p.add_argument('fileA')
    p.add_argument('fileB')
    p.add_argument('--witness', default=None, help='Write an operation mapping A onto B to this file')
    p.set_defaults(func=_equiv)

    p = subparsers.add_parser('enumerate', help='All families for a given N')
    p.add_argument('n', type=int)
    p.add_argument('--markdown', action='store_true', help='Print a Markdown table instead of JSON')
    p.set_defaults(func=_enumerate)

    p = subparsers.add_parser('fuzz', help='Check descriptor invariance under random local operations')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--trials', type=int, default=None)
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--workers', type=int, default=None)
    p.add_argument('--dumpDir', default=None, help='Where to write failing cases')
    p.set_defaults(func=_fuzz)

    p = subparsers.add_parser('grid', help='Print the two slices of a state')
    p.add_argument('file')
    p.set_defaults(func=_grid)
    return parser


def _configure(args) -> Tolerances:
    refreshGlobalConfiguration()
    if args.config is not None:
        try:
            globalConfiguration.addConfiguration(args.config)
        except (OSError, ValueError) as e:
            raise ParseError('bad configuration file: %s' % e, args.config)
    globalConfiguration.addOverrides(MaxDimension=args.maxDim)
    if args.tol is not None:
        if args.tol <= 0:
            raise ParseError('--tol must be positive')
        scaled = Tolerances.fromConfiguration().scaledTo(args.tol)
        globalConfiguration.addOverrides(RootTolerance=scaled.root, ClusterTolerance=scaled.cluster,
                                         RankTolerance=args.tol)
    return Tolerances.fromConfiguration()


def run(argv: tp.Optional[tp.List[str]] = None) -> int:
    parser = buildParser()
    args = parser.parse_args(argv)

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level,
                        format='%(asctime)s.%(msecs)03d %(filename)20s %(lineno)4d %(levelname)5s: %(message)s',
                        datefmt='%H:%M:%S',
                        stream=sys.stderr)
    logging.getLogger().setLevel(level)
    logger.info('SloccClassifier v%s', __version__)

    try:
        tol = _configure(args)
        n = getattr(args, 'n', None)
        if n is not None and n < 2:
            parser.error('N must be at least 2, got %d' % n)
        if n is not None and n > globalConfiguration.getInt('MaxDimension'):
            parser.error('N=%d exceeds MaxDimension=%d (raise it with --maxDim)'
                         % (n, globalConfiguration.getInt('MaxDimension')))
        return args.func(args, tol)
    except SloccError as e:
        logger.error('%s', e)
        return e.exitCode
    except Exception as e:
        logger.error('Unexpected failure:\n%s', exceptionToStr(e))
        return INTERNAL_ERROR_EXIT_CODE


def main():
    raise SystemExit(run())


if __name__ == '__main__':
    main()
