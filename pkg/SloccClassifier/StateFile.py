"""
JSON files for states, matrices and local operations.

A state file looks like::

    {"dims": [2, 2, 2],
     "entries": [{"i": 1, "j": 1, "k": 1, "re": "1", "im": "0"},
                 {"i": 2, "j": 2, "k": 2, "re": "1"}]}

Indices are 1-based. Real and imaginary parts are integers or rational strings ("p/q");
"im" may be omitted. Entries may also be written as lists ``[i, j, k, re, im]``.
Floats are rejected so that nothing inexact gets into a state.
"""
import json
import logging
import os
import typing as tp
from fractions import Fraction

from SloccClassifier.Errors import ParseError, SingularMatrixError
from SloccClassifier.ExactLinalg import ExactMatrix, GaussianRational
from SloccClassifier.StateModel import StateTensor, ILOTriple, MatrixPair, fromMatrixPair

logger = logging.getLogger(__name__)

_entryKeys = ('i', 'j', 'k', 're', 'im')


def _rational(value, location: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError('floating point value %r; write it as an integer or "p/q" string' % (value,), location)
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ParseError('expected a rational string, got %r' % (value,), location)
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError('bad rational %r' % value, location)


def _index(value, n: int, location: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError('index must be an integer, got %r' % (value,), location)
    if not 1 <= value <= n:
        raise ParseError('index %d out of range 1..%d' % (value, n), location)
    return value - 1


def _entryFields(entry, location: str) -> tp.Tuple:
    if isinstance(entry, dict):
        unknown = set(entry) - set(_entryKeys)
        if unknown:
            raise ParseError('unknown entry fields %s' % sorted(unknown), location)
        missing = [key for key in _entryKeys[:4] if key not in entry]
        if missing:
            raise ParseError('entry missing %s' % missing, location)
        return tuple(entry.get(key, '0') for key in _entryKeys)
    if isinstance(entry, list) and len(entry) in (4, 5):
        return tuple(entry) + (('0',) if len(entry) == 4 else ())
    raise ParseError('entry must be an object or a list [i, j, k, re, im]', location)


def stateFromJson(data, source: str = '<json>') -> StateTensor:
    if not isinstance(data, dict):
        raise ParseError('top level must be an object', source)
    dims = data.get('dims')
    if (not isinstance(dims, list) or len(dims) != 3 or dims[0] != 2 or dims[1] != dims[2]
            or not all(isinstance(d, int) and not isinstance(d, bool) for d in dims) or dims[1] < 2):
        raise ParseError('dims must be [2, N, N], got %r' % (dims,), source)
    n = dims[1]
    entries = data.get('entries')
    if not isinstance(entries, list):
        raise ParseError('entries must be a list', source)
    values = {}
    for idx, entry in enumerate(entries):
        location = '%s: entries[%d]' % (source, idx)
        i, j, k, re, im = _entryFields(entry, location)
        key = (_index(i, 2, location), _index(j, n, location), _index(k, n, location))
        if key in values:
            raise ParseError('duplicate entry (%d, %d, %d)' % (i, j, k), location)
        values[key] = GaussianRational(_rational(re, location), _rational(im, location))
    try:
        return StateTensor(n, values)
    except ValueError as e:
        raise ParseError(str(e), source)


def stateToJson(state: StateTensor) -> tp.Dict[str, tp.Any]:
    return dict(
        dims=[2, state.n, state.n],
        entries=[dict(i=i + 1, j=j + 1, k=k + 1, re=str(v.re), im=str(v.im)) for (i, j, k), v in state.entries],
    )


def _loadJson(path: str):
    try:
        with open(path, 'r') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError('malformed JSON: %s' % e.msg, '%s:%d:%d' % (path, e.lineno, e.colno))
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError('could not read file: %s' % e, path)


def _dumpJson(data, path: str):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w') as f:
        json.dump(data, f, indent=2)
        f.write('\n')


def parseStateFile(path: str) -> StateTensor:
    state = stateFromJson(_loadJson(path), path)
    logger.debug('Read %d amplitudes of a 2x%dx%d state from %s', len(state.entries), state.n, state.n, path)
    return state


def emitStateFile(state: tp.Union[StateTensor, MatrixPair], path: str):
    if isinstance(state, MatrixPair):
        state = fromMatrixPair(state)
    _dumpJson(stateToJson(state), path)
    logger.debug('Wrote state to %s', path)


def matrixToJson(m: ExactMatrix) -> tp.List[tp.List[str]]:
    return [[v.toString() for v in row] for row in m.rows]


def matrixFromJson(data, location: str) -> ExactMatrix:
    if not isinstance(data, list) or not data or not all(isinstance(row, list) for row in data):
        raise ParseError('matrix must be a non-empty list of rows', location)
    try:
        return ExactMatrix.fromRows(data)
    except (ValueError, TypeError) as e:
        raise ParseError(str(e), location)


def iloToJson(op: ILOTriple) -> tp.Dict[str, tp.Any]:
    return dict(T=matrixToJson(op.t), P=matrixToJson(op.p), Q=matrixToJson(op.q))


def iloFromJson(data, source: str = '<json>') -> ILOTriple:
    if not isinstance(data, dict):
        raise ParseError('top level must be an object', source)
    mats = []
    for key in ('T', 'P', 'Q'):
        if key not in data:
            raise ParseError('missing %s' % key, source)
        mats.append(matrixFromJson(data[key], '%s: %s' % (source, key)))
    try:
        return ILOTriple(*mats)
    except (ValueError, SingularMatrixError) as e:
        raise ParseError(str(e), source)


def parseIloFile(path: str) -> ILOTriple:
    return iloFromJson(_loadJson(path), path)


def emitIloFile(op: ILOTriple, path: str, **extra):
    """ Extra keyword values are stored alongside the operation (ignored when reading). """
    data = iloToJson(op)
    data.update(extra)
    _dumpJson(data, path)
