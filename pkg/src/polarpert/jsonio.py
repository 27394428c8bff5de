"""JSON formats for matrices, subspaces and reports.

Matrix: ``{"rows": m, "cols": n, "data": [[re, im], ...]}`` row-major.
Subspace: ``{"ambient": n, "basis": <matrix>}``.
All writers emit sorted keys.
"""

import json
import math
import sys

import numpy as np

from .errors import InvalidMatrix
from .numcore import DEFAULT_TOL, as_matrix
from .subspace import ORTHONORMAL_TOL, Subspace, orthonormality_defect


def _reject_constant(name):
    raise InvalidMatrix(f"non-finite number {name} in JSON")


def loads(text):
    return json.loads(text, parse_constant=_reject_constant)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(obj):
    return json.dumps(_plain(obj), sort_keys=True, indent=2, allow_nan=False)


def dump(obj, path=None):
    text = dumps(obj) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray):
        return matrix_to_json(obj)
    return obj


def matrix_to_json(a):
    a = np.asarray(a, dtype=np.complex128)
    rows, cols = a.shape
    flat = a.reshape(-1)
    return {"rows": rows, "cols": cols, "data": [[float(z.real), float(z.imag)] for z in flat]}


def _is_number(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def matrix_from_json(obj, allow_empty=False):
    """Parse a matrix object; raises InvalidMatrix on any schema violation."""
    if not isinstance(obj, dict):
        raise InvalidMatrix("matrix JSON must be an object")
    rows, cols, data = obj.get("rows"), obj.get("cols"), obj.get("data")
    if not (isinstance(rows, int) and isinstance(cols, int)) or isinstance(rows, bool) or isinstance(cols, bool):
        raise InvalidMatrix("rows and cols must be integers")
    lo = 0 if allow_empty else 1
    if rows < 1 or cols < lo:
        raise InvalidMatrix(f"invalid dimensions {rows}x{cols}")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise InvalidMatrix(f"data must be a list of {rows * cols} [re, im] pairs")
    vals = np.empty(rows * cols, dtype=np.complex128)
    for k, entry in enumerate(data):
        if not (isinstance(entry, list) and len(entry) == 2 and all(_is_number(x) for x in entry)):
            raise InvalidMatrix(f"entry {k} is not a [re, im] pair of numbers")
        re, im = float(entry[0]), float(entry[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise InvalidMatrix(f"entry {k} is not finite")
        vals[k] = complex(re, im)
    return as_matrix(vals.reshape(rows, cols), allow_empty=allow_empty)


def load_matrix(path):
    return matrix_from_json(load(path))


def subspace_to_json(s):
    return {"ambient": s.ambient_dim, "basis": matrix_to_json(s.basis)}


def subspace_from_json(obj, tol=DEFAULT_TOL):
    """Parse a subspace; the basis is re-orthonormalized.

    Returns ``(subspace, was_orthonormal)``.
    """
    if not isinstance(obj, dict) or "basis" not in obj or "ambient" not in obj:
        raise InvalidMatrix("subspace JSON needs 'ambient' and 'basis'")
    basis = matrix_from_json(obj["basis"], allow_empty=True)
    if basis.shape[0] != obj["ambient"]:
        raise InvalidMatrix("basis row count differs from ambient dimension")
    was_orthonormal = basis.shape[1] == 0 or orthonormality_defect(basis) <= ORTHONORMAL_TOL
    return Subspace.span(basis, tol), bool(was_orthonormal)


def load_subspace(path, tol=DEFAULT_TOL):
    return subspace_from_json(load(path), tol)
