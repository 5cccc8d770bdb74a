"""JSON encodings for the objects the command line reads and writes.

Conventions
-----------
* complex scalar      -> [re, im]  (a bare number decodes as real)
* matrix              -> row-major nested lists of complex scalars
* signature matrix    -> {"diag": [...]} or {"entries": <matrix>}
* Laurent function    -> {"rows": r, "cols": c,
                          "terms": [{"exp": k, "matrix": ...}, ...]}
* realization         -> {"A": ..., "B": ..., "C": ..., "D": ...}
                         with optional "H"
* filter bank         -> {"N": n, "filters": [<laurent 1x1>, ...]}
* component matrix    -> {"N": n, "entries": <matrix>}
* kernel              -> {"kind": ..., "function": <laurent>,
                          "J": <signature>}  /  {"J1": ..., "J2": ...}
* substitution        -> {"kind": "power"|"rotation", "N": n[, "M": m]}

Decoding is strict about shapes and raises DimensionMismatch /
ValueError on malformed input.  Encoding is deterministic (terms sorted
by exponent) so serialized reports are byte-stable across runs.

The matching JSON Schemas ship in the ``schemas`` package directory;
``load_schema`` reads one, ``schema_for`` extracts a single named
definition in a self-contained validatable form.
"""

import json
from importlib import resources

import numpy as np

from .errors import DimensionMismatch
from .filters import FilterBank
from .indefinite import SignatureMatrix
from .kernels import (
    KIND_CONTRACTIVE,
    KIND_EXTENDED,
    KIND_JUNITARY,
    KIND_NONSQUARE,
    KernelSpec,
    extended_kernel,
    junitary_kernel,
    nonsquare_kernel,
    power_map,
    rotation_map,
    schur_kernel,
)
from .matfun import LaurentMatrixFunction, Realization

__all__ = [
    "encode_complex",
    "decode_complex",
    "encode_matrix",
    "decode_matrix",
    "encode_signature",
    "decode_signature",
    "encode_laurent",
    "decode_laurent",
    "encode_realization",
    "decode_realization",
    "encode_bank",
    "decode_bank",
    "encode_component_matrix",
    "decode_component_matrix",
    "encode_kernel",
    "decode_kernel",
    "decode_substitution",
    "dumps",
    "load_schema",
    "schema_for",
]


def encode_complex(value):
    value = complex(value)
    return [value.real, value.imag]


def decode_complex(data):
    if isinstance(data, (int, float)):
        return complex(data)
    if (
        isinstance(data, (list, tuple))
        and len(data) == 2
        and all(isinstance(x, (int, float)) for x in data)
    ):
        return complex(data[0], data[1])
    raise ValueError("complex scalar must be a number or [re, im]")


def encode_matrix(mat):
    mat = np.atleast_2d(np.asarray(mat, dtype=complex))
    return [[encode_complex(v) for v in row] for row in mat]


def decode_matrix(data):
    if not isinstance(data, list) or not data:
        raise ValueError("matrix must be a non-empty list of rows")
    rows = []
    width = None
    for row in data:
        if not isinstance(row, list) or not row:
            raise ValueError("matrix rows must be non-empty lists")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise DimensionMismatch("matrix rows have unequal lengths")
        rows.append([decode_complex(v) for v in row])
    return np.array(rows, dtype=complex)


def encode_signature(j):
    j = j if isinstance(j, SignatureMatrix) else SignatureMatrix(j)
    m = j.matrix
    d = np.diag(m)
    if np.array_equal(m, np.diag(d)) and np.all(np.isreal(d)):
        return {"diag": [float(x.real) for x in d]}
    return {"entries": encode_matrix(m)}


def decode_signature(data):
    if not isinstance(data, dict):
        raise ValueError("signature matrix must be an object")
    if "diag" in data:
        return SignatureMatrix.from_diag(data["diag"])
    if "entries" in data:
        return SignatureMatrix(decode_matrix(data["entries"]))
    raise ValueError("signature matrix needs 'diag' or 'entries'")


def encode_laurent(fun):
    return {
        "rows": fun.rows,
        "cols": fun.cols,
        "terms": [
            {"exp": k, "matrix": encode_matrix(fun.coeff(k))}
            for k in fun.support
        ],
    }


def decode_laurent(data):
    if not isinstance(data, dict):
        raise ValueError("laurent function must be an object")
    try:
        rows = int(data["rows"])
        cols = int(data["cols"])
        terms = data["terms"]
    except (KeyError, TypeError) as exc:
        raise ValueError("laurent function needs rows/cols/terms") from exc
    coeffs = {}
    for term in terms:
        k = int(term["exp"])
        m = decode_matrix(term["matrix"])
        if m.shape != (rows, cols):
            raise DimensionMismatch(
                "term at exponent %d has shape %r, expected (%d, %d)"
                % (k, m.shape, rows, cols)
            )
        if k in coeffs:
            raise ValueError("duplicate exponent %d" % k)
        coeffs[k] = m
    return LaurentMatrixFunction(coeffs, rows=rows, cols=cols)


def encode_realization(real):
    out = {
        "A": encode_matrix(real.a),
        "B": encode_matrix(real.b),
        "C": encode_matrix(real.c),
        "D": encode_matrix(real.d),
    }
    if real.h is not None:
        out["H"] = encode_matrix(real.h)
    return out


def decode_realization(data):
    if not isinstance(data, dict):
        raise ValueError("realization must be an object")
    try:
        a = decode_matrix(data["A"])
        b = decode_matrix(data["B"])
        c = decode_matrix(data["C"])
        d = decode_matrix(data["D"])
    except KeyError as exc:
        raise ValueError("realization needs A, B, C, D") from exc
    h = decode_matrix(data["H"]) if "H" in data else None
    return Realization(a, b, c, d, h=h)


def encode_bank(bank):
    return {
        "N": bank.n,
        "filters": [encode_laurent(f) for f in bank.filters],
    }


def decode_bank(data):
    if not isinstance(data, dict):
        raise ValueError("filter bank must be an object")
    try:
        n = int(data["N"])
        filters = tuple(decode_laurent(f) for f in data["filters"])
    except KeyError as exc:
        raise ValueError("filter bank needs N and filters") from exc
    return FilterBank(n, filters)


def encode_component_matrix(p, n):
    return {"N": int(n), "entries": encode_matrix(p)}


def decode_component_matrix(data):
    if not isinstance(data, dict):
        raise ValueError("component matrix must be an object")
    try:
        return int(data["N"]), decode_matrix(data["entries"])
    except KeyError as exc:
        raise ValueError("component matrix needs N and entries") from exc


def encode_kernel(spec):
    out = {"kind": spec.kind, "function": encode_laurent(spec.fun)}
    if spec.kind == KIND_NONSQUARE:
        out["J1"] = encode_signature(spec.j_right)
        out["J2"] = encode_signature(spec.j_left)
    elif spec.kind in (KIND_JUNITARY, KIND_EXTENDED):
        out["J"] = encode_signature(spec.j)
    return out


def decode_kernel(data):
    if not isinstance(data, dict):
        raise ValueError("kernel must be an object")
    kind = data.get("kind")
    fun = decode_laurent(data["function"])
    if kind == KIND_CONTRACTIVE:
        return schur_kernel(fun)
    if kind == KIND_JUNITARY:
        return junitary_kernel(fun, decode_signature(data["J"]))
    if kind == KIND_EXTENDED:
        return extended_kernel(fun, decode_signature(data["J"]))
    if kind == KIND_NONSQUARE:
        return nonsquare_kernel(
            fun,
            j_left=decode_signature(data["J2"]),
            j_right=decode_signature(data["J1"]),
        )
    raise ValueError("unknown kernel kind %r" % (kind,))


def decode_substitution(data):
    """Decode a variable substitution: {"kind": "power"|"rotation", "N": n}."""
    if not isinstance(data, dict):
        raise ValueError("substitution must be an object")
    kind = data.get("kind")
    n = int(data.get("N", 0))
    if kind == "power":
        return power_map(n)
    if kind == "rotation":
        return rotation_map(n, int(data.get("M", 1)))
    raise ValueError("unknown substitution kind %r" % (kind,))


class _Encoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, (np.floating,)):
            return float(o)
        if isinstance(o, (np.integer,)):
            return int(o)
        if isinstance(o, np.bool_):
            return bool(o)
        if isinstance(o, complex):
            return encode_complex(o)
        if isinstance(o, np.complexfloating):
            return encode_complex(complex(o))
        if isinstance(o, np.ndarray):
            return encode_matrix(o)
        if isinstance(o, SignatureMatrix):
            return encode_signature(o)
        if isinstance(o, LaurentMatrixFunction):
            return encode_laurent(o)
        if isinstance(o, Realization):
            return encode_realization(o)
        if isinstance(o, FilterBank):
            return encode_bank(o)
        if isinstance(o, KernelSpec):
            return encode_kernel(o)
        return super().default(o)


def dumps(obj):
    """Deterministic JSON text: sorted keys, stable float formatting."""
    return json.dumps(obj, cls=_Encoder, sort_keys=True, indent=2)


def load_schema(name):
    """Load a schema shipped with the package ('io' or 'reports')."""
    text = (
        resources.files("kreinfilt.schemas")
        .joinpath(name + ".json")
        .read_text()
    )
    return json.loads(text)


def schema_for(document, defname):
    """A self-contained schema validating one named definition."""
    schema = load_schema(document)
    return {
        "$ref": "#/$defs/" + defname,
        "$defs": schema.get("$defs", {}),
    }
