"""JSON encoding round trips and schema conformance."""

import json

import jsonschema
import numpy as np
import pytest

from kreinfilt import (
    FilterBank,
    LaurentMatrixFunction,
    Realization,
    SignatureMatrix,
    blaschke_factor,
    jsonio,
    junitary_kernel,
    nonsquare_kernel,
    schur_kernel,
)


def test_complex_round_trip():
    for v in [0.0, 1.5, -2.0 + 3.0j, 1e-17j]:
        enc = jsonio.encode_complex(complex(v))
        assert jsonio.decode_complex(enc) == complex(v)


def test_decode_complex_accepts_bare_numbers():
    assert jsonio.decode_complex(2.5) == 2.5 + 0.0j


def test_matrix_round_trip():
    rng = np.random.default_rng(0)
    m = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
    back = jsonio.decode_matrix(jsonio.encode_matrix(m))
    assert np.array_equal(back, m)


def test_signature_round_trip_diag_and_full():
    j = SignatureMatrix.from_diag([1, -1])
    enc = jsonio.encode_signature(j)
    assert "diag" in enc
    assert jsonio.decode_signature(enc) == j
    swap = SignatureMatrix([[0, 1], [1, 0]])
    enc2 = jsonio.encode_signature(swap)
    assert "entries" in enc2
    assert jsonio.decode_signature(enc2) == swap


def test_laurent_round_trip():
    rng = np.random.default_rng(1)
    fun = LaurentMatrixFunction(
        {
            k: rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            for k in (-3, 0, 5)
        }
    )
    back = jsonio.decode_laurent(jsonio.encode_laurent(fun))
    assert back == fun


def test_laurent_duplicate_exponent_rejected():
    doc = {
        "rows": 1,
        "cols": 1,
        "terms": [
            {"exp": 0, "matrix": [[[1.0, 0.0]]]},
            {"exp": 0, "matrix": [[[2.0, 0.0]]]},
        ],
    }
    with pytest.raises(ValueError):
        jsonio.decode_laurent(doc)


def test_realization_round_trip():
    real = blaschke_factor(0.5)
    back = jsonio.decode_realization(jsonio.encode_realization(real))
    assert np.array_equal(back.a, real.a)
    assert np.array_equal(back.b, real.b)
    assert np.array_equal(back.c, real.c)
    assert np.array_equal(back.d, real.d)


def test_bank_round_trip():
    bank = FilterBank(
        2,
        (
            LaurentMatrixFunction.scalar({0: 1.0}),
            LaurentMatrixFunction.scalar({1: 1.0}),
        ),
    )
    back = jsonio.decode_bank(jsonio.encode_bank(bank))
    assert back == bank


def test_component_matrix_round_trip():
    p = np.diag([1.0, 1j, -1.0])
    enc = jsonio.encode_component_matrix(p, 4)
    n, back = jsonio.decode_component_matrix(enc)
    assert n == 4
    assert np.array_equal(back, p)


def test_kernel_round_trips_all_kinds():
    theta = LaurentMatrixFunction.scalar({1: 1.0})
    specs = [
        schur_kernel(theta),
        junitary_kernel(theta, [[1.0]]),
        nonsquare_kernel(
            LaurentMatrixFunction.constant([[0.6, 0.8]]),
            [[1.0]],
            np.eye(2),
        ),
    ]
    for spec in specs:
        enc = jsonio.encode_kernel(spec)
        back = jsonio.decode_kernel(enc)
        assert back.kind == spec.kind
        assert back.fun == spec.fun


def test_substitution_decoding():
    phi = jsonio.decode_substitution({"kind": "power", "N": 3})
    assert phi(0.5) == 0.125
    rho = jsonio.decode_substitution({"kind": "rotation", "N": 4, "M": 1})
    assert abs(rho(1.0) - 1j) == 0.0
    with pytest.raises(ValueError):
        jsonio.decode_substitution({"kind": "mystery", "N": 2})


def test_dumps_is_deterministic_and_sorted():
    doc = {"b": 1, "a": [1.5, {"z": 2, "y": 3}]}
    s1 = jsonio.dumps(doc)
    s2 = jsonio.dumps(dict(reversed(list(doc.items()))))
    assert s1 == s2
    assert s1.index('"a"') < s1.index('"b"')


def test_dumps_handles_numpy_scalars():
    out = json.loads(jsonio.dumps({"x": np.float64(1.5), "n": np.int64(3)}))
    assert out == {"x": 1.5, "n": 3}


def test_io_documents_validate_against_shipped_schema():
    fun = LaurentMatrixFunction.scalar({-1: 1.0, 2: 1.5 + 0.5j})
    real = blaschke_factor(0.5)
    bank = FilterBank(
        2,
        (
            LaurentMatrixFunction.scalar({0: 1.0}),
            LaurentMatrixFunction.scalar({1: 1.0}),
        ),
    )
    cases = [
        (jsonio.encode_laurent(fun), "laurent"),
        (jsonio.encode_realization(real), "realization"),
        (jsonio.encode_bank(bank), "bank"),
        (jsonio.encode_signature(SignatureMatrix.from_diag([1, -1])), "signature"),
        (jsonio.encode_kernel(schur_kernel(fun)), "kernel"),
        (jsonio.encode_component_matrix(np.eye(2), 2), "component"),
        ({"kind": "power", "N": 2}, "substitution"),
    ]
    for doc, defname in cases:
        schema = jsonio.schema_for("io", defname)
        jsonschema.validate(json.loads(jsonio.dumps(doc)), schema)


def test_load_schema_names():
    io_schema = jsonio.load_schema("io")
    assert "laurent" in io_schema["$defs"]
    reports = jsonio.load_schema("reports")
    assert "negsq" in reports["$defs"]
    with pytest.raises(FileNotFoundError):
        jsonio.load_schema("missing")
