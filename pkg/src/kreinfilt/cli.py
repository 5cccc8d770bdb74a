"""Command-line front end.

Every subcommand reads JSON documents (see the shipped schemas), writes
one deterministic JSON report to stdout -- identical inputs give
byte-identical output -- and reserves stderr for diagnostics and
timing.  The eigensweep subcommand emits CSV instead.

Exit codes: 0 on success with a passing verdict, 2 when the check ran
but the verdict is negative, 1 on bad input (malformed documents,
dimension mismatches, unsolvable systems).
"""

import argparse
import json
import sys
import time

import numpy as np

from . import cuntz, filters, jsonio, kernels, stein
from .errors import (
    DeterminantVanishes,
    ExponentNotMultipleOfN,
    HSingular,
    KreinfiltError,
    NoSimilarity,
    NoSolution,
    NotInCN,
    NotPeriodicSymmetric,
    PNotJUnitary,
    PowerNotIdentity,
    ResidualTooLarge,
    TNotInvertible,
)

# Failures of the property under test on well-formed input: the run is a
# negative verdict (exit 2), not a usage error (exit 1).
VERDICT_ERRORS = (
    NotInCN,
    NotPeriodicSymmetric,
    NoSimilarity,
    TNotInvertible,
    PowerNotIdentity,
    DeterminantVanishes,
    PNotJUnitary,
    ExponentNotMultipleOfN,
    NoSolution,
    ResidualTooLarge,
    HSingular,
)


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise KreinfiltError("cannot read %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise KreinfiltError("invalid JSON in %s: %s" % (path, exc)) from exc


def _emit(report):
    sys.stdout.write(jsonio.dumps(report) + "\n")


def _grid_args(parser):
    parser.add_argument("--trials", type=int, default=50)
    parser.add_argument("--max-points", type=int, default=12)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--radius", type=float, default=0.95)


def _grid_from(args):
    return kernels.SampleGrid(
        trials=args.trials,
        max_points=args.max_points,
        seed=args.seed,
        radius=args.radius,
    )


def cmd_construct(args):
    bank = jsonio.decode_bank(_read_json(args.bank))
    if args.periodic:
        fun = filters.periodic_filter_matrix(bank)
    else:
        fun = filters.filter_matrix(bank)
    _emit(
        {
            "N": bank.n,
            "periodic": bool(args.periodic),
            "function": jsonio.encode_laurent(fun),
        }
    )
    return 0


def cmd_check_cn(args):
    fun = jsonio.decode_laurent(_read_json(args.function))
    report = filters.check_cyclic_symmetry(
        fun, args.n, tol=args.tol, allow_nonsquare=args.allow_nonsquare
    )
    out = {
        "n": report["n"],
        "in_CN": report["is_member"],
        "max_dev": report["max_dev"],
        "tol": args.tol,
    }
    if "bank" in report:
        out["bank"] = jsonio.encode_bank(report["bank"])
    _emit(out)
    return 0 if report["is_member"] else 2


def cmd_decompose(args):
    fun = jsonio.decode_laurent(_read_json(args.function))
    n, p = jsonio.decode_component_matrix(_read_json(args.component))
    comps = filters.decompose_components(fun, p, n, tol=args.tol)
    total = comps[0]
    for c in comps[1:]:
        total = total + c
    sum_dev = total.max_abs_diff(fun)
    roots = filters.unit_roots(n)
    sym_dev = 0.0
    for k, comp in enumerate(comps):
        inv_factor = np.linalg.matrix_power(
            np.linalg.inv(roots[1 % n] * np.asarray(p, dtype=complex)), k
        )
        for m_exp, m in comp.coeffs.items():
            lhs = roots[m_exp % n] * m
            rhs = inv_factor @ m
            sym_dev = max(sym_dev, float(np.max(np.abs(lhs - rhs))))
    orth = None
    if args.j is not None:
        j = jsonio.decode_signature(_read_json(args.j))
        orth_report = filters.krein_orthogonality_check(comps, j, p, n)
        orth = {
            "max_offdiag": orth_report["max_offdiag"],
            "orthogonal": orth_report["orthogonal"],
        }
    _emit(
        {
            "components": [jsonio.encode_laurent(c) for c in comps],
            "sum_dev": sum_dev,
            "symmetry_dev": sym_dev,
            "orthogonality": orth,
        }
    )
    return 0


def cmd_factor(args):
    fun = jsonio.decode_laurent(_read_json(args.function))
    r, w_hat, report = filters.polyphase_factor(fun, args.n, tol=args.tol)
    _emit(
        {
            "r": jsonio.encode_laurent(r),
            "w_hat": jsonio.encode_laurent(w_hat),
            "max_dev": report["max_dev"],
            "membership_dev": report["membership_dev"],
            "n": report["n"],
        }
    )
    return 0


def cmd_periodic_map(args):
    fun = jsonio.decode_laurent(_read_json(args.function))
    mapped, report = filters.periodic_to_symmetric(fun, args.n, tol=args.tol)
    _emit(
        {
            "mapped": jsonio.encode_laurent(mapped),
            "twisted_dev": report["twisted_dev"],
            "mapped_dev": report["mapped_dev"],
            "is_member": report["is_member"],
        }
    )
    return 0 if report["is_member"] else 2


def cmd_symmetry_t(args):
    real = jsonio.decode_realization(_read_json(args.realization))
    t, report = filters.symmetry_similarity(real, args.n, tol=args.tol)
    _emit(
        {
            "T": jsonio.encode_matrix(t),
            "residual": report["residual"],
            "rank": report["rank"],
            "power_dev": report["power_dev"],
            "power_ok": report["power_ok"],
            "n": report["n"],
        }
    )
    return 0 if report["power_ok"] else 2


def cmd_stein(args):
    real = jsonio.decode_realization(_read_json(args.realization))
    j = jsonio.decode_signature(_read_json(args.j))
    cert = stein.solve_stein(real, j)
    _emit(
        {
            "H": jsonio.encode_matrix(cert.h),
            "nu_neg": cert.nu_neg,
            "residuals": list(cert.residuals),
            "hermiticity_dev": cert.hermiticity_dev,
        }
    )
    return 0


def cmd_junitary(args):
    fun = jsonio.decode_laurent(_read_json(args.function))
    j = jsonio.decode_signature(_read_json(args.j))
    report = stein.check_junitary_on_circle(
        fun, j, n_points=args.points, tol=args.tol
    )
    _emit(report)
    return 0 if report["verdict"] else 2


def _kernel_from_args(args):
    if getattr(args, "kernel", None):
        return jsonio.decode_kernel(_read_json(args.kernel))
    if getattr(args, "theta", None):
        if not getattr(args, "j", None):
            raise KreinfiltError("--theta requires --J")
        fun = jsonio.decode_laurent(_read_json(args.theta))
        j = jsonio.decode_signature(_read_json(args.j))
        return kernels.junitary_kernel(fun, j)
    raise KreinfiltError("provide --kernel, or --theta with --J")


def cmd_negsq(args):
    spec = _kernel_from_args(args)
    report = kernels.estimate_negative_squares(
        spec, _grid_from(args), eig_tol=args.tol
    )
    _emit(report)
    return 0


def cmd_positivity(args):
    spec = _kernel_from_args(args)
    report = kernels.positivity_test(spec, _grid_from(args), tol=args.tol)
    _emit(report)
    return 0 if report["verdict"] else 2


def cmd_cuntz_verify(args):
    report = cuntz.verify_cuntz(args.n, args.degree, dim=args.dim)
    _emit(report)
    return 0 if report["relations_exact"] else 2


def cmd_gleason(args):
    fun = jsonio.decode_laurent(_read_json(args.function))
    weights = [
        jsonio.decode_laurent(doc) for doc in _read_json(args.weights)
    ]
    g_list, report = cuntz.gleason_decompose(
        fun, weights, args.n, g_degree=args.degree
    )
    ok = report["residual"] <= args.tol
    _emit(
        {
            "parts": [jsonio.encode_laurent(g) for g in g_list],
            "residual": report["residual"],
            "rank": report["rank"],
            "n_unknowns": report["n_unknowns"],
            "rank_deficient": report["rank_deficient"],
            "g_degree": report["g_degree"],
            "within_tol": ok,
        }
    )
    return 0 if ok else 2


def cmd_eigensweep(args):
    spec = jsonio.decode_kernel(_read_json(args.kernel))
    sizes = sorted({int(s) for s in args.sizes.split(",") if s.strip()})
    rng_grid = kernels.SampleGrid(
        trials=max(sizes),
        max_points=max(sizes),
        seed=args.seed,
        radius=args.radius,
    )
    sys.stdout.write("size,min_eig,n_neg\n")
    for size in sizes:
        pts = rng_grid.draw(size - 1, lambda z: kernels.kernel_eval(spec, z, z))
        gram = kernels.gram_matrix(spec, pts)
        eigs = np.linalg.eigvalsh(gram)
        n_neg = int(np.sum(eigs < -args.tol))
        sys.stdout.write(
            "%d,%.17g,%d\n" % (size, float(eigs.min()), n_neg)
        )
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="kreinfilt",
        description=(
            "construction and certification of cyclic-symmetric filter "
            "functions, indefinite kernels and branching isometries"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build W from a filter bank")
    p.add_argument("--bank", required=True)
    p.add_argument("--periodic", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check-cn", help="test the cyclic symmetry of W")
    p.add_argument("--function", required=True)
    p.add_argument("--n", "--N", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--allow-nonsquare", action="store_true")
    p.set_defaults(func=cmd_check_cn)

    p = sub.add_parser(
        "decompose", help="split W into P-symmetric components"
    )
    p.add_argument("--function", required=True)
    p.add_argument("--component", required=True)
    p.add_argument("--j", default=None)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("factor", help="polyphase factorization of W")
    p.add_argument("--function", required=True)
    p.add_argument("--n", "--N", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser(
        "periodic-map", help="map a periodic-system W into the symmetric class"
    )
    p.add_argument("--function", required=True)
    p.add_argument("--n", "--N", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_periodic_map)

    p = sub.add_parser(
        "symmetry-t", help="state similarity induced by the symmetry"
    )
    p.add_argument("--realization", required=True)
    p.add_argument("--n", "--N", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_symmetry_t)

    p = sub.add_parser("stein", help="solve the structure equation for H")
    p.add_argument("--realization", required=True)
    p.add_argument("--j", "--J", dest="j", required=True)
    p.set_defaults(func=cmd_stein)

    p = sub.add_parser(
        "junitary", help="check J-unitarity on the unit circle"
    )
    p.add_argument("--function", required=True)
    p.add_argument("--j", "--J", dest="j", required=True)
    p.add_argument("--points", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_junitary)

    p = sub.add_parser(
        "negsq", help="estimate negative squares of a kernel"
    )
    p.add_argument("--kernel")
    p.add_argument("--theta")
    p.add_argument("--j", "--J", dest="j")
    p.add_argument("--tol", type=float, default=1e-9)
    _grid_args(p)
    p.set_defaults(func=cmd_negsq)

    p = sub.add_parser("positivity", help="sampled positivity test")
    p.add_argument("--kernel")
    p.add_argument("--theta")
    p.add_argument("--j", "--J", dest="j")
    p.add_argument("--tol", type=float, default=1e-9)
    _grid_args(p)
    p.set_defaults(func=cmd_positivity)

    p = sub.add_parser(
        "cuntz-verify", help="exact relation check on truncated spaces"
    )
    p.add_argument("--n", "--N", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--dim", type=int, default=1)
    p.set_defaults(func=cmd_cuntz_verify)

    p = sub.add_parser(
        "gleason", help="solve f = sum m_k g_k(z^N) for the g_k"
    )
    p.add_argument("--function", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--n", "--N", type=int, required=True)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_gleason)

    p = sub.add_parser(
        "eigensweep", help="CSV sweep of Gram spectra over grid sizes"
    )
    p.add_argument("--kernel", required=True)
    p.add_argument("--sizes", required=True, help="comma-separated sizes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--radius", type=float, default=0.95)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_eigensweep)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        code = args.func(args)
    except VERDICT_ERRORS as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        code = 2
    except KreinfiltError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        code = 1
    except (ValueError, KeyError, TypeError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        code = 1
    finally:
        sys.stderr.write(
            "elapsed %.3f s\n" % (time.perf_counter() - start)
        )
    return code


if __name__ == "__main__":
    sys.exit(main())
