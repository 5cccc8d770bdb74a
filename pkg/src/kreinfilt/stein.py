"""Metric certification of rational J-unitary functions.

A rational matrix function W(z) = D + z C (I - z A)^{-1} B is J-unitary
on the unit circle exactly when the system matrix M = [[A, B], [C, D]]
satisfies the Stein-type identity

    M* diag(H, J) M = diag(H, J)

for an invertible Hermitian H, uniquely determined once the realization
is minimal.  Blockwise this reads

    A* H A + C* J C = H        (state block)
    A* H B + C* J D = 0        (coupling block)
    B* H B + D* J D = J        (input block)

``solve_stein`` solves the state block as a linear system in H and
certifies the other two as residuals.  The number of negative
eigenvalues of H equals the number of negative squares of the associated
kernel (J - W(z) J W(w)*) / (1 - z conj(w)), which is the bridge between
state-space data and sampled Gram signatures.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    EvalAtZeroWithPole,
    HSingular,
    NoSolution,
    NotMinimalWarning,
    ResidualTooLarge,
    SingularResolvent,
    TooManyPolesOnCircle,
)
from .indefinite import SignatureMatrix, hermitian_signature
from .kernels import junitary_kernel, kernel_eval

__all__ = [
    "SteinCertificate",
    "solve_stein",
    "check_junitary_on_circle",
    "kernel_factorization_check",
    "coisometric_block_check",
]

#: Default ceiling on the certified block residuals.
RESIDUAL_TOL = 1e-8

#: Allowed Hermitian asymmetry of the solved H.
HERMITICITY_TOL = 1e-10


@dataclass(frozen=True)
class SteinCertificate:
    """Solution of the circle-metric equation for one realization.

    Attributes
    ----------
    h : ndarray
        Hermitian state metric (symmetrized; may be indefinite).
    nu_neg : int
        Number of negative eigenvalues of ``h``.
    residuals : tuple of float
        Max-abs residuals of the three blocks (state, coupling, input).
    hermiticity_dev : float
        Asymmetry of the raw solution before symmetrization.
    """

    h: np.ndarray
    nu_neg: int
    residuals: tuple
    hermiticity_dev: float

    @property
    def max_residual(self):
        return max(self.residuals)


def _sig_matrix(j):
    return j.matrix if isinstance(j, SignatureMatrix) else np.asarray(j, dtype=complex)


def solve_stein(
    real,
    j,
    residual_tol=RESIDUAL_TOL,
    hermiticity_tol=HERMITICITY_TOL,
    warn_not_minimal=True,
):
    """Solve A* H A + C* J C = H and certify the full block identity.

    The state block is vectorized into an n^2 x n^2 linear system and
    solved directly; the coupling and input blocks are then *checked*,
    never enforced, so a realization that is not actually J-unitary on
    the circle fails loudly with :class:`ResidualTooLarge`.

    Parameters
    ----------
    real : Realization
        Square (out_dim == in_dim == dim J).
    j : SignatureMatrix or array_like
    residual_tol : float, optional
        Ceiling on all three block residuals (max-abs entry).
    hermiticity_tol : float, optional
        Allowed asymmetry of the raw solution H.
    warn_not_minimal : bool, optional
        Emit :class:`NotMinimalWarning` when the realization is not
        minimal (H is then no longer unique).

    Returns
    -------
    SteinCertificate

    Raises
    ------
    NoSolution
        Singular or hopelessly ill-conditioned state block.
    ResidualTooLarge
        The realization does not satisfy the metric identity.
    HSingular
        H solved but is numerically singular (no signature available).
    """
    jm = _sig_matrix(j)
    p = jm.shape[0]
    if real.out_dim != p or real.in_dim != p:
        raise DimensionMismatch(
            "realization is %dx%d but J has dimension %d"
            % (real.out_dim, real.in_dim, p)
        )
    a, b, c, d = real.a, real.b, real.c, real.d
    n = real.state_dim

    if n == 0:
        r22 = float(np.max(np.abs(d.conj().T @ jm @ d - jm)))
        if r22 > residual_tol:
            raise ResidualTooLarge(
                "constant function is not J-unitary: residual %.3e" % r22
            )
        return SteinCertificate(
            h=np.zeros((0, 0), dtype=complex),
            nu_neg=0,
            residuals=(0.0, 0.0, r22),
            hermiticity_dev=0.0,
        )

    if warn_not_minimal:
        obs, ctrl = real.minimality_ranks()
        if obs < n or ctrl < n:
            warnings.warn(
                "realization is not minimal (obs rank %d, ctrl rank %d, "
                "state dim %d); the metric certificate may not be unique"
                % (obs, ctrl, n),
                NotMinimalWarning,
                stacklevel=2,
            )

    # vec(A* H A) = (A^T kron A*) vec(H) with column-major stacking.
    lhs = np.kron(a.T, a.conj().T) - np.eye(n * n)
    rhs = -(c.conj().T @ jm @ c).reshape(-1, order="F")
    cond = np.linalg.cond(lhs)
    if not np.isfinite(cond) or cond > 1e14:
        raise NoSolution(
            "state-block system is singular (cond %.3e); the spectrum of A "
            "meets the unit circle reciprocally" % cond
        )
    try:
        vec_h = np.linalg.solve(lhs, rhs)
    except np.linalg.LinAlgError as exc:
        raise NoSolution("state-block linear system is singular") from exc
    h = vec_h.reshape((n, n), order="F")
    herm_dev = float(np.max(np.abs(h - h.conj().T)))
    if herm_dev > hermiticity_tol:
        raise NoSolution(
            "solved metric is not Hermitian (deviation %.3e); the system "
            "is too ill-conditioned to certify" % herm_dev
        )
    h = (h + h.conj().T) / 2.0

    r11 = float(np.max(np.abs(a.conj().T @ h @ a + c.conj().T @ jm @ c - h)))
    r12 = float(np.max(np.abs(a.conj().T @ h @ b + c.conj().T @ jm @ d)))
    r22 = float(np.max(np.abs(b.conj().T @ h @ b + d.conj().T @ jm @ d - jm)))
    if max(r11, r12, r22) > residual_tol:
        raise ResidualTooLarge(
            "metric identity fails: block residuals (%.3e, %.3e, %.3e)"
            % (r11, r12, r22)
        )

    sv = np.linalg.svd(h, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] <= 1e-12 * sv[0]:
        raise HSingular(
            "certified metric is numerically singular "
            "(smallest/largest singular value %.3e / %.3e)"
            % (sv[-1], sv[0])
        )

    nu_neg = hermitian_signature(h).n_neg
    return SteinCertificate(
        h=h,
        nu_neg=int(nu_neg),
        residuals=(r11, r12, r22),
        hermiticity_dev=herm_dev,
    )


def check_junitary_on_circle(fun, j, n_points=64, tol=1e-10):
    """Sample max || W(e^{it})* J W(e^{it}) - J || on the unit circle.

    Points where the function has a pole are skipped; if more than 20%
    of them are skipped the check aborts with
    :class:`TooManyPolesOnCircle`.

    Returns
    -------
    dict
        ``max_residual``, ``points``, ``skipped``, ``verdict``.
    """
    jm = _sig_matrix(j)
    skipped = 0
    max_res = 0.0
    for k in range(n_points):
        z = np.exp(2j * np.pi * k / n_points)
        try:
            v = fun(z)
        except (SingularResolvent, EvalAtZeroWithPole):
            skipped += 1
            continue
        res = float(np.max(np.abs(v.conj().T @ jm @ v - jm)))
        max_res = max(max_res, res)
    if skipped > 0.2 * n_points:
        raise TooManyPolesOnCircle(
            "%d of %d circle points hit poles" % (skipped, n_points)
        )
    return {
        "max_residual": max_res,
        "points": int(n_points),
        "skipped": int(skipped),
        "tol": float(tol),
        "verdict": bool(max_res <= tol),
    }


def _resolvent_row(real, z):
    """C (I - z A)^{-1}."""
    n = real.state_dim
    lhs = np.eye(n) - complex(z) * real.a
    try:
        return real.c @ np.linalg.solve(lhs, np.eye(n))
    except np.linalg.LinAlgError as exc:
        raise SingularResolvent("I - z*A singular at z = %r" % (z,)) from exc


def kernel_factorization_check(
    real, j, h, n_pairs=20, seed=0, radius=0.9, tol=1e-8
):
    """Verify K(z,w) = C (I - zA)^{-1} H^{-1} (I - wA)^{-*} C* by sampling.

    This is the finite-rank factorization of the J-contractivity kernel
    of a certified realization; it ties the state metric H to the kernel
    the rest of the package samples.  Returns a report with the maximum
    entrywise deviation over ``n_pairs`` random point pairs.
    """
    jm = _sig_matrix(j)
    spec = junitary_kernel(real, SignatureMatrix(jm))
    rng = np.random.default_rng(seed)
    n = real.state_dim
    if n == 0:
        hinv = None
    else:
        hinv = np.linalg.solve(np.asarray(h, dtype=complex), np.eye(n))
    max_dev = 0.0
    for _ in range(n_pairs):
        zr, zt, wr, wt = rng.uniform(size=4)
        z = radius * np.sqrt(zr) * np.exp(2j * np.pi * zt)
        w = radius * np.sqrt(wr) * np.exp(2j * np.pi * wt)
        lhs = kernel_eval(spec, z, w)
        if n == 0:
            rhs = np.zeros_like(lhs)
        else:
            gz = _resolvent_row(real, z)
            gw = _resolvent_row(real, w)
            rhs = gz @ hinv @ gw.conj().T
        max_dev = max(max_dev, float(np.max(np.abs(lhs - rhs))))
    return {
        "max_dev": max_dev,
        "pairs": int(n_pairs),
        "tol": float(tol),
        "verdict": bool(max_dev <= tol),
    }


def coisometric_block_check(real, j, h):
    """Residual of the full block identity M* diag(H, J) M = diag(H, J).

    Returns the max-abs entry of the defect; 0 for an exactly certified
    realization.
    """
    jm = _sig_matrix(j)
    n = real.state_dim
    hm = np.asarray(h, dtype=complex).reshape(n, n)
    m = real.system_matrix
    g = np.zeros(
        (n + jm.shape[0], n + jm.shape[0]), dtype=complex
    )
    g[:n, :n] = hm
    g[n:, n:] = jm
    defect = m.conj().T @ g @ m - g
    return float(np.max(np.abs(defect))) if defect.size else 0.0
