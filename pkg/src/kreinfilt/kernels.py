"""Reproducing kernels on the disk and their sampled Gram analysis.

Four kernel families are supported, all built from an evaluable matrix
function (a Laurent polynomial or a state-space realization):

``K_W``        (I - W(z) W(w)*) / (1 - z conj(w))          -- contractivity
``K_Theta``    (J - T(z) J T(w)*) / (1 - z conj(w))        -- J-contractivity
``NonSquare``  (J2 - W(z) J1 W(w)*) / (1 - z conj(w))      -- rectangular W
``D_Theta``    2x2 block kernel pairing K_Theta with K_{T~},
               T~(z) = T(conj(z))*, glued by difference quotients.

The central quantity is the number of *negative squares* of a kernel:
the maximal count of negative eigenvalues over finite sampled Gram
matrices.  It is estimated here by randomized sampling on disks of
radius < 1, with per-trial seeding so every run is reproducible.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    EvalAtZeroWithPole,
    KreinfiltError,
    PoleAtSample,
    SingularResolvent,
)
from .indefinite import SignatureMatrix, hermitian_signature
from .matfun import unit_roots

__all__ = [
    "KernelSpec",
    "SampleGrid",
    "schur_kernel",
    "junitary_kernel",
    "nonsquare_kernel",
    "extended_kernel",
    "kernel_eval",
    "gram_matrix",
    "estimate_negative_squares",
    "positivity_test",
    "composition_difference_kernel",
    "composition_adjoint_image",
    "composition_unitary_check",
    "power_map",
    "rotation_map",
]

#: Kernel kind tags.  These strings are part of the JSON interchange
#: format, so they are fixed vocabulary.
KIND_CONTRACTIVE = "K_W"
KIND_JUNITARY = "K_Theta"
KIND_NONSQUARE = "NonSquare"
KIND_EXTENDED = "D_Theta"

KINDS = (KIND_CONTRACTIVE, KIND_JUNITARY, KIND_NONSQUARE, KIND_EXTENDED)

#: Pairwise Hermitian consistency tolerance for assembled Gram matrices.
PAIR_TOL = 1e-10

#: |z - conj(w)| below which difference quotients switch to derivatives.
_DIAGONAL_EPS = 1e-8

#: Step for the central finite difference on the quotient diagonal.
_FD_STEP = 1e-6


def _fun_dims(fun):
    """(rows, cols) of an evaluable matrix function."""
    rows = getattr(fun, "rows", None)
    if rows is not None:
        return (fun.rows, fun.cols)
    return (fun.out_dim, fun.in_dim)


def _eval(fun, z):
    """Evaluate, translating pole errors into PoleAtSample."""
    try:
        return fun(z)
    except (EvalAtZeroWithPole, SingularResolvent) as exc:
        raise PoleAtSample("pole hit at sample point %r" % (z,)) from exc


def _eval_tilde(fun, z):
    """Evaluate z -> fun(conj(z))* pointwise."""
    return _eval(fun, np.conj(z)).conj().T


@dataclass(frozen=True)
class KernelSpec:
    """A kernel on the disk, identified by kind and generating data.

    Use the module-level constructors (:func:`schur_kernel`, ...) rather
    than instantiating directly; they check the dimension bookkeeping.
    """

    kind: str
    fun: object
    j: SignatureMatrix = None
    j_left: SignatureMatrix = None  # codomain signature (NonSquare only)
    j_right: SignatureMatrix = None  # domain signature (NonSquare only)

    @property
    def block_dim(self):
        """Size of one Gram block K(z, w)."""
        p, q = _fun_dims(self.fun)
        if self.kind == KIND_EXTENDED:
            return 2 * p
        return p


def schur_kernel(fun):
    """(I - W(z)W(w)*) / (1 - z conj(w)) for a square or wide W."""
    return KernelSpec(KIND_CONTRACTIVE, fun)


def junitary_kernel(fun, j):
    """(J - T(z) J T(w)*) / (1 - z conj(w)); T must be square, dim(J)."""
    j = j if isinstance(j, SignatureMatrix) else SignatureMatrix(j)
    p, q = _fun_dims(fun)
    if p != q or p != j.dim:
        raise DimensionMismatch(
            "J-contractivity kernel needs a square %dx%d function, got %dx%d"
            % (j.dim, j.dim, p, q)
        )
    return KernelSpec(KIND_JUNITARY, fun, j=j)


def nonsquare_kernel(fun, j_left, j_right):
    """(J2 - W(z) J1 W(w)*) / (1 - z conj(w)) for rectangular W.

    ``j_left`` lives on the codomain (rows of W), ``j_right`` on the
    domain (columns).  The two signature matrices must carry the same
    number of negative eigenvalues -- that balance is what makes the
    kernel have finitely many negative squares.
    """
    jl = j_left if isinstance(j_left, SignatureMatrix) else SignatureMatrix(j_left)
    jr = (
        j_right
        if isinstance(j_right, SignatureMatrix)
        else SignatureMatrix(j_right)
    )
    p, q = _fun_dims(fun)
    if jl.dim != p or jr.dim != q:
        raise DimensionMismatch(
            "signature dims (%d, %d) do not match function shape (%d, %d)"
            % (jl.dim, jr.dim, p, q)
        )
    if jl.signature.n_neg != jr.signature.n_neg:
        raise DimensionMismatch(
            "signatures must have equal negative index, got %d vs %d"
            % (jl.signature.n_neg, jr.signature.n_neg)
        )
    return KernelSpec(KIND_NONSQUARE, fun, j_left=jl, j_right=jr)


def extended_kernel(fun, j):
    """The 2x2 block kernel pairing K_T with K_{T~} via difference
    quotients; blocks of size dim(J) each."""
    j = j if isinstance(j, SignatureMatrix) else SignatureMatrix(j)
    p, q = _fun_dims(fun)
    if p != q or p != j.dim:
        raise DimensionMismatch(
            "extended kernel needs a square function matching dim(J)"
        )
    return KernelSpec(KIND_EXTENDED, fun, j=j)


def _diff_quotient(g, z, wbar):
    """(g(z) - g(wbar)) / (z - wbar), with the z -> wbar diagonal filled
    by a central finite difference of step 1e-6."""
    den = z - wbar
    if abs(den) > _DIAGONAL_EPS:
        return (g(z) - g(wbar)) / den
    mid = (z + wbar) / 2.0
    return (g(mid + _FD_STEP) - g(mid - _FD_STEP)) / (2.0 * _FD_STEP)


def kernel_eval(spec, z, w):
    """Evaluate K(z, w) for a :class:`KernelSpec` at points in the disk.

    Returns the ``block_dim`` x ``block_dim`` complex matrix.  Poles of
    the generating function at z, w (or at the reflected points used by
    the extended kernel) surface as :class:`PoleAtSample`.
    """
    z = complex(z)
    w = complex(w)
    denom = 1.0 - z * np.conj(w)
    if spec.kind == KIND_CONTRACTIVE:
        wz = _eval(spec.fun, z)
        ww = _eval(spec.fun, w)
        return (np.eye(wz.shape[0]) - wz @ ww.conj().T) / denom
    if spec.kind == KIND_JUNITARY:
        j = spec.j.matrix
        tz = _eval(spec.fun, z)
        tw = _eval(spec.fun, w)
        return (j - tz @ j @ tw.conj().T) / denom
    if spec.kind == KIND_NONSQUARE:
        j1 = spec.j_right.matrix
        j2 = spec.j_left.matrix
        wz = _eval(spec.fun, z)
        ww = _eval(spec.fun, w)
        return (j2 - wz @ j1 @ ww.conj().T) / denom
    if spec.kind == KIND_EXTENDED:
        j = spec.j.matrix
        p = j.shape[0]
        fun = spec.fun
        upper_left = kernel_eval(junitary_kernel(fun, spec.j), z, w)
        # K for T~ with the same J
        ttz = _eval_tilde(fun, z)
        ttw = _eval_tilde(fun, w)
        lower_right = (j - ttz @ j @ ttw.conj().T) / denom
        wbar = np.conj(w)
        upper_right = _diff_quotient(lambda u: j @ _eval(fun, u), z, wbar)
        lower_left = _diff_quotient(lambda u: _eval_tilde(fun, u) @ j, z, wbar)
        out = np.empty((2 * p, 2 * p), dtype=complex)
        out[:p, :p] = upper_left
        out[:p, p:] = upper_right
        out[p:, :p] = lower_left
        out[p:, p:] = lower_right
        return out
    raise ValueError("unknown kernel kind %r" % (spec.kind,))


def _kernel_callable(kernel):
    if isinstance(kernel, KernelSpec):
        return (lambda z, w: kernel_eval(kernel, z, w)), kernel.block_dim
    if callable(kernel):
        probe = kernel(0.1, 0.1)
        return kernel, np.atleast_2d(probe).shape[0]
    raise TypeError("kernel must be a KernelSpec or a callable (z, w) -> matrix")


def gram_matrix(kernel, points, vectors=None, pair_tol=PAIR_TOL):
    """Sampled Gram matrix [K(w_l, w_j)]_{l,j} for points in the disk.

    Parameters
    ----------
    kernel : KernelSpec or callable
    points : sequence of complex
    vectors : sequence of ndarray, optional
        When given, the scalar Gram ``conj(xi_l)* K(w_l, w_j) xi_j`` is
        returned (an MxM matrix) instead of the block Gram.
    pair_tol : float, optional
        Allowed Hermitian asymmetry, relative to the magnitude of the
        entries.  Violations indicate a broken kernel and raise.

    Returns
    -------
    ndarray
        Hermitian matrix (symmetrized after the consistency check).
    """
    fn, p = _kernel_callable(kernel)
    pts = [complex(z) for z in points]
    m = len(pts)
    if vectors is not None:
        if len(vectors) != m:
            raise DimensionMismatch("need one vector per sample point")
        vecs = [np.asarray(v, dtype=complex).reshape(-1) for v in vectors]
        g = np.empty((m, m), dtype=complex)
        for l in range(m):
            for jj in range(m):
                g[l, jj] = vecs[l].conj() @ np.atleast_2d(
                    fn(pts[l], pts[jj])
                ) @ vecs[jj]
    else:
        g = np.empty((m * p, m * p), dtype=complex)
        for l in range(m):
            for jj in range(m):
                g[l * p : (l + 1) * p, jj * p : (jj + 1) * p] = np.atleast_2d(
                    fn(pts[l], pts[jj])
                )
    scale = 1.0 + (float(np.max(np.abs(g))) if g.size else 0.0)
    dev = float(np.max(np.abs(g - g.conj().T))) if g.size else 0.0
    if dev > pair_tol * scale:
        raise KreinfiltError(
            "kernel is not Hermitian-symmetric in its arguments: "
            "max |K(z,w) - K(w,z)*| = %.3e" % dev
        )
    return (g + g.conj().T) / 2.0


@dataclass(frozen=True)
class SampleGrid:
    """Randomized sampling policy for Gram-matrix experiments.

    ``trials`` independent grids are drawn; trial ``t`` uses seed
    ``seed + t`` and has ``(t % max_points) + 1`` points, so grid sizes
    cycle through 1..max_points.  Points are uniform on the disk of
    radius ``radius`` (strictly inside the unit disk); points where the
    kernel cannot be evaluated are resampled, up to 100 retries each.
    """

    trials: int
    max_points: int
    seed: int
    radius: float = 0.95

    def __post_init__(self):
        if not (0 < self.radius < 1):
            raise ValueError("radius must lie in (0, 1)")
        if self.trials < 1 or self.max_points < 1:
            raise ValueError("trials and max_points must be >= 1")

    def size(self, trial):
        return (trial % self.max_points) + 1

    def draw(self, trial, probe=None):
        """Points for one trial.  ``probe(z)`` may raise to veto a point
        (used for pole rejection)."""
        rng = np.random.default_rng(self.seed + trial)
        pts = []
        for _ in range(self.size(trial)):
            for attempt in range(100):
                r = self.radius * np.sqrt(rng.uniform())
                t = 2.0 * np.pi * rng.uniform()
                z = complex(r * np.cos(t), r * np.sin(t))
                if probe is None:
                    break
                try:
                    probe(z)
                    break
                except (PoleAtSample, EvalAtZeroWithPole, SingularResolvent):
                    continue
            else:
                raise PoleAtSample(
                    "could not draw a pole-free point in 100 attempts"
                )
            pts.append(z)
        return pts


def estimate_negative_squares(kernel, grid, eig_tol=1e-9):
    """Randomized lower-bound certification of the negative-square count.

    Draws ``grid.trials`` sampled Gram matrices and returns the maximum
    observed number of negative eigenvalues, together with per-trial
    evidence.  For a kernel with kappa negative squares the reported
    value never exceeds kappa and generically attains it once the grid
    size reaches the rank of the negative part.

    Returns
    -------
    dict
        ``kappa`` (int), ``evidence`` (list of per-trial records) and
        ``attained`` (first trial achieving the maximum).
    """
    fn, _ = _kernel_callable(kernel)
    evidence = []
    kappa = 0
    attained = None
    for trial in range(grid.trials):
        pts = grid.draw(trial, probe=lambda z: fn(z, z))
        g = gram_matrix(kernel, pts)
        sig = hermitian_signature(g, tol=eig_tol)
        eigs = np.linalg.eigvalsh((g + g.conj().T) / 2.0)
        rec = {
            "trial": trial,
            "size": len(pts),
            "n_neg": sig.n_neg,
            "min_eig": float(eigs[0]) if eigs.size else 0.0,
        }
        evidence.append(rec)
        if sig.n_neg > kappa or attained is None:
            kappa = max(kappa, sig.n_neg)
            if attained is None or sig.n_neg == kappa:
                attained = {"trial": trial, "size": len(pts)}
    for rec in evidence:
        if rec["n_neg"] == kappa:
            attained = {"trial": rec["trial"], "size": rec["size"]}
            break
    return {
        "kappa": int(kappa),
        "trials": grid.trials,
        "max_points": grid.max_points,
        "seed": grid.seed,
        "evidence": evidence,
        "attained": attained,
    }


def positivity_test(kernel, grid, tol=1e-9):
    """Check positive (semi-)definiteness of sampled Gram matrices.

    Returns a report with the global minimum eigenvalue across all
    trials and the verdict ``min_eig >= -tol``.
    """
    fn, _ = _kernel_callable(kernel)
    min_eig = np.inf
    worst = None
    for trial in range(grid.trials):
        pts = grid.draw(trial, probe=lambda z: fn(z, z))
        g = gram_matrix(kernel, pts)
        eigs = np.linalg.eigvalsh(g)
        if eigs.size and eigs[0] < min_eig:
            min_eig = float(eigs[0])
            worst = {"trial": trial, "size": len(pts)}
    if not np.isfinite(min_eig):
        min_eig = 0.0
    return {
        "min_eig": float(min_eig),
        "tol": float(tol),
        "verdict": bool(min_eig >= -tol),
        "worst": worst,
    }


def power_map(n):
    """The substitution z -> z^n."""
    n = int(n)
    return lambda z: complex(z) ** n


def rotation_map(n, m=1):
    """The rotation z -> eps^m z, eps = exp(2*pi*i/n)."""
    eps = unit_roots(n)[m % n]
    return lambda z: eps * complex(z)


def _weight_row(m_list, z, p):
    """Row [m_0(z) I_p, ..., m_{q-1}(z) I_p] as a p x (q p) matrix."""
    vals = np.array([complex(np.atleast_2d(_eval(mf, z))[0, 0]) for mf in m_list])
    return np.kron(vals.reshape(1, -1), np.eye(p))


def composition_difference_kernel(k2, m_list, phi, k1):
    """The kernel  K2(z,w) - M(z) K1(phi(z), phi(w)) M(w)*  with
    M(z) = [m_0(z) I, ..., m_{q-1}(z) I].

    Positive definiteness of this difference is exactly contractivity of
    the weighted composition  f -> M (f o phi)  between the two
    reproducing kernel spaces.

    ``k1`` must have block dimension ``len(m_list) * block_dim(k2)``.
    """
    fn2, p = _kernel_callable(k2)
    fn1, p1 = _kernel_callable(k1)
    q = len(m_list)
    if p1 != q * p:
        raise DimensionMismatch(
            "inner kernel has block dim %d, expected len(m)*%d = %d"
            % (p1, p, q * p)
        )

    def diff(z, w):
        mz = _weight_row(m_list, z, p)
        mw = _weight_row(m_list, w, p)
        inner = np.atleast_2d(fn1(phi(z), phi(w)))
        return np.atleast_2d(fn2(z, w)) - mz @ inner @ mw.conj().T

    return diff


def composition_adjoint_image(k1, m_list, phi, w, xi):
    """Image of K2(., w) xi under the adjoint of the weighted composition.

    The adjoint acts as  K2(., w) xi  ->  K1(., phi(w)) M(w)* xi ; the
    returned callable evaluates that function of z.
    """
    fn1, p1 = _kernel_callable(k1)
    q = len(m_list)
    if p1 % q:
        raise DimensionMismatch(
            "inner kernel block dim %d is not a multiple of len(m)=%d"
            % (p1, q)
        )
    p = p1 // q
    xi = np.asarray(xi, dtype=complex).reshape(-1)
    if xi.shape[0] != p:
        raise DimensionMismatch(
            "xi has length %d, expected %d" % (xi.shape[0], p)
        )
    target = phi(w)
    coeff = _weight_row(m_list, w, p).conj().T @ xi

    def image(z):
        return np.atleast_2d(fn1(z, target)) @ coeff

    return image


def composition_unitary_check(kernel, phi, grid, tol=1e-10):
    """Test the exact-composition criterion K(z, w) = K(phi(z), phi(w)).

    Equality of the two kernels on the disk is equivalent to
    f -> f o phi being unitary on the reproducing kernel space.  The
    check samples pairs from the grid and reports the maximum deviation.
    """
    fn, _ = _kernel_callable(kernel)
    max_dev = 0.0
    for trial in range(grid.trials):
        pts = grid.draw(trial, probe=lambda z: fn(z, z))
        for z in pts:
            for w in pts:
                dev = np.max(
                    np.abs(
                        np.atleast_2d(fn(z, w))
                        - np.atleast_2d(fn(phi(z), phi(w)))
                    )
                )
                max_dev = max(max_dev, float(dev))
    return {
        "max_dev": max_dev,
        "tol": float(tol),
        "verdict": bool(max_dev <= tol),
    }
