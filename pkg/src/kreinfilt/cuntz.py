"""Branching isometries and the split of functions along residues mod N.

Every function analytic at the origin splits uniquely as

    f(z) = sum_{j=0}^{N-1} z^j f_j(z^N),

where f_j collects the coefficients at exponents congruent to j mod N.
The maps (S_j f)(z) = z^j f(z^N) are isometries whose adjoints extract
the split parts, and together they satisfy the Cuntz relations

    S_j^[*] S_k = delta_{jk} I,      sum_j S_j S_j^[*] = I.

On a truncated coefficient space these relations are *exact* identities
between permutation-type matrices (no floating-point tolerance), which
this module verifies, alongside the associated state-space maps and
inner-product identities on the truncated spaces.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    TruncationTooSmall,
)
from .errors import RankDeficientWarning
from .indefinite import SignatureMatrix, h2j_inner
from .matfun import LaurentMatrixFunction, Realization
from .stein import solve_stein

__all__ = [
    "SplitResult",
    "s_apply",
    "split",
    "s_adjoint",
    "verify_cuntz",
    "iterate_isometries",
    "word_exponent",
    "ptheta_inner",
    "ShiftRealizationMaps",
    "gleason_decompose",
]


def _check_branch(n):
    n = int(n)
    if n < 1:
        raise ValueError("branching number must be >= 1")
    return n


def s_apply(n, j, f):
    """The isometry (S_j f)(z) = z^j f(z^N): exponent k -> k*N + j."""
    n = _check_branch(n)
    j = int(j)
    if not 0 <= j < n:
        raise ValueError("branch index must satisfy 0 <= j < N")
    return LaurentMatrixFunction(
        {k * n + j: m for k, m in f.coeffs.items()},
        rows=f.rows,
        cols=f.cols,
    )


@dataclass(frozen=True)
class SplitResult:
    """The N split parts of a function, f(z) = sum_j z^j parts[j](z^N)."""

    n: int
    parts: tuple

    def assemble(self):
        """Rebuild f from the parts (exact, the supports are disjoint)."""
        out = None
        for j, part in enumerate(self.parts):
            term = s_apply(self.n, j, part)
            out = term if out is None else out + term
        return out


def split(n, f):
    """Split f along residues mod N.

    The coefficient at exponent k goes to part ``j = k mod N`` at
    exponent ``(k - j) / N``; negative exponents follow the same rule
    (so z^{-1} with N = 2 contributes to part 1 at exponent -1).
    """
    n = _check_branch(n)
    buckets = [dict() for _ in range(n)]
    for k, m in f.coeffs.items():
        j = k % n
        buckets[j][(k - j) // n] = m
    return SplitResult(
        n=n,
        parts=tuple(
            LaurentMatrixFunction(b, rows=f.rows, cols=f.cols)
            for b in buckets
        ),
    )


def s_adjoint(n, j, f):
    """The adjoint S_j^[*] f = f_j (extraction of split part j).

    The adjoint is taken with respect to the signature-weighted
    coefficient inner product; since S_j relocates coefficient blocks
    and J^2 = I, the result does not depend on J.
    """
    n = _check_branch(n)
    j = int(j)
    if not 0 <= j < n:
        raise ValueError("branch index must satisfy 0 <= j < N")
    return split(n, f).parts[j]


def verify_cuntz(n, degree, j=None, dim=1):
    """Verify the Cuntz relations exactly on a truncated coefficient space.

    The truncated space holds C^p-valued polynomials of degree
    <= ``degree``.  Each S_j becomes a 0/1 coefficient-permutation
    matrix; products of such matrices are exact in floating point, so
    the reported residuals are exact zeros when the relations hold.

    The completeness relation sum_j S_j S_j^[*] = I needs the slot count
    ``degree + 1`` to be divisible by N (otherwise the top exponents are
    not reachable from the uniformly truncated domain); an incompatible
    degree is *reported*, not failed, and orthogonality is still checked.

    Parameters
    ----------
    n : int
        Branching number N >= 2.
    degree : int
        Truncation degree of the coefficient space.
    j : SignatureMatrix or array_like, optional
        Only fixes the block size p; the relations are J-independent
        because the operators permute coefficient blocks and J^2 = I.
    dim : int, optional
        Block size p when ``j`` is not given.

    Returns
    -------
    dict
        Report with ``orthogonality_residual``, ``completeness_residual``
        (None when the degree is incompatible), ``degree_compatible``,
        ``relations_exact`` and ``max_residual``.
    """
    n = _check_branch(n)
    degree = int(degree)
    if degree < n - 1:
        raise TruncationTooSmall(
            "degree %d leaves no room for %d branches" % (degree, n)
        )
    if j is not None:
        p = (
            j.dim
            if isinstance(j, SignatureMatrix)
            else np.atleast_2d(np.asarray(j)).shape[0]
        )
    else:
        p = int(dim)
    slots = degree + 1
    compatible = slots % n == 0
    k_dom = slots // n  # uniform domain: polynomials of degree < k_dom

    eye_p = np.eye(p)
    big = slots * p
    small = k_dom * p
    s_mats = []
    for branch in range(n):
        s = np.zeros((big, small))
        for k in range(k_dom):
            row = (k * n + branch) * p
            s[row : row + p, k * p : (k + 1) * p] = eye_p
        s_mats.append(s)

    orth_res = 0.0
    for bi in range(n):
        for bj in range(n):
            prod = s_mats[bi].T @ s_mats[bj]
            target = np.eye(small) if bi == bj else np.zeros((small, small))
            orth_res = max(orth_res, float(np.max(np.abs(prod - target))))

    if compatible:
        total = np.zeros((big, big))
        for s in s_mats:
            total = total + s @ s.T
        comp_res = float(np.max(np.abs(total - np.eye(big))))
        exact = orth_res == 0.0 and comp_res == 0.0
        max_res = max(orth_res, comp_res)
    else:
        comp_res = None
        exact = orth_res == 0.0
        max_res = orth_res

    return {
        "n": n,
        "degree": degree,
        "dim": p,
        "degree_compatible": compatible,
        "orthogonality_residual": orth_res,
        "completeness_residual": comp_res,
        "relations_exact": bool(exact),
        "max_residual": max_res,
    }


def word_exponent(n, word):
    """Monomial exponent produced by a word of branch indices:
    m = sum_t word[t] * N^t."""
    n = _check_branch(n)
    return sum(int(i) * n**t for t, i in enumerate(word))


def iterate_isometries(n, word, f):
    """Apply the composite isometry labeled by ``word`` to f.

    The word (i_1, ..., i_k) denotes the operator product
    S_{i_1} S_{i_2} ... S_{i_k} (rightmost factor acts first), whose net
    effect is  f(z) -> z^m f(z^{N^k})  with  m = sum_t i_t N^{t-1}.
    Distinct words of the same length land on distinct monomial shifts,
    which is the orthogonality of the iterated ranges.
    """
    n = _check_branch(n)
    out = f
    for i in reversed(tuple(word)):
        out = s_apply(n, i, out)
    return out


def ptheta_inner(n, f, g, base_inner):
    """Inner product through the split:  sum_j base_inner(f_j, g_j).

    ``base_inner`` evaluates the inner product of the underlying space
    on each split part -- the coefficient inner product for the full
    Hardy-type space, or a state-metric form for a finite-dimensional
    model space.
    """
    n = _check_branch(n)
    fp = split(n, f).parts
    gp = split(n, g).parts
    return sum(base_inner(fp[j], gp[j]) for j in range(n))


def _state_series(real, x, max_exp):
    """Taylor series of z -> C (I - zA)^{-1} x through z^max_exp."""
    x = np.asarray(x, dtype=complex).reshape(-1, 1)
    coeffs = {}
    v = x
    for k in range(max_exp + 1):
        coeffs[k] = real.c @ v
        v = real.a @ v
    return LaurentMatrixFunction(coeffs, rows=real.out_dim, cols=1)


class ShiftRealizationMaps:
    """Concrete maps tying the split to a state-space realization.

    For a realization of T with state dimension s, the substitution
    z -> z^N has the ring realization of ``Realization.compose_power``;
    its state space is N stacked copies of the original one.  On the
    model space of the substituted function the basic maps act as

    * U:  f -> (f_0, ..., f_{N-1})            (the split),
    * T:  (f_0, ..., f_{N-1}) -> (f_1, ..., f_{N-1}, R0 f_0),
    * script A = R0 (backward shift) on the assembled function,
    * script C:  f -> f_0(0),
    * script B:  xi -> z^{N-1} (R0 T xi)(z^N).

    ``verify`` confirms the coefficient-level identities and the two
    inner-product identities

        <Af, Ag>_N = <T U f, T U g>   and   <B xi, B eta>_N = <B0 xi, B0 eta>

    where the N-level inner product is the state metric of the composed
    realization, solved independently of the base metric.

    Two models are supported: the zero function (full Hardy-type
    coefficient space, inner product = signature-weighted coefficient
    sum) and a state-space model certified by the metric solver.
    """

    def __init__(self, real, j, n, truncation):
        self.n = _check_branch(n)
        self.real = real
        self.j = j if isinstance(j, SignatureMatrix) else SignatureMatrix(j)
        self.truncation = int(truncation)
        if self.truncation < 2 * self.n:
            raise TruncationTooSmall(
                "truncation %d too small for branching %d"
                % (truncation, n)
            )
        if real.state_dim == 0 and np.count_nonzero(real.d):
            raise ValueError(
                "stateless model requires the zero function; got a nonzero "
                "constant"
            )
        self.hardy = real.state_dim == 0
        self.real_n = real.compose_power(self.n)

    # -- the maps ------------------------------------------------------

    def split_parts(self, f):
        return split(self.n, f).parts

    def cyclic_shift(self, parts):
        """(f_0, ..., f_{N-1}) -> (f_1, ..., f_{N-1}, R0 f_0)."""
        parts = tuple(parts)
        return parts[1:] + (parts[0].backward_shift(),)

    def backward(self, f):
        return f.backward_shift()

    def eval_zero(self, f):
        """script C: value of split part 0 at the origin."""
        return self.split_parts(f)[0](0.0)

    def embed(self, xi):
        """script B: xi -> z^{N-1} (R0 T xi)(z^N), truncated."""
        xi = np.asarray(xi, dtype=complex).reshape(-1, 1)
        theta = self.real.taylor_laurent(self.truncation)
        txi = LaurentMatrixFunction(
            {k: m @ xi for k, m in theta.coeffs.items()},
            rows=self.real.out_dim,
            cols=1,
        )
        return txi.backward_shift().compose_power(self.n).shift(self.n - 1)

    # -- verification --------------------------------------------------

    def _random_poly(self, rng, p):
        coeffs = {}
        for k in range(self.truncation + 1):
            coeffs[k] = rng.standard_normal((p, 1)) + 1j * rng.standard_normal(
                (p, 1)
            )
        return LaurentMatrixFunction(coeffs, rows=p, cols=1)

    def verify(self, samples=10, seed=0):
        """Check the structural and inner-product identities.

        Returns a report dict with the maximal deviations observed over
        ``samples`` random inputs.
        """
        rng = np.random.default_rng(seed)
        p = self.j.dim
        report = {
            "model": "hardy" if self.hardy else "state",
            "samples": int(samples),
            "split_shift_dev": 0.0,
            "a_inner_dev": 0.0,
            "b_inner_dev": 0.0,
            "b_series_dev": 0.0,
            "c_dev": 0.0,
        }

        if self.hardy:
            base = lambda u, v: h2j_inner(u, v, self.j)
            for _ in range(samples):
                f = self._random_poly(rng, p)
                g = self._random_poly(rng, p)
                # U (R0 f) == T (U f), coefficient-exact
                lhs = self.split_parts(self.backward(f))
                rhs = self.cyclic_shift(self.split_parts(f))
                dev = max(a.max_abs_diff(b) for a, b in zip(lhs, rhs))
                report["split_shift_dev"] = max(report["split_shift_dev"], dev)
                # <R0 f, R0 g> == sum_j <(TUf)_j, (TUg)_j>
                left = h2j_inner(self.backward(f), self.backward(g), self.j)
                right = sum(
                    base(a, b)
                    for a, b in zip(
                        self.cyclic_shift(self.split_parts(f)),
                        self.cyclic_shift(self.split_parts(g)),
                    )
                )
                report["a_inner_dev"] = max(
                    report["a_inner_dev"], abs(left - right)
                )
                # script C agrees with evaluation of the part
                c_val = self.eval_zero(f)
                direct = self.split_parts(f)[0](0.0)
                report["c_dev"] = max(
                    report["c_dev"], float(np.max(np.abs(c_val - direct)))
                )
            # script B vanishes identically for the zero function
            xi = rng.standard_normal((p, 1))
            report["b_inner_dev"] = 0.0 if self.embed(xi).is_zero else np.inf
            return report

        # state model: metrics solved independently at both levels
        cert = solve_stein(self.real, self.j)
        cert_n = solve_stein(self.real_n, self.j)
        s = self.real.state_dim
        big_a, big_b, big_c = self.real_n.a, self.real_n.b, self.real_n.c

        def inner(h, x, y):
            return complex((y.conj().T @ h @ x)[0, 0])

        for _ in range(samples):
            x = rng.standard_normal((self.n * s, 1)) + 1j * rng.standard_normal(
                (self.n * s, 1)
            )
            y = rng.standard_normal((self.n * s, 1)) + 1j * rng.standard_normal(
                (self.n * s, 1)
            )
            # function-level: series of A'x is the backward shift
            f = _state_series(self.real_n, x, self.truncation)
            fa = _state_series(self.real_n, big_a @ x, self.truncation - 1)
            report["split_shift_dev"] = max(
                report["split_shift_dev"],
                fa.max_abs_diff(self.backward(f)),
            )
            # A_inner: <A'x, A'y>_{H'} == sum over shifted parts in H
            left = inner(cert_n.h, big_a @ x, big_a @ y)
            xs = [x[k * s : (k + 1) * s] for k in range(self.n)]
            ys = [y[k * s : (k + 1) * s] for k in range(self.n)]
            tx = xs[1:] + [self.real.a @ xs[0]]
            ty = ys[1:] + [self.real.a @ ys[0]]
            right = sum(inner(cert.h, u, v) for u, v in zip(tx, ty))
            scale = 1.0 + abs(left)
            report["a_inner_dev"] = max(
                report["a_inner_dev"], abs(left - right) / scale
            )
            # script C: C'x == (split part 0)(0)
            c_direct = split(self.n, f).parts[0](0.0)
            report["c_dev"] = max(
                report["c_dev"],
                float(np.max(np.abs(big_c @ x - c_direct))),
            )
        for _ in range(samples):
            xi = rng.standard_normal((p, 1)) + 1j * rng.standard_normal((p, 1))
            eta = rng.standard_normal((p, 1)) + 1j * rng.standard_normal(
                (p, 1)
            )
            left = inner(cert_n.h, big_b @ xi, big_b @ eta)
            right = inner(cert.h, self.real.b @ xi, self.real.b @ eta)
            scale = 1.0 + abs(left)
            report["b_inner_dev"] = max(
                report["b_inner_dev"], abs(left - right) / scale
            )
            # function-level: embed(xi) is the series of B' xi
            emb = self.embed(xi).truncate(self.truncation)
            ser = _state_series(self.real_n, big_b @ xi, self.truncation)
            report["b_series_dev"] = max(
                report["b_series_dev"], emb.max_abs_diff(ser)
            )
        return report


def gleason_decompose(f, m_list, n, g_degree=None, rcond=None):
    """Solve  f(z) = sum_k m_k(z) g_k(z^N)  for the g_k by least squares.

    The unknown coefficient vectors of the g_k (exponents 0..g_degree)
    are stacked and matched against the coefficients of f on the union
    of reachable exponents.  With monomial weights m_k = z^k this
    reproduces the split exactly; for general weights the residual
    reports how far f is from the span.

    Parameters
    ----------
    f : LaurentMatrixFunction (p x 1)
    m_list : sequence of LaurentMatrixFunction, scalar (1x1) or p x p
    n : int
    g_degree : int, optional
        Truncation degree of each g_k; defaults to max(0, max_exp(f)//N).
    rcond : float, optional
        Passed to the least-squares solver.

    Returns
    -------
    (g_list, report)
        ``g_list`` holds the solved parts; ``report`` has the residual
        (2-norm over stacked coefficients), the numerical rank and a
        rank-deficiency flag (also emitted as RankDeficientWarning).
    """
    n = _check_branch(n)
    if f.cols != 1:
        raise DimensionMismatch("f must be a column (p x 1) function")
    p = f.rows
    weights = []
    for m in m_list:
        if m.shape == (1, 1) or m.shape == (p, p):
            weights.append(m)
        else:
            raise DimensionMismatch(
                "weight has shape %r, expected 1x1 or %dx%d"
                % (m.shape, p, p)
            )
    if g_degree is None:
        g_degree = max(0, f.max_exp // n)
    g_degree = int(g_degree)

    exps = set(f.support)
    for m in weights:
        for a in m.support:
            for b in range(g_degree + 1):
                exps.add(a + n * b)
    exps = sorted(exps)
    row_of = {e: i for i, e in enumerate(exps)}

    n_w = len(weights)
    cols = n_w * (g_degree + 1) * p
    a_mat = np.zeros((len(exps) * p, cols), dtype=complex)
    for wi, m in enumerate(weights):
        for a_exp, a_coeff in m.coeffs.items():
            block = (
                a_coeff
                if a_coeff.shape == (p, p)
                else a_coeff[0, 0] * np.eye(p)
            )
            for b in range(g_degree + 1):
                e = a_exp + n * b
                r = row_of[e] * p
                c = (wi * (g_degree + 1) + b) * p
                a_mat[r : r + p, c : c + p] += block
    b_vec = np.zeros(len(exps) * p, dtype=complex)
    for e, coeff in f.coeffs.items():
        b_vec[row_of[e] * p : (row_of[e] + 1) * p] = coeff[:, 0]

    x, _, rank, _ = np.linalg.lstsq(a_mat, b_vec, rcond=rcond)
    residual = float(np.linalg.norm(a_mat @ x - b_vec))
    deficient = rank < cols
    if deficient:
        warnings.warn(
            "decomposition system is rank deficient (%d < %d); returning "
            "the minimum-norm solution" % (rank, cols),
            RankDeficientWarning,
            stacklevel=2,
        )
    g_list = []
    for wi in range(n_w):
        coeffs = {}
        for b in range(g_degree + 1):
            c = (wi * (g_degree + 1) + b) * p
            coeffs[b] = x[c : c + p].reshape(p, 1)
        g_list.append(LaurentMatrixFunction(coeffs, rows=p, cols=1))
    report = {
        "residual": residual,
        "rank": int(rank),
        "n_unknowns": int(cols),
        "rank_deficient": bool(deficient),
        "g_degree": g_degree,
    }
    return g_list, report
