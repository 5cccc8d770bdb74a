"""Cyclic-symmetric matrix functions and their filter-bank structure.

The central objects are p x N matrix functions W on the disk satisfying
the rotation symmetry

    W(e z) = W(z) P,        e = exp(2 pi i / N),

for an N-th root-of-identity matrix P.  For the standard cyclic shift
P = P_N the rows of W are built from a bank of N filters:

    W(z) = (1/sqrt N) [ s_i(e^j z) ]_{i,j},

and W factors through the delayed DFT matrix as W(z) = R(z^N) W_hat(z).
This module constructs such functions from filter banks, recognizes
them, decomposes general functions into P-symmetric components, and
handles the periodic-system variant where the symmetry holds only up to
a diagonal monomial factor.

Exactness policy: all root-of-unity phases are drawn from one cached
table per N, and normalizations multiply/divide by the same cached
1/sqrt(N), so structural identities that hold coefficient-by-
coefficient (bank round trips, shift routing for P = I) come out as
exact floating-point equalities, not merely small residuals.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    DeterminantVanishes,
    DimensionMismatch,
    ExponentNotMultipleOfN,
    NoSimilarity,
    NotInCN,
    NotPeriodicSymmetric,
    NotSquare,
    PNotJUnitary,
    PowerNotIdentity,
    TNotInvertible,
)
from .indefinite import SignatureMatrix
from .matfun import LaurentMatrixFunction, Realization, inv_sqrt, unit_roots

__all__ = [
    "FilterBank",
    "cyclic_shift_matrix",
    "dft_matrix",
    "delayed_dft",
    "filter_matrix",
    "check_cyclic_symmetry",
    "validate_component_matrix",
    "decompose_components",
    "krein_orthogonality_check",
    "rotation_quotient",
    "polyphase_factor",
    "product_depends_on",
    "periodic_to_symmetric",
    "periodic_filter_matrix",
    "d_matrix",
    "d_at_one",
    "symmetry_similarity",
]


@dataclass(frozen=True)
class FilterBank:
    """A bank of N scalar filters (1 x 1 Laurent functions)."""

    n: int
    filters: tuple

    def __post_init__(self):
        n = int(self.n)
        if n < 2:
            raise ValueError("need at least two filters")
        filters = tuple(self.filters)
        if len(filters) != n:
            raise DimensionMismatch(
                "expected %d filters, got %d" % (n, len(filters))
            )
        for f in filters:
            if f.shape != (1, 1):
                raise DimensionMismatch(
                    "bank filters must be scalar functions"
                )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "filters", filters)


def cyclic_shift_matrix(n):
    """The N x N cyclic shift P_N: e_1 -> e_2 -> ... -> e_N -> e_1.

    As a right factor it shifts columns left cyclically:
    (W P)_{:,j} = W_{:,j+1} for j < N-1 and (W P)_{:,N-1} = W_{:,0}.
    """
    p = np.zeros((n, n))
    p[0, n - 1] = 1.0
    for i in range(1, n):
        p[i, i - 1] = 1.0
    return p


def dft_matrix(n):
    """Unitary DFT matrix F_N with entries e^{-jk} / sqrt(N)."""
    roots = unit_roots(n)
    inv = inv_sqrt(n)
    f = np.empty((n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            f[j, k] = roots[(-j * k) % n] * inv
    return f


def delayed_dft(n):
    """The delayed DFT function W_hat(z) = diag(1, z^{-1}, ..., z^{1-N}) F_N.

    Row i of the DFT matrix sits at exponent -i.
    """
    f = dft_matrix(n)
    coeffs = {}
    for i in range(n):
        m = np.zeros((n, n), dtype=complex)
        m[i, :] = f[i, :]
        coeffs[-i] = m
    return LaurentMatrixFunction(coeffs, rows=n, cols=n)


def filter_matrix(bank):
    """Build W(z) = (1/sqrt N) [ s_i(e^j z) ] from a filter bank.

    Entry (i, j) carries the filter s_i rotated to e^j z, so the
    coefficient of z^k in column j is s_{i,k} e^{jk} / sqrt(N).  The
    result satisfies W(e z) = W(z) P_N exactly.
    """
    n = bank.n
    roots = unit_roots(n)
    inv = inv_sqrt(n)
    exps = set()
    for f in bank.filters:
        exps.update(f.support)
    coeffs = {}
    for k in sorted(exps):
        m = np.zeros((n, n), dtype=complex)
        for i, f in enumerate(bank.filters):
            c = f.coeff(k)[0, 0]
            if c == 0:
                continue
            for j in range(n):
                m[i, j] = c * roots[(j * k) % n] * inv
        coeffs[k] = m
    return LaurentMatrixFunction(coeffs, rows=n, cols=n)


def check_cyclic_symmetry(w, n, tol=1e-12, allow_nonsquare=False):
    """Check W(e z) = W(z) P_N coefficient-by-coefficient.

    The symmetry is equivalent to e^k W_k = W_k P_N for every
    coefficient W_k.  On success the generating filter bank is
    recovered from the first column: s_i = sqrt(N) * (column 0 of W),
    realized as division by the cached 1/sqrt(N) so that constructing
    the matrix from a bank and reading the bank back is an exact round
    trip.

    Returns
    -------
    dict with ``is_member`` (bool), ``max_dev``, and on success ``bank``.
    """
    n = int(n)
    if w.cols != n:
        raise DimensionMismatch(
            "function has %d columns, symmetry needs %d" % (w.cols, n)
        )
    if not allow_nonsquare and w.rows != n:
        raise NotSquare(
            "function is %d x %d; pass allow_nonsquare=True to accept"
            % (w.rows, w.cols)
        )
    roots = unit_roots(n)
    p = cyclic_shift_matrix(n)
    max_dev = 0.0
    for k, m in w.coeffs.items():
        dev = float(np.max(np.abs(roots[k % n] * m - m @ p)))
        max_dev = max(max_dev, dev)
    report = {"is_member": max_dev <= tol, "max_dev": max_dev, "n": n}
    if report["is_member"]:
        inv = inv_sqrt(n)
        filters = []
        for i in range(w.rows):
            coeffs = {}
            for k, m in w.coeffs.items():
                c = m[i, 0]
                if c != 0:
                    coeffs[k] = np.array([[c / inv]])
            filters.append(LaurentMatrixFunction(coeffs, rows=1, cols=1))
        if w.rows == n:
            report["bank"] = FilterBank(n, tuple(filters))
        else:
            report["filters"] = tuple(filters)
    return report


def validate_component_matrix(p, n, tol=1e-10):
    """Check that P is admissible for the N-component decomposition.

    Required: P^N = I, and det(I - e^l P^l) != 0 for l = 1..N-1 (the
    component projections involve resolvent-type sums that degenerate
    exactly when one of these determinants vanishes).

    Raises PowerNotIdentity or DeterminantVanishes (carrying the list
    of offending l) on failure; returns the verified power P^N.
    """
    p = np.asarray(p, dtype=complex)
    n = int(n)
    if p.shape[0] != p.shape[1]:
        raise NotSquare("component matrix must be square")
    roots = unit_roots(n)
    pw = np.linalg.matrix_power(p, n)
    dev = float(np.max(np.abs(pw - np.eye(p.shape[0]))))
    if dev > tol:
        raise PowerNotIdentity(
            "P^%d differs from the identity by %.3g" % (n, dev)
        )
    bad = []
    for ell in range(1, n):
        mat = np.eye(p.shape[0]) - roots[ell % n] * np.linalg.matrix_power(
            p, ell
        )
        if abs(np.linalg.det(mat)) <= tol:
            bad.append(ell)
    if bad:
        exc = DeterminantVanishes(
            "det(I - e^l P^l) vanishes for l in %r" % (bad,)
        )
        exc.ell = tuple(bad)
        raise exc
    return pw


def decompose_components(w, p, n, tol=1e-10):
    """Split a C^{N x M}-valued W into components W_k with
    W_k(e z) = (e P)^{-k} W_k(z).

    The components are the averaged sums

        W_k(z) = (1/N) sum_l (e P)^{k l} W(e^l z)

    with the N x N matrix P acting on the rows, and they add back to W.
    For P = I the formula collapses to routing each coefficient by its
    exponent residue (coefficient at exponent m goes to component k
    with k + m = 0 mod N), which is performed exactly -- the sum, the
    symmetry of each part and, for a signature matrix J, the
    Krein-orthogonality of distinct parts are then exact floating-point
    identities.

    Returns a list of N LaurentMatrixFunction components.
    """
    n = int(n)
    p = np.asarray(p, dtype=complex)
    if p.shape != (w.rows, w.rows):
        raise DimensionMismatch(
            "component matrix must act on the rows: expected %d x %d, "
            "got %r" % (w.rows, w.rows, p.shape)
        )
    validate_component_matrix(p, n, tol=tol)
    roots = unit_roots(n)

    if np.array_equal(p, np.eye(w.rows)):
        buckets = [dict() for _ in range(n)]
        for m_exp, m in w.coeffs.items():
            k = (-m_exp) % n
            buckets[k][m_exp] = m
        return [
            LaurentMatrixFunction(b, rows=w.rows, cols=w.cols)
            for b in buckets
        ]

    ppow = [np.linalg.matrix_power(p, k) for k in range(n)]
    comps = []
    for k in range(n):
        coeffs = {}
        for m_exp, m in w.coeffs.items():
            s = np.zeros((w.rows, w.rows), dtype=complex)
            for ell in range(n):
                s = s + roots[(ell * (k + m_exp)) % n] * ppow[
                    (k * ell) % n
                ]
            c = (s @ m) / n
            if np.any(c):
                coeffs[m_exp] = c
        comps.append(
            LaurentMatrixFunction(coeffs, rows=w.rows, cols=w.cols)
        )
    return comps


def krein_orthogonality_check(comps, j, p, n, tol=1e-12):
    """Pairwise coefficient inner products of decomposition components.

    For a signature matrix J the components of the decomposition are
    mutually orthogonal in the coefficient inner product
    [F, G] = sum_k trace-free block G_k^* J F_k provided P is
    J-unitary, P^* J P = J (checked first; raises PNotJUnitary).

    Returns a dict with the maximal off-diagonal inner-product norm and
    the full N x N table of Frobenius norms of the block inner products.
    """
    j = j if isinstance(j, SignatureMatrix) else SignatureMatrix(j)
    jm = j.matrix
    p = np.asarray(p, dtype=complex)
    dev = float(np.max(np.abs(p.conj().T @ jm @ p - jm)))
    if dev > 1e-10:
        raise PNotJUnitary(
            "P*JP differs from J by %.3g; the components need not be "
            "orthogonal" % dev
        )
    n = int(n)
    table = np.zeros((n, n))
    max_off = 0.0
    for a in range(n):
        for b in range(n):
            acc = np.zeros((comps[a].cols, comps[b].cols), dtype=complex)
            exps = set(comps[a].support) & set(comps[b].support)
            for k in exps:
                acc = acc + comps[b].coeff(k).conj().T @ jm @ comps[
                    a
                ].coeff(k)
            norm = float(np.linalg.norm(acc))
            table[a, b] = norm
            if a != b:
                max_off = max(max_off, norm)
    return {
        "max_offdiag": max_off,
        "table": table,
        "orthogonal": max_off <= tol,
        "tol": tol,
    }


def rotation_quotient(w, n, samples=24, seed=0, radius=0.75):
    """The factor X relating W to its rotation:  W(z) = W(e z) X(z).

    For square W the quotient X(z) = W(e z)^{-1} W(z) is sampled at
    random disk points; a constant (z-independent) X is reported with
    its maximal cross-sample deviation.  For a 1 x N row built from one
    filter, W(z) = (1/sqrt N)(s(z), s(e z), ..., s(e^{N-1} z)), the
    rotation shifts the entries cyclically and the factor is the
    constant matrix X = P_N^{N-1} (= P_N^{-1}), returned after an exact
    coefficient-level verification.

    The relation writes K_W(z, w) - K_W(e z, e w) as a squared-norm
    kernel weighted by I - X(z) X(w)^*, so for a contractive constant X
    the difference kernel is positive (and vanishes for unitary X).
    The report samples a small Gram matrix of that difference kernel
    and records its most negative eigenvalue as a cross-check, plus the
    maximal pointwise deviation of the two squared-norm numerators.

    Returns a dict with ``x`` (the constant factor, or None if no
    constant factor fits), ``max_dev``, ``gram_min_eig`` and
    ``kernel_dev``.
    """
    n = int(n)
    roots = unit_roots(n)
    e1 = roots[1 % n]
    rng = np.random.default_rng(seed)

    def draw():
        return radius * np.sqrt(rng.uniform()) * np.exp(
            2j * np.pi * rng.uniform()
        )

    if w.rows == w.cols:
        xs = []
        tries = 0
        while len(xs) < samples and tries < samples * 20:
            tries += 1
            z = draw()
            try:
                wz = w(z)
                wez = w(e1 * z)
            except Exception:
                continue
            if abs(np.linalg.det(wez)) < 1e-10:
                continue
            xs.append(np.linalg.solve(wez, wz))
        if not xs:
            raise DeterminantVanishes(
                "could not sample an invertible point for the quotient"
            )
        x0 = xs[0]
        max_dev = max(float(np.max(np.abs(xi - x0))) for xi in xs)
        x = x0 if max_dev <= 1e-8 else None
    else:
        if w.rows != 1 or w.cols != n:
            raise DimensionMismatch(
                "nonsquare quotient covers the 1 x N single-filter row"
            )
        x = np.linalg.matrix_power(cyclic_shift_matrix(n), n - 1)
        # coefficient form of W(z) = W(e z) X:  W_k = e^k W_k X
        max_dev = 0.0
        for k, m in w.coeffs.items():
            dev = float(np.max(np.abs(m - roots[k % n] * m @ x)))
            max_dev = max(max_dev, dev)

    kernel_dev = 0.0
    gram_min_eig = 0.0
    if x is not None:
        pts = []
        tries = 0
        while len(pts) < min(samples, 8) and tries < 200:
            tries += 1
            z = draw()
            try:
                w(z)
                w(e1 * z)
            except Exception:
                continue
            pts.append(z)
        rows = w.rows
        gram = np.zeros((len(pts) * rows, len(pts) * rows), dtype=complex)
        for a, za in enumerate(pts):
            for b, zb in enumerate(pts):
                num = (
                    w(za) @ w(zb).conj().T
                    - w(e1 * za) @ w(e1 * zb).conj().T
                )
                kernel_dev = max(kernel_dev, float(np.max(np.abs(num))))
                gram[a * rows : (a + 1) * rows, b * rows : (b + 1) * rows] = (
                    num / (1.0 - za * np.conj(zb))
                )
        gram = (gram + gram.conj().T) / 2.0
        if gram.size:
            gram_min_eig = float(np.min(np.linalg.eigvalsh(gram)))
    return {
        "x": x,
        "max_dev": max_dev,
        "kernel_dev": kernel_dev,
        "gram_min_eig": gram_min_eig,
        "constant": x is not None,
    }


def polyphase_factor(w, n, tol=1e-12):
    """Factor a cyclic-symmetric W as W(z) = R(z^N) W_hat(z).

    Membership is checked first (raises NotInCN when the symmetry
    fails).  The left factor is read off the recovered filter bank:

        R_{i,l}(u):  coefficient of u^t  =  s_{i, t N - l},

    i.e. entry (i, l) collects the phase-l polyphase component of
    filter i.  All other coefficients of the bank must vanish on the
    sampled residues -- a nonzero leftover raises
    ExponentNotMultipleOfN, which cannot happen for an exact member.

    The reconstruction R(z^N) W_hat(z) is re-expanded and compared to W
    coefficient-by-coefficient; for banks with exactly representable
    coefficients the round trip is exact.

    Returns (r, w_hat, report).
    """
    n = int(n)
    membership = check_cyclic_symmetry(w, n, tol=tol)
    if not membership["is_member"]:
        raise NotInCN(
            "cyclic symmetry fails by %.3g (tol %.3g)"
            % (membership["max_dev"], tol)
        )
    bank = membership["bank"]

    # the factorization needs det W not identically zero
    rng = np.random.default_rng(0)
    max_det = 0.0
    for _ in range(8):
        z = 0.8 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        try:
            max_det = max(max_det, abs(np.linalg.det(w(z))))
        except Exception:
            continue
    if max_det <= 1e-12:
        raise DeterminantVanishes(
            "determinant vanishes on the sampling grid; the factorization "
            "requires det W not identically zero"
        )

    r_coeffs = {}
    exps = set()
    for i, f in enumerate(bank.filters):
        for k in f.support:
            # k = t*N - l with 0 <= l < N  =>  t = ceil(k / N)
            l = (-k) % n
            t = (k + l) // n
            exps.add(t)
    for t in sorted(exps):
        m = np.zeros((n, n), dtype=complex)
        for i, f in enumerate(bank.filters):
            for l in range(n):
                m[i, l] = f.coeff(t * n - l)[0, 0]
        if np.any(m):
            r_coeffs[t] = m
    r = LaurentMatrixFunction(r_coeffs, rows=n, cols=n)
    # integrity: every bank coefficient must appear in exactly one slot
    counted = sum(
        int(np.count_nonzero(m)) for m in r_coeffs.values()
    )
    bank_terms = sum(len(f.support) for f in bank.filters)
    if counted != bank_terms:
        raise ExponentNotMultipleOfN(
            "polyphase slots account for %d coefficients, bank has %d"
            % (counted, bank_terms)
        )

    w_hat = delayed_dft(n)
    recon = r.compose_power(n) @ w_hat
    report = {
        "max_dev": recon.max_abs_diff(w),
        "membership_dev": membership["max_dev"],
        "n": n,
    }
    return r, w_hat, report


def product_depends_on(w1, w2, n, tol=1e-12):
    """Check that W1(z) W2(z)^~ is a function of z^N alone.

    The reflected factor is W2~(z) = W2(conj(z))^*; the product of two
    members of the same symmetry class has all its coefficient support
    on multiples of N.  Both inputs must pass the symmetry check
    (raises NotInCN otherwise).  Returns a report with the mass off the
    lattice.
    """
    n = int(n)
    for name, fun in (("first", w1), ("second", w2)):
        chk = check_cyclic_symmetry(fun, n, allow_nonsquare=True)
        if not chk["is_member"]:
            raise NotInCN(
                "%s factor fails the symmetry check by %.3g"
                % (name, chk["max_dev"])
            )
    prod = w1 @ w2.conj_reflect()
    off = 0.0
    for k, m in prod.coeffs.items():
        if k % n != 0:
            off = max(off, float(np.max(np.abs(m))))
    return {
        "off_lattice": off,
        "depends_on_power": off <= tol,
        "product": prod,
        "n": n,
    }


def d_matrix(n):
    """The diagonal monomial function D_N(z) = diag(z^{N-i} e^{N-i}).

    Entry i (i = 0..N-1) is z^{N-i} e^{N-i}; for N = 2 this is
    diag(z^2, -z).  Satisfies D_N(e z) = D_N(z) D_N(1) exactly (the
    phases multiply inside one cached root table).
    """
    n = int(n)
    roots = unit_roots(n)
    coeffs = {}
    for i in range(n):
        k = n - i
        m = np.zeros((n, n), dtype=complex)
        m[i, i] = roots[k % n]
        coeffs.setdefault(k, np.zeros((n, n), dtype=complex))
        coeffs[k] = coeffs[k] + m
    return LaurentMatrixFunction(coeffs, rows=n, cols=n)


def d_at_one(n):
    """D_N(1) = diag(1, e^{N-1}, ..., e): the constant part of D_N."""
    n = int(n)
    roots = unit_roots(n)
    return np.diag([roots[(n - i) % n] for i in range(n)])


def periodic_to_symmetric(w, n, tol=1e-10):
    """Map a periodic-system function into the cyclic-symmetric class.

    A periodic-system function satisfies the twisted symmetry

        W(e z) = D_N(1)^{-1} W(z) P_N

    (checked coefficient-wise; D_N(1)^{-1} entry i is e^{i}).  The map
    W -> D_N(z) W(z) -- row i scaled by z^{N-i} e^{N-i} -- lands in the
    plain symmetric class, which is re-checked on the output.

    Returns (mapped, report).
    """
    n = int(n)
    if w.rows != n or w.cols != n:
        raise NotSquare("periodic map needs an N x N function")
    roots = unit_roots(n)
    p = cyclic_shift_matrix(n)
    # D_N(1)^{-1} = diag(e^{-(N-i)}) = diag(e^{i mod N})
    d1inv = np.diag([roots[i % n] for i in range(n)])
    max_dev = 0.0
    for k, m in w.coeffs.items():
        dev = float(
            np.max(np.abs(roots[k % n] * m - d1inv @ m @ p))
        )
        max_dev = max(max_dev, dev)
    if max_dev > tol:
        raise NotPeriodicSymmetric(
            "twisted symmetry fails by %.3g (tol %.3g)" % (max_dev, tol)
        )
    # multiply by D_N(z): row i picks up z^{N-i} e^{N-i}
    coeffs = {}
    for k, m in w.coeffs.items():
        for i in range(n):
            row = m[i : i + 1, :]
            if not np.any(row):
                continue
            shift = n - i
            new_k = k + shift
            block = coeffs.setdefault(
                new_k, np.zeros((n, n), dtype=complex)
            )
            block[i : i + 1, :] = block[i : i + 1, :] + roots[
                shift % n
            ] * row
    mapped = LaurentMatrixFunction(coeffs, rows=n, cols=n)
    check = check_cyclic_symmetry(mapped, n, tol=max(tol, 1e-12))
    report = {
        "twisted_dev": max_dev,
        "mapped_dev": check["max_dev"],
        "is_member": check["is_member"],
    }
    return mapped, report


def periodic_filter_matrix(bank):
    """Filter matrix of the periodic-system normalization.

    Entry (i, j) is e^{-ij} s_i(e^j z) / sqrt(N): the coefficient of
    z^k in entry (i, j) carries the combined phase e^{j(k-i)}.  The
    result satisfies the twisted symmetry of ``periodic_to_symmetric``.
    """
    n = bank.n
    roots = unit_roots(n)
    inv = inv_sqrt(n)
    exps = set()
    for f in bank.filters:
        exps.update(f.support)
    coeffs = {}
    for k in sorted(exps):
        m = np.zeros((n, n), dtype=complex)
        for i, f in enumerate(bank.filters):
            c = f.coeff(k)[0, 0]
            if c == 0:
                continue
            for j in range(n):
                m[i, j] = c * roots[(j * (k - i)) % n] * inv
        if np.any(m):
            coeffs[k] = m
    return LaurentMatrixFunction(coeffs, rows=n, cols=n)


def symmetry_similarity(real, n, tol=1e-8):
    """Find the state similarity induced by the rotation symmetry.

    For a minimal realization (A, B, C, D) of a member of the cyclic
    class, the rotated function shares the realization
    (e A, B P_N^{-1} ... ) up to similarity, which pins a matrix T with

        e A T = T A,        T B P_N = B,        e C T = C,

    and then T^N = I by uniqueness of the similarity.  The three
    conditions form a linear system in T solved by least squares; the
    report records the residual, and T is checked for invertibility
    (TNotInvertible) and the power identity.  NoSimilarity is raised
    when no T fits within tolerance.

    Returns (t, report).
    """
    n = int(n)
    a, b, c = real.a, real.b, real.c
    s = real.state_dim
    if s == 0:
        raise NoSimilarity("stateless realization has no similarity")
    roots = unit_roots(n)
    e1 = roots[1 % n]
    p = cyclic_shift_matrix(n)
    if b.shape[1] != n:
        raise DimensionMismatch(
            "realization input dimension %d does not match N = %d"
            % (b.shape[1], n)
        )
    eye_s = np.eye(s)
    # rows for e A T - T A = 0  (unknown vec(T), column-major)
    rows_a = e1 * np.kron(eye_s, a) - np.kron(a.T, eye_s)
    # rows for T (B P) = B  =>  ((B P)^T kron I) vec(T) = vec(B)
    bp = b @ p
    rows_b = np.kron(bp.T, eye_s)
    rhs_b = b.reshape(-1, order="F")
    # rows for e C T = C
    rows_c = e1 * np.kron(eye_s, c)
    rhs_c = c.reshape(-1, order="F")
    lhs = np.vstack(
        [rows_a, rows_b, rows_c]
    )
    rhs = np.concatenate(
        [np.zeros(rows_a.shape[0], dtype=complex), rhs_b, rhs_c]
    )
    sol, _, rank, _ = np.linalg.lstsq(lhs, rhs, rcond=None)
    t = sol.reshape(s, s, order="F")
    residual = float(np.linalg.norm(lhs @ sol - rhs))
    if residual > tol:
        raise NoSimilarity(
            "no similarity solves the symmetry equations "
            "(residual %.3g, tol %.3g)" % (residual, tol)
        )
    svals = np.linalg.svd(t, compute_uv=False)
    if svals.size == 0 or svals[-1] <= 1e-10 * max(1.0, svals[0]):
        raise TNotInvertible("similarity candidate is singular")
    tp = np.linalg.matrix_power(t, n)
    power_dev = float(np.max(np.abs(tp - eye_s)))
    report = {
        "residual": residual,
        "rank": int(rank),
        "power_dev": power_dev,
        "power_ok": power_dev <= max(tol, 1e-8),
        "n": n,
    }
    return t, report
