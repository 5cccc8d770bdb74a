"""Signature matrices and indefinite inner products.

A *signature matrix* J is Hermitian and involutive (J = J* = J^{-1}).  It
turns C^p into an indefinite inner product space via

    [x, y]_J = y* J x,

and the Hardy-type coefficient space of vector polynomials into an
indefinite inner product space via

    [f, g]_J = sum_n  g_n* J f_n ,

where f(z) = sum_n f_n z^n and g(z) = sum_n g_n z^n.  Both inner products
are linear in the first slot and conjugate-linear in the second.

The adjoint of a matrix A mapping (C^{p1}, J1) into (C^{p2}, J2) with
respect to these inner products is J1 A* J2.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NegativeExponent,
    NotHermitian,
    NotInvolution,
)

__all__ = [
    "Signature",
    "SignatureMatrix",
    "validate_signature_matrix",
    "hermitian_signature",
    "j_adjoint",
    "h2j_inner",
]

#: Default tolerance for the structural (Hermitian / involution) checks.
STRUCTURE_TOL = 1e-12

#: Default tolerance below which an eigenvalue is classified as zero.
EIGENVALUE_TOL = 1e-9


@dataclass(frozen=True)
class Signature:
    """Inertia of a Hermitian matrix: counts of positive, negative and
    (numerically) zero eigenvalues."""

    n_pos: int
    n_neg: int
    n_zero: int

    @property
    def dim(self):
        return self.n_pos + self.n_neg + self.n_zero


def _as_matrix(j):
    """Return the underlying ndarray of a SignatureMatrix or array-like."""
    if isinstance(j, SignatureMatrix):
        return j.matrix
    return np.asarray(j, dtype=complex)


class SignatureMatrix:
    """A validated Hermitian involution J = J* = J^{-1}.

    Parameters
    ----------
    matrix : array_like
        Square complex matrix.
    tol : float, optional
        Entrywise tolerance for the Hermitian and involution checks.

    Raises
    ------
    NotHermitian
        If ``max |J - J*| > tol``.
    NotInvolution
        If ``max |J @ J - I| > tol``.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix, tol=STRUCTURE_TOL):
        m = np.array(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(
                "signature matrix must be square, got shape %r" % (m.shape,)
            )
        herm_dev = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
        if herm_dev > tol:
            raise NotHermitian(
                "matrix is not Hermitian: max deviation %.3e > %.1e"
                % (herm_dev, tol)
            )
        inv_dev = (
            float(np.max(np.abs(m @ m - np.eye(m.shape[0]))))
            if m.size
            else 0.0
        )
        if inv_dev > tol:
            raise NotInvolution(
                "matrix does not square to the identity: max deviation "
                "%.3e > %.1e" % (inv_dev, tol)
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("SignatureMatrix is immutable")

    @classmethod
    def from_diag(cls, diag):
        """Build diag(d_1, ..., d_p) from a +-1 sequence."""
        return cls(np.diag(np.asarray(diag, dtype=complex)))

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n))

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def signature(self):
        return hermitian_signature(self.matrix)

    def __repr__(self):
        s = self.signature
        return "SignatureMatrix(dim=%d, n_pos=%d, n_neg=%d)" % (
            self.dim,
            s.n_pos,
            s.n_neg,
        )

    def __eq__(self, other):
        if not isinstance(other, SignatureMatrix):
            return NotImplemented
        return np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash((self.dim, self.matrix.tobytes()))


def validate_signature_matrix(j, tol=STRUCTURE_TOL):
    """Validate J = J* = J^{-1} and return its :class:`Signature`.

    Accepts an ndarray or an existing :class:`SignatureMatrix`.  A
    signature matrix has no zero eigenvalues, so ``n_zero`` is always 0
    on success.
    """
    sm = j if isinstance(j, SignatureMatrix) else SignatureMatrix(j, tol=tol)
    return hermitian_signature(sm.matrix)


def hermitian_signature(h, tol=EIGENVALUE_TOL):
    """Inertia of a Hermitian matrix.

    The input is symmetrized as (H + H*)/2 before the eigenvalue
    computation; eigenvalues with ``|lambda| <= tol`` count as zero.

    Parameters
    ----------
    h : array_like
        Square matrix, Hermitian up to roundoff.
    tol : float, optional
        Absolute threshold separating zero from signed eigenvalues.

    Returns
    -------
    Signature
    """
    m = _as_matrix(h)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch("expected a square matrix, got %r" % (m.shape,))
    if m.shape[0] == 0:
        return Signature(0, 0, 0)
    sym = (m + m.conj().T) / 2.0
    eigs = np.linalg.eigvalsh(sym)
    n_pos = int(np.sum(eigs > tol))
    n_neg = int(np.sum(eigs < -tol))
    return Signature(n_pos, n_neg, m.shape[0] - n_pos - n_neg)


def j_adjoint(a, j1, j2):
    """Adjoint of A : (C^{p1}, J1) -> (C^{p2}, J2), namely J1 A* J2.

    Parameters
    ----------
    a : array_like, shape (p2, p1)
    j1 : SignatureMatrix or array_like, shape (p1, p1)
        Signature matrix of the domain.
    j2 : SignatureMatrix or array_like, shape (p2, p2)
        Signature matrix of the codomain.

    Returns
    -------
    ndarray, shape (p1, p2)

    Notes
    -----
    For J1 = I and J2 = I this is the ordinary conjugate transpose, and
    the construction is an involution:
    ``j_adjoint(j_adjoint(A, J1, J2), J2, J1) == A`` exactly when J1, J2
    are exact involutions.
    """
    a = np.asarray(a, dtype=complex)
    m1 = _as_matrix(j1)
    m2 = _as_matrix(j2)
    if a.ndim != 2:
        raise DimensionMismatch("expected a matrix, got ndim=%d" % a.ndim)
    p2, p1 = a.shape
    if m1.shape != (p1, p1):
        raise DimensionMismatch(
            "domain signature matrix has shape %r, expected (%d, %d)"
            % (m1.shape, p1, p1)
        )
    if m2.shape != (p2, p2):
        raise DimensionMismatch(
            "codomain signature matrix has shape %r, expected (%d, %d)"
            % (m2.shape, p2, p2)
        )
    return m1 @ a.conj().T @ m2


def _coeff_items(f):
    """Yield (exponent, column-vector) pairs from a coefficient mapping.

    Accepts a dict {int: vector} or any object exposing ``coeffs`` with
    that layout (e.g. a 1-column LaurentMatrixFunction).
    """
    coeffs = getattr(f, "coeffs", f)
    for n, vec in coeffs.items():
        v = np.asarray(vec, dtype=complex)
        if v.ndim == 2:
            if v.shape[1] != 1:
                raise DimensionMismatch(
                    "coefficients must be column vectors, got shape %r"
                    % (v.shape,)
                )
            v = v[:, 0]
        yield int(n), v


def h2j_inner(f, g, j):
    """Indefinite coefficient inner product [f, g]_J = sum_n g_n* J f_n.

    Parameters
    ----------
    f, g : mapping int -> vector, or object with such a ``coeffs`` attribute
        Finitely supported coefficient maps of C^p-valued polynomials.
        All exponents must be >= 0.
    j : SignatureMatrix or array_like, shape (p, p)

    Returns
    -------
    complex

    Raises
    ------
    NegativeExponent
        If either map has a term with exponent < 0.
    DimensionMismatch
        If a coefficient's length differs from the dimension of J.
    """
    m = _as_matrix(j)
    p = m.shape[0]
    fc = {}
    for n, v in _coeff_items(f):
        if n < 0:
            raise NegativeExponent("f has a term with exponent %d" % n)
        if v.shape != (p,):
            raise DimensionMismatch(
                "f coefficient at exponent %d has length %d, expected %d"
                % (n, v.shape[0], p)
            )
        fc[n] = v
    total = 0.0 + 0.0j
    for n, w in _coeff_items(g):
        if n < 0:
            raise NegativeExponent("g has a term with exponent %d" % n)
        if w.shape != (p,):
            raise DimensionMismatch(
                "g coefficient at exponent %d has length %d, expected %d"
                % (n, w.shape[0], p)
            )
        if n in fc:
            total += w.conj() @ m @ fc[n]
    return complex(total)
