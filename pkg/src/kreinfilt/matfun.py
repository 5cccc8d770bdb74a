"""Matrix-valued functions on the unit disk.

Two representations are provided:

* :class:`LaurentMatrixFunction` -- a finite sum  W(z) = sum_k W_k z^k
  with matrix coefficients and integer (possibly negative) exponents.
  Identities between such functions are decided at the *coefficient*
  level, never by sampling.

* :class:`Realization` -- a state-space representation
  W(z) = D + z C (I - z A)^{-1} B, evaluated by a linear solve.

Both evaluate pointwise on the disk and both can be substituted
z -> z^N, which is the basic operation behind everything else in this
package.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import (
    DimensionMismatch,
    EvalAtZeroWithPole,
    NegativeExponent,
    SingularResolvent,
)

__all__ = [
    "LaurentMatrixFunction",
    "Realization",
    "unit_roots",
    "inv_sqrt",
    "blaschke_factor",
]


@lru_cache(maxsize=None)
def _root_table(n):
    # Cached so that every use of "the N-th roots of unity" in the package
    # sees bit-identical floating point values.  Components whose exact
    # value is a representable half-integer (0, +-1/2, +-1) are snapped to
    # it, which makes the special angles (quarter turns, sixth turns)
    # exact: the square roots of unity are exactly {1, -1}, the fourth
    # roots exactly {1, 1j, -1, -1j}.
    k = np.arange(n)
    table = np.exp(2j * np.pi * k / n)
    re = table.real.copy()
    im = table.imag.copy()
    for part in (re, im):
        half = np.round(2.0 * part) / 2.0
        snap = np.abs(part - half) < 1e-15
        part[snap] = half[snap]
    table = re + 1j * im
    table.setflags(write=False)
    return table


def unit_roots(n):
    """The N-th roots of unity [1, eps, eps^2, ...], eps = exp(2*pi*i/N).

    The returned array is cached and read-only: all symmetry checks in the
    package draw phases from this single table so that equal phases are
    equal floats.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return _root_table(int(n))


@lru_cache(maxsize=None)
def inv_sqrt(n):
    """Cached 1/sqrt(n), shared by every normalization in the package."""
    return 1.0 / float(np.sqrt(n))


def _as_coeff(mat):
    m = np.array(mat, dtype=complex)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    elif m.ndim == 1:
        m = m.reshape(-1, 1)
    elif m.ndim != 2:
        raise DimensionMismatch("coefficient must be a matrix")
    return m


class LaurentMatrixFunction:
    """A matrix Laurent polynomial  W(z) = sum_k W_k z^k.

    Coefficients are stored in canonical form: exact-zero matrices are
    dropped, so two functions are equal iff they have identical supports
    and identical coefficient arrays.

    Parameters
    ----------
    coeffs : mapping int -> array_like
        Exponent -> matrix coefficient.  Scalars and 1-D arrays are
        promoted to 1x1 / column matrices.
    rows, cols : int, optional
        Required when ``coeffs`` is empty (the zero function), otherwise
        inferred and checked for consistency.
    """

    __slots__ = ("rows", "cols", "coeffs")

    def __init__(self, coeffs, rows=None, cols=None):
        store = {}
        for k, mat in coeffs.items():
            m = _as_coeff(mat)
            if rows is None:
                rows, cols = m.shape
            elif m.shape != (rows, cols):
                raise DimensionMismatch(
                    "coefficient at exponent %d has shape %r, expected %r"
                    % (k, m.shape, (rows, cols))
                )
            if np.count_nonzero(m):
                m.setflags(write=False)
                store[int(k)] = m
        if rows is None:
            raise DimensionMismatch(
                "rows/cols required for a function with no nonzero terms"
            )
        object.__setattr__(self, "rows", int(rows))
        object.__setattr__(self, "cols", int(cols))
        object.__setattr__(self, "coeffs", store)

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("LaurentMatrixFunction is immutable")

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, rows, cols):
        return cls({}, rows=rows, cols=cols)

    @classmethod
    def constant(cls, mat):
        return cls({0: mat})

    @classmethod
    def monomial(cls, exp, mat):
        """mat * z^exp."""
        return cls({int(exp): mat})

    @classmethod
    def identity(cls, n):
        return cls({0: np.eye(n)})

    @classmethod
    def scalar(cls, coeffs):
        """A 1x1 function from a mapping exponent -> complex."""
        return cls({k: [[v]] for k, v in coeffs.items()}, rows=1, cols=1)

    # ------------------------------------------------------------------
    # structure

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def support(self):
        """Sorted tuple of exponents with nonzero coefficients."""
        return tuple(sorted(self.coeffs))

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def min_exp(self):
        return min(self.coeffs) if self.coeffs else 0

    @property
    def max_exp(self):
        return max(self.coeffs) if self.coeffs else 0

    def coeff(self, k):
        """Coefficient matrix at exponent k (zeros if absent)."""
        if k in self.coeffs:
            return self.coeffs[k].copy()
        return np.zeros((self.rows, self.cols), dtype=complex)

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrixFunction):
            return NotImplemented
        if self.shape != other.shape or self.support != other.support:
            return False
        return all(
            np.array_equal(self.coeffs[k], other.coeffs[k]) for k in self.coeffs
        )

    def __hash__(self):
        return hash((self.shape, self.support))

    def max_abs_diff(self, other):
        """max_k max_ij |self_k - other_k|, a coefficient-level distance."""
        if self.shape != other.shape:
            raise DimensionMismatch(
                "shapes differ: %r vs %r" % (self.shape, other.shape)
            )
        dev = 0.0
        for k in set(self.coeffs) | set(other.coeffs):
            dev = max(dev, float(np.max(np.abs(self.coeff(k) - other.coeff(k)))))
        return dev

    def __repr__(self):
        return "LaurentMatrixFunction(%dx%d, support=%r)" % (
            self.rows,
            self.cols,
            list(self.support),
        )

    # ------------------------------------------------------------------
    # evaluation

    def __call__(self, z):
        """Evaluate at a point.  z = 0 with negative exponents raises."""
        z = complex(z)
        if z == 0 and self.coeffs and self.min_exp < 0:
            raise EvalAtZeroWithPole(
                "evaluation at z=0 of a function with exponent %d"
                % self.min_exp
            )
        out = np.zeros((self.rows, self.cols), dtype=complex)
        for k, m in self.coeffs.items():
            out += m * z**k
        return out

    # ------------------------------------------------------------------
    # arithmetic

    def __add__(self, other):
        if not isinstance(other, LaurentMatrixFunction):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(
                "cannot add %r and %r" % (self.shape, other.shape)
            )
        out = {}
        for k in set(self.coeffs) | set(other.coeffs):
            out[k] = self.coeff(k) + other.coeff(k)
        return LaurentMatrixFunction(out, rows=self.rows, cols=self.cols)

    def __neg__(self):
        return self.scale(-1.0)

    def __sub__(self, other):
        return self.__add__(-other)

    def scale(self, c):
        """Multiply every coefficient by the complex scalar c."""
        c = complex(c)
        return LaurentMatrixFunction(
            {k: c * m for k, m in self.coeffs.items()},
            rows=self.rows,
            cols=self.cols,
        )

    def __matmul__(self, other):
        """Pointwise matrix product; a 1x1 factor acts as a scalar."""
        if not isinstance(other, LaurentMatrixFunction):
            return NotImplemented
        left_scalar = self.shape == (1, 1) and other.rows != 1
        right_scalar = other.shape == (1, 1) and self.cols != 1
        if not (left_scalar or right_scalar) and self.cols != other.rows:
            raise DimensionMismatch(
                "cannot multiply %r by %r" % (self.shape, other.shape)
            )
        if left_scalar:
            rows, cols = other.shape
        elif right_scalar:
            rows, cols = self.shape
        else:
            rows, cols = self.rows, other.cols
        out = {}
        for ka, ma in self.coeffs.items():
            for kb, mb in other.coeffs.items():
                if left_scalar:
                    term = ma[0, 0] * mb
                elif right_scalar:
                    term = ma * mb[0, 0]
                else:
                    term = ma @ mb
                k = ka + kb
                if k in out:
                    out[k] = out[k] + term
                else:
                    out[k] = term
        return LaurentMatrixFunction(out, rows=rows, cols=cols)

    # ------------------------------------------------------------------
    # substitutions and reflections

    def compose_power(self, n):
        """W(z) -> W(z^n): every exponent k becomes k*n."""
        n = int(n)
        if n < 1:
            raise ValueError("n must be >= 1")
        return LaurentMatrixFunction(
            {k * n: m for k, m in self.coeffs.items()},
            rows=self.rows,
            cols=self.cols,
        )

    def rotate(self, n, m=1):
        """W(z) -> W(eps^m z) with eps = exp(2*pi*i/n).

        Realized as phase scaling of the coefficients: the coefficient at
        exponent k picks up the factor eps^{m k}, drawn from the shared
        root table so equal phases are equal floats.
        """
        roots = unit_roots(n)
        return LaurentMatrixFunction(
            {k: roots[(m * k) % n] * mat for k, mat in self.coeffs.items()},
            rows=self.rows,
            cols=self.cols,
        )

    def conj_reflect(self):
        """W(z) -> W(conj(z))*  (coefficients conjugate-transposed,
        exponents preserved)."""
        return LaurentMatrixFunction(
            {k: m.conj().T for k, m in self.coeffs.items()},
            rows=self.cols,
            cols=self.rows,
        )

    def shift(self, k):
        """Multiply by z^k (shift every exponent by k)."""
        return LaurentMatrixFunction(
            {e + int(k): m for e, m in self.coeffs.items()},
            rows=self.rows,
            cols=self.cols,
        )

    def backward_shift(self):
        """R0: f -> (f(z) - f(0)) / z, for functions analytic at 0."""
        if self.coeffs and self.min_exp < 0:
            raise NegativeExponent(
                "backward shift requires exponents >= 0, found %d"
                % self.min_exp
            )
        return LaurentMatrixFunction(
            {k - 1: m for k, m in self.coeffs.items() if k >= 1},
            rows=self.rows,
            cols=self.cols,
        )

    def truncate(self, max_exp):
        """Drop every term with exponent > max_exp."""
        return LaurentMatrixFunction(
            {k: m for k, m in self.coeffs.items() if k <= max_exp},
            rows=self.rows,
            cols=self.cols,
        )


@dataclass(frozen=True)
class Realization:
    """State-space representation W(z) = D + z C (I - z A)^{-1} B.

    The block matrix [[A, B], [C, D]] maps state+input to state+output;
    the state dimension may be zero, in which case W is the constant D.

    Attributes
    ----------
    a : ndarray, shape (n, n)
    b : ndarray, shape (n, q)
    c : ndarray, shape (p, n)
    d : ndarray, shape (p, q)
    h : ndarray or None
        Optional Hermitian certificate attached by the metric solver.
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    h: np.ndarray = field(default=None, compare=False)

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.a, dtype=complex))
        d = np.atleast_2d(np.asarray(self.d, dtype=complex))
        n = a.shape[0]
        p, q = d.shape
        b = np.asarray(self.b, dtype=complex).reshape(n, q)
        c = np.asarray(self.c, dtype=complex).reshape(p, n)
        if a.shape != (n, n):
            raise DimensionMismatch("A must be square, got %r" % (a.shape,))
        for name, m in (("a", a), ("b", b), ("c", c), ("d", d)):
            object.__setattr__(self, name, m)

    @property
    def state_dim(self):
        return self.a.shape[0]

    @property
    def out_dim(self):
        return self.d.shape[0]

    @property
    def in_dim(self):
        return self.d.shape[1]

    @property
    def system_matrix(self):
        """The block matrix [[A, B], [C, D]]."""
        return np.block([[self.a, self.b], [self.c, self.d]])

    def __call__(self, z):
        """Evaluate by solving (I - z A) x = B.

        Raises
        ------
        SingularResolvent
            If I - z*A is singular at z (i.e. z is a pole 1/eigenvalue).
        """
        z = complex(z)
        if self.state_dim == 0:
            return self.d.copy()
        lhs = np.eye(self.state_dim) - z * self.a
        try:
            x = np.linalg.solve(lhs, self.b)
        except np.linalg.LinAlgError as exc:
            raise SingularResolvent(
                "I - z*A singular at z = %r" % (z,)
            ) from exc
        return self.d + z * (self.c @ x)

    def taylor_coeffs(self, count):
        """First ``count`` Taylor coefficients [D, CB, CAB, CA^2B, ...]."""
        if count < 1:
            return []
        out = [self.d.copy()]
        if self.state_dim == 0:
            zero = np.zeros_like(self.d)
            out.extend(zero.copy() for _ in range(count - 1))
            return out
        v = self.b.copy()
        for _ in range(count - 1):
            out.append(self.c @ v)
            v = self.a @ v
        return out

    def taylor_laurent(self, max_exp):
        """Taylor expansion through z^max_exp as a LaurentMatrixFunction."""
        coeffs = self.taylor_coeffs(max_exp + 1)
        return LaurentMatrixFunction(
            {k: m for k, m in enumerate(coeffs)},
            rows=self.out_dim,
            cols=self.in_dim,
        )

    def compose_power(self, n):
        """Realization of z -> W(z^n), state dimension n * state_dim.

        The new state is a ring of ``n`` copies of the old one: the new
        main operator cyclically shifts the copies and applies A once per
        revolution, the input enters the last copy and the output is read
        from the first.  The feedthrough D is unchanged.
        """
        n = int(n)
        if n < 1:
            raise ValueError("n must be >= 1")
        if n == 1:
            return Realization(self.a, self.b, self.c, self.d)
        s = self.state_dim
        big_a = np.zeros((n * s, n * s), dtype=complex)
        for blk in range(n - 1):
            big_a[blk * s : (blk + 1) * s, (blk + 1) * s : (blk + 2) * s] = (
                np.eye(s)
            )
        big_a[(n - 1) * s :, :s] = self.a
        big_b = np.zeros((n * s, self.in_dim), dtype=complex)
        big_b[(n - 1) * s :, :] = self.b
        big_c = np.zeros((self.out_dim, n * s), dtype=complex)
        big_c[:, :s] = self.c
        return Realization(big_a, big_b, big_c, self.d.copy())

    def minimality_ranks(self, tol=1e-9):
        """Numerical ranks of the observability and controllability maps.

        Returns ``(obs_rank, ctrl_rank)``; the realization is minimal iff
        both equal the state dimension.  The rank cutoff is
        ``tol * sigma_max`` (relative).
        """
        s = self.state_dim
        if s == 0:
            return (0, 0)
        obs_blocks = []
        ctrl_blocks = []
        m = np.eye(s, dtype=complex)
        for _ in range(s):
            obs_blocks.append(self.c @ m)
            ctrl_blocks.append(m @ self.b)
            m = m @ self.a
        obs = np.vstack(obs_blocks)
        ctrl = np.hstack(ctrl_blocks)

        def _rank(mat):
            sv = np.linalg.svd(mat, compute_uv=False)
            if sv.size == 0 or sv[0] == 0.0:
                return 0
            return int(np.sum(sv > tol * sv[0]))

        return (_rank(obs), _rank(ctrl))

    def is_minimal(self, tol=1e-9):
        obs, ctrl = self.minimality_ranks(tol)
        return obs == self.state_dim and ctrl == self.state_dim


def blaschke_factor(a):
    """Elementary Blaschke factor b_a(z) = (z - a)/(1 - z*conj(a)).

    Returned as a state-space :class:`Realization` with
    A = conj(a), B = C = sqrt(1 - |a|^2), D = -a, which satisfies the
    unit-circle metric identity with certificate H = 1.

    Parameters
    ----------
    a : complex, |a| < 1
    """
    a = complex(a)
    if abs(a) >= 1:
        raise ValueError("Blaschke zero must satisfy |a| < 1, got %r" % (a,))
    r = float(np.sqrt(1.0 - abs(a) ** 2))
    return Realization(
        np.array([[np.conj(a)]]),
        np.array([[r]]),
        np.array([[r]]),
        np.array([[-a]]),
    )
