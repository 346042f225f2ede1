"""Truncated coefficient model of the Hardy space H^2 of the unit disc.

An element f(z) = sum a_k z^k is stored through degree N as a
:class:`CoeffVector`.  Operators are stored as :class:`OperatorMatrix`
with the fixed convention

    entries[n, m] = coefficient of z^n in the image of z^m,

so applying an operator to a coefficient vector is an ordinary
matrix-vector product.  With this convention lower-triangular operators
(C, and everything built from it by products) have exact truncations:
the leading (N+1)x(N+1) block of a product of lower-triangular matrices is
the product of the leading blocks.  Upper-triangular operators whose
columns are polynomials of degree <= column index (composition operators,
the generator, the resolvent) are exact on polynomials for the same reason.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeError, StructureError

STRUCTURES = ("lower-triangular", "upper-triangular", "bidiagonal", "dense")


def _frozen(array, dtype=complex):
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class CoeffVector:
    """Taylor coefficients a_0..a_N of an H^2 function."""

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = _frozen(self.coeffs)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValueError("coefficient vector must be one-dimensional and non-empty")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coeffs, dtype=dtype)

    def __add__(self, other):
        _check_order(self, other)
        return CoeffVector(self.coeffs + other.coeffs)

    def __sub__(self, other):
        _check_order(self, other)
        return CoeffVector(self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        return CoeffVector(self.coeffs * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return CoeffVector(-self.coeffs)

    @classmethod
    def basis(cls, n: int, N: int) -> "CoeffVector":
        """The monomial z^n truncated at order N."""
        if not 0 <= n <= N:
            raise ValueError(f"basis index {n} outside 0..{N}")
        e = np.zeros(N + 1, dtype=complex)
        e[n] = 1.0
        return cls(e)

    @classmethod
    def zeros(cls, N: int) -> "CoeffVector":
        return cls(np.zeros(N + 1, dtype=complex))


def _check_order(f, g):
    if f.order != g.order:
        raise ShapeError(f"truncation orders differ: {f.order} vs {g.order}")


def infer_structure(entries: np.ndarray) -> str:
    """Smallest structure class consistent with the exact zero pattern."""
    lower = not np.any(np.triu(entries, 1))
    upper = not np.any(np.tril(entries, -1))
    if lower and upper:
        # diagonal matrices count as lower-triangular: products stay exact
        return "lower-triangular"
    band = not np.any(np.triu(entries, 2)) and not np.any(np.tril(entries, -2))
    if band and (lower or upper):
        return "bidiagonal"
    if lower:
        return "lower-triangular"
    if upper:
        return "upper-triangular"
    return "dense"


def _consistent(entries, structure):
    if structure == "dense":
        return True
    if structure == "lower-triangular":
        return not np.any(np.triu(entries, 1))
    if structure == "upper-triangular":
        return not np.any(np.tril(entries, -1))
    # bidiagonal: diagonal plus exactly one neighbouring diagonal
    outside = np.triu(entries, 2).any() or np.tril(entries, -2).any()
    both = np.triu(entries, 1).any() and np.tril(entries, -1).any()
    return not outside and not both


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Truncated operator matrix with verified structure metadata.

    Parameters
    ----------
    entries : array_like, shape (N+1, N+1)
        ``entries[n, m]`` is the coefficient of z^n in the image of z^m.
    structure : str, optional
        One of ``STRUCTURES``.  Inferred from the zero pattern when omitted,
        verified against it otherwise.
    """

    entries: np.ndarray
    structure: str | None = field(default=None)

    def __post_init__(self):
        entries = _frozen(self.entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.size == 0:
            raise ShapeError(f"operator matrix must be square and non-empty, got {entries.shape}")
        structure = self.structure
        if structure is None:
            structure = infer_structure(entries)
        elif structure not in STRUCTURES:
            raise StructureError(f"unknown structure {structure!r}")
        elif not _consistent(entries, structure):
            raise StructureError(f"entries violate declared structure {structure!r}")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "structure", structure)

    @property
    def N(self) -> int:
        """Truncation order (the matrix is (N+1)x(N+1))."""
        return self.entries.shape[0] - 1

    shape = N

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    @property
    def H(self) -> "OperatorMatrix":
        """Conjugate transpose (the truncated adjoint)."""
        return OperatorMatrix(self.entries.conj().T)

    def leading_block(self, n: int) -> "OperatorMatrix":
        if not 0 <= n <= self.N:
            raise ShapeError(f"block order {n} outside 0..{self.N}")
        return OperatorMatrix(self.entries[: n + 1, : n + 1])

    def apply(self, f: CoeffVector) -> CoeffVector:
        if f.order != self.N:
            raise ShapeError(f"vector order {f.order} does not match matrix order {self.N}")
        return CoeffVector(self.entries @ f.coeffs)

    def __matmul__(self, other):
        if isinstance(other, CoeffVector):
            return self.apply(other)
        return matmul(self, other)

    def __add__(self, other):
        _check_mat(self, other)
        return OperatorMatrix(self.entries + other.entries)

    def __sub__(self, other):
        _check_mat(self, other)
        return OperatorMatrix(self.entries - other.entries)

    def __mul__(self, scalar):
        return OperatorMatrix(self.entries * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return OperatorMatrix(-self.entries)

    def max_abs_diff(self, other) -> float:
        _check_mat(self, other)
        return float(np.max(np.abs(self.entries - other.entries)))


def _check_mat(a, b):
    if a.N != b.N:
        raise ShapeError(f"truncation orders differ: {a.N} vs {b.N}")


def identity(N: int) -> OperatorMatrix:
    return OperatorMatrix(np.eye(N + 1, dtype=complex), "lower-triangular")


def matmul(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """Product of two truncations.

    When both factors are lower-triangular the result is exactly the
    truncation of the infinite product, because row n of a lower-triangular
    product only involves indices <= n.  The same holds for two
    upper-triangular factors whose columns are polynomials (every
    upper-triangular matrix in this package), since column m of the product
    only involves indices <= m.
    """
    _check_mat(a, b)
    return OperatorMatrix(a.entries @ b.entries)


def inner(f: CoeffVector, g: CoeffVector) -> complex:
    """H^2 inner product, linear in ``f`` and conjugate-linear in ``g``."""
    _check_order(f, g)
    return complex(np.vdot(g.coeffs, f.coeffs))


def h2_norm(f: CoeffVector) -> float:
    return float(np.linalg.norm(f.coeffs))


def cesaro_matrix(N: int) -> OperatorMatrix:
    """Matrix of the Cesaro operator: entries[n, m] = 1/(n+1) for n >= m."""
    if N < 0:
        raise ValueError("truncation order must be non-negative")
    rows = 1.0 / np.arange(1, N + 2)
    M = np.tril(np.repeat(rows[:, None], N + 1, axis=1))
    return OperatorMatrix(M, "lower-triangular")


def cesaro_adjoint_matrix(N: int) -> OperatorMatrix:
    """Matrix of C*: entries[n, m] = 1/(m+1) for n <= m."""
    if N < 0:
        raise ValueError("truncation order must be non-negative")
    cols = 1.0 / np.arange(1, N + 2)
    M = np.triu(np.repeat(cols[None, :], N + 1, axis=0))
    return OperatorMatrix(M, "upper-triangular")


def apply_cesaro(f: CoeffVector) -> CoeffVector:
    """(C f)_n = (a_0 + ... + a_n)/(n+1), in O(N) via a prefix sum."""
    a = f.coeffs
    return CoeffVector(np.cumsum(a) / np.arange(1, a.size + 1))
