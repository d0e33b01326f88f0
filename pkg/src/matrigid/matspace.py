"""Real coordinate charts for the matrix spaces M_n(F) and H_n(F).

Every space is handled as a real vector space with a fixed, documented basis.
Matrices are stored as pairs of real arrays (real part, imaginary part) and
only converted to complex numpy arrays at the point where a decomposition
needs them.

Canonical basis order (indices are 0-based, pairs ``i < j`` in lexicographic
order)::

    M_n(R):  e_ij for all (i, j)
    M_n(C):  e_ij for all (i, j), then i*e_ij for all (i, j)
    H_n(R):  e_ii, then e_ij + e_ji
    H_n(C):  e_ii, then e_ij + e_ji, then i*(e_ij - e_ji)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from .config import ToleranceConfig, resolve
from .exceptions import InvalidDimensionError, NotInSpaceError


class Field(str, enum.Enum):
    REAL = "real"
    COMPLEX = "complex"


class Kind(str, enum.Enum):
    FULL = "full"
    HERMITIAN = "hermitian"


def _unit(n, i, j):
    m = np.zeros((n, n))
    m[i, j] = 1.0
    return m


def _to_pair(matrix):
    m = np.asarray(matrix)
    return np.real(m).astype(float), np.imag(m).astype(float)


@dataclass(frozen=True, eq=False)
class MatrixSpaceChart:
    """A matrix space together with an ordered real basis.

    ``basis_re[i] + 1j * basis_im[i]`` is the i-th basis matrix.
    """

    field: Field
    n: int
    kind: Kind
    basis_re: np.ndarray = field(repr=False)
    basis_im: np.ndarray = field(repr=False)

    @property
    def realdim(self) -> int:
        return self.basis_re.shape[0]

    @property
    def is_complex(self) -> bool:
        return self.field is Field.COMPLEX

    @property
    def label(self) -> str:
        f = "R" if self.field is Field.REAL else "C"
        return f"{'M' if self.kind is Kind.FULL else 'H'}_{self.n}({f})"

    @property
    def basis(self) -> np.ndarray:
        """Basis matrices as an array of shape (realdim, n, n)."""
        if self.is_complex:
            return self.basis_re + 1j * self.basis_im
        return self.basis_re.copy()

    @cached_property
    def _flat(self) -> np.ndarray:
        # rows: basis elements as real vectors of length 2 n^2 (re, im)
        d = self.realdim
        return np.hstack([self.basis_re.reshape(d, -1), self.basis_im.reshape(d, -1)])

    @cached_property
    def _dual(self) -> np.ndarray:
        return np.linalg.pinv(self._flat)

    def gram(self) -> np.ndarray:
        """Gram matrix of the basis under the pairing Re tr(a* b)."""
        return self._flat @ self._flat.T

    def pair(self, rep: np.ndarray) -> np.ndarray:
        """Values Re tr(rep* B_i) for every basis matrix B_i."""
        re, im = _to_pair(rep)
        return self._flat @ np.concatenate([re.ravel(), im.ravel()])

    def contains(self, matrix, tol: ToleranceConfig | None = None) -> bool:
        tol = resolve(tol)
        m = np.asarray(matrix)
        if m.shape != (self.n, self.n):
            return False
        if not self.is_complex and np.max(np.abs(np.imag(m)), initial=0.0) > tol.member_tol:
            return False
        if self.kind is Kind.HERMITIAN:
            return bool(np.max(np.abs(m - m.conj().T)) <= tol.member_tol)
        return True

    def to_coords(self, matrix, tol: ToleranceConfig | None = None) -> np.ndarray:
        tol = resolve(tol)
        if not self.contains(matrix, tol):
            raise NotInSpaceError(f"matrix is not an element of {self.label}")
        re, im = _to_pair(matrix)
        return np.concatenate([re.ravel(), im.ravel()]) @ self._dual

    def coords_unchecked(self, matrices) -> np.ndarray:
        """Coordinates of one matrix or a stack of matrices, skipping the membership test."""
        m = np.asarray(matrices)
        lead = m.shape[:-2]
        re, im = _to_pair(m.reshape(-1, self.n, self.n))
        flat = np.hstack([re.reshape(re.shape[0], -1), im.reshape(im.shape[0], -1)])
        return (flat @ self._dual).reshape(*lead, self.realdim)

    def from_coords(self, coords) -> np.ndarray:
        c = np.asarray(coords, dtype=float)
        if c.shape != (self.realdim,):
            raise NotInSpaceError(
                f"expected {self.realdim} coordinates for {self.label}, got shape {c.shape}"
            )
        re = np.tensordot(c, self.basis_re, axes=1)
        if not self.is_complex:
            return re
        return re + 1j * np.tensordot(c, self.basis_im, axes=1)

    def element(self, matrix) -> "MatrixElement":
        return MatrixElement(self, self.to_coords(matrix))


@dataclass(frozen=True, eq=False)
class MatrixElement:
    chart: MatrixSpaceChart
    coords: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        return self.chart.from_coords(self.coords)


def make_chart(field, n, kind) -> MatrixSpaceChart:
    """Build the canonical chart for M_n(F) or H_n(F)."""
    field, kind = Field(field), Kind(kind)
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise InvalidDimensionError(f"matrix size must be an integer >= 2, got {n!r}")
    n = int(n)
    re, im = [], []
    zero = np.zeros((n, n))
    pairs = list(combinations(range(n), 2))
    if kind is Kind.FULL:
        units = [_unit(n, i, j) for i in range(n) for j in range(n)]
        re += units
        im += [zero] * len(units)
        if field is Field.COMPLEX:
            re += [zero] * len(units)
            im += units
    else:
        re += [_unit(n, i, i) for i in range(n)]
        re += [_unit(n, i, j) + _unit(n, j, i) for i, j in pairs]
        im += [zero] * len(re)
        if field is Field.COMPLEX:
            re += [zero] * len(pairs)
            im += [_unit(n, i, j) - _unit(n, j, i) for i, j in pairs]
    return MatrixSpaceChart(field, n, kind, np.array(re), np.array(im))


def k_value(field, n, kind) -> int:
    """Real dimension k(X) from the closed-form table."""
    field, kind = Field(field), Kind(kind)
    if kind is Kind.HERMITIAN:
        return n * (n + 1) // 2 if field is Field.REAL else n * n
    return n * n if field is Field.REAL else 2 * n * n


def l_value(field, n, kind) -> int:
    """Dimension l(X) of the infinitesimal rigid motions, closed form."""
    field, kind = Field(field), Kind(kind)
    if kind is Kind.HERMITIAN:
        return n * n if field is Field.REAL else 2 * n * n - 1
    return 2 * n * n - n if field is Field.REAL else 4 * n * n - 1


def skew_basis(field, n, drop_11=False) -> list[np.ndarray]:
    """Real basis of Skew_n(F); with ``drop_11`` a basis of Skew_n^0(F)."""
    field = Field(field)
    pairs = list(combinations(range(n), 2))
    out = [_unit(n, i, j) - _unit(n, j, i) for i, j in pairs]
    if field is Field.COMPLEX:
        out = [m.astype(complex) for m in out]
        out += [1j * (_unit(n, i, j) + _unit(n, j, i)) for i, j in pairs]
        out += [1j * _unit(n, i, i) for i in range(1 if drop_11 else 0, n)]
    return out


@dataclass(frozen=True, eq=False)
class MotionParamSpace:
    """Parameters (a, b, c) of the infinitesimal rigid motions x -> ax + xb + c.

    For hermitian charts ``b_basis`` is empty and the motion is x -> ax - xa + c.
    """

    chart: MatrixSpaceChart
    a_basis: list
    b_basis: list
    c_basis: list

    @property
    def total_dim(self) -> int:
        return len(self.a_basis) + len(self.b_basis) + len(self.c_basis)


def motion_param_space(chart: MatrixSpaceChart) -> MotionParamSpace:
    if chart.kind is Kind.FULL:
        a = skew_basis(chart.field, chart.n)
        b = skew_basis(chart.field, chart.n, drop_11=True)
    else:
        a = skew_basis(chart.field, chart.n, drop_11=True)
        b = []
    return MotionParamSpace(chart, a, b, list(chart.basis))
