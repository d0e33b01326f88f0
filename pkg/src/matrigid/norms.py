"""Unitarily invariant matrix norms, the vector norms used for product spaces,
smoothness tests and closed-form support functionals."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .config import ToleranceConfig, resolve
from .exceptions import (
    NonSmoothError,
    ShapeMismatchError,
    UndefinedDirectionError,
)


class Variant(str, enum.Enum):
    SCHATTEN = "schatten"
    KYFAN = "kyfan"
    CYLINDRICAL = "cylindrical"
    HYPERCYLINDRICAL = "hypercylindrical"
    EUCLIDEAN = "euclidean"
    SUP = "sup"
    ABSVAL = "absval"


MATRIX_VARIANTS = frozenset({Variant.SCHATTEN, Variant.KYFAN})


@dataclass(frozen=True)
class NormSpec:
    """Which norm governs distances.

    ``q`` is the Schatten exponent (``math.inf`` for the spectral norm),
    ``k`` the Ky-Fan order and ``d`` the dimension of a vector norm.
    """

    variant: Variant
    q: float | None = None
    k: int | None = None
    d: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        v = self.variant
        if v is Variant.SCHATTEN and not (self.q is not None and self.q >= 1):
            raise ValueError(f"Schatten exponent must lie in [1, inf], got {self.q!r}")
        if v is Variant.KYFAN and not (self.k is not None and self.k >= 1):
            raise ValueError(f"Ky-Fan order must be >= 1, got {self.k!r}")
        if v in (Variant.EUCLIDEAN, Variant.SUP) and not (self.d is not None and self.d >= 1):
            raise ValueError(f"{v.value} norm needs a dimension d >= 1")

    @classmethod
    def schatten(cls, q):
        return cls(Variant.SCHATTEN, q=float(q))

    @classmethod
    def kyfan(cls, k):
        return cls(Variant.KYFAN, k=int(k))

    @classmethod
    def cylindrical(cls):
        return cls(Variant.CYLINDRICAL)

    @classmethod
    def hypercylindrical(cls):
        return cls(Variant.HYPERCYLINDRICAL)

    @classmethod
    def euclidean(cls, d):
        return cls(Variant.EUCLIDEAN, d=int(d))

    @classmethod
    def sup(cls, d):
        return cls(Variant.SUP, d=int(d))

    @classmethod
    def absval(cls):
        return cls(Variant.ABSVAL)

    @property
    def is_matrix_norm(self) -> bool:
        return self.variant in MATRIX_VARIANTS

    @property
    def admissible_for_motions(self) -> bool:
        """False for the Frobenius norm, whose motions are Euclidean."""
        return not (self.variant is Variant.SCHATTEN and self.q == 2)

    def admissible_on(self, field, n, kind) -> bool:
        """Whether the rigid-motion description applies on the given matrix space."""
        if not self.is_matrix_norm:
            return False
        if not self.admissible_for_motions:
            return False
        if self.variant is Variant.KYFAN:
            if self.k > n:
                return False
            # Ky-Fan 2 on 4x4 real matrices has exotic isometries
            if self.k == 2 and n == 4 and str(getattr(field, "value", field)) == "real":
                return False
        return True

    @property
    def vector_dim(self) -> int | None:
        return {
            Variant.CYLINDRICAL: 3,
            Variant.HYPERCYLINDRICAL: 4,
            Variant.ABSVAL: 1,
            Variant.EUCLIDEAN: self.d,
            Variant.SUP: self.d,
        }.get(self.variant)

    def to_dict(self) -> dict:
        out = {"variant": self.variant.value}
        if self.q is not None:
            out["q"] = "inf" if math.isinf(self.q) else self.q
        if self.k is not None:
            out["k"] = self.k
        if self.d is not None:
            out["d"] = self.d
        return out

    def __str__(self):
        if self.variant is Variant.SCHATTEN:
            q = "inf" if math.isinf(self.q) else f"{self.q:g}"
            return f"Schatten({q})"
        if self.variant is Variant.KYFAN:
            return f"KyFan({self.k})"
        if self.d is not None:
            return f"{self.variant.value}({self.d})"
        return self.variant.value


def product_layout(spec: NormSpec) -> list[tuple[int, Variant]]:
    """Factor decomposition (dimension, factor norm) of a vector norm."""
    v = spec.variant
    if v is Variant.CYLINDRICAL:
        return [(2, Variant.EUCLIDEAN), (1, Variant.ABSVAL)]
    if v is Variant.HYPERCYLINDRICAL:
        return [(3, Variant.EUCLIDEAN), (1, Variant.ABSVAL)]
    if v is Variant.SUP:
        return [(1, Variant.ABSVAL)] * spec.d
    if v is Variant.EUCLIDEAN:
        return [(spec.d, Variant.EUCLIDEAN)]
    if v is Variant.ABSVAL:
        return [(1, Variant.ABSVAL)]
    raise ValueError(f"{spec} is a matrix norm, not a vector norm")


@dataclass(frozen=True)
class Smoothness:
    """Outcome of a smoothness test; truthy when the norm is smooth."""

    smooth: bool
    gap: float
    reason: str = ""

    def __post_init__(self):
        object.__setattr__(self, "smooth", bool(self.smooth))
        object.__setattr__(self, "gap", float(self.gap))

    def __bool__(self):
        return self.smooth


@dataclass(frozen=True, eq=False)
class SupportFunctionalRep:
    """A linear functional phi(x) = Re tr(rep* x) (or <rep, x> for vectors)."""

    rep: np.ndarray
    source_edge: tuple | None = None

    def __call__(self, x) -> float:
        x = np.asarray(x)
        return float(np.real(np.vdot(self.rep, x)))


def singular_values(matrix) -> np.ndarray:
    """Singular values in decreasing order."""
    m = np.asarray(matrix)
    if m.ndim != 2:
        raise ShapeMismatchError(f"expected a 2-d matrix, got shape {m.shape}")
    return np.linalg.svd(m, compute_uv=False)


def _check_matrix(spec, x):
    m = np.asarray(x)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeMismatchError(f"{spec} needs a square matrix, got shape {m.shape}")
    if spec.variant is Variant.KYFAN and spec.k > m.shape[0]:
        raise ShapeMismatchError(f"{spec} is undefined on {m.shape[0]}x{m.shape[0]} matrices")
    return m


def _check_vector(spec, x):
    v = np.asarray(x, dtype=float)
    if v.ndim != 1 or v.shape[0] != spec.vector_dim:
        raise ShapeMismatchError(f"{spec} needs a vector of length {spec.vector_dim}, got shape {v.shape}")
    return v


def _gauge(spec, sigma):
    if spec.variant is Variant.SCHATTEN:
        if math.isinf(spec.q):
            return float(sigma[0]) if sigma.size else 0.0
        if spec.q == 1:
            return float(np.sum(sigma))
        return float(np.sum(sigma ** spec.q) ** (1.0 / spec.q))
    return float(np.sum(sigma[: spec.k]))


def _factor_norms(spec, v):
    out, start = [], 0
    for dim, var in product_layout(spec):
        block = v[start:start + dim]
        out.append(float(np.linalg.norm(block)) if var is Variant.EUCLIDEAN else abs(float(block[0])))
        start += dim
    return out


def norm_value(spec: NormSpec, x) -> float:
    if spec.is_matrix_norm:
        return _gauge(spec, singular_values(_check_matrix(spec, x)))
    v = _check_vector(spec, x)
    if spec.variant is Variant.CYLINDRICAL:
        return max(math.hypot(v[0], v[1]), abs(v[2]))
    if spec.variant is Variant.HYPERCYLINDRICAL:
        return max(math.sqrt(v[0] ** 2 + v[1] ** 2 + v[2] ** 2), abs(v[3]))
    if spec.variant is Variant.EUCLIDEAN:
        return float(np.linalg.norm(v))
    return float(np.max(np.abs(v)))


def vector_colours(spec: NormSpec, v, colour_tol: float) -> tuple[frozenset, list[float]]:
    """Factors of a product norm attaining the maximum, up to ``colour_tol``."""
    norms = _factor_norms(spec, v)
    top = max(norms)
    return frozenset(j for j, a in enumerate(norms) if a >= top - colour_tol), norms


def is_smooth_at(spec: NormSpec, x, tol: ToleranceConfig | None = None) -> Smoothness:
    """Decide smoothness of the norm at a non-zero point.

    Schatten q in (1, inf) is smooth everywhere, q = 1 needs an invertible
    matrix, q = inf a simple top singular value. Ky-Fan k needs
    sigma_k > sigma_{k+1} (with sigma_{n+1} = 0); that rule is experimental.
    Product-type vector norms are smooth exactly when a single factor attains
    the norm.
    """
    tol = resolve(tol)
    if spec.is_matrix_norm:
        s = singular_values(_check_matrix(spec, x))
        if s[0] == 0:
            raise UndefinedDirectionError("smoothness is undefined at the zero matrix")
        if spec.variant is Variant.SCHATTEN:
            if spec.q == 1:
                gap = s[-1] / s[0]
                return Smoothness(gap > tol.gap_tol, gap, "" if gap > tol.gap_tol else "singular")
            if math.isinf(spec.q):
                gap = (s[0] - s[1]) / s[0]
                ok = gap > tol.gap_tol
                return Smoothness(ok, gap, "" if ok else "repeated top singular value")
            return Smoothness(True, math.inf)
        k = spec.k
        nxt = s[k] if k < s.size else 0.0
        gap = (s[k - 1] - nxt) / s[0]
        ok = gap > tol.gap_tol
        return Smoothness(ok, gap, "" if ok else f"sigma_{k} not separated from sigma_{k + 1}")
    v = _check_vector(spec, x)
    if not np.any(v):
        raise UndefinedDirectionError("smoothness is undefined at the zero vector")
    if spec.variant is Variant.EUCLIDEAN:
        return Smoothness(True, math.inf)
    colours, norms = vector_colours(spec, v, tol.colour_tol)
    ranked = sorted(norms, reverse=True)
    gap = ranked[0] - ranked[1] if len(ranked) > 1 else math.inf
    ok = len(colours) == 1
    return Smoothness(ok, gap, "" if ok else f"factors {sorted(colours)} tie")


def support_functional(spec: NormSpec, x, tol: ToleranceConfig | None = None,
                       source_edge=None) -> SupportFunctionalRep:
    """The unique support functional at ``x / ||x||``.

    Matrix norms return ``rep`` with phi(y) = Re tr(rep* y); vector norms
    return the gradient vector.
    """
    smooth = is_smooth_at(spec, x, tol)
    if not smooth:
        raise NonSmoothError(f"{spec} is not smooth here ({smooth.reason})")
    if spec.is_matrix_norm:
        m = _check_matrix(spec, x)
        p0 = m / norm_value(spec, m)
        u, s, vh = np.linalg.svd(p0)
        if spec.variant is Variant.SCHATTEN:
            if math.isinf(spec.q):
                rep = np.outer(u[:, 0], vh[0])
            elif spec.q == 1:
                rep = u @ vh
            else:
                rep = (u * s ** (spec.q - 1)) @ vh
        else:
            rep = u[:, : spec.k] @ vh[: spec.k]
        if not np.iscomplexobj(m):
            rep = np.real(rep)
        return SupportFunctionalRep(rep, source_edge)
    v = _check_vector(spec, x)
    if spec.variant is Variant.EUCLIDEAN:
        return SupportFunctionalRep(v / np.linalg.norm(v), source_edge)
    colours, _ = vector_colours(spec, v, resolve(tol).colour_tol)
    (j,) = colours
    grad = np.zeros_like(v)
    start = 0
    for idx, (dim, var) in enumerate(product_layout(spec)):
        if idx == j:
            block = v[start:start + dim]
            grad[start:start + dim] = block / np.linalg.norm(block) if var is Variant.EUCLIDEAN else np.sign(block)
        start += dim
    return SupportFunctionalRep(grad, source_edge)
