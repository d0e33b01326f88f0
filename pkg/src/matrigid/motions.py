"""Trivial infinitesimal flexes and fullness of placements."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .config import ToleranceConfig, resolve
from .exceptions import NotAdmissibleError
from .matspace import Kind, MatrixSpaceChart, l_value, motion_param_space

EXHAUSTIVE_CAP = 10**6
SAMPLED_SUBSETS = 10**4


@dataclass(frozen=True, eq=False)
class TrivialMotionBasis:
    """Generators of T(G, p), one row per rigid-motion parameter.

    Each row stacks the per-vertex velocities, so its length is |V| * dim.
    ``dim`` is the numerical rank of the rows.
    """

    vectors: np.ndarray
    dim: int
    expected: int

    @property
    def full(self) -> bool:
        return self.dim == self.expected


def numerical_rank(matrix, rel_tol: float) -> tuple[int, np.ndarray]:
    """Rank counting singular values above ``rel_tol * sigma_max``."""
    a = np.asarray(matrix, dtype=float)
    if a.size == 0:
        return 0, np.zeros(0)
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0:
        return 0, s
    return int(np.sum(s > rel_tol * s[0])), s


def _as_array(placement, dim=None) -> np.ndarray:
    if isinstance(placement, dict):
        placement = list(placement.values())
    rows = [getattr(p, "coords", p) for p in placement]
    arr = np.asarray(rows, dtype=float)
    if arr.ndim == 1 and dim is not None:
        arr = arr.reshape(-1, dim)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise ValueError("placement must be a non-empty list of coordinate vectors")
    return arr


def matrix_trivial_generators(chart: MatrixSpaceChart, placement) -> np.ndarray:
    """Velocity fields (a p_v + p_v b + c)_v for the basis of rigid-motion parameters.

    For the hermitian kind the a-generators act as a p_v - p_v a.
    """
    P = _as_array(placement, chart.realdim)
    if P.shape[1] != chart.realdim:
        raise ValueError(f"placement has {P.shape[1]} coordinates, chart needs {chart.realdim}")
    mats = np.array([chart.from_coords(p) for p in P])
    params = motion_param_space(chart)
    m = len(P)
    rows = []
    for a in params.a_basis:
        if chart.kind is Kind.HERMITIAN:
            vel = a @ mats - mats @ a
        else:
            vel = a @ mats
        rows.append(chart.coords_unchecked(vel).ravel())
    for b in params.b_basis:
        rows.append(chart.coords_unchecked(mats @ b).ravel())
    for i in range(chart.realdim):
        c = np.zeros(chart.realdim)
        c[i] = 1.0
        rows.append(np.tile(c, m))
    return np.array(rows)


def _chart_and_generators(space, placement):
    if isinstance(space, MatrixSpaceChart):
        return matrix_trivial_generators(space, placement), l_value(space.field, space.n, space.kind)
    if hasattr(space, "trivial_generators"):
        return space.trivial_generators(placement), space.l
    raise TypeError(f"cannot build rigid motions for {type(space).__name__}")


def trivial_flex_basis(space, placement, tol: ToleranceConfig | None = None) -> TrivialMotionBasis:
    """Trivial infinitesimal flexes of a placement.

    ``space`` is a MatrixSpaceChart or any normed space object from this
    package. Spaces whose norm is not admissible raise NotAdmissibleError.
    """
    tol = resolve(tol)
    norm = getattr(space, "norm", None)
    if norm is not None and getattr(norm, "is_matrix_norm", False) and not norm.admissible_for_motions:
        raise NotAdmissibleError(f"rigid motions of {norm} are not covered; refusing to guess")
    if isinstance(placement, dict) and not placement:
        raise ValueError("placement is empty")
    gens, expected = _chart_and_generators(space, placement)
    rank, _ = numerical_rank(gens, tol.rank_rel_tol)
    return TrivialMotionBasis(gens, rank, expected)


def is_full(space, placement, tol: ToleranceConfig | None = None) -> bool:
    """True when the restriction of rigid motions to the placement is injective."""
    return trivial_flex_basis(space, placement, tol).full


def _space_dim(space) -> int:
    return space.realdim if isinstance(space, MatrixSpaceChart) else space.dim


def is_completely_full(space, placement, graph=None, tol: ToleranceConfig | None = None,
                       seed: int = 0) -> bool:
    """Full on the whole vertex set and on every subset of size 2 * dim.

    Fullness only grows as points are added, so subsets of exactly 2 * dim
    points cover all larger ones. Above ``EXHAUSTIVE_CAP`` subsets a seeded
    sample of ``SAMPLED_SUBSETS`` is checked and a warning is issued.
    """
    P = _as_array(placement, _space_dim(space))
    if graph is not None and len(graph.vertices) != len(P):
        raise ValueError("graph vertices and placement differ in size")
    if not is_full(space, P, tol):
        return False
    size = 2 * _space_dim(space)
    m = len(P)
    if m <= size:
        return True
    total = math.comb(m, size)
    if total <= EXHAUSTIVE_CAP:
        subsets = combinations(range(m), size)
    else:
        warnings.warn(
            f"{total} subsets exceed the exhaustive cap; checking {SAMPLED_SUBSETS} random ones",
            RuntimeWarning,
            stacklevel=2,
        )
        rng = np.random.default_rng(seed)
        subsets = (rng.choice(m, size, replace=False) for _ in range(SAMPLED_SUBSETS))
    return all(is_full(space, P[list(s)], tol) for s in subsets)
