"""Frameworks, rigidity matrices built from support functionals, and verdicts."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .config import ToleranceConfig, resolve
from .exceptions import (
    DegenerateFrameworkError,
    NonSmoothError,
    NotWellPositionedError,
    OracleInvalidError,
)
from .matspace import k_value, l_value
from .motions import numerical_rank, trivial_flex_basis
from .sparsity import Graph

COINCIDENCE_TOL = 1e-12


class Verdict(str, enum.Enum):
    INFINITESIMALLY_RIGID = "InfinitesimallyRigid"
    MINIMALLY_RIGID = "MinimallyRigid"
    FLEXIBLE = "Flexible"
    NOT_WELL_POSITIONED = "NotWellPositioned"

    @property
    def rigid(self) -> bool:
        return self in (Verdict.INFINITESIMALLY_RIGID, Verdict.MINIMALLY_RIGID)


class Framework:
    """A simple graph placed in a normed space.

    ``space`` is a MatrixNormedSpace or a ProductNormSpace; ``placement`` maps
    each vertex to its coordinate vector (or is an array in vertex order).
    Edges are stored as index pairs (i, j) with i < j in lexicographic order,
    so rows of every rigidity matrix come out in the same order.
    """

    def __init__(self, space, vertices, edges, placement):
        self.space = space
        self.vertices = tuple(vertices)
        pos = {v: i for i, v in enumerate(self.vertices)}
        if len(pos) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        pairs = set()
        for e in edges:
            u, v = tuple(e)
            if u not in pos or v not in pos:
                raise ValueError(f"edge {(u, v)} uses an undeclared vertex")
            if u == v:
                raise DegenerateFrameworkError(f"loop at vertex {u!r}")
            pair = tuple(sorted((pos[u], pos[v])))
            if pair in pairs:
                raise DegenerateFrameworkError(f"duplicate edge {(u, v)}")
            pairs.add(pair)
        self.edge_index = tuple(sorted(pairs))
        if isinstance(placement, dict):
            missing = [v for v in self.vertices if v not in placement]
            if missing:
                raise ValueError(f"no position for vertices {missing}")
            P = [getattr(placement[v], "coords", placement[v]) for v in self.vertices]
        else:
            P = [getattr(p, "coords", p) for p in placement]
        P = np.array(P, dtype=float).reshape(len(self.vertices), -1) if len(P) else np.zeros((0, space.dim))
        if P.shape != (len(self.vertices), space.dim):
            raise ValueError(f"placement must have shape {(len(self.vertices), space.dim)}, got {P.shape}")
        self.P = P
        close = [
            (self.vertices[i], self.vertices[j])
            for i, j in self.edge_index
            if np.max(np.abs(P[i] - P[j])) <= COINCIDENCE_TOL
        ]
        if close:
            raise DegenerateFrameworkError(f"adjacent vertices share a position: {close}")

    @property
    def edges(self) -> list[tuple]:
        return [(self.vertices[i], self.vertices[j]) for i, j in self.edge_index]

    @property
    def graph(self) -> Graph:
        return Graph(self.vertices, tuple(self.edges))

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def placement(self) -> dict:
        return {v: self.P[i].copy() for i, v in enumerate(self.vertices)}

    def difference(self, i, j) -> np.ndarray:
        return self.P[i] - self.P[j]

    def with_edges(self, edges) -> "Framework":
        return Framework(self.space, self.vertices, edges, self.P)

    def with_placement(self, P) -> "Framework":
        return Framework(self.space, self.vertices, self.edges, P)

    def __repr__(self):
        return f"Framework({self.space}, |V|={len(self.vertices)}, |E|={len(self.edge_index)})"


@dataclass(frozen=True)
class WellPositioned:
    ok: bool
    offending: tuple = ()

    def __bool__(self):
        return self.ok


def is_well_positioned(fw: Framework, tol: ToleranceConfig | None = None) -> WellPositioned:
    """The norm must be smooth at p_v - p_w for every edge vw."""
    bad = [
        (fw.vertices[i], fw.vertices[j])
        for i, j in fw.edge_index
        if not fw.space.smoothness(fw.difference(i, j), tol)
    ]
    return WellPositioned(not bad, tuple(bad))


@dataclass(frozen=True, eq=False)
class RigidityMatrixResult:
    matrix: np.ndarray
    rank: int
    nullity: int
    tolerance_used: float
    row_order: list
    column_order: list
    singular_values: np.ndarray = field(repr=False)


def _ordered_edges(fw, edge_order):
    if edge_order is None:
        return list(fw.edge_index)
    pos = {v: i for i, v in enumerate(fw.vertices)}
    present = set(fw.edge_index)
    out = []
    for u, v in edge_order:
        i, j = pos[u], pos[v]
        if tuple(sorted((i, j))) not in present:
            raise ValueError(f"{(u, v)} is not an edge of the framework")
        out.append((i, j))
    return out


def _result(fw, M, rows, tol):
    rank, s = numerical_rank(M, tol.rank_rel_tol)
    cols = [(v, b) for v in fw.vertices for b in range(fw.dim)]
    return RigidityMatrixResult(
        M, rank, M.shape[1] - rank, tol.rank_rel_tol,
        [(fw.vertices[i], fw.vertices[j]) for i, j in rows], cols, s,
    )


def rigidity_matrix(fw: Framework, tol: ToleranceConfig | None = None,
                    edge_order=None) -> RigidityMatrixResult:
    """Matrix of df_G(p): the row of edge vw carries phi_vw on the v block and -phi_vw on the w block.

    ``edge_order`` is an optional list of vertex-name pairs; an edge listed
    as (w, v) gets its row with the roles of v and w swapped.
    """
    tol = resolve(tol)
    wp = is_well_positioned(fw, tol)
    if not wp:
        raise NotWellPositionedError(wp.offending)
    rows = _ordered_edges(fw, edge_order)
    d = fw.dim
    M = np.zeros((len(rows), len(fw.vertices) * d))
    for r, (i, j) in enumerate(rows):
        g = fw.space.functional_row(fw.difference(i, j), tol)
        M[r, i * d:(i + 1) * d] = g
        M[r, j * d:(j + 1) * d] = -g
    return _result(fw, M, rows, tol)


def classical_rigidity_matrix(fw: Framework, tol: ToleranceConfig | None = None,
                              edge_order=None) -> RigidityMatrixResult:
    """Euclidean rigidity matrix with raw rows (p_v - p_w, p_w - p_v)."""
    tol = resolve(tol)
    rows = _ordered_edges(fw, edge_order)
    d = fw.dim
    M = np.zeros((len(rows), len(fw.vertices) * d))
    for r, (i, j) in enumerate(rows):
        g = fw.difference(i, j)
        M[r, i * d:(i + 1) * d] = g
        M[r, j * d:(j + 1) * d] = -g
    return _result(fw, M, rows, tol)


def flex_dim(fw: Framework, tol: ToleranceConfig | None = None) -> int:
    return rigidity_matrix(fw, tol).nullity


@dataclass(frozen=True)
class MaxwellRecord:
    E: int
    kV_minus_l: int
    applicable: bool

    @property
    def satisfied(self) -> bool:
        return self.E >= self.kV_minus_l

    def to_dict(self) -> dict:
        return {
            "E": self.E,
            "kV_minus_l": self.kV_minus_l,
            "satisfied": self.satisfied,
            "applicable": self.applicable,
        }


@dataclass
class RigidityReport:
    well_positioned: bool
    offending_edges: list
    full: bool | None
    rank: int | None
    flex_dim: int | None
    trivial_dim: int | None
    motion_dim: int | None
    verdict: Verdict
    maxwell: MaxwellRecord | None
    n_vertices: int
    n_edges: int
    dim: int
    space: dict
    tolerances: dict
    extra: dict = field(default_factory=dict)

    @property
    def rigid(self) -> bool:
        return self.verdict.rigid

    def to_dict(self) -> dict:
        out = {
            "verdict": self.verdict.value,
            "well_positioned": self.well_positioned,
            "offending_edges": [list(e) for e in self.offending_edges],
            "full": self.full,
            "rank": self.rank,
            "flex_dim": self.flex_dim,
            "trivial_dim": self.trivial_dim,
            "motion_dim": self.motion_dim,
            "n_vertices": self.n_vertices,
            "n_edges": self.n_edges,
            "dim": self.dim,
            "maxwell": self.maxwell.to_dict() if self.maxwell else None,
            "space": self.space,
            "tolerances": self.tolerances,
        }
        out.update(self.extra)
        return out


def _drop_rank(M, rank, rel_tol):
    # rank after deleting each row in turn
    return [numerical_rank(np.delete(M, r, axis=0), rel_tol)[0] for r in range(M.shape[0])]


def analyze(fw: Framework, tol: ToleranceConfig | None = None) -> RigidityReport:
    """Rank, flex and trivial-motion dimensions, verdict and Maxwell count."""
    tol = resolve(tol)
    base = dict(
        n_vertices=len(fw.vertices),
        n_edges=len(fw.edge_index),
        dim=fw.dim,
        space=fw.space.describe(),
        tolerances=tol.as_dict(),
    )
    wp = is_well_positioned(fw, tol)
    if not wp:
        return RigidityReport(False, list(wp.offending), None, None, None, None, None,
                              Verdict.NOT_WELL_POSITIONED, None, **base)
    R = rigidity_matrix(fw, tol)
    triv = trivial_flex_basis(fw.space, fw.P, tol)
    l = fw.space.l
    full = triv.dim == l
    if R.nullity != triv.dim:
        verdict = Verdict.FLEXIBLE
    else:
        verdict = Verdict.INFINITESIMALLY_RIGID
        if R.matrix.shape[0] and all(r < R.rank for r in _drop_rank(R.matrix, R.rank, tol.rank_rel_tol)):
            verdict = Verdict.MINIMALLY_RIGID
    maxwell = MaxwellRecord(len(fw.edge_index), fw.space.k * len(fw.vertices) - l, full)
    return RigidityReport(True, [], full, R.rank, R.nullity, triv.dim, l, verdict, maxwell, **base)


def edge_lengths(fw: Framework, P=None) -> np.ndarray:
    P = fw.P if P is None else P
    return np.array([fw.space.norm_of(P[i] - P[j]) for i, j in fw.edge_index])


def _smooth_everywhere(fw, P, tol):
    return all(fw.space.smoothness(P[i] - P[j], tol) for i, j in fw.edge_index)


def finite_difference_check(fw: Framework, z, h: float = 1e-7,
                            tol: ToleranceConfig | None = None) -> float:
    """Max over edges of |(f(p + hz) - f(p - hz)) / 2h - (R z)_e|."""
    tol = resolve(tol)
    if h <= 0:
        raise ValueError("step h must be positive")
    z = np.asarray(z, dtype=float).reshape(fw.P.shape)
    R = rigidity_matrix(fw, tol).matrix
    if not np.any(z):
        return 0.0
    plus, minus = fw.P + h * z, fw.P - h * z
    for P in (plus, minus):
        try:
            ok = _smooth_everywhere(fw, P, tol)
        except (NonSmoothError, ValueError) as exc:
            raise OracleInvalidError(str(exc)) from exc
        if not ok:
            raise OracleInvalidError("step crosses a non-smooth point of the norm")
    if hasattr(fw.space, "colours"):
        for i, j in fw.edge_index:
            base = fw.space.colours(fw.difference(i, j), tol)
            if any(fw.space.colours(P[i] - P[j], tol) != base for P in (plus, minus)):
                raise OracleInvalidError("step changes the colour of an edge")
    fd = (edge_lengths(fw, plus) - edge_lengths(fw, minus)) / (2 * h)
    return float(np.max(np.abs(fd - R @ z.ravel()), initial=0.0))


@dataclass(frozen=True)
class MaxwellCount:
    needed: int
    complete_graph_edges: int
    feasible: bool
    boundary: bool

    def to_dict(self) -> dict:
        return {
            "needed": self.needed,
            "complete_graph_edges": self.complete_graph_edges,
            "feasible": self.feasible,
            "boundary": self.boundary,
        }


def maxwell_edge_count(space, m: int) -> MaxwellCount:
    """Compare k m - l with the edge count of K_m.

    ``space`` is a MatrixSpaceChart, a normed space, or a (k, l) pair.
    """
    if m < 2:
        raise ValueError("need at least two vertices")
    if isinstance(space, tuple):
        k, l = space
    elif hasattr(space, "field") and hasattr(space, "kind"):
        k, l = k_value(space.field, space.n, space.kind), l_value(space.field, space.n, space.kind)
    else:
        k, l = space.k, space.l
    needed = k * m - l
    complete = m * (m - 1) // 2
    return MaxwellCount(needed, complete, complete >= needed, complete == needed)
