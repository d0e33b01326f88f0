"""Product norms, edge colourings, monochrome decomposition, and the maps
identifying the cylindrical spaces with 2x2 hermitian matrices under the trace norm."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import ToleranceConfig, resolve
from .exceptions import NotWellPositionedError, UndefinedDirectionError
from .matspace import Field, Kind, MatrixElement, make_chart
from .motions import numerical_rank
from .norms import NormSpec, Smoothness, Variant, product_layout
from .rigidity import Framework, RigidityReport, Verdict, analyze, classical_rigidity_matrix
from .sparsity import Graph, is_connected, is_spanning_tree
from .spaces import MatrixNormedSpace


def _factor_l(dim, variant) -> int:
    return dim * (dim + 1) // 2 if variant is Variant.EUCLIDEAN else 1


@dataclass(frozen=True, eq=False)
class ProductNormSpace:
    """R^d split into blocks, normed by the max of the block norms.

    Each factor is (dimension, Variant.EUCLIDEAN) or (1, Variant.ABSVAL).
    A single Euclidean factor is plain Euclidean space.
    """

    factors: tuple
    norm: NormSpec | None = None

    def __post_init__(self):
        facs = tuple((int(d), Variant(v)) for d, v in self.factors)
        if not facs:
            raise ValueError("a product space needs at least one factor")
        for d, v in facs:
            if d < 1 or v not in (Variant.EUCLIDEAN, Variant.ABSVAL):
                raise ValueError(f"unsupported factor {(d, v)}")
            if v is Variant.ABSVAL and d != 1:
                raise ValueError("absolute-value factors are one-dimensional")
        object.__setattr__(self, "factors", facs)

    @classmethod
    def from_spec(cls, spec: NormSpec) -> "ProductNormSpace":
        return cls(tuple(product_layout(spec)), spec)

    @classmethod
    def cylindrical(cls):
        return cls.from_spec(NormSpec.cylindrical())

    @classmethod
    def hypercylindrical(cls):
        return cls.from_spec(NormSpec.hypercylindrical())

    @classmethod
    def euclidean(cls, d):
        return cls.from_spec(NormSpec.euclidean(d))

    @classmethod
    def sup(cls, d):
        return cls.from_spec(NormSpec.sup(d))

    @property
    def dim(self) -> int:
        return sum(d for d, _ in self.factors)

    @property
    def k(self) -> int:
        return self.dim

    @property
    def l(self) -> int:
        return sum(_factor_l(d, v) for d, v in self.factors)

    @property
    def slices(self) -> list[slice]:
        out, start = [], 0
        for d, _ in self.factors:
            out.append(slice(start, start + d))
            start += d
        return out

    def factor_space(self, j) -> "ProductNormSpace":
        return ProductNormSpace((self.factors[j],))

    def factor_norms(self, x) -> list[float]:
        x = np.asarray(x, dtype=float)
        return [
            float(np.linalg.norm(x[s])) if v is Variant.EUCLIDEAN else abs(float(x[s][0]))
            for s, (_, v) in zip(self.slices, self.factors)
        ]

    def norm_of(self, x) -> float:
        return max(self.factor_norms(x))

    def colours(self, x, tol: ToleranceConfig | None = None) -> frozenset:
        """0-based indices of the factors attaining the norm, within colour_tol."""
        norms = self.factor_norms(x)
        top = max(norms)
        if top == 0:
            raise UndefinedDirectionError("colour of the zero vector is undefined")
        ct = resolve(tol).colour_tol
        return frozenset(j for j, a in enumerate(norms) if a >= top - ct)

    def smoothness(self, x, tol: ToleranceConfig | None = None) -> Smoothness:
        norms = self.factor_norms(x)
        cs = self.colours(x, tol)
        ranked = sorted(norms, reverse=True)
        gap = ranked[0] - ranked[1] if len(ranked) > 1 else math.inf
        if len(cs) == 1:
            return Smoothness(True, gap)
        return Smoothness(False, gap, f"factors {sorted(j + 1 for j in cs)} tie")

    def functional_row(self, x, tol: ToleranceConfig | None = None) -> np.ndarray:
        """Gradient of the norm at x: the unit functional of the attaining factor."""
        x = np.asarray(x, dtype=float)
        cs = self.colours(x, tol)
        if len(cs) != 1:
            from .exceptions import NonSmoothError

            raise NonSmoothError(f"factors {sorted(j + 1 for j in cs)} tie")
        (j,) = cs
        s, (_, v) = self.slices[j], self.factors[j]
        g = np.zeros_like(x)
        g[s] = x[s] / np.linalg.norm(x[s]) if v is Variant.EUCLIDEAN else np.sign(x[s])
        return g

    def trivial_generators(self, placement) -> np.ndarray:
        """Direct sum of factor motions: rotations and translations on Euclidean
        blocks, translations on absolute-value blocks."""
        P = np.asarray(placement, dtype=float).reshape(-1, self.dim)
        m = len(P)
        rows = []
        for s, (d, v) in zip(self.slices, self.factors):
            for i in range(d):
                z = np.zeros((m, self.dim))
                z[:, s.start + i] = 1.0
                rows.append(z.ravel())
            if v is Variant.EUCLIDEAN:
                for a in range(d):
                    for b in range(a + 1, d):
                        z = np.zeros((m, self.dim))
                        z[:, s.start + a] = -P[:, s.start + b]
                        z[:, s.start + b] = P[:, s.start + a]
                        rows.append(z.ravel())
        return np.array(rows)

    def describe(self) -> dict:
        if self.norm is not None and self.norm.variant is Variant.EUCLIDEAN:
            return {"type": "vector", "norm": self.norm.to_dict()}
        out = {"type": "product"}
        if self.norm is not None:
            out["norm"] = self.norm.to_dict()
        out["factors"] = [{"dim": d, "norm": v.value} for d, v in self.factors]
        return out

    def __str__(self):
        if self.norm is not None:
            return f"(R^{self.dim}, {self.norm})"
        return "(" + " x ".join(f"R^{d}:{v.value}" for d, v in self.factors) + ")"


@dataclass
class ColourReport:
    """Colours are 1-based: colour j means factor j attains the norm."""

    colours: dict
    classes: list
    degenerate: list

    @property
    def well_positioned(self) -> bool:
        return not self.degenerate

    def to_dict(self) -> dict:
        return {
            "classes": [[list(e) for e in cls] for cls in self.classes],
            "degenerate": [list(e) for e in self.degenerate],
        }


def _require_product(fw):
    if not isinstance(fw.space, ProductNormSpace):
        raise TypeError("framework is not placed in a product-norm space")


def colour_edges(fw: Framework, tol: ToleranceConfig | None = None) -> ColourReport:
    _require_product(fw)
    n = len(fw.space.factors)
    colours, classes, degenerate = {}, [[] for _ in range(n)], []
    for (i, j), e in zip(fw.edge_index, fw.edges):
        cs = fw.space.colours(fw.difference(i, j), tol)
        colours[e] = frozenset(c + 1 for c in cs)
        if len(cs) == 1:
            classes[next(iter(cs))].append(e)
        else:
            degenerate.append(e)
    return ColourReport(colours, classes, degenerate)


def decompose(fw: Framework, tol: ToleranceConfig | None = None,
              report: ColourReport | None = None) -> list[Framework]:
    """Projected monochrome subframeworks (G_j, P_j p), one per factor."""
    report = report or colour_edges(fw, tol)
    if report.degenerate:
        raise NotWellPositionedError(report.degenerate)
    out = []
    for j, s in enumerate(fw.space.slices):
        out.append(Framework(fw.space.factor_space(j), fw.vertices, report.classes[j], fw.P[:, s]))
    return out


def _factor_summary(j, sub: Framework, rep: RigidityReport):
    d, v = sub.space.factors[0]
    out = {
        "colour": j + 1,
        "factor": {"dim": d, "norm": v.value},
        "edges": [list(e) for e in sub.edges],
        "rank": rep.rank,
        "flex_dim": rep.flex_dim,
        "trivial_dim": rep.trivial_dim,
        "verdict": rep.verdict.value,
    }
    if v is Variant.ABSVAL:
        g = sub.graph
        connected = is_connected(g)
        tree = is_spanning_tree(g)
        combinatorial = Verdict.MINIMALLY_RIGID if tree else (
            Verdict.INFINITESIMALLY_RIGID if connected else Verdict.FLEXIBLE)
        out["connected"] = connected
        out["spanning_tree"] = tree
        out["combinatorial_verdict"] = combinatorial.value
        out["combinatorial_agrees"] = combinatorial is rep.verdict
    return out


def product_analyze(fw: Framework, tol: ToleranceConfig | None = None) -> RigidityReport:
    """Analyse a product framework factor by factor.

    The verdict is rigid when every projected monochrome subframework is
    rigid, and minimally rigid when every one is minimally rigid. The direct
    whole-space analysis is kept alongside and the additivity of flex and
    trivial-motion dimensions is recorded.
    """
    _require_product(fw)
    tol = resolve(tol)
    colours = colour_edges(fw, tol)
    whole = analyze(fw, tol)
    whole.extra["colouring"] = colours.to_dict()
    if colours.degenerate:
        whole.offending_edges = list(colours.degenerate)
        return whole
    subs = decompose(fw, tol, colours)
    reps = [analyze(s, tol) for s in subs]
    if all(r.verdict is Verdict.MINIMALLY_RIGID for r in reps):
        verdict = Verdict.MINIMALLY_RIGID
    elif all(r.verdict.rigid for r in reps):
        verdict = Verdict.INFINITESIMALLY_RIGID
    else:
        verdict = Verdict.FLEXIBLE
    whole.extra.update(
        factors=[_factor_summary(j, s, r) for j, (s, r) in enumerate(zip(subs, reps))],
        direct_verdict=whole.verdict.value,
        nullity_additive=whole.flex_dim == sum(r.flex_dim for r in reps),
        trivial_additive=whole.trivial_dim == sum(r.trivial_dim for r in reps),
    )
    whole.verdict = verdict
    return whole


# maps into 2x2 hermitian matrices

H2R = make_chart(Field.REAL, 2, Kind.HERMITIAN)
H2C = make_chart(Field.COMPLEX, 2, Kind.HERMITIAN)


def psi_cyl(v) -> MatrixElement:
    """(x, y, z) -> 1/2 [[z + y, x], [x, z - y]] in H_2(R)."""
    x, y, z = np.asarray(v, dtype=float)
    return H2R.element(0.5 * np.array([[z + y, x], [x, z - y]]))


def psi_cyl_inv(m) -> np.ndarray:
    a = np.real(np.asarray(getattr(m, "matrix", m)))
    return np.array([2 * a[1, 0], a[0, 0] - a[1, 1], a[0, 0] + a[1, 1]])


def psi_hcyl(v) -> MatrixElement:
    """(w, x, y, z) -> 1/2 [[z + y, x - wi], [x + wi, z - y]] in H_2(C)."""
    w, x, y, z = np.asarray(v, dtype=float)
    return H2C.element(0.5 * np.array([[z + y, x - 1j * w], [x + 1j * w, z - y]]))


def psi_hcyl_inv(m) -> np.ndarray:
    a = np.asarray(getattr(m, "matrix", m))
    return np.array([
        2 * np.imag(a[1, 0]),
        2 * np.real(a[1, 0]),
        np.real(a[0, 0] - a[1, 1]),
        np.real(a[0, 0] + a[1, 1]),
    ])


def transport(fw: Framework) -> Framework:
    """Carry a cylindrical or hyper-cylindrical framework into (H_2(F), trace norm)."""
    _require_product(fw)
    variant = fw.space.norm.variant if fw.space.norm is not None else None
    if variant is Variant.CYLINDRICAL:
        psi, chart = psi_cyl, H2R
    elif variant is Variant.HYPERCYLINDRICAL:
        psi, chart = psi_hcyl, H2C
    else:
        raise ValueError("only cylindrical and hyper-cylindrical frameworks can be transported")
    space = MatrixNormedSpace(chart, NormSpec.schatten(1))
    return Framework(space, fw.vertices, fw.edges, np.array([psi(p).coords for p in fw.P]))


@dataclass(frozen=True)
class RegularityCheck:
    regular: bool
    rank: int
    max_rank: int

    def __bool__(self):
        return self.regular


def euclidean_regularity_check(graph: Graph, placement, d: int, trials: int = 20, seed: int = 0,
                               tol: ToleranceConfig | None = None) -> RegularityCheck:
    """Compare the classical rigidity-matrix rank at ``placement`` with the
    maximum over ``trials`` seeded random placements."""
    tol = resolve(tol)
    space = ProductNormSpace.euclidean(d)
    P = np.asarray(placement if not isinstance(placement, dict)
                   else [placement[v] for v in graph.vertices], dtype=float).reshape(-1, d)
    try:
        rank = classical_rigidity_matrix(Framework(space, graph.vertices, graph.edges, P), tol).rank
    except ValueError:
        # coincident adjacent points
        rank = -1
    rng = np.random.default_rng(seed)
    best = 0
    for _ in range(trials):
        Q = rng.standard_normal(P.shape)
        fw = Framework(space, graph.vertices, graph.edges, Q)
        best = max(best, classical_rigidity_matrix(fw, tol).rank)
    return RegularityCheck(rank >= best, max(rank, 0), best)
