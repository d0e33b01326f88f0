"""Explicit rigid placements in the cylindrical and hyper-cylindrical spaces."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .config import ToleranceConfig, resolve
from .exceptions import ConstructionError
from .product import (
    ProductNormSpace,
    colour_edges,
    euclidean_regularity_check,
    product_analyze,
)
from .rigidity import Framework, RigidityReport, Verdict
from .sparsity import Graph

MAX_RETRIES = 100
PERTURB_SCALE = 1e-3

K6E_G1 = ((1, 2), (1, 5), (2, 4), (2, 5), (2, 6), (3, 4), (3, 6), (4, 5), (4, 6))
K6E_G2 = ((1, 3), (1, 4), (1, 6), (2, 3), (3, 5))
K6E_ROW_ORDER = ((1, 5), (4, 5), (2, 5), (1, 2), (4, 6), (2, 6), (2, 4), (3, 4), (3, 6))

K7_G2 = ((1, 5), (2, 6), (3, 7), (4, 5), (4, 7), (5, 6))
K7_G1 = tuple(e for e in combinations(range(1, 8), 2) if e not in K7_G2)


@dataclass
class Construction:
    framework: Framework
    report: RigidityReport
    params: dict
    certificate: dict = field(default_factory=dict)


def _certificate(report: RigidityReport, attempts: int) -> dict:
    keep = ("verdict", "rank", "flex_dim", "trivial_dim", "motion_dim", "maxwell",
            "nullity_additive", "trivial_additive", "tolerances")
    d = report.to_dict()
    out = {k: d[k] for k in keep if k in d}
    out["factor_ranks"] = [f["rank"] for f in d.get("factors", [])]
    out["attempts"] = attempts
    return out


def k6e_points(eps: float, delta: float) -> np.ndarray:
    return np.array([
        [0, -1, -1],
        [0, 1, -1],
        [0, 1, 1 + 2 * eps],
        [0, -1, 1 - 2 * eps],
        [2 * delta, 1, -1],
        [2 * delta, -1, 1 - 2 * eps],
    ], dtype=float)


def construct_k6_minus_e(eps: float = 0.25, delta: float = 0.25,
                         tol: ToleranceConfig | None = None) -> Construction:
    """K6 minus the edge v5v6, placed in the cylindrical space.

    Needs eps, delta in (0, 1/2). The colour classes are a Laman graph and a
    spanning tree; the result is checked to be minimally rigid.
    """
    if not (0 < eps < 0.5 and 0 < delta < 0.5):
        raise ConstructionError(f"eps and delta must lie in (0, 1/2), got {eps}, {delta}")
    tol = resolve(tol)
    edges = [e for e in combinations(range(1, 7), 2) if e != (5, 6)]
    fw = Framework(ProductNormSpace.cylindrical(), range(1, 7), edges, k6e_points(eps, delta))
    colours = colour_edges(fw, tol)
    if set(colours.classes[0]) != set(K6E_G1) or set(colours.classes[1]) != set(K6E_G2):
        raise ConstructionError("colour classes differ from the expected Laman graph and tree")
    report = product_analyze(fw, tol)
    if report.verdict is not Verdict.MINIMALLY_RIGID:
        raise ConstructionError(f"expected a minimally rigid framework, got {report.verdict.value}")
    return Construction(fw, report, {"eps": eps, "delta": delta}, _certificate(report, 1))


def k7_points(eps: float, delta: float) -> np.ndarray:
    return np.array([
        [0, -1, -1, 0],
        [0, 1, -1, 0],
        [0, 1, 1, 2 * eps],
        [0, -1, 1, -delta],
        [0, -1, 1, 2 + eps],
        [0, 1, -1, -2 + 3 * eps],
        [0, 1, 1, delta],
    ], dtype=float)


def _diameter(P):
    return max(np.linalg.norm(a - b) for a, b in combinations(P, 2))


def construct_k7_hyper(eps: float = 0.4, delta: float = 1.1, seed: int = 0,
                       perturb_scale: float = PERTURB_SCALE, max_retries: int = MAX_RETRIES,
                       tol: ToleranceConfig | None = None) -> Construction:
    """K7 in the hyper-cylindrical space.

    Needs delta in (1, 6/5) and eps in (delta/3, 1 - delta/2). The listed
    points all have w = 0, so the Euclidean projection of the colour-1 graph
    is not regular; the points are perturbed with a seeded RNG until it is,
    and the framework is then checked to be minimally rigid.
    """
    if not (1 < delta < 1.2 and delta / 3 < eps < 1 - delta / 2):
        raise ConstructionError(
            f"need delta in (1, 6/5) and eps in (delta/3, 1 - delta/2), got eps={eps}, delta={delta}"
        )
    tol = resolve(tol)
    base = k7_points(eps, delta)
    space = ProductNormSpace.hypercylindrical()
    edges = list(combinations(range(1, 8), 2))
    g1 = Graph(tuple(range(1, 8)), K7_G1)
    rng = np.random.default_rng(seed)
    scale = perturb_scale * _diameter(base)
    for attempt in range(1, max_retries + 1):
        P = base + scale * rng.standard_normal(base.shape)
        fw = Framework(space, range(1, 8), edges, P)
        colours = colour_edges(fw, tol)
        if colours.degenerate or set(colours.classes[1]) != set(K7_G2):
            continue
        if not euclidean_regularity_check(g1, P[:, :3], 3, seed=seed, tol=tol):
            continue
        report = product_analyze(fw, tol)
        if report.full and report.verdict is Verdict.MINIMALLY_RIGID:
            params = {"eps": eps, "delta": delta, "seed": seed, "perturb_scale": perturb_scale}
            return Construction(fw, report, params, _certificate(report, attempt))
    raise ConstructionError(f"no regular perturbation found in {max_retries} attempts")


def construct_km(m: int, space: str = "cyl", seed: int = 0, perturb_scale: float = PERTURB_SCALE,
                 max_retries: int = MAX_RETRIES, tol: ToleranceConfig | None = None) -> Construction:
    """A rigid placement of the complete graph K_m.

    Starts from K6 (``space="cyl"``, m >= 6) or K7 (``space="hcyl"``, m >= 7)
    and adds vertices one at a time near v5, redrawing each new point until
    its edges inherit the colours of the matching edges at v5 and the
    framework stays rigid.
    """
    tol = resolve(tol)
    if space == "cyl":
        if m < 6:
            raise ConstructionError(f"K_{m} has no rigid cylindrical placement; need m >= 6")
        start = construct_k6_minus_e(0.25, 0.25, tol).framework
    elif space == "hcyl":
        if m < 7:
            raise ConstructionError(f"K_{m} has no rigid hyper-cylindrical placement; need m >= 7")
        start = construct_k7_hyper(seed=seed, perturb_scale=perturb_scale,
                                   max_retries=max_retries, tol=tol).framework
    else:
        raise ConstructionError(f"space must be 'cyl' or 'hcyl', got {space!r}")
    P = start.P.copy()
    pivot = 4
    rng = np.random.default_rng(seed)
    scale = perturb_scale * _diameter(P)
    attempts = 0

    def complete(Q):
        n = len(Q)
        return Framework(start.space, range(1, n + 1), combinations(range(1, n + 1), 2), Q)

    fw = complete(P)
    report = product_analyze(fw, tol)
    if not report.rigid:
        raise ConstructionError(f"base K_{len(P)} is not rigid")
    while len(P) < m:
        for _ in range(max_retries):
            attempts += 1
            new = P[pivot] + scale * rng.standard_normal(P.shape[1])
            if any(
                i != pivot and start.space.colours(P[i] - new, tol) != start.space.colours(P[i] - P[pivot], tol)
                for i in range(len(P))
            ):
                continue
            Q = np.vstack([P, new])
            try:
                cand = complete(Q)
            except ValueError:
                continue
            rep = product_analyze(cand, tol)
            if rep.rigid:
                P, fw, report = Q, cand, rep
                break
        else:
            raise ConstructionError(f"could not place vertex {len(P) + 1} in {max_retries} attempts")
    params = {"m": m, "space": space, "seed": seed, "perturb_scale": perturb_scale}
    return Construction(fw, report, params, _certificate(report, attempts))
