"""A matrix chart paired with a unitarily invariant norm."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import ToleranceConfig
from .exceptions import NotAdmissibleError
from .matspace import MatrixSpaceChart, k_value, l_value, make_chart
from .norms import NormSpec, is_smooth_at, norm_value, support_functional


@dataclass(frozen=True, eq=False)
class MatrixNormedSpace:
    """Coordinates come from ``chart``; distances from ``norm``."""

    chart: MatrixSpaceChart
    norm: NormSpec

    def __post_init__(self):
        if not self.norm.is_matrix_norm:
            raise ValueError(f"{self.norm} is not a matrix norm")
        if self.norm.variant.value == "kyfan" and self.norm.k > self.chart.n:
            raise ValueError(f"{self.norm} is undefined on {self.chart.label}")

    @classmethod
    def make(cls, field, n, kind, norm: NormSpec) -> "MatrixNormedSpace":
        return cls(make_chart(field, n, kind), norm)

    @property
    def dim(self) -> int:
        return self.chart.realdim

    @property
    def k(self) -> int:
        return k_value(self.chart.field, self.chart.n, self.chart.kind)

    @property
    def l(self) -> int:
        if not self.admissible:
            raise NotAdmissibleError(f"{self.norm} on {self.chart.label} is not admissible")
        return l_value(self.chart.field, self.chart.n, self.chart.kind)

    @property
    def admissible(self) -> bool:
        c = self.chart
        return self.norm.admissible_on(c.field, c.n, c.kind)

    def matrix(self, coords) -> np.ndarray:
        return self.chart.from_coords(coords)

    def norm_of(self, coords) -> float:
        return norm_value(self.norm, self.matrix(coords))

    def smoothness(self, coords, tol: ToleranceConfig | None = None):
        return is_smooth_at(self.norm, self.matrix(coords), tol)

    def functional_row(self, coords, tol: ToleranceConfig | None = None) -> np.ndarray:
        """Values phi(B_i) of the support functional at ``coords`` on the chart basis."""
        phi = support_functional(self.norm, self.matrix(coords), tol)
        return self.chart.pair(phi.rep)

    def trivial_generators(self, placement) -> np.ndarray:
        from .motions import matrix_trivial_generators

        if not self.admissible:
            raise NotAdmissibleError(f"{self.norm} on {self.chart.label} is not admissible")
        return matrix_trivial_generators(self.chart, placement)

    def describe(self) -> dict:
        c = self.chart
        return {
            "type": "matrix",
            "field": c.field.value,
            "n": c.n,
            "kind": c.kind.value,
            "norm": self.norm.to_dict(),
        }

    def __str__(self):
        return f"({self.chart.label}, {self.norm})"
