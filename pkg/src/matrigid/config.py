"""Numerical tolerance policy shared by every rank and smoothness decision."""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

ENV_RANK_TOL = "MATRIGID_TOL"


@dataclass(frozen=True)
class ToleranceConfig:
    """Thresholds used to turn floating point results into exact verdicts.

    Attributes
    ----------
    rank_rel_tol : float
        Singular values below ``rank_rel_tol * sigma_max`` count as zero.
    gap_tol : float
        Relative singular-value gap below which a unitarily invariant norm
        is treated as non-smooth.
    colour_tol : float
        Absolute slack when comparing factor norms of a product norm.
    member_tol : float
        Entrywise tolerance for membership in a matrix space.
    """

    rank_rel_tol: float = 1e-9
    gap_tol: float = 1e-9
    colour_tol: float = 1e-10
    member_tol: float = 1e-12

    def __post_init__(self):
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if not (isinstance(value, (int, float)) and value >= 0):
                raise ValueError(f"{f.name} must be a non-negative number, got {value!r}")

    def replace(self, **changes) -> "ToleranceConfig":
        changes = {k: v for k, v in changes.items() if v is not None}
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_env(cls, base: "ToleranceConfig | None" = None) -> "ToleranceConfig":
        base = base or cls()
        raw = os.environ.get(ENV_RANK_TOL)
        if not raw:
            return base
        try:
            value = float(raw)
        except ValueError as exc:
            raise ValueError(f"{ENV_RANK_TOL}={raw!r} is not a number") from exc
        return base.replace(rank_rel_tol=value)


DEFAULT_TOL = ToleranceConfig()


def resolve(tol: ToleranceConfig | None) -> ToleranceConfig:
    return DEFAULT_TOL if tol is None else tol
