"""scikit-learn style wrappers around the rigidity analysis.

A framework is one "sample"; ``fit`` analyses it, ``predict`` returns the
verdict for each framework in a list.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .config import ToleranceConfig
from .product import ProductNormSpace, product_analyze
from .rigidity import analyze, rigidity_matrix
from .validation import check_framework, check_frameworks, check_velocities


class RigidityAnalyzer(BaseEstimator):
    """Rigidity verdicts with tolerances held as estimator parameters.

    With ``decompose=True`` product-space frameworks are analysed factor by factor.
    """

    def __init__(self, rank_rel_tol=1e-9, gap_tol=1e-9, colour_tol=1e-10, decompose=True):
        self.rank_rel_tol = rank_rel_tol
        self.gap_tol = gap_tol
        self.colour_tol = colour_tol
        self.decompose = decompose

    def _tol(self):
        return ToleranceConfig(rank_rel_tol=self.rank_rel_tol, gap_tol=self.gap_tol,
                               colour_tol=self.colour_tol)

    def _analyze(self, fw):
        tol = self._tol()
        if self.decompose and isinstance(fw.space, ProductNormSpace):
            return product_analyze(fw, tol)
        return analyze(fw, tol)

    def fit(self, X, y=None):
        fw = check_framework(X)
        report = self._analyze(fw)
        self.report_ = report
        self.verdict_ = report.verdict.value
        self.rank_ = report.rank
        self.flex_dim_ = report.flex_dim
        self.trivial_dim_ = report.trivial_dim
        self.rigidity_matrix_ = rigidity_matrix(fw, self._tol()).matrix if report.well_positioned else None
        return self

    def predict(self, X):
        return np.array([self._analyze(fw).verdict.value for fw in check_frameworks(X)])


class RigidityMatrixTransformer(TransformerMixin, BaseEstimator):
    """Maps vertex velocity fields to edge-length rates, z -> R z."""

    def __init__(self, rank_rel_tol=1e-9, gap_tol=1e-9, colour_tol=1e-10):
        self.rank_rel_tol = rank_rel_tol
        self.gap_tol = gap_tol
        self.colour_tol = colour_tol

    def fit(self, X, y=None):
        fw = check_framework(X)
        tol = ToleranceConfig(rank_rel_tol=self.rank_rel_tol, gap_tol=self.gap_tol,
                              colour_tol=self.colour_tol)
        res = rigidity_matrix(fw, tol)
        self.R_ = res.matrix
        self.rank_ = res.rank
        self.n_features_in_ = res.matrix.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "R_")
        Z = check_velocities(X, self.n_features_in_)
        return Z @ self.R_.T
