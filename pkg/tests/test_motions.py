import itertools
import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from matrigid import (
    MatrixNormedSpace,
    NormSpec,
    ProductNormSpace,
    construct_k6_minus_e,
    make_chart,
    transport,
)
from matrigid import motions
from matrigid.exceptions import NotAdmissibleError
from matrigid.matspace import Field, Kind, l_value
from matrigid.motions import is_completely_full, is_full, trivial_flex_basis

CHARTS = [(f, k) for f in Field for k in Kind]


def test_k6e_transported_placement_has_four_motions():
    fw = transport(construct_k6_minus_e().framework)
    basis = trivial_flex_basis(fw.space.chart, fw.P)
    assert basis.dim == 4 and basis.full
    assert basis.vectors.shape[1] == 6 * 3


def test_single_point_at_origin():
    chart = make_chart("real", 2, "full")
    assert trivial_flex_basis(chart, np.zeros((1, 4))).dim == 4
    assert not is_full(make_chart("real", 2, "hermitian"), np.zeros((1, 3)))


def test_generic_placement_is_full():
    chart = make_chart("real", 2, "full")
    P = np.random.default_rng(0).standard_normal((10, 4))
    assert trivial_flex_basis(chart, P).dim == 6


@pytest.mark.parametrize("field,kind", CHARTS)
@pytest.mark.parametrize("n", [2, 3])
def test_rank_oracle_matches_closed_form(field, kind, n):
    chart = make_chart(field, n, kind)
    P = np.random.default_rng(n).standard_normal((2 * chart.realdim, chart.realdim))
    assert trivial_flex_basis(chart, P).dim == l_value(field, n, kind)


def test_affine_spanning_points_are_full():
    chart = make_chart("complex", 2, "hermitian")
    P = np.vstack([np.zeros(4), np.eye(4)])
    assert is_full(chart, P)


def test_schatten2_refused():
    space = MatrixNormedSpace.make("real", 2, "full", NormSpec.schatten(2))
    with pytest.raises(NotAdmissibleError):
        trivial_flex_basis(space, np.ones((2, 4)))
    with pytest.raises(NotAdmissibleError):
        space.l


def test_empty_placement_rejected():
    with pytest.raises(ValueError):
        trivial_flex_basis(make_chart("real", 2, "full"), {})


def test_completely_full_examples():
    chart = make_chart("real", 2, "hermitian")
    fw = transport(construct_k6_minus_e().framework)
    assert is_completely_full(chart, fw.P, fw.graph)
    P = np.random.default_rng(1).standard_normal((8, 3))
    assert is_completely_full(chart, P)
    P[:6] = P[0]
    assert not is_completely_full(chart, P)


def test_completely_full_sampling_warns(monkeypatch):
    monkeypatch.setattr(motions, "EXHAUSTIVE_CAP", 5)
    monkeypatch.setattr(motions, "SAMPLED_SUBSETS", 20)
    chart = make_chart("real", 2, "hermitian")
    P = np.random.default_rng(2).standard_normal((8, 3))
    with pytest.warns(RuntimeWarning):
        assert is_completely_full(chart, P)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), scale=st.floats(0.01, 100), field=st.sampled_from(list(Field)),
       kind=st.sampled_from(list(Kind)))
def test_fullness_invariances(seed, scale, field, kind):
    rng = np.random.default_rng(seed)
    chart = make_chart(field, 2, kind)
    m = int(rng.integers(1, 6))
    P = rng.standard_normal((m, chart.realdim))
    base = trivial_flex_basis(chart, P)
    assert trivial_flex_basis(chart, scale * P).full == base.full
    dup = np.vstack([P, P[rng.integers(m)]])
    assert trivial_flex_basis(chart, dup).dim == base.dim
    # adding points never loses fullness
    more = np.vstack([P, rng.standard_normal((1, chart.realdim))])
    assert trivial_flex_basis(chart, more).dim >= base.dim


def test_product_motions():
    cyl = ProductNormSpace.cylindrical()
    P = np.random.default_rng(3).standard_normal((4, 3))
    assert trivial_flex_basis(cyl, P).dim == 4
    assert trivial_flex_basis(ProductNormSpace.hypercylindrical(), np.random.default_rng(4).standard_normal((4, 4))).dim == 7
    assert trivial_flex_basis(ProductNormSpace.sup(3), P).dim == 3
    assert trivial_flex_basis(ProductNormSpace.euclidean(3), P).dim == 6
    # collinear projections lose rotations
    flat = np.zeros((3, 3))
    flat[:, 0] = [0, 1, 2]
    assert trivial_flex_basis(ProductNormSpace.euclidean(3), flat).dim == 5
