import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from matrigid.exceptions import NonSmoothError, ShapeMismatchError, UndefinedDirectionError
from matrigid.norms import (
    NormSpec,
    is_smooth_at,
    norm_value,
    singular_values,
    support_functional,
)

MATRIX_NORMS = [NormSpec.schatten(q) for q in (1, 1.5, 2, 3, math.inf)] + [NormSpec.kyfan(k) for k in (1, 2, 3)]


def _unitary(rng, n, complex_=True):
    a = rng.standard_normal((n, n)) + (1j * rng.standard_normal((n, n)) if complex_ else 0)
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def test_singular_values_examples():
    np.testing.assert_allclose(singular_values(np.diag([3.0, -4.0])), [4, 3])
    np.testing.assert_allclose(singular_values(np.eye(2)), [1, 1])
    # eigenvalues of a* a = [[1, 1], [1, 2]] by the quadratic formula
    lam = np.array([(3 + math.sqrt(5)) / 2, (3 - math.sqrt(5)) / 2])
    np.testing.assert_allclose(singular_values(np.array([[1.0, 1], [0, 1]])), np.sqrt(lam), atol=1e-14)


def test_norm_value_examples():
    assert norm_value(NormSpec.schatten(1), np.diag([1.0, -1.0])) == pytest.approx(2)
    assert norm_value(NormSpec.cylindrical(), [0, -2, 0]) == 2
    assert norm_value(NormSpec.schatten(math.inf), np.diag([3.0, -4.0])) == 4
    assert norm_value(NormSpec.hypercylindrical(), [1, 2, 2, -4]) == 4
    assert norm_value(NormSpec.hypercylindrical(), [1, 2, 2, 1]) == 3
    assert norm_value(NormSpec.kyfan(2), np.diag([1.0, -5.0, 2.0])) == 7


def test_shape_errors():
    with pytest.raises(ShapeMismatchError):
        norm_value(NormSpec.cylindrical(), [1, 2])
    with pytest.raises(ShapeMismatchError):
        norm_value(NormSpec.schatten(1), np.ones((2, 3)))
    with pytest.raises(ShapeMismatchError):
        norm_value(NormSpec.kyfan(3), np.eye(2))


def test_spec_validation():
    with pytest.raises(ValueError):
        NormSpec.schatten(0.5)
    with pytest.raises(ValueError):
        NormSpec.kyfan(0)
    assert not NormSpec.schatten(2).admissible_for_motions
    assert NormSpec.schatten(1).admissible_for_motions
    assert not NormSpec.kyfan(2).admissible_on("real", 4, "full")
    assert NormSpec.kyfan(2).admissible_on("complex", 4, "full")
    assert not NormSpec.kyfan(3).admissible_on("real", 2, "full")


def test_smoothness_examples():
    assert is_smooth_at(NormSpec.schatten(1), np.eye(2))
    res = is_smooth_at(NormSpec.schatten(math.inf), np.eye(2))
    assert not res and res.gap == 0
    assert is_smooth_at(NormSpec.schatten(3), np.diag([1.0, 0]))
    assert not is_smooth_at(NormSpec.schatten(1), np.diag([1.0, 0]))
    assert is_smooth_at(NormSpec.kyfan(2), np.eye(2))
    assert not is_smooth_at(NormSpec.kyfan(1), np.eye(2))
    assert not is_smooth_at(NormSpec.cylindrical(), [0, 1, 1])
    with pytest.raises(UndefinedDirectionError):
        is_smooth_at(NormSpec.schatten(3), np.zeros((2, 2)))


def test_support_functional_examples():
    phi = support_functional(NormSpec.schatten(1), np.eye(2))
    np.testing.assert_allclose(phi.rep, np.eye(2), atol=1e-15)
    assert phi(np.eye(2) / 2) == pytest.approx(1)
    phi = support_functional(NormSpec.schatten(1), np.diag([1.0, -1.0]))
    np.testing.assert_allclose(phi.rep, np.diag([1.0, -1.0]), atol=1e-15)
    assert phi(np.diag([1.0, -1.0]) / 2) == pytest.approx(1)
    phi = support_functional(NormSpec.euclidean(2), [2.0, 0.0])
    np.testing.assert_allclose(phi.rep, [1, 0])
    phi = support_functional(NormSpec.absval(), [-3.0])
    assert phi([1.0]) == -1
    with pytest.raises(NonSmoothError):
        support_functional(NormSpec.schatten(math.inf), np.eye(2))


def _random_matrix(rng, n, complex_):
    a = rng.standard_normal((n, n))
    return a + 1j * rng.standard_normal((n, n)) if complex_ else a


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), complex_=st.booleans())
def test_unitary_invariance(seed, complex_):
    rng = np.random.default_rng(seed)
    a = _random_matrix(rng, 3, complex_)
    u, w = _unitary(rng, 3, complex_), _unitary(rng, 3, complex_)
    for spec in MATRIX_NORMS:
        na = norm_value(spec, a)
        assert abs(norm_value(spec, u @ a @ w) - na) <= 1e-9 * na


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), t=st.floats(-5, 5))
def test_triangle_and_homogeneity(seed, t):
    rng = np.random.default_rng(seed)
    a, b = _random_matrix(rng, 3, True), _random_matrix(rng, 3, True)
    for spec in MATRIX_NORMS:
        assert norm_value(spec, a + b) <= norm_value(spec, a) + norm_value(spec, b) + 1e-12
        assert norm_value(spec, t * a) == pytest.approx(abs(t) * norm_value(spec, a), rel=1e-12, abs=1e-12)
    for spec, d in ((NormSpec.cylindrical(), 3), (NormSpec.hypercylindrical(), 4), (NormSpec.sup(3), 3)):
        x, y = rng.standard_normal(d), rng.standard_normal(d)
        assert norm_value(spec, x + y) <= norm_value(spec, x) + norm_value(spec, y) + 1e-12
        assert norm_value(spec, t * x) == pytest.approx(abs(t) * norm_value(spec, x), rel=1e-12, abs=1e-12)


SMOOTH_SPECS = [NormSpec.schatten(q) for q in (1, 3, math.inf)] + [NormSpec.kyfan(2)]


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), complex_=st.booleans())
def test_dual_norm_bound_and_normalisation(seed, complex_):
    rng = np.random.default_rng(seed)
    p = _random_matrix(rng, 3, complex_)
    for spec in SMOOTH_SPECS:
        if not is_smooth_at(spec, p):
            continue
        phi = support_functional(spec, p)
        p0 = p / norm_value(spec, p)
        assert phi(p0) == pytest.approx(1, abs=1e-9)
        for _ in range(200):
            x = _random_matrix(rng, 3, complex_)
            assert phi(x / norm_value(spec, x)) <= 1 + 1e-7


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), complex_=st.booleans())
def test_directional_derivative(seed, complex_):
    rng = np.random.default_rng(seed)
    p = _random_matrix(rng, 3, complex_)
    z = _random_matrix(rng, 3, complex_)
    t = 1e-7
    for spec in SMOOTH_SPECS:
        smooth = is_smooth_at(spec, p)
        if not smooth or smooth.gap < 1e-3:
            continue
        p0 = p / norm_value(spec, p)
        phi = support_functional(spec, p)
        fd = (norm_value(spec, p0 + t * z) - norm_value(spec, p0)) / t
        assert abs(phi(z) - fd) <= 1e-5
