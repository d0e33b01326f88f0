import numpy as np
import pytest

from matrigid import Verdict, construct_k6_minus_e, construct_k7_hyper, construct_km, product_analyze
from matrigid.constructions import K6E_G1, K6E_G2, k6e_points
from matrigid.exceptions import ConstructionError


@pytest.mark.parametrize("eps,delta", [(0, 0.25), (0.25, 0.5), (-0.1, 0.2), (0.6, 0.1)])
def test_k6e_parameter_range(eps, delta):
    with pytest.raises(ConstructionError):
        construct_k6_minus_e(eps, delta)


@pytest.mark.parametrize("eps,delta", [(0.4, 1.0), (0.3, 1.1), (0.5, 1.1), (0.4, 1.25)])
def test_k7_parameter_range(eps, delta):
    with pytest.raises(ConstructionError):
        construct_k7_hyper(eps, delta)


def test_k6e_points_and_certificate():
    P = k6e_points(0.25, 0.25)
    assert P.shape == (6, 3) and P[2, 2] == 1.5 and P[4, 0] == 0.5
    c = construct_k6_minus_e()
    assert c.params == {"eps": 0.25, "delta": 0.25}
    assert c.certificate["verdict"] == "MinimallyRigid"
    assert c.certificate["factor_ranks"] == [9, 5]
    assert len(K6E_G1) + len(K6E_G2) == 14 == len(c.framework.edges)


def test_adding_missing_edge_keeps_rigidity_but_not_minimality():
    fw = construct_k6_minus_e().framework
    rep = product_analyze(fw.with_edges(list(fw.edges) + [(5, 6)]))
    assert rep.verdict is Verdict.INFINITESIMALLY_RIGID


def test_k7_is_deterministic():
    a = construct_k7_hyper(seed=3)
    b = construct_k7_hyper(seed=3)
    np.testing.assert_array_equal(a.framework.P, b.framework.P)
    assert a.certificate["attempts"] >= 1


def test_k7_gives_up_after_retries():
    # with zero perturbation the colour-1 projection is never regular
    with pytest.raises(ConstructionError):
        construct_k7_hyper(perturb_scale=0.0, max_retries=3)


def test_km_errors_and_growth():
    with pytest.raises(ConstructionError):
        construct_km(5, "cyl")
    with pytest.raises(ConstructionError):
        construct_km(6, "hcyl")
    with pytest.raises(ConstructionError):
        construct_km(7, "torus")
    c = construct_km(7, "cyl", seed=1)
    assert c.report.rigid and len(c.framework.vertices) == 7 and len(c.framework.edges) == 21
    assert c.params["m"] == 7
