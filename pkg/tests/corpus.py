"""Seeded random frameworks shared by the oracle and acceptance tests."""

import itertools
import math

import numpy as np

from matrigid import Framework, MatrixNormedSpace, NormSpec, ProductNormSpace

MARGIN = 1e-3


def corpus_spaces():
    out = []
    for q in (1, 3, math.inf):
        for field, kind in (("real", "full"), ("real", "hermitian"), ("complex", "hermitian")):
            name = f"schatten{q}-{field}-{kind}"
            out.append((name, MatrixNormedSpace.make(field, 2, kind, NormSpec.schatten(q))))
    out.append(("cylindrical", ProductNormSpace.cylindrical()))
    out.append(("sup3", ProductNormSpace.sup(3)))
    return out


def has_margin(space, x):
    """Keep finite-difference steps well away from non-smooth points."""
    if isinstance(space, ProductNormSpace):
        ns = sorted(space.factor_norms(x), reverse=True)
        return len(ns) == 1 or ns[0] - ns[1] > MARGIN * ns[0]
    return space.smoothness(x).gap > MARGIN


def random_framework(space, rng, m_range=(3, 7), p=0.6):
    while True:
        m = int(rng.integers(*m_range))
        P = rng.standard_normal((m, space.dim))
        edges = [e for e in itertools.combinations(range(m), 2) if rng.random() < p]
        if not edges:
            continue
        fw = Framework(space, range(m), edges, P)
        if all(has_margin(space, P[i] - P[j]) for i, j in fw.edge_index):
            return fw


def corpus(count=50, seed=2024):
    rng = np.random.default_rng(seed)
    return {name: [random_framework(sp, rng) for _ in range(count)] for name, sp in corpus_spaces()}
