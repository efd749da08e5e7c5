from __future__ import annotations

import numpy as np
from scipy.optimize import linear_sum_assignment


def multiset_distance(a, b) -> float:
    """Largest pair distance under the optimal one-to-one matching of two multisets."""
    a = np.asarray(a).ravel()
    b = np.asarray(b).ravel()
    assert a.size == b.size
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def random_params(rng, gamma_max=3.0):
    from nhssh.model import make_params
    return make_params(rng.uniform(0.5, 2.0), rng.uniform(0.05, 0.95), rng.uniform(-np.pi, np.pi),
                       rng.uniform(0.0, gamma_max), rng.uniform(0.0, gamma_max))
