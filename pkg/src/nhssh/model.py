"""Model parameters and Hamiltonian constructors for the tetramerized chain.

Site order inside a unit cell is (A, B, C, D) with onsite potentials
(i*gamma1, -i*gamma2, -i*gamma1, i*gamma2).  Bonds alternate t1, t2, t1, t2
along the chain starting with t1 between A and B.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

# Slack for angles produced by float arithmetic on multiples of pi.
_ANGLE_SLACK = 1e-12


class BoundaryCondition(str, enum.Enum):
    OPEN = "open"
    PERIODIC = "periodic"


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters (t, delta, theta, gamma1, gamma2).

    The hoppings ``t1`` and ``t2`` are derived on construction and cannot be
    set independently.
    """

    t: float
    delta: float
    theta: float
    gamma1: float
    gamma2: float
    t1: float = field(init=False)
    t2: float = field(init=False)

    def __post_init__(self):
        for name in ("t", "delta", "theta", "gamma1", "gamma2"):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ParameterError(name, f"expected a real number, got {value!r}") from None
            if not math.isfinite(value):
                raise ParameterError(name, f"must be finite, got {value}")
            object.__setattr__(self, name, value)
        if self.t <= 0:
            raise ParameterError("t", f"must be > 0, got {self.t}")
        if not 0 < self.delta < 1:
            raise ParameterError("delta", f"must satisfy 0 < delta < 1, got {self.delta}")
        if self.gamma1 < 0:
            raise ParameterError("gamma1", f"must be >= 0, got {self.gamma1}")
        if self.gamma2 < 0:
            raise ParameterError("gamma2", f"must be >= 0, got {self.gamma2}")
        if abs(self.theta) > math.pi + _ANGLE_SLACK:
            raise ParameterError("theta", f"must lie in [-pi, pi], got {self.theta}")
        c = math.cos(self.theta)
        object.__setattr__(self, "t1", self.t * (1.0 - self.delta * c))
        object.__setattr__(self, "t2", self.t * (1.0 + self.delta * c))

    def replace(self, **changes) -> "ModelParams":
        kw = self.as_dict()
        kw.update(changes)
        return ModelParams(**kw)

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "delta": self.delta,
            "theta": self.theta,
            "gamma1": self.gamma1,
            "gamma2": self.gamma2,
        }

    @property
    def is_hermitian(self) -> bool:
        return self.gamma1 == 0.0 and self.gamma2 == 0.0

    @property
    def onsite(self) -> np.ndarray:
        g1, g2 = self.gamma1, self.gamma2
        return np.array([1j * g1, -1j * g2, -1j * g1, 1j * g2])


def make_params(t, delta, theta, gamma1, gamma2) -> ModelParams:
    return ModelParams(t=t, delta=delta, theta=theta, gamma1=gamma1, gamma2=gamma2)


def _check_momentum(k):
    k = np.asarray(k, dtype=float)
    if not np.all(np.isfinite(k)):
        raise ParameterError("k", "momentum must be finite")
    return k


def bloch_hamiltonians(p: ModelParams, ks) -> np.ndarray:
    """Stack of Bloch matrices, shape ``(len(ks), 4, 4)``."""
    ks = np.atleast_1d(_check_momentum(ks))
    h = np.zeros((ks.size, 4, 4), dtype=complex)
    idx = np.arange(4)
    h[:, idx, idx] = p.onsite
    h[:, 0, 1] = h[:, 1, 0] = p.t1
    h[:, 2, 3] = h[:, 3, 2] = p.t1
    h[:, 1, 2] = h[:, 2, 1] = p.t2
    h[:, 0, 3] = p.t2 * np.exp(-1j * ks)
    h[:, 3, 0] = p.t2 * np.exp(1j * ks)
    return h


def bloch_hamiltonian(p: ModelParams, k: float) -> np.ndarray:
    """4x4 Bloch Hamiltonian H_k in the (A, B, C, D) basis."""
    return bloch_hamiltonians(p, [k])[0]


def realspace_hamiltonian(p: ModelParams, n_cells: int,
                          bc: BoundaryCondition | str = BoundaryCondition.OPEN) -> np.ndarray:
    """Dense chain Hamiltonian on ``4 * n_cells`` sites.

    The matrix is complex symmetric (equal to its transpose) for every
    parameter choice.
    """
    if isinstance(n_cells, bool) or int(n_cells) != n_cells or n_cells < 1:
        raise ParameterError("n_cells", f"must be a positive integer, got {n_cells!r}")
    bc = BoundaryCondition(bc)
    n = 4 * int(n_cells)
    h = np.zeros((n, n), dtype=complex)
    h[np.diag_indices(n)] = np.tile(p.onsite, int(n_cells))
    bonds = np.where(np.arange(n - 1) % 2 == 0, p.t1, p.t2)
    i = np.arange(n - 1)
    h[i, i + 1] = bonds
    h[i + 1, i] = bonds
    if bc is BoundaryCondition.PERIODIC:
        # single cell: the wrap bond coincides with the D-A Bloch term at k=0
        h[n - 1, 0] += p.t2
        h[0, n - 1] += p.t2
    return h


def parameter_space_hamiltonian(p: ModelParams, hx: float, hy: float) -> np.ndarray:
    """Bloch matrix with e^{ik} replaced by hx + i*hy on the D-A bond.

    The B-C bond is scaled by hx^2 + hy^2; on the unit circle with
    hx + i*hy = e^{ik/2} this reproduces H_k.
    """
    z = complex(hx, hy)
    r2 = hx * hx + hy * hy
    h = np.zeros((4, 4), dtype=complex)
    h[np.diag_indices(4)] = p.onsite
    h[0, 1] = h[1, 0] = p.t1
    h[2, 3] = h[3, 2] = p.t1
    h[1, 2] = h[2, 1] = p.t2 * r2
    h[0, 3] = p.t2 * z.conjugate() ** 2
    h[3, 0] = p.t2 * z ** 2
    return h
