"""Residual checks of the symmetry relations of the Bloch Hamiltonian.

Every relation has the form ``U op(H_k) U^-1 = sign * H_k'`` where ``op`` is
one of identity, transpose, conjugate or conjugate transpose and ``k'`` is
either ``k`` or ``-k``.  The residual is the Frobenius norm of the
difference, maximized over a uniform k-grid.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ParameterError
from .model import ModelParams, bloch_hamiltonians

DEFAULT_NK = 64
HOLDS_TOL = 1e-10

_I2 = np.eye(2)
_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_STAGGER = np.diag([1.0, -1.0, 1.0, -1.0]).astype(complex)

_OPS = {
    "none": lambda h: h,
    "transpose": lambda h: np.swapaxes(h, -1, -2),
    "conjugate": np.conj,
    "dagger": lambda h: np.conj(np.swapaxes(h, -1, -2)),
}


def eta(k: float) -> np.ndarray:
    """Pseudo-Hermiticity metric [[0, e^{-ik/2}], [e^{ik/2}, 0]] (2x2 blocks)."""
    h = np.exp(0.5j * k)
    m = np.zeros((4, 4), dtype=complex)
    m[:2, 2:] = np.conj(h) * _I2
    m[2:, :2] = h * _I2
    return m


def eta_pauli(k: float) -> np.ndarray:
    """The same metric assembled from Pauli matrices, sx (x) cos(k/2) + sy (x) sin(k/2)."""
    return np.kron(_SX, np.cos(k / 2) * _I2) + np.kron(_SY, np.sin(k / 2) * _I2)


@dataclass(frozen=True)
class SymmetryOperator:
    """A candidate symmetry: unitary, operation on H, sign and momentum flip."""

    name: str
    matrix_of_k: Callable[[float], np.ndarray]
    op: str
    sign: float
    flips_k: bool
    description: str

    def residuals(self, p: ModelParams, ks: np.ndarray) -> np.ndarray:
        h = bloch_hamiltonians(p, ks)
        h_target = bloch_hamiltonians(p, -ks) if self.flips_k else h
        out = np.empty(ks.size)
        for j, k in enumerate(ks):
            u = self.matrix_of_k(k)
            lhs = u @ _OPS[self.op](h[j]) @ np.linalg.inv(u)
            out[j] = np.linalg.norm(lhs - self.sign * h_target[j])
        return out


def _const(m):
    return lambda k: m


OPERATORS: dict[str, SymmetryOperator] = {
    op.name: op
    for op in [
        SymmetryOperator("pseudoH", eta, "dagger", +1.0, False,
                         "eta H_k^dag eta^-1 = H_k"),
        SymmetryOperator("TRSdag", _const(np.eye(4, dtype=complex)), "transpose", +1.0, True,
                         "H_k^T = H_-k"),
        SymmetryOperator("PHSdag", _const(_STAGGER), "conjugate", -1.0, True,
                         "T H_k^* T^-1 = -H_-k, T = diag(1,-1,1,-1)"),
        SymmetryOperator("CS", _const(_STAGGER), "dagger", -1.0, False,
                         "G H_k^dag G^-1 = -H_k, G = diag(1,-1,1,-1)"),
        SymmetryOperator("CSdag", lambda k: eta(k) @ _STAGGER, "none", -1.0, False,
                         "C H_k C^-1 = -H_k, C = eta G"),
        SymmetryOperator("TRS", _const(np.eye(4, dtype=complex)), "conjugate", +1.0, True,
                         "H_k^* = H_-k"),
        SymmetryOperator("PHS", _const(_STAGGER), "transpose", -1.0, True,
                         "T H_k^T T^-1 = -H_-k"),
        SymmetryOperator("antiPT", _const(1j * np.kron(_SX, _SY)), "conjugate", -1.0, False,
                         "P H_k^* P^-1 = -H_k, P = i sx (x) sy"),
    ]
}

# Unitaries of the daggered symmetries; the chiral one is their product.
TRSDAG_UNITARY = np.eye(4, dtype=complex)
PHSDAG_UNITARY = _STAGGER
CHIRAL_UNITARY = _STAGGER


def _grid(n_k: int) -> np.ndarray:
    if int(n_k) < 1:
        raise ParameterError("n_k", f"must be >= 1, got {n_k}")
    return 2.0 * np.pi * np.arange(int(n_k)) / int(n_k) - np.pi


def get_operator(name: str | SymmetryOperator) -> SymmetryOperator:
    if isinstance(name, SymmetryOperator):
        return name
    try:
        return OPERATORS[name]
    except KeyError:
        raise ParameterError("symmetry", f"unknown symmetry {name!r}; "
                             f"choose from {sorted(OPERATORS)}") from None


def symmetry_residual(p: ModelParams, op: str | SymmetryOperator, n_k: int = DEFAULT_NK) -> float:
    return float(np.max(get_operator(op).residuals(p, _grid(n_k))))


def eta_pauli_residual(p: ModelParams, n_k: int = DEFAULT_NK) -> float:
    """Pseudo-Hermiticity residual using the Pauli-matrix form of the metric."""
    op = SymmetryOperator("pseudoH_pauli", eta_pauli, "dagger", +1.0, False, "")
    return float(np.max(op.residuals(p, _grid(n_k))))


@dataclass(frozen=True)
class AntiPTResiduals:
    """``literal_form``: literal i sx (x) sy with conjugation at fixed k.
    ``literal_form_onsite``: the same relation restricted to the onsite terms.
    ``working_form``: conjugation with diag(1,-1,1,-1) and k -> -k.
    """

    literal_form: float
    literal_form_onsite: float
    working_form: float


def antiPT_residual(p: ModelParams, n_k: int = DEFAULT_NK) -> AntiPTResiduals:
    literal = OPERATORS["antiPT"]
    onsite = np.diag(p.onsite)
    u = literal.matrix_of_k(0.0)
    onsite_res = np.linalg.norm(u @ onsite.conj() @ np.linalg.inv(u) + onsite)
    return AntiPTResiduals(
        literal_form=symmetry_residual(p, literal, n_k),
        literal_form_onsite=float(onsite_res),
        working_form=symmetry_residual(p, "PHSdag", n_k),
    )


@dataclass(frozen=True)
class SymmetryReport:
    params: ModelParams
    n_k: int
    residuals: dict
    holds: dict
    label: str
    eta_pauli: float
    antiPT: AntiPTResiduals

    def to_dict(self) -> dict:
        return {
            "params": self.params.as_dict(),
            "n_k": self.n_k,
            "label": self.label,
            "symmetries": [
                {"name": n, "residual": self.residuals[n], "holds": self.holds[n]}
                for n in OPERATORS
            ],
            "pseudoH_pauli_residual": self.eta_pauli,
            "antiPT": {
                "literal_form": self.antiPT.literal_form,
                "literal_form_onsite": self.antiPT.literal_form_onsite,
                "working_form": self.antiPT.working_form,
            },
        }

    def to_text(self) -> str:
        lines = [f"class: {self.label}", f"{'symmetry':<10} {'residual':>12}  holds"]
        for n in OPERATORS:
            lines.append(f"{n:<10} {self.residuals[n]:12.3e}  {'yes' if self.holds[n] else 'no'}")
        lines.append(f"{'pseudoH*':<10} {self.eta_pauli:12.3e}  (Pauli form of the metric)")
        lines.append(f"{'antiPT~':<10} {self.antiPT.working_form:12.3e}  (conjugation, k -> -k)")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def class_label(holds: dict) -> str:
    daggered = all(holds[n] for n in ("TRSdag", "PHSdag", "CS"))
    plain = holds["TRS"] and holds["PHS"]
    if daggered and not holds["TRS"] and not holds["PHS"]:
        return "BDI†"
    if daggered and plain:
        return "BDI"
    return "unclassified"


def classify(p: ModelParams, n_k: int = DEFAULT_NK, tol: float = HOLDS_TOL) -> SymmetryReport:
    residuals = {n: symmetry_residual(p, op, n_k) for n, op in OPERATORS.items()}
    holds = {n: r < tol for n, r in residuals.items()}
    return SymmetryReport(params=p, n_k=int(n_k), residuals=residuals, holds=holds,
                          label=class_label(holds), eta_pauli=eta_pauli_residual(p, n_k),
                          antiPT=antiPT_residual(p, n_k))
