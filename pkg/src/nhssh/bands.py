"""Closed-form bands, closed-form eigenvectors and momentum sweeps.

The four Bloch energies are

    E = +-(1/sqrt 2) * sqrt(X +- sqrt(X^2 - Y^2 - 16 t1^2 t2^2 sin^2(k/2)))

with X = 2(t1^2 + t2^2) - gamma1^2 - gamma2^2 and
Y = 2 gamma1 gamma2 + 8 t^2 delta cos(theta).  Principal square roots are
used throughout; which formula branch is "band 1" carries no meaning once
bands are tracked numerically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eigen import (EigenSystem, biorthogonalize, eig_dense, sort_eigenvalues,
                    track_bands)
from .errors import ExceptionalPointError, ParameterError
from .model import ModelParams, bloch_hamiltonian, bloch_hamiltonians

DEFAULT_NK = 401
ZERO_TOL = 1e-8
ANALYTIC_RESIDUAL_TOL = 1e-6


@dataclass(frozen=True)
class AnalyticIntermediates:
    X: float
    Y: float
    Xp: float
    Yp: complex
    A1: complex
    A2: complex
    B: complex
    C1: float
    C2: float
    D1: complex
    D2: complex
    E1f: complex
    F1f: complex


def band_invariants(p: ModelParams) -> tuple[float, float]:
    """The real combinations (X, Y) controlling every gap closing."""
    X = 2.0 * (p.t1 ** 2 + p.t2 ** 2) - p.gamma1 ** 2 - p.gamma2 ** 2
    Y = 2.0 * p.gamma1 * p.gamma2 + 8.0 * p.t ** 2 * p.delta * np.cos(p.theta)
    return X, Y


def _discriminant(p: ModelParams, k):
    """X^2 - Y^2 - 16 t1^2 t2^2 sin^2(k/2), regrouped to avoid cancellation.

    With s = gamma1 + gamma2 and d = gamma1 - gamma2, X - Y = 4 t1^2 - s^2 and
    X + Y = 4 t2^2 - d^2, so the discriminant equals
    16 t1^2 t2^2 cos^2(k/2) - 4 t1^2 d^2 - 4 t2^2 s^2 + s^2 d^2.
    """
    t1s, t2s = p.t1 ** 2, p.t2 ** 2
    s2 = (p.gamma1 + p.gamma2) ** 2
    d2 = (p.gamma1 - p.gamma2) ** 2
    c2 = np.cos(np.asarray(k) / 2.0) ** 2
    return 16.0 * t1s * t2s * c2 - 4.0 * t1s * d2 - 4.0 * t2s * s2 + s2 * d2


def analytic_intermediates(p: ModelParams, k: float, r2: float = 1.0) -> AnalyticIntermediates:
    """Building blocks of the closed-form eigenvectors at momentum ``k``.

    ``Xp``/``Yp`` are the parameter-space analogues with the B-C bond scaled
    to ``t2 * r2`` (``r2 = hx^2 + hy^2``).
    """
    X, Y = band_invariants(p)
    t1, t2, g1, g2 = p.t1, p.t2, p.gamma1, p.gamma2
    ek = np.exp(1j * k)
    B = np.sqrt(complex(_discriminant(p, k)))
    t2p = t2 * r2
    Xp = 2.0 * (t2p ** 2 + t1 ** 2) - g1 ** 2 - g2 ** 2
    Yp = complex((-4.0 * t2p ** 2 + (g1 - g2) ** 2) * ((g1 + g2) ** 2 - 4.0 * t1 ** 2))
    return AnalyticIntermediates(
        X=X, Y=Y, Xp=Xp, Yp=Yp,
        A1=2.0 * t1 ** 2 * (1.0 + ek),
        A2=2.0 * t2 ** 2 * (1.0 + 1.0 / ek),
        B=B,
        C1=g1 - g2,
        C2=g1 + g2,
        D1=np.sqrt(2.0 * (X - B)),
        D2=np.sqrt(2.0 * (X + B)),
        E1f=1.0 + ek,
        F1f=ek - 1.0,
    )


def analytic_bands(p: ModelParams, k) -> np.ndarray:
    """(E1, E2, E3, E4) from the closed form; shape ``(4,)`` or ``(4, len(k))``."""
    X, _ = band_invariants(p)
    B = np.sqrt(np.asarray(_discriminant(p, k), dtype=complex))
    inner = np.sqrt((X - B) / 2.0)
    outer = np.sqrt((X + B) / 2.0)
    return np.stack([-inner, inner, -outer, outer])


def analytic_hermitian_bands(p: ModelParams, k) -> np.ndarray:
    """(-E, +E) of the two-site chain, E = sqrt(t1^2 + t2^2 + 2 t1 t2 cos k)."""
    if not p.is_hermitian:
        raise ParameterError("gamma1", "Hermitian dispersion requires gamma1 = gamma2 = 0")
    e = np.sqrt(p.t1 ** 2 + p.t2 ** 2 + 2.0 * p.t1 * p.t2 * np.cos(np.asarray(k, dtype=float)))
    return np.stack([-e, e])


def _printed_eigvecs(p: ModelParams, k: float, energies: np.ndarray) -> np.ndarray:
    """Columns Psi_1..Psi_4 evaluated exactly as printed.

    The third component of Psi_4 has the denominator ``t1 E_2 D_1 + ...``;
    ``E_2`` is not among the listed building blocks, so the band energy
    E_2(k) is substituted.
    """
    a = analytic_intermediates(p, k)
    t1, t2, g1, g2 = p.t1, p.t2, p.gamma1, p.gamma2
    A1, A2, B, C1, C2, D1, D2, Ek, Fk = a.A1, a.A2, a.B, a.C1, a.C2, a.D1, a.D2, a.E1f, a.F1f
    Q = C1 * t1 ** 2 - C2 * t2 ** 2
    band_e2 = energies[1]
    with np.errstate(all="ignore"):
        psi1 = [
            (-A2 + B + C1 * (C1 + 1j * D1)) / (t2 * Ek * D1 - 2j * t2 * g1 * Fk),
            (-4j * Q - (B - C1 * C2) * (D1 + 2j * g2)) / (2 * t1 * t2 * (Ek * D1 - 2j * g1 * Fk)),
            (-A1 + B + C2 * (C2 - 1j * D1)) / (t1 * Ek * D1 - 2j * t1 * g1 * Fk),
            1.0,
        ]
        psi2 = [
            (A2 - B - C1 * (C1 - 1j * D1)) / (t2 * Ek * D1 + 2j * t2 * g1 * Fk),
            (4j * Q + (B - C1 * C2) * (-D1 + 2j * g2)) / (2 * t1 * t2 * (Ek * D1 + 2j * g1 * Fk)),
            (A1 - B - C2 * (C2 + 1j * D1)) / (t1 * Ek * D1 + 2j * t1 * g1 * Fk),
            1.0,
        ]
        psi3 = [
            (-A2 - B + C1 * (C1 + 1j * D2)) / (t2 * Ek * D2 - 2j * t2 * g1 * Fk),
            (-4j * Q + (B + C1 * C2) * (D2 + 2j * g2)) / (2 * t1 * t2 * (Ek * D2 - 2j * g1 * Fk)),
            (-A1 - B + C2 * (C2 - 1j * D2)) / (t1 * Ek * D2 - 2j * t1 * g1 * Fk),
            1.0,
        ]
        psi4 = [
            (A2 + B - C1 * (C1 - 1j * D2)) / (t2 * Ek * D2 + 2j * t2 * g1 * Fk),
            (4j * Q - (B + C1 * C2) * (-D2 + 2j * g2)) / (2 * t1 * t2 * (Ek * D2 + 2j * g1 * Fk)),
            (A1 + B - C2 * (C2 + 1j * D2)) / (t1 * band_e2 * D1 + 2j * t1 * g1 * Fk),
            1.0,
        ]
    return np.array([psi1, psi2, psi3, psi4], dtype=complex).T


@dataclass(frozen=True)
class AnalyticEigvecs:
    """Closed-form eigenvectors with a residual report.

    ``vectors[:, n]`` pairs with ``energies[n]``.  Where ``analytic_ok[n]`` is
    False the printed formula failed its residual check and the column holds
    the numerically computed eigenvector instead.
    """

    energies: np.ndarray
    vectors: np.ndarray
    analytic_vectors: np.ndarray
    residuals: np.ndarray
    analytic_ok: np.ndarray


def analytic_eigvecs(p: ModelParams, k: float, tol: float = ANALYTIC_RESIDUAL_TOL) -> AnalyticEigvecs:
    h = bloch_hamiltonian(p, k)
    es = biorthogonalize(eig_dense(h))  # raises at exceptional points
    energies = analytic_bands(p, k)
    raw = _printed_eigvecs(p, k, energies)
    residuals = np.empty(4)
    ok = np.zeros(4, dtype=bool)
    out = np.empty((4, 4), dtype=complex)
    for n in range(4):
        v = raw[:, n]
        norm = np.linalg.norm(v)
        if np.all(np.isfinite(v)) and norm > 0:
            residuals[n] = np.linalg.norm((h - energies[n] * np.eye(4)) @ v) / norm
        else:
            residuals[n] = np.inf
        ok[n] = residuals[n] <= tol
        if ok[n]:
            out[:, n] = v / norm
        else:
            j = int(np.argmin(np.abs(es.values - energies[n])))
            out[:, n] = es.right_vectors[:, j]
    return AnalyticEigvecs(energies=energies, vectors=out, analytic_vectors=raw,
                           residuals=residuals, analytic_ok=ok)


def k_grid(n_k: int) -> np.ndarray:
    """Uniform grid over [-pi, pi] including both ends (and k=0 for odd n_k)."""
    return np.linspace(-np.pi, np.pi, int(n_k))


def sorted_spectra(p: ModelParams, ks) -> np.ndarray:
    """Bloch eigenvalues at each k, ordered by real part; shape (len(ks), 4)."""
    return sort_eigenvalues(np.linalg.eigvals(bloch_hamiltonians(p, ks)))


@dataclass(frozen=True)
class GapMetrics:
    """Separation of the two middle bands (2 and 3 in real-part order).

    ``min_abs_e`` is the smallest |E| on the grid, i.e. the point gap at zero
    energy.
    """

    gap_re: float
    gap_re_k: float
    gap_im: float
    gap_im_k: float
    max_abs_re: float
    max_abs_im: float
    min_abs_e: float


def gap_metrics(ks: np.ndarray, spectra: np.ndarray) -> GapMetrics:
    middle_lo = spectra[:, 1]
    middle_hi = spectra[:, 2]
    d_re = np.abs(middle_hi.real - middle_lo.real)
    d_im = np.abs(middle_hi.imag - middle_lo.imag)
    i_re = int(np.argmin(d_re))
    i_im = int(np.argmin(d_im))
    return GapMetrics(
        gap_re=float(d_re[i_re]), gap_re_k=float(ks[i_re]),
        gap_im=float(d_im[i_im]), gap_im_k=float(ks[i_im]),
        max_abs_re=float(np.max(np.abs(spectra.real))),
        max_abs_im=float(np.max(np.abs(spectra.imag))),
        min_abs_e=float(np.min(np.abs(spectra))),
    )


def spectral_metrics(p: ModelParams, n_k: int = DEFAULT_NK) -> GapMetrics:
    ks = k_grid(n_k)
    return gap_metrics(ks, sorted_spectra(p, ks))


@dataclass(frozen=True)
class BandStructure:
    """Four tracked complex bands on a k-grid.

    ``bands[n, j]`` is band n at ``k_grid[j]``; at the first grid point
    (k = -pi, equivalent to the reference momentum pi) the bands are in
    real-part order.  ``sorted_values[j]`` holds the same energies in
    real-part order at every k.
    """

    params: ModelParams
    k_grid: np.ndarray
    bands: np.ndarray
    sorted_values: np.ndarray
    metrics: GapMetrics
    flags: np.ndarray
    ambiguous: np.ndarray

    @property
    def gap_re(self) -> float:
        return self.metrics.gap_re

    @property
    def gap_im(self) -> float:
        return self.metrics.gap_im


def band_sweep(p: ModelParams, n_k: int = DEFAULT_NK) -> BandStructure:
    if n_k < 16:
        raise ParameterError("n_k", f"must be >= 16, got {n_k}")
    ks = k_grid(n_k)
    systems: list[EigenSystem] = []
    flags = np.zeros(ks.size, dtype=bool)
    for j, k in enumerate(ks):
        es = eig_dense(bloch_hamiltonian(p, k))
        try:
            biorthogonalize(es)
        except ExceptionalPointError:
            flags[j] = True
        systems.append(es)
    tracking = track_bands(systems)
    sorted_vals = np.stack([es.values for es in systems])
    bands = tracking.apply([es.values for es in systems])
    return BandStructure(params=p, k_grid=ks, bands=bands, sorted_values=sorted_vals,
                         metrics=gap_metrics(ks, sorted_vals), flags=flags,
                         ambiguous=np.array(tracking.ambiguous))
