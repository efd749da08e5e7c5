"""Dense non-Hermitian eigendecomposition with biorthogonal pairing.

Right eigenvectors come from LAPACK ``zgeev`` (Hessenberg reduction plus
shifted QR).  Left eigenvectors are rows of the inverse of the right
eigenvector matrix, so ``left @ right == I`` holds by construction and a
failing inversion doubles as the exceptional-point detector.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import EigenConvergenceError, ExceptionalPointError, ParameterError

DEFAULT_TOL = 1e-9
EP_CONDITION = 1e10
EP_SEPARATION = 1e-8
# Real parts closer than this are treated as ties when ordering eigenvalues.
SORT_TIE_TOL = 1e-9


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues with paired eigenvectors.

    ``right_vectors[:, n]`` belongs to ``values[n]``; after
    :func:`biorthogonalize`, ``left_vectors[n, :]`` is its biorthogonal
    partner.
    """

    values: np.ndarray
    right_vectors: np.ndarray
    left_vectors: np.ndarray | None
    residual: float
    biorth_condition: float
    degenerate: bool = False

    def __len__(self):
        return self.values.size


def sort_order(values: np.ndarray, tie_tol: float = SORT_TIE_TOL) -> np.ndarray:
    """Indices ordering ``values`` by real part, ties by imaginary part.

    Works on the last axis of stacked arrays as well.
    """
    values = np.asarray(values)
    re_key = np.round(values.real / tie_tol)
    return np.lexsort((values.imag, re_key), axis=-1)


def sort_eigenvalues(values: np.ndarray, tie_tol: float = SORT_TIE_TOL) -> np.ndarray:
    order = sort_order(values, tie_tol)
    return np.take_along_axis(np.asarray(values), order, axis=-1)


def _validate_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ParameterError("M", f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ParameterError("M", "matrix contains NaN or Inf entries")
    return m


def eig_dense(m, tol: float = DEFAULT_TOL) -> EigenSystem:
    """All eigenpairs of a dense complex matrix.

    Eigenvalues are ordered by ascending real part (ties by imaginary part)
    and right eigenvectors have unit Euclidean norm.  ``residual`` is
    ``max_n |(M - E_n) psi_n| / |M|_2``; when it exceeds ``tol`` the result
    is flagged ``degenerate`` instead of raising.
    """
    m = _validate_matrix(m)
    try:
        w, v = scipy.linalg.eig(m, check_finite=False)
    except np.linalg.LinAlgError as exc:
        partial = scipy.linalg.eigvals(m, check_finite=False) if m.shape[0] > 1 else None
        raise EigenConvergenceError(f"eigensolver did not converge: {exc}", partial=partial) from exc
    order = sort_order(w)
    w = w[order]
    v = v[:, order]
    v = v / np.linalg.norm(v, axis=0)
    scale = np.linalg.norm(m, 2)
    if scale == 0.0:
        residual = 0.0
    else:
        residual = float(np.max(np.linalg.norm(m @ v - v * w, axis=0)) / scale)
    with np.errstate(all="ignore"):
        cond = float(np.linalg.cond(v))
    if not np.isfinite(cond):
        cond = np.inf
    return EigenSystem(values=w, right_vectors=v, left_vectors=None, residual=residual,
                       biorth_condition=cond, degenerate=residual > tol)


def min_separation(values: np.ndarray) -> float:
    values = np.asarray(values)
    if values.size < 2:
        return np.inf
    d = np.abs(values[:, None] - values[None, :])
    d[np.diag_indices(values.size)] = np.inf
    return float(d.min())


def defective_mask(ms: np.ndarray, values: np.ndarray, cluster_tol: float = 1e-6,
                   rank_tol: float = 1e-6) -> np.ndarray:
    """Flag matrices in a stack that sit at an exceptional point.

    A pair of eigenvalues closer than ``cluster_tol`` (relative) is a genuine
    two-fold degeneracy when ``M - E`` loses two ranks, and defective when it
    loses only one.  Numerical splitting at a defective pair is of order
    sqrt(machine epsilon), hence the loose clustering tolerance.
    """
    ms = np.asarray(ms)
    values = np.asarray(values)
    n = values.shape[-1]
    out = np.zeros(values.shape[0], dtype=bool)
    eye = np.eye(n)
    scales = np.maximum(1.0, np.max(np.abs(values), axis=-1))
    d = np.abs(values[:, :, None] - values[:, None, :])
    d[:, np.arange(n), np.arange(n)] = np.inf
    close = d < cluster_tol * scales[:, None, None]
    for j in np.nonzero(close.any(axis=(1, 2)))[0]:
        m, w, scale = ms[j], values[j], scales[j]
        for a, b in zip(*np.nonzero(np.triu(close[j]))):
            sv = np.linalg.svd(m - 0.5 * (w[a] + w[b]) * eye, compute_uv=False)
            if sv[-2] > rank_tol * scale:
                out[j] = True
                break
    return out


def biorthogonalize(es: EigenSystem, separation: float = EP_SEPARATION,
                    max_condition: float = EP_CONDITION) -> EigenSystem:
    """Attach left eigenvectors with ``<phi_m|psi_n> = delta_mn``.

    Raises :class:`ExceptionalPointError` when two eigenvalues are closer than
    ``separation`` (relative to the spectral scale) or the right eigenvector
    matrix is worse conditioned than ``max_condition``.
    """
    scale = max(1.0, float(np.max(np.abs(es.values))))
    sep = min_separation(es.values)
    if sep < separation * scale:
        raise ExceptionalPointError(
            f"eigenvalue separation {sep:.3e} below threshold", separation=sep,
            condition=es.biorth_condition)
    if not es.biorth_condition < max_condition:
        raise ExceptionalPointError(
            f"eigenvector condition {es.biorth_condition:.3e} above threshold",
            separation=sep, condition=es.biorth_condition)
    try:
        left = np.linalg.inv(es.right_vectors)
    except np.linalg.LinAlgError as exc:
        raise ExceptionalPointError("right eigenvector matrix is singular",
                                    separation=sep, condition=np.inf) from exc
    return replace(es, left_vectors=left)


def eig_biorthogonal(m, tol: float = DEFAULT_TOL) -> EigenSystem:
    return biorthogonalize(eig_dense(m, tol))


@dataclass(frozen=True)
class Tracking:
    """Band order along a path.

    ``perms[j][n]`` is the index into ``systems[j].values`` of tracked band
    ``n``; ``ambiguous[j]`` marks steps where the overlap matching was not
    decisive and the sorted order was used instead.
    """

    perms: list
    ambiguous: list

    def apply(self, values_per_step: Sequence[np.ndarray]) -> np.ndarray:
        """Reorder per-step eigenvalues into an array of shape (n_bands, n_steps)."""
        return np.stack([np.asarray(v)[p] for v, p in zip(values_per_step, self.perms)], axis=1)


def _greedy_match(overlap: np.ndarray, ambiguity: float):
    n = overlap.shape[0]
    ambiguous = False
    for row in overlap:
        top = np.sort(row)[::-1]
        if n > 1 and top[0] - top[1] < ambiguity:
            ambiguous = True
    match = -np.ones(n, dtype=int)
    taken = np.zeros(n, dtype=bool)
    for flat in np.argsort(-overlap, axis=None, kind="stable"):
        a, b = divmod(int(flat), n)
        if match[a] < 0 and not taken[b]:
            match[a] = b
            taken[b] = True
    return match, ambiguous


def track_bands(systems: Sequence[EigenSystem], ambiguity: float = 1e-3) -> Tracking:
    """Follow bands along a path by maximal right-eigenvector overlap."""
    if not systems:
        return Tracking(perms=[], ambiguous=[])
    n = len(systems[0])
    perms = [np.arange(n)]
    flags = [False]
    for prev, cur in zip(systems[:-1], systems[1:]):
        prev_vecs = prev.right_vectors[:, perms[-1]]
        overlap = np.abs(prev_vecs.conj().T @ cur.right_vectors)
        match, ambiguous = _greedy_match(overlap, ambiguity)
        if ambiguous:
            match = np.arange(n)
        perms.append(match)
        flags.append(ambiguous)
    return Tracking(perms=perms, ambiguous=flags)
