"""Open-chain spectra, edge-state detection and site-resolved densities."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bands import spectral_metrics
from .eigen import eig_dense
from .errors import NHSSHError, NoGapError, ParameterError
from .model import BoundaryCondition, ModelParams, realspace_hamiltonian
from .parallel import ordered_map

RE_TOL = 1e-6
IPR_MIN = 0.05
GAP_GUARD_FRACTION = 0.1


@dataclass(frozen=True)
class ChainSpectrum:
    """Eigenpairs of an open chain of ``n_cells`` four-site cells.

    Eigenvalues are in ascending real-part order; ``right_vectors[:, n]`` has
    unit norm.  ``edge_method`` records how ``edge_indices`` were selected:
    "gap" (zero-energy states inside the real gap) or "ipr" (localized
    zero-real-part states, used when the real gap is closed).
    """

    params: ModelParams
    n_cells: int
    eigenvalues: np.ndarray
    right_vectors: np.ndarray
    residual: float
    edge_indices: tuple = ()
    edge_method: str = "gap"

    @property
    def site_count(self) -> int:
        return 4 * self.n_cells

    @property
    def bulk_indices(self) -> np.ndarray:
        mask = np.ones(self.eigenvalues.size, dtype=bool)
        mask[list(self.edge_indices)] = False
        return np.nonzero(mask)[0]


@dataclass(frozen=True)
class EdgeStates:
    indices: tuple
    energies: np.ndarray

    @property
    def imag_parts(self) -> np.ndarray:
        return self.energies.imag


@dataclass(frozen=True)
class LDOSProfile:
    weights: np.ndarray
    state_index: int
    energy: complex

    def end_weight(self, n_sites: int = 8) -> float:
        """Larger of the weights summed over the ``n_sites`` sites nearest either end."""
        w = self.weights
        return float(max(w[:n_sites].sum(), w[-n_sites:].sum()))


def bulk_real_gap(p: ModelParams, n_k: int = 401) -> float:
    return spectral_metrics(p, n_k).gap_re


def _raw_spectrum(p: ModelParams, n_cells: int) -> ChainSpectrum:
    if isinstance(n_cells, bool) or int(n_cells) != n_cells or n_cells < 2:
        raise ParameterError("n_cells", f"must be an integer >= 2, got {n_cells!r}")
    h = realspace_hamiltonian(p, int(n_cells), BoundaryCondition.OPEN)
    try:
        es = eig_dense(h)
    except NHSSHError as exc:
        exc.args = (f"{exc.args[0]} at {p.as_dict()}",) + exc.args[1:]
        raise
    return ChainSpectrum(params=p, n_cells=int(n_cells), eigenvalues=es.values,
                         right_vectors=es.right_vectors, residual=es.residual)


def detect_edge_states(cs: ChainSpectrum, re_tol: float = RE_TOL,
                       gap_guard: float | None = None) -> EdgeStates:
    """States with |Re E| < ``re_tol`` separated from the bulk by ``gap_guard``.

    ``gap_guard`` defaults to a tenth of the Bloch real gap.  Raises
    :class:`NoGapError` when the bulk real spectrum reaches within
    ``gap_guard`` of zero, i.e. no mid-gap window exists.
    """
    if gap_guard is None:
        gap_guard = GAP_GUARD_FRACTION * bulk_real_gap(cs.params)
    re = np.abs(cs.eigenvalues.real)
    candidates = re < re_tol
    if gap_guard <= re_tol:
        raise NoGapError(f"real spectrum is gapless (gap guard {gap_guard:.3e})")
    intruders = (~candidates) & (re < gap_guard)
    if intruders.any():
        raise NoGapError(f"{int(intruders.sum())} bulk states inside the gap guard {gap_guard:.3e}")
    idx = tuple(int(i) for i in np.nonzero(candidates)[0])
    return EdgeStates(indices=idx, energies=cs.eigenvalues[list(idx)])


def ldos(cs: ChainSpectrum, state_index: int) -> LDOSProfile:
    n = cs.eigenvalues.size
    if isinstance(state_index, bool) or int(state_index) != state_index or not 0 <= state_index < n:
        raise ParameterError("state_index", f"must be an integer in [0, {n}), got {state_index!r}")
    v = cs.right_vectors[:, int(state_index)]
    w = np.abs(v) ** 2
    return LDOSProfile(weights=w / w.sum(), state_index=int(state_index),
                       energy=complex(cs.eigenvalues[int(state_index)]))


def ipr(profile: LDOSProfile | np.ndarray) -> float:
    w = profile.weights if isinstance(profile, LDOSProfile) else np.asarray(profile, dtype=float)
    return float(np.sum(w * w))


def state_iprs(cs: ChainSpectrum) -> np.ndarray:
    w = np.abs(cs.right_vectors) ** 2
    w = w / w.sum(axis=0)
    return np.sum(w * w, axis=0)


def ipr_edge_states(cs: ChainSpectrum, re_tol: float = RE_TOL, ipr_min: float = IPR_MIN) -> EdgeStates:
    """Fallback selection: zero-real-part states with IPR at least ``ipr_min``."""
    keep = (np.abs(cs.eigenvalues.real) < re_tol) & (state_iprs(cs) >= ipr_min)
    idx = tuple(int(i) for i in np.nonzero(keep)[0])
    return EdgeStates(indices=idx, energies=cs.eigenvalues[list(idx)])


def obc_spectrum(p: ModelParams, n_cells: int, re_tol: float = RE_TOL) -> ChainSpectrum:
    """Full open-chain spectrum with edge states pre-selected."""
    cs = _raw_spectrum(p, n_cells)
    try:
        edges, method = detect_edge_states(cs, re_tol), "gap"
    except NoGapError:
        edges, method = ipr_edge_states(cs, re_tol), "ipr"
    return ChainSpectrum(params=cs.params, n_cells=cs.n_cells, eigenvalues=cs.eigenvalues,
                         right_vectors=cs.right_vectors, residual=cs.residual,
                         edge_indices=edges.indices, edge_method=method)


@dataclass(frozen=True)
class SweepPoint:
    value: float
    eigenvalues: np.ndarray | None
    edge_indices: tuple = ()
    edge_method: str = ""
    iprs: np.ndarray | None = None
    error: str = ""

    @property
    def ok(self) -> bool:
        return not self.error

    @property
    def edge_energies(self) -> np.ndarray:
        if self.eigenvalues is None:
            return np.array([], dtype=complex)
        return self.eigenvalues[list(self.edge_indices)]

    @property
    def bulk_energies(self) -> np.ndarray:
        if self.eigenvalues is None:
            return np.array([], dtype=complex)
        mask = np.ones(self.eigenvalues.size, dtype=bool)
        mask[list(self.edge_indices)] = False
        return self.eigenvalues[mask]


@dataclass(frozen=True)
class SpectrumSweep:
    axis: str
    n_cells: int
    base: ModelParams
    points: list = field(default_factory=list)

    @property
    def values(self) -> np.ndarray:
        return np.array([pt.value for pt in self.points])

    def rows(self):
        for pt in self.points:
            if pt.eigenvalues is None:
                continue
            edges = set(pt.edge_indices)
            for n, e in enumerate(pt.eigenvalues):
                yield {"sweep_value": pt.value, "state_index": n, "re_E": float(e.real),
                       "im_E": float(e.imag), "is_edge": int(n in edges)}


_SWEEP_AXES = ("theta", "gamma1")


def _sweep_point(args) -> SweepPoint:
    p, axis, value, n_cells, re_tol = args
    try:
        cs = obc_spectrum(p.replace(**{axis: value}), n_cells, re_tol)
    except NHSSHError as exc:
        return SweepPoint(value=value, eigenvalues=None, error=f"{type(exc).__name__}: {exc}")
    return SweepPoint(value=value, eigenvalues=cs.eigenvalues, edge_indices=cs.edge_indices,
                      edge_method=cs.edge_method, iprs=state_iprs(cs))


def spectrum_sweep(base: ModelParams, axis: str, start: float, stop: float, n_points: int,
                   n_cells: int, re_tol: float = RE_TOL, workers: int | None = None) -> SpectrumSweep:
    """Open-chain spectra along ``axis`` (theta or gamma1); failures are recorded per point."""
    if axis not in _SWEEP_AXES:
        raise ParameterError("axis", f"must be one of {_SWEEP_AXES}, got {axis!r}")
    if int(n_points) < 16:
        raise ParameterError("n_points", f"must be >= 16, got {n_points}")
    values = np.linspace(start, stop, int(n_points))
    if axis == "theta":
        values = np.clip(values, -np.pi, np.pi)
    tasks = [(base, axis, float(v), n_cells, re_tol) for v in values]
    return SpectrumSweep(axis=axis, n_cells=int(n_cells), base=base,
                         points=ordered_map(_sweep_point, tasks, workers))
