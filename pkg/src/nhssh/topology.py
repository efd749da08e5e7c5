"""Topological invariants, critical lines and phase-diagram classification.

The Zak phase is computed as a multiband biorthogonal Wilson loop for the
two bands with negative real part.  Instead of tracking individual
eigenvectors around the loop, each momentum contributes the Riesz projector

    P_k = (1 - sign(H_k)) / 2

onto the Re E < 0 subspace, which is smooth in k as long as the real line
gap stays open.  The loop is then ``L_0 P_{N-1} ... P_1 R_0`` for a
biorthonormal basis pair (R_0, L_0) of the subspace at the starting
momentum, and the phase is ``-arg det`` of that 2x2 matrix.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .bands import DEFAULT_NK, GapMetrics, spectral_metrics, sorted_spectra
from .eigen import defective_mask
from .errors import CriticalPointError, ParameterError, TransitionPointError
from .model import ModelParams, bloch_hamiltonians
from .parallel import ordered_map

ZERO_TOL = 1e-8
QUANT_TOL = 1e-2
UNIT_CIRCLE_TOL = 1e-9
DEFAULT_ZAK_NK = 128


class Region(str, enum.Enum):
    TRIVIAL = "trivial"
    REAL_LINE_GAPPED = "nontrivial_real_line_gapped"
    COMPLEX = "nontrivial_complex"
    PARTIAL_RE_ZERO = "nontrivial_partial_reZero"
    ALL_IMAGINARY = "nontrivial_all_imaginary"
    BOUNDARY = "boundary"

    @property
    def code(self) -> int:
        return list(Region).index(self)


@dataclass(frozen=True)
class CriticalLines:
    """Analytic gap-closing lines in the (gamma1, gamma2) plane.

    ``im_gap_close``: gamma1 + gamma2 = value; ``re_gap_close``:
    |gamma1 - gamma2| = value; ``topo_transition``: gamma1 * gamma2 = value.
    """

    t1: float
    t2: float
    im_gap_close: float
    re_gap_close: float
    topo_transition: float

    def residuals(self, gamma1, gamma2):
        """Signed distances of (gamma1, gamma2) from each line, in line order."""
        g1 = np.asarray(gamma1, dtype=float)
        g2 = np.asarray(gamma2, dtype=float)
        return (g1 + g2 - self.im_gap_close,
                np.abs(g1 - g2) - self.re_gap_close,
                g1 * g2 - self.topo_transition)

    def topo_satisfiable(self) -> bool:
        return self.topo_transition >= 0.0


def critical_lines(t: float, delta: float, theta: float) -> CriticalLines:
    p = ModelParams(t=t, delta=delta, theta=theta, gamma1=0.0, gamma2=0.0)
    return CriticalLines(t1=p.t1, t2=p.t2, im_gap_close=2.0 * p.t1, re_gap_close=2.0 * p.t2,
                         topo_transition=p.t1 ** 2 - p.t2 ** 2)


def zak_grid(n_k: int) -> np.ndarray:
    """k_j = 2 pi j / n_k, j = 0..n_k-1 (the loop closes on k = 0)."""
    return 2.0 * np.pi * np.arange(int(n_k)) / int(n_k)


def matrix_sign(h: np.ndarray, maxit: int = 100, rtol: float = 1e-14) -> np.ndarray:
    """Matrix sign function of a stack of matrices by scaled Newton iteration.

    Requires no eigenvalue on the imaginary axis; a singular iterate raises
    :class:`TransitionPointError`.  Determinant scaling brings convergence
    down to a handful of steps for these spectra.
    """
    s = np.array(h, dtype=complex)
    n = s.shape[-1]
    for _ in range(maxit):
        try:
            s_inv = np.linalg.inv(s)
        except np.linalg.LinAlgError:
            raise TransitionPointError("eigenvalue on the imaginary axis (singular iterate)") from None
        mu = np.abs(np.linalg.det(s)) ** (-1.0 / n)
        mu = mu[..., None, None]
        s_new = 0.5 * (mu * s + s_inv / mu)
        if not np.all(np.isfinite(s_new)):
            raise TransitionPointError("matrix sign iteration diverged")
        done = np.max(np.abs(s_new - s)) <= rtol * np.max(np.abs(s_new))
        s = s_new
        if done:
            return s
    raise CriticalPointError("matrix sign iteration did not converge")


def _biorthonormal_basis(proj: np.ndarray, rank: int):
    u, _, vh = np.linalg.svd(proj)
    right = u[:, :rank]
    row_space = vh[:rank].conj().T
    left = np.linalg.solve(row_space.conj().T @ right, row_space.conj().T)
    return right, left


def _check_loop(p: ModelParams, ks: np.ndarray, h: np.ndarray) -> float:
    spectra = sorted_spectra(p, ks)
    ep = defective_mask(h, spectra)
    if ep.any():
        k_ep = ks[int(np.argmax(ep))]
        raise CriticalPointError(f"exceptional point on the k-grid at k={k_ep:.6g}")
    gap_re = float(np.min(spectra[:, 2].real - spectra[:, 1].real))
    if gap_re < ZERO_TOL:
        raise TransitionPointError(f"real line gap {gap_re:.3e} is closed", gap_re=gap_re)
    return gap_re


def zak_phase(p: ModelParams, n_k: int = DEFAULT_ZAK_NK) -> float:
    """Biorthogonal Zak phase of the two Re E < 0 bands, in [0, 2 pi)."""
    if int(n_k) < 64:
        raise ParameterError("n_k", f"must be >= 64, got {n_k}")
    ks = zak_grid(n_k)
    h = bloch_hamiltonians(p, ks)
    _check_loop(p, ks, h)
    proj = 0.5 * (np.eye(4) - matrix_sign(h))
    right, left = _biorthonormal_basis(proj[0], 2)
    m = right
    for j in range(1, ks.size):
        m = proj[j] @ m
    z = (-np.angle(np.linalg.det(left @ m))) % (2.0 * np.pi)
    if 2.0 * np.pi - z < 1e-6:
        z = 0.0
    return float(z)


def quantized_value(z: float, tol: float = QUANT_TOL) -> float | None:
    """0.0 or pi if ``z`` lies within ``tol`` of either (mod 2 pi), else None."""
    if min(z, 2.0 * np.pi - z) < tol:
        return 0.0
    if abs(z - np.pi) < tol:
        return np.pi
    return None


class DegeneracyPoints(NamedTuple):
    points: list
    real: bool


def degeneracy_points(p: ModelParams) -> DegeneracyPoints:
    """Zero-energy degeneracies (+-hx, 0) of the parameter-space Hamiltonian."""
    r = p.t1 ** 2 - p.gamma1 * p.gamma2
    if r < 0:
        return DegeneracyPoints(points=[], real=False)
    hx = (r / p.t2 ** 2) ** 0.25
    return DegeneracyPoints(points=[(hx, 0.0), (-hx, 0.0)], real=True)


def winding_number(p: ModelParams, tol: float = UNIT_CIRCLE_TOL) -> int | None:
    """Half the number of degeneracy points strictly inside the unit circle.

    Returns None when the degeneracies are not real points of the plane.
    """
    deg = degeneracy_points(p)
    if not deg.real:
        return None
    radii = [math.hypot(hx, hy) for hx, hy in deg.points]
    for r in radii:
        if abs(r - 1.0) < tol:
            raise CriticalPointError(f"degeneracy point at radius {r:.12g} lies on the unit circle")
    return sum(r < 1.0 for r in radii) // 2


def region_from_metrics(zak: float | None, metrics: GapMetrics, zero_tol: float = ZERO_TOL) -> Region:
    q = None if zak is None else quantized_value(zak)
    if q is None:
        return Region.BOUNDARY
    if q == 0.0:
        return Region.TRIVIAL
    if metrics.max_abs_re < zero_tol:
        return Region.ALL_IMAGINARY
    if metrics.gap_re < zero_tol:
        return Region.PARTIAL_RE_ZERO
    if metrics.gap_im < zero_tol:
        return Region.REAL_LINE_GAPPED
    return Region.COMPLEX


@dataclass(frozen=True)
class PhasePoint:
    """Classification of one parameter point.

    ``zak_source`` is "direct" when the Zak phase was computed at the point
    itself and "continued" when the real line gap is closed but the point gap
    at E = 0 is open; the value then comes from the point with the same
    gamma1*gamma2 and gamma1 = gamma2, reachable without closing the point
    gap.  ``note`` explains boundary labels.
    """

    params: ModelParams
    zak: float | None
    zak_source: str | None
    winding: int | None
    region: Region
    gap_re: float
    gap_im: float
    max_abs_re: float
    note: str = ""


def _continued_zak(p: ModelParams, n_k: int) -> float:
    g = math.sqrt(p.gamma1 * p.gamma2)
    return zak_phase(p.replace(gamma1=g, gamma2=g), n_k)


def classify_phase_point(p: ModelParams, n_k: int = DEFAULT_NK,
                         zak_n_k: int = DEFAULT_ZAK_NK) -> PhasePoint:
    metrics = spectral_metrics(p, n_k)
    notes = []
    zak = source = None
    try:
        zak = zak_phase(p, zak_n_k)
        source = "direct"
    except TransitionPointError as exc:
        if metrics.min_abs_e > ZERO_TOL:
            try:
                zak = _continued_zak(p, zak_n_k)
                source = "continued"
            except CriticalPointError as exc2:
                notes.append(f"zak: {exc2}")
        else:
            notes.append(f"zak: {exc}")
    except CriticalPointError as exc:
        notes.append(f"zak: {exc}")
    try:
        winding = winding_number(p)
    except CriticalPointError as exc:
        winding = None
        notes.append(f"winding: {exc}")
    region = region_from_metrics(zak, metrics)
    if region is Region.BOUNDARY and zak is not None:
        notes.append(f"zak {zak:.6g} not quantized")
    return PhasePoint(params=p, zak=zak, zak_source=source, winding=winding, region=region,
                      gap_re=metrics.gap_re, gap_im=metrics.gap_im,
                      max_abs_re=metrics.max_abs_re, note="; ".join(notes))


_AXIS_PAIRS = {("gamma1", "gamma2"), ("theta", "gamma1")}


@dataclass(frozen=True)
class AxisSpec:
    name: str
    start: float
    stop: float
    count: int

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, int(self.count))


@dataclass(frozen=True)
class PhaseDiagram:
    """Nodes indexed [i, j] with axis1 value i and axis2 value j."""

    axis1: AxisSpec
    axis2: AxisSpec
    base: ModelParams
    points: list

    @property
    def shape(self) -> tuple[int, int]:
        return (int(self.axis1.count), int(self.axis2.count))

    def _grid(self, f) -> np.ndarray:
        return np.array([f(pt) for pt in self.points], dtype=float).reshape(self.shape)

    @property
    def gap_re(self) -> np.ndarray:
        return self._grid(lambda pt: pt.gap_re)

    @property
    def gap_im(self) -> np.ndarray:
        return self._grid(lambda pt: pt.gap_im)

    @property
    def zak(self) -> np.ndarray:
        return self._grid(lambda pt: np.nan if pt.zak is None else pt.zak)

    @property
    def region_codes(self) -> np.ndarray:
        return self._grid(lambda pt: pt.region.code).astype(int)

    def rows(self):
        a1, a2 = self.axis1.values(), self.axis2.values()
        for idx, pt in enumerate(self.points):
            i, j = divmod(idx, self.shape[1])
            yield {
                "axis1": float(a1[i]),
                "axis2": float(a2[j]),
                "zak": pt.zak,
                "winding": pt.winding,
                "region": pt.region.value,
                "gap_re": pt.gap_re,
                "gap_im": pt.gap_im,
            }


def _classify_row(args):
    params_list, n_k, zak_n_k = args
    return [classify_phase_point(p, n_k, zak_n_k) for p in params_list]


def phase_diagram(base: ModelParams, axis1: AxisSpec, axis2: AxisSpec,
                  n_k: int = DEFAULT_NK, zak_n_k: int = DEFAULT_ZAK_NK,
                  workers: int | None = None) -> PhaseDiagram:
    """Classify every node of a 2D grid; rows are evaluated in parallel.

    The result does not depend on the number of workers.
    """
    if (axis1.name, axis2.name) not in _AXIS_PAIRS:
        raise ParameterError("axes", f"unsupported axes ({axis1.name}, {axis2.name}); "
                             "use (gamma1, gamma2) or (theta, gamma1)")
    for ax in (axis1, axis2):
        if int(ax.count) < 16:
            raise ParameterError(ax.name, f"grid count must be >= 16, got {ax.count}")
    rows = [[base.replace(**{axis1.name: float(a), axis2.name: float(b)}) for b in axis2.values()]
            for a in axis1.values()]
    results = ordered_map(_classify_row, [(row, n_k, zak_n_k) for row in rows], workers)
    points = [pt for row in results for pt in row]
    return PhaseDiagram(axis1=axis1, axis2=axis2, base=base, points=points)
