"""Non-Hermitian tetramerized SSH chain with onsite gain and loss.

Bloch and real-space Hamiltonians, analytic and numerical bands, symmetry
checks, biorthogonal Zak phase, winding number, phase diagrams and
open-chain edge states.
"""

from .bands import (BandStructure, analytic_bands, analytic_eigvecs, analytic_hermitian_bands,
                    band_sweep)
from .eigen import EigenSystem, biorthogonalize, eig_dense, track_bands
from .errors import (CriticalPointError, EigenConvergenceError, ExceptionalPointError,
                     NHSSHError, NoGapError, ParameterError, TransitionPointError)
from .model import (BoundaryCondition, ModelParams, bloch_hamiltonian, make_params,
                    parameter_space_hamiltonian, realspace_hamiltonian)
from .realspace import (ChainSpectrum, LDOSProfile, detect_edge_states, ipr, ldos, obc_spectrum,
                        spectrum_sweep)
from .symmetry import SymmetryReport, antiPT_residual, classify, symmetry_residual
from .topology import (CriticalLines, PhasePoint, Region, classify_phase_point, critical_lines,
                       degeneracy_points, phase_diagram, winding_number, zak_phase)

__version__ = "0.1.0"

__all__ = [
    "BandStructure", "BoundaryCondition", "ChainSpectrum", "CriticalLines", "CriticalPointError",
    "EigenConvergenceError", "EigenSystem", "ExceptionalPointError", "LDOSProfile", "ModelParams",
    "NHSSHError", "NoGapError", "ParameterError", "PhasePoint", "Region", "SymmetryReport",
    "TransitionPointError", "analytic_bands", "analytic_eigvecs", "analytic_hermitian_bands",
    "antiPT_residual", "band_sweep", "biorthogonalize", "bloch_hamiltonian", "classify",
    "classify_phase_point", "critical_lines", "degeneracy_points", "detect_edge_states",
    "eig_dense", "ipr", "ldos", "make_params", "obc_spectrum", "parameter_space_hamiltonian",
    "phase_diagram", "realspace_hamiltonian", "spectrum_sweep", "symmetry_residual",
    "track_bands", "winding_number", "zak_phase",
]
