"""Spectra of A_alpha matrices of bug graphs.

A bug is a complete graph with one edge removed and a path attached at
each end of the missing edge.  Its A_alpha spectrum splits into a
closed-form eigenvalue of known multiplicity plus the eigenvalues of a
small tridiagonal quotient matrix, which makes million-vertex instances
tractable.  The package ships the structured route, a dense brute-force
oracle, self-contained eigensolvers, and a verification harness tying
them together.
"""

from .eigensolve import (
    DEFAULT_CONFIG,
    SolveConfig,
    SymTridiag,
    gershgorin_interval,
    jacobi_eigenvalues,
    perron_pair,
    sturm_count,
    tridiag_eigenvalues,
)
from .errors import ConvergenceError, UnsupportedComponentError
from .graphs import (
    BugSpec,
    HJoinSpec,
    RegularComponent,
    assemble_dense_alpha,
    complete_graph_alpha_spectrum,
)
from .spectrum import Spectrum, SpectrumEntry
from .structured import (
    bug_spectrum,
    bug_tridiagonal,
    halved_tridiagonal,
    hjoin_spectrum,
    proof_decomposition,
    quotient_matrix,
    spectral_radius,
)
from .verify import (
    ComparisonReport,
    ScanRow,
    VerificationSummary,
    check_interlacing,
    cluster_multiplicity,
    compare_spectra,
    enumerate_bugs,
    extremal_scan,
    run_verification,
)

__version__ = "0.1.0"

__all__ = [
    "BugSpec",
    "ComparisonReport",
    "ConvergenceError",
    "DEFAULT_CONFIG",
    "HJoinSpec",
    "RegularComponent",
    "ScanRow",
    "SolveConfig",
    "Spectrum",
    "SpectrumEntry",
    "SymTridiag",
    "UnsupportedComponentError",
    "VerificationSummary",
    "assemble_dense_alpha",
    "bug_spectrum",
    "bug_tridiagonal",
    "check_interlacing",
    "cluster_multiplicity",
    "compare_spectra",
    "complete_graph_alpha_spectrum",
    "enumerate_bugs",
    "extremal_scan",
    "gershgorin_interval",
    "halved_tridiagonal",
    "hjoin_spectrum",
    "jacobi_eigenvalues",
    "perron_pair",
    "proof_decomposition",
    "quotient_matrix",
    "run_verification",
    "spectral_radius",
    "sturm_count",
    "tridiag_eigenvalues",
]
