"""Structured spectral reductions for bugs and H-joins of complete graphs.

The full A_alpha spectrum of an H-join of complete graphs splits into
closed-form component eigenvalues plus the spectrum of a small quotient
matrix (one row per host vertex). For a bug that quotient is tridiagonal
of order d+1, and for the balanced bug (i = d/2) reflection symmetry
halves it once more.
"""

from __future__ import annotations

import math

import numpy as np

from .eigensolve import SolveConfig, SymTridiag, jacobi_eigenvalues, tridiag_eigenvalues
from .errors import UnsupportedComponentError
from .graphs import BugSpec, HJoinSpec, check_alpha, complete_graph_alpha_spectrum
from .spectrum import CLOSED_FORM, QUOTIENT, Spectrum, SpectrumEntry


def quotient_matrix(h: HJoinSpec, alpha) -> np.ndarray:
    """The k x k quotient of an H-join of regular components.

    Diagonal entry j is alpha*s_j + r_j; host edge (a, b) contributes
    (1-alpha)*sqrt(n_a*n_b) symmetrically. Its eigenvalues are exactly the
    join's eigenvalues that do not come from individual components.
    """
    alpha = check_alpha(alpha)
    beta = 1.0 - alpha
    k = len(h.components)
    s = h.neighbor_totals()
    m = np.zeros((k, k))
    for j, c in enumerate(h.components):
        m[j, j] = alpha * s[j] + c.degree
    for a, b in h.host_edges:
        weight = beta * math.sqrt(h.components[a].order * h.components[b].order)
        m[a, b] = weight
        m[b, a] = weight
    return m


def bug_tridiagonal(b: BugSpec, alpha) -> SymTridiag:
    """Order d+1 tridiagonal carrying the simple part of the bug spectrum.

    Assembled directly from (n, d, i); agrees entrywise with
    quotient_matrix(b.to_hjoin(), alpha), which the tests enforce. Cells
    i-1, i, i+1 (0-based) are the deleted-edge endpoints around the middle
    clique; endpoints that coincide with a path end lose one neighbor cell,
    hence the alpha*w corrections below.
    """
    alpha = check_alpha(alpha)
    beta = 1.0 - alpha
    d, i = b.d, b.i
    w = b.clique_order
    diag = np.full(d + 1, 2.0 * alpha)
    diag[0] = alpha
    diag[d] = alpha
    diag[i - 1] = alpha * (w + 1) if i - 1 > 0 else alpha * w
    diag[i + 1] = alpha * (w + 1) if i + 1 < d else alpha * w
    diag[i] = 2.0 * alpha + (w - 1)
    offdiag = np.full(d, beta)
    offdiag[i - 1] = beta * math.sqrt(w)
    offdiag[i] = beta * math.sqrt(w)
    return SymTridiag(diag, offdiag)


def bug_spectrum(b: BugSpec, alpha, config: SolveConfig | None = None) -> Spectrum:
    """Complete A_alpha spectrum of a bug.

    The closed-form eigenvalue (n-d+2)*alpha - 1 enters with multiplicity
    n-d-1 (absent when the middle clique is a single vertex); the remaining
    d+1 eigenvalues are the simple spectrum of the tridiagonal quotient.
    """
    alpha = check_alpha(alpha)
    values = tridiag_eigenvalues(bug_tridiagonal(b, alpha), config)
    entries = [SpectrumEntry(float(v), 1, QUOTIENT) for v in values]
    multiplicity = b.n - b.d - 1
    if multiplicity >= 1:
        entries.append(
            SpectrumEntry((b.n - b.d + 2) * alpha - 1.0, multiplicity, CLOSED_FORM)
        )
    spectrum = Spectrum.from_entries(entries)
    assert spectrum.order == b.n
    return spectrum


def hjoin_spectrum(h: HJoinSpec, alpha, config: SolveConfig | None = None) -> Spectrum:
    """Complete A_alpha spectrum of an H-join of complete components.

    Each component K_m with m > 1 contributes alpha*s_j + (alpha*m - 1)
    with multiplicity m-1 (its spectrum with the regularity eigenvalue
    m-1 removed, shifted); the quotient matrix supplies the rest.
    """
    alpha = check_alpha(alpha)
    for c in h.components:
        if not c.is_complete:
            raise UnsupportedComponentError(
                f"structured spectrum needs complete components, got {c!r}"
            )
    s = h.neighbor_totals()
    entries = []
    for j, c in enumerate(h.components):
        if c.order == 1:
            continue
        removed = False
        for e in complete_graph_alpha_spectrum(c.order, alpha).entries:
            multiplicity = e.multiplicity
            if not removed and e.value == float(c.degree):
                multiplicity -= 1
                removed = True
            if multiplicity > 0:
                entries.append(
                    SpectrumEntry(alpha * s[j] + e.value, multiplicity, CLOSED_FORM)
                )
    quotient = quotient_matrix(h, alpha)
    if h.is_path_host:
        tri = SymTridiag(quotient.diagonal().copy(), np.diagonal(quotient, 1).copy())
        quotient_values = tridiag_eigenvalues(tri, config)
    else:
        quotient_values = jacobi_eigenvalues(quotient, config)
    entries.extend(SpectrumEntry(float(v), 1, QUOTIENT) for v in quotient_values)
    spectrum = Spectrum.from_entries(entries)
    assert spectrum.order == h.order
    return spectrum


def halved_tridiagonal(n, d, alpha) -> SymTridiag:
    """Order d/2+1 matrix whose largest eigenvalue is rho_alpha of the
    balanced bug (i = d/2, d even).

    Only the top of its spectrum is meaningful; the lower eigenvalues
    belong to the folded matrix, not to the bug.
    """
    n, d = int(n), int(d)
    alpha = check_alpha(alpha)
    if d < 4 or d % 2 != 0:
        raise ValueError(f"halving requires an even diameter >= 4, got d={d}")
    if n < d + 1:
        raise ValueError(f"order n={n} too small for diameter d={d} (need n >= d+1)")
    beta = 1.0 - alpha
    w = n - d
    half = d // 2 + 1
    diag = np.full(half, 2.0 * alpha)
    diag[0] = alpha
    diag[half - 2] = alpha * (w + 1)
    diag[half - 1] = 2.0 * alpha + (w - 1)
    offdiag = np.full(half - 1, beta)
    offdiag[half - 2] = beta * math.sqrt(2.0 * w)
    return SymTridiag(diag, offdiag)


def proof_decomposition(b: BugSpec, alpha) -> tuple[SymTridiag, SymTridiag]:
    """Split the balanced bug's quotient into the halved (bordered) matrix
    and its inner block S.

    The order-(d+1) quotient is orthogonally similar to the direct sum of
    the bordered matrix (= halved_tridiagonal) and S, so their spectra
    union to the quotient's, and the eigenvalues of S strictly interlace
    the bordered ones.
    """
    alpha = check_alpha(alpha)
    if b.d % 2 != 0 or b.d < 4:
        raise ValueError(f"decomposition requires an even diameter >= 4, got d={b.d}")
    if b.i != b.d // 2:
        raise ValueError(f"decomposition applies to balanced bugs (i = d/2), got i={b.i}")
    w = b.clique_order
    half = b.d // 2
    diag = np.full(half, 2.0 * alpha)
    diag[0] = alpha
    diag[half - 1] = alpha * (w + 1)
    inner = SymTridiag(diag, np.full(half - 1, 1.0 - alpha))
    return halved_tridiagonal(b.n, b.d, alpha), inner


def spectral_radius(b: BugSpec, alpha, config: SolveConfig | None = None) -> float:
    """Largest A_alpha eigenvalue of the bug.

    Always attained in the quotient part: the diagonal entry for the
    clique cell already exceeds the closed-form eigenvalue by
    (n-d)(1-alpha) > 0.
    """
    values = tridiag_eigenvalues(bug_tridiagonal(b, check_alpha(alpha)), config)
    return float(values[-1])
