"""Cross-checks between the structured spectra and the dense oracle.

Everything checkable gets a check: multiset equality of the two spectrum
routes, the halving decomposition and its strict interlacing, closed-form
cluster multiplicities, and the extremal scan over the path split.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eigensolve import SolveConfig, jacobi_eigenvalues, tridiag_eigenvalues
from .graphs import BugSpec, assemble_dense_alpha, check_alpha
from .spectrum import Spectrum
from .structured import bug_spectrum, bug_tridiagonal, proof_decomposition, spectral_radius

DEFAULT_ALPHAS = (0.0, 0.25, 0.5, 0.75, 0.99)
HALVING_ALPHAS = (0.0, 0.3, 0.7)
CLUSTER_RADIUS = 1e-7


@dataclass(frozen=True)
class ComparisonReport:
    """Outcome of pairing a structured spectrum against dense eigenvalues."""

    matched: bool
    max_abs_deviation: float
    pairing: tuple[tuple[float, float], ...]
    multiplicity_diagnostics: str


@dataclass(frozen=True)
class ScanRow:
    i: int
    rho: float
    is_argmax: bool


def cluster_multiplicity(values, center: float, radius: float = CLUSTER_RADIUS) -> int:
    """How many of the given eigenvalues lie within radius of center."""
    arr = np.asarray(values, dtype=float)
    return int(np.count_nonzero(np.abs(arr - center) <= radius))


def compare_spectra(structured: Spectrum, dense, tol: float) -> ComparisonReport:
    """L-infinity comparison of two complete spectra of the same graph.

    The structured side is expanded by multiplicity and paired positionally
    with the sorted dense values -- the correct multiset metric, since both
    lists carry the full spectrum.
    """
    dense = np.sort(np.asarray(dense, dtype=float).reshape(-1))
    expanded = structured.expand()
    if expanded.size != dense.size:
        raise ValueError(
            f"cardinality mismatch: structured spectrum carries {expanded.size} "
            f"eigenvalues, dense carries {dense.size}"
        )
    deviation = float(np.max(np.abs(expanded - dense)))
    notes = []
    for e in structured.entries:
        if e.multiplicity > 1:
            found = cluster_multiplicity(dense, e.value)
            notes.append(
                f"{e.source} value {e.value:.12g} expects multiplicity "
                f"{e.multiplicity}, dense cluster holds {found}"
            )
    diagnostics = "; ".join(notes) if notes else "all structured entries simple"
    pairing = tuple(zip(expanded.tolist(), dense.tolist()))
    return ComparisonReport(deviation <= tol, deviation, pairing, diagnostics)


def check_interlacing(inner, outer, strict_margin: float = 1e-10) -> bool:
    """True iff the inner eigenvalues strictly interlace the outer ones,
    with room to spare: outer_k + margin < inner_k < outer_{k+1} - margin."""
    inner = np.sort(np.asarray(inner, dtype=float).reshape(-1))
    outer = np.sort(np.asarray(outer, dtype=float).reshape(-1))
    if outer.size != inner.size + 1:
        raise ValueError(
            f"outer spectrum must have exactly one more eigenvalue than inner "
            f"(got {outer.size} and {inner.size})"
        )
    below = np.all(outer[:-1] + strict_margin < inner)
    above = np.all(inner < outer[1:] - strict_margin)
    return bool(below and above)


def extremal_scan(n, d, alpha, config: SolveConfig | None = None) -> list[ScanRow]:
    """Spectral radius across every canonical split i = 1..d//2.

    Ties on rho go to the larger i, so the balanced bug wins when splits
    coincide (as they do when the middle clique collapses).
    """
    n, d = int(n), int(d)
    check_alpha(alpha)
    if d < 2:
        raise ValueError(f"diameter must be >= 2, got {d}")
    if n < d + 2:
        raise ValueError(f"scan needs n >= d+2 so the splits differ, got n={n}, d={d}")
    rhos = [
        spectral_radius(BugSpec.from_ndi(n, d, i), alpha, config)
        for i in range(1, d // 2 + 1)
    ]
    best = max(range(len(rhos)), key=lambda j: (rhos[j], j))
    return [ScanRow(j + 1, rho, j == best) for j, rho in enumerate(rhos)]


def enumerate_bugs(max_n: int):
    """Every canonical BugSpec with order up to max_n, smallest first."""
    for n in range(3, int(max_n) + 1):
        for d in range(2, n):
            for i in range(1, d // 2 + 1):
                yield BugSpec(n, d, i)


@dataclass(frozen=True)
class VerificationSummary:
    instances: int
    checks_run: int
    checks_passed: int
    worst_deviation: float
    failures: tuple[str, ...]

    @property
    def checks_failed(self) -> int:
        return self.checks_run - self.checks_passed

    @property
    def ok(self) -> bool:
        return self.checks_failed == 0


def run_verification(
    max_n: int = 12,
    alphas=DEFAULT_ALPHAS,
    tol: float = 1e-8,
    config: SolveConfig | None = None,
) -> VerificationSummary:
    """Run the oracle-equivalence grid plus the decomposition checks.

    Per (bug, alpha) pair on the main grid: structured-vs-Jacobi multiset
    equality, and the closed-form cluster count in the dense output against
    the count the structured spectrum itself predicts at the same radius
    (quotient eigenvalues may legitimately coincide with the closed-form
    value at special alphas, so the honest expectation comes from the full
    structured multiset, not from n-d-1 alone).

    Balanced bugs of even diameter >= 4 additionally get the halving checks
    -- spectrum union, strict interlacing, radius agreement -- on their own
    moderate alpha grid (HALVING_ALPHAS). The margin-strict interlacing
    test only makes sense there: as alpha approaches 1 the splitting
    between the symmetric and antisymmetric end-localized eigenpair decays
    exponentially in the path length, so the genuine gap drops below any
    fixed noise margin even though strict interlacing still holds exactly.
    """
    max_n = int(max_n)
    if max_n < 3:
        raise ValueError(f"max_n must be >= 3, got {max_n}")
    alphas = tuple(check_alpha(a) for a in alphas)
    if not alphas:
        raise ValueError("alpha grid must be non-empty")
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    instances = 0
    checks_run = 0
    checks_passed = 0
    worst = 0.0
    failures: list[str] = []

    def record(ok: bool, message: str):
        nonlocal checks_run, checks_passed
        checks_run += 1
        if ok:
            checks_passed += 1
        elif len(failures) < 50:
            failures.append(message)

    for b in enumerate_bugs(max_n):
        dense_matrix_builder = b.to_hjoin()
        for alpha in alphas:
            instances += 1
            structured = bug_spectrum(b, alpha, config)
            dense = jacobi_eigenvalues(assemble_dense_alpha(dense_matrix_builder, alpha), config)
            report = compare_spectra(structured, dense, tol)
            worst = max(worst, report.max_abs_deviation)
            record(
                report.matched,
                f"spectrum mismatch for n={b.n} d={b.d} i={b.i} alpha={alpha}: "
                f"deviation {report.max_abs_deviation:.3e}",
            )
            if b.clique_order >= 2:
                closed = (b.n - b.d + 2) * alpha - 1.0
                expected = cluster_multiplicity(structured.expand(), closed)
                found = cluster_multiplicity(dense, closed)
                record(
                    found == expected,
                    f"closed-form cluster for n={b.n} d={b.d} i={b.i} alpha={alpha}: "
                    f"expected {expected}, found {found}",
                )
        if b.d % 2 == 0 and b.d >= 4 and b.i == b.d // 2:
            for alpha in HALVING_ALPHAS:
                bordered, inner = proof_decomposition(b, alpha)
                outer_vals = tridiag_eigenvalues(bordered, config)
                inner_vals = tridiag_eigenvalues(inner, config)
                full_vals = tridiag_eigenvalues(bug_tridiagonal(b, alpha), config)
                union = np.sort(np.concatenate([outer_vals, inner_vals]))
                deviation = float(np.max(np.abs(union - full_vals)))
                worst = max(worst, deviation)
                record(
                    deviation <= tol,
                    f"halving union for n={b.n} d={b.d} alpha={alpha}: "
                    f"deviation {deviation:.3e}",
                )
                record(
                    check_interlacing(inner_vals, outer_vals),
                    f"interlacing failed for n={b.n} d={b.d} alpha={alpha}",
                )
                record(
                    abs(float(outer_vals[-1]) - float(full_vals[-1])) <= 1e-9,
                    f"halved radius for n={b.n} d={b.d} alpha={alpha} "
                    f"drifts from the full quotient radius",
                )
    return VerificationSummary(
        instances=instances,
        checks_run=checks_run,
        checks_passed=checks_passed,
        worst_deviation=worst,
        failures=tuple(failures),
    )
