"""Self-contained symmetric eigensolvers.

Three kernels, deliberately independent of any LAPACK-backed routine:

* Sturm-count bisection for symmetric tridiagonal matrices (the fast
  structured path),
* cyclic-by-rows Jacobi for dense symmetric matrices (the brute-force
  oracle everything else is checked against),
* power iteration for the dominant eigenpair of a nonnegative matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError


@dataclass(frozen=True, eq=False)
class SymTridiag:
    """A real symmetric tridiagonal matrix stored as its two defining arrays."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        diag = np.array(self.diag, dtype=float, copy=True).reshape(-1)
        offdiag = np.array(self.offdiag, dtype=float, copy=True).reshape(-1)
        if diag.size < 1:
            raise ValueError("tridiagonal matrix must have at least one row")
        if offdiag.size != diag.size - 1:
            raise ValueError(
                f"off-diagonal length {offdiag.size} does not fit diagonal length {diag.size}"
            )
        if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(offdiag))):
            raise ValueError("matrix entries must be finite")
        diag.setflags(write=False)
        offdiag.setflags(write=False)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", offdiag)

    @property
    def order(self) -> int:
        return self.diag.size

    def to_dense(self) -> np.ndarray:
        a = np.diag(self.diag)
        if self.offdiag.size:
            idx = np.arange(self.order - 1)
            a[idx, idx + 1] = self.offdiag
            a[idx + 1, idx] = self.offdiag
        return a


@dataclass(frozen=True)
class SolveConfig:
    """Stopping rules for the iterative kernels.

    bisection_tol is relative to the Gershgorin span, jacobi_off_tol to the
    Frobenius norm, power_tol to max(1, rho).
    """

    bisection_tol: float = 1e-13
    jacobi_off_tol: float = 1e-12
    max_jacobi_sweeps: int = 64
    power_tol: float = 1e-10
    max_power_iters: int = 100_000

    def __post_init__(self):
        for name in ("bisection_tol", "jacobi_off_tol", "power_tol"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        for name in ("max_jacobi_sweeps", "max_power_iters"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


DEFAULT_CONFIG = SolveConfig()


def gershgorin_interval(t: SymTridiag) -> tuple[float, float]:
    """A closed interval [lo, hi] containing every eigenvalue of t."""
    radius = np.zeros(t.order)
    mag = np.abs(t.offdiag)
    radius[:-1] += mag
    radius[1:] += mag
    return float(np.min(t.diag - radius)), float(np.max(t.diag + radius))


def _norm_scale(t: SymTridiag) -> float:
    hi = float(np.max(np.abs(t.diag)))
    if t.offdiag.size:
        hi += 2.0 * float(np.max(np.abs(t.offdiag)))
    return max(1.0, hi)


def _sturm_counts(diag: np.ndarray, off_sq: np.ndarray, shifts: np.ndarray, scale: float) -> np.ndarray:
    """Eigenvalues strictly below each shift, one count per shift.

    Runs the shifted LDL^T pivot recurrence for all shifts at once and
    counts negative pivots. Zero pivots are replaced by a tiny negative
    value proportional to the matrix norm, which keeps the division safe
    without disturbing counts away from exact eigenvalue hits.
    """
    tiny = np.finfo(float).eps * scale * (1.0 + np.abs(shifts))
    pivot = diag[0] - shifts
    pivot = np.where(pivot == 0.0, -tiny, pivot)
    counts = (pivot < 0.0).astype(np.int64)
    for j in range(1, diag.size):
        pivot = (diag[j] - shifts) - off_sq[j - 1] / pivot
        pivot = np.where(pivot == 0.0, -tiny, pivot)
        counts += pivot < 0.0
    return counts


def sturm_count(t: SymTridiag, x: float) -> int:
    """Number of eigenvalues of t strictly less than x."""
    shifts = np.asarray([float(x)])
    return int(_sturm_counts(t.diag, np.square(t.offdiag), shifts, _norm_scale(t))[0])


def tridiag_eigenvalues(t: SymTridiag, config: SolveConfig | None = None) -> np.ndarray:
    """All eigenvalues of t in ascending order, via Sturm-count bisection.

    Every eigenvalue keeps its own bracket; the brackets are bisected in
    lockstep so each round costs one vectorized pivot recurrence. The
    result is deterministic: no seeds, no rotation order, just interval
    halving down to bisection_tol relative to the Gershgorin span.
    """
    cfg = config or DEFAULT_CONFIG
    m = t.order
    if m == 1:
        return t.diag.copy()
    lo, hi = gershgorin_interval(t)
    tol = cfg.bisection_tol * max(1.0, hi - lo)
    # widen so counts at the ends are unambiguous even when an eigenvalue
    # sits exactly on a Gershgorin endpoint
    pad = tol + 16.0 * np.finfo(float).eps * max(1.0, abs(lo), abs(hi))
    off_sq = np.square(t.offdiag)
    scale = _norm_scale(t)
    lower = np.full(m, lo - pad)
    upper = np.full(m, hi + pad)
    need = np.arange(1, m + 1)
    while float(np.max(upper - lower)) > tol:
        mid = 0.5 * (lower + upper)
        counts = _sturm_counts(t.diag, off_sq, mid, scale)
        descend = counts >= need
        upper = np.where(descend, mid, upper)
        lower = np.where(descend, lower, mid)
    return np.sort(0.5 * (lower + upper))


def _offdiag_norm(w: np.ndarray) -> float:
    # Summed directly over off-diagonal entries: the tempting shortcut
    # ||A||_F^2 - ||diag||^2 cancels catastrophically near convergence and
    # would stall the sweep loop around sqrt(eps) * ||A||.
    stripped = w.copy()
    np.fill_diagonal(stripped, 0.0)
    return float(np.sqrt(np.sum(stripped * stripped)))


def jacobi_eigenvalues(a, config: SolveConfig | None = None) -> np.ndarray:
    """All eigenvalues of a dense symmetric matrix by cyclic-by-rows Jacobi."""
    cfg = config or DEFAULT_CONFIG
    w = np.array(a, dtype=float)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {w.shape}")
    if not np.array_equal(w, w.T):
        raise ValueError("matrix must be symmetric")
    m = w.shape[0]
    if m == 1:
        return w.diagonal().copy()
    frobenius = float(np.sqrt(np.sum(w * w)))
    if frobenius == 0.0:
        return np.zeros(m)
    stop = cfg.jacobi_off_tol * frobenius
    # Entries below this cannot by themselves keep the off-norm above stop,
    # so skipping them is safe and saves the tail sweeps.
    skip = stop / (2.0 * m)
    for _ in range(cfg.max_jacobi_sweeps):
        if _offdiag_norm(w) <= stop:
            return np.sort(w.diagonal().copy())
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = w[p, q]
                if abs(apq) <= skip:
                    continue
                # symmetric Schur 2x2: smaller-angle root for stability
                tau = (w[q, q] - w[p, p]) / (2.0 * apq)
                sign = 1.0 if tau >= 0.0 else -1.0
                tval = sign / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + tval * tval)
                s = tval * c
                row_p = w[p, :].copy()
                row_q = w[q, :].copy()
                w[p, :] = c * row_p - s * row_q
                w[q, :] = s * row_p + c * row_q
                col_p = w[:, p].copy()
                col_q = w[:, q].copy()
                w[:, p] = c * col_p - s * col_q
                w[:, q] = s * col_p + c * col_q
                w[p, q] = 0.0
                w[q, p] = 0.0
    remaining = _offdiag_norm(w)
    if remaining <= stop:
        return np.sort(w.diagonal().copy())
    raise ConvergenceError(
        f"Jacobi did not converge in {cfg.max_jacobi_sweeps} sweeps; "
        f"off-diagonal norm {remaining:.3e} above target {stop:.3e}"
    )


def perron_pair(a, config: SolveConfig | None = None) -> tuple[float, np.ndarray]:
    """Dominant eigenvalue and positive unit eigenvector of a nonnegative
    symmetric matrix (the A_alpha matrix of a connected graph).

    The iteration multiplies by a + I rather than a: an adjacency matrix of
    a connected bipartite graph has -rho on the spectral circle too, where
    the unshifted iteration never settles. The shift restores a gap while
    leaving eigenvectors, Rayleigh quotients and residuals untouched.
    """
    cfg = config or DEFAULT_CONFIG
    w = np.array(a, dtype=float)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {w.shape}")
    if not np.array_equal(w, w.T):
        raise ValueError("matrix must be symmetric")
    if np.any(w < 0.0):
        raise ValueError("matrix must be entrywise nonnegative")
    m = w.shape[0]
    v = np.full(m, 1.0 / math.sqrt(m))
    for _ in range(cfg.max_power_iters):
        image = w @ v
        rho = float(v @ image)
        residual = float(np.linalg.norm(image - rho * v))
        if residual < cfg.power_tol * max(1.0, rho):
            if not np.all(v > 0.0):
                raise ConvergenceError("power iteration lost strict positivity")
            return rho, v
        shifted = image + v
        v = shifted / float(np.linalg.norm(shifted))
    raise ConvergenceError(
        f"power iteration did not reach residual {cfg.power_tol:.1e} "
        f"within {cfg.max_power_iters} steps"
    )
