"""Bug graphs, H-joins of regular components, and dense A_alpha assembly.

A bug is a complete graph with one edge uv removed and a path glued onto
each of u and v. Every bug of order n and diameter d decomposes as a
path-join: d cells holding single vertices around one cell holding the
middle clique K_{n-d}. That decomposition is what the structured spectrum
code consumes; the dense assembly here is the brute-force counterpart used
to verify it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import UnsupportedComponentError
from .spectrum import CLOSED_FORM, Spectrum, SpectrumEntry


def check_alpha(alpha) -> float:
    """Validate the A_alpha weight: a finite real in [0, 1)."""
    alpha = float(alpha)
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    return alpha


def _check_int(name, value) -> int:
    if isinstance(value, bool) or int(value) != value:
        raise ValueError(f"{name} must be an integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class BugSpec:
    """Bug graph parameters in canonical (n, d, i) form.

    Attributes
    ----------
    n : int
        Number of vertices, n >= d + 1.
    d : int
        Diameter, d >= 2.
    i : int
        Length of the left path, canonicalized to 1 <= i <= d // 2
        (the splits i and d - i give isomorphic graphs).
    mirrored : bool
        True when the caller's (q, r) had q > r, so front ends can echo
        the original orientation. Ignored by equality.
    """

    n: int
    d: int
    i: int
    mirrored: bool = field(default=False, compare=False)

    def __post_init__(self):
        for name in ("n", "d", "i"):
            _check_int(name, getattr(self, name))
        if self.d < 2:
            raise ValueError(f"diameter must be >= 2, got {self.d}")
        if self.n < self.d + 1:
            raise ValueError(
                f"order n={self.n} too small for diameter d={self.d} (need n >= d+1)"
            )
        if not 1 <= self.i <= self.d - 1:
            raise ValueError(f"path split i={self.i} outside 1..d-1 for d={self.d}")
        if self.i > self.d // 2:
            raise ValueError(
                f"canonical form stores i <= d//2 (got i={self.i}, d={self.d}); "
                "use BugSpec.from_ndi to mirror automatically"
            )

    @classmethod
    def from_ndi(cls, n, d, i) -> "BugSpec":
        """Build from (order, diameter, split), mirroring i > d//2 to d - i."""
        n, d, i = _check_int("n", n), _check_int("d", d), _check_int("i", i)
        if d >= 2 and not 1 <= i <= d - 1:
            raise ValueError(f"path split i={i} outside 1..d-1 for d={d}")
        if i > d // 2:
            return cls(n, d, d - i, mirrored=True)
        return cls(n, d, i)

    @classmethod
    def from_pqr(cls, p, q, r) -> "BugSpec":
        """Build from (clique order p, left path length q, right path length r)."""
        p, q, r = _check_int("p", p), _check_int("q", q), _check_int("r", r)
        if p < 3:
            raise ValueError(f"clique order p must be >= 3, got {p}")
        if q < 1 or r < 1:
            raise ValueError(f"path lengths q, r must be >= 1, got q={q}, r={r}")
        return cls.from_ndi(p + q + r - 2, q + r, q)

    @property
    def p(self) -> int:
        return self.n - self.d + 2

    @property
    def q(self) -> int:
        return self.d - self.i if self.mirrored else self.i

    @property
    def r(self) -> int:
        return self.i if self.mirrored else self.d - self.i

    @property
    def clique_order(self) -> int:
        """Order of the middle clique K_{n-d} (1 collapses the bug to a path)."""
        return self.n - self.d

    def to_hjoin(self) -> "HJoinSpec":
        """The path-join form: i single-vertex cells, K_{n-d}, d-i more cells."""
        one = RegularComponent.complete(1)
        components = (
            [one] * self.i
            + [RegularComponent.complete(self.clique_order)]
            + [one] * (self.d - self.i)
        )
        return HJoinSpec.path(components)


@dataclass(frozen=True)
class RegularComponent:
    """A regular graph sitting on one host vertex of an H-join."""

    order: int
    degree: int

    def __post_init__(self):
        _check_int("order", self.order)
        _check_int("degree", self.degree)
        if self.order < 1:
            raise ValueError(f"component order must be >= 1, got {self.order}")
        if not 0 <= self.degree <= self.order - 1:
            raise ValueError(
                f"degree {self.degree} impossible for a simple graph of order {self.order}"
            )
        if (self.order * self.degree) % 2 != 0:
            raise ValueError(
                f"no graph has an odd degree sum (order {self.order}, degree {self.degree})"
            )

    @classmethod
    def complete(cls, m) -> "RegularComponent":
        return cls(int(m), int(m) - 1)

    @property
    def is_complete(self) -> bool:
        # an (m-1)-regular graph on m vertices can only be K_m
        return self.degree == self.order - 1


@dataclass(frozen=True)
class HJoinSpec:
    """A host graph H (0-based vertices) with one component per host vertex.

    The join graph keeps every component's internal edges and adds all
    edges between two components whenever their host vertices are adjacent.
    """

    components: tuple[RegularComponent, ...]
    host_edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        components = tuple(self.components)
        k = len(components)
        if k == 0:
            raise ValueError("an H-join needs at least one component")
        seen = set()
        normalized = []
        for edge in self.host_edges:
            a, b = int(edge[0]), int(edge[1])
            if a == b:
                raise ValueError(f"host graph must be simple: loop at vertex {a}")
            if not (0 <= a < k and 0 <= b < k):
                raise ValueError(f"host edge {edge!r} outside vertex range 0..{k - 1}")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise ValueError(f"duplicate host edge {key!r}")
            seen.add(key)
            normalized.append(key)
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "host_edges", tuple(sorted(normalized)))

    @classmethod
    def path(cls, components) -> "HJoinSpec":
        """H-join whose host is the path 0-1-...-(k-1)."""
        components = tuple(components)
        return cls(components, tuple((j, j + 1) for j in range(len(components) - 1)))

    @property
    def order(self) -> int:
        return sum(c.order for c in self.components)

    @property
    def is_path_host(self) -> bool:
        k = len(self.components)
        return self.host_edges == tuple((j, j + 1) for j in range(k - 1))

    def neighbor_totals(self) -> np.ndarray:
        """s_j = number of vertices across components host-adjacent to cell j."""
        s = np.zeros(len(self.components))
        for a, b in self.host_edges:
            s[a] += self.components[b].order
            s[b] += self.components[a].order
        return s


def assemble_dense_alpha(h: HJoinSpec, alpha) -> np.ndarray:
    """Dense A_alpha = alpha*D + (1-alpha)*A of the H-join graph.

    Vertices are blocked by component in host order; inside the K_m blocks
    every off-diagonal entry is 1-alpha, host edges contribute all-ones
    cross blocks scaled by 1-alpha, and the diagonal carries
    alpha * (component degree + s_j).
    """
    alpha = check_alpha(alpha)
    for c in h.components:
        if not c.is_complete:
            raise UnsupportedComponentError(
                f"dense assembly only supports complete components, got {c!r}"
            )
    beta = 1.0 - alpha
    sizes = [c.order for c in h.components]
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    total = int(offsets[-1])
    a = np.zeros((total, total))
    for j, c in enumerate(h.components):
        if c.order > 1:
            block = slice(offsets[j], offsets[j + 1])
            a[block, block] = beta
    for x, y in h.host_edges:
        a[offsets[x]:offsets[x + 1], offsets[y]:offsets[y + 1]] = beta
        a[offsets[y]:offsets[y + 1], offsets[x]:offsets[x + 1]] = beta
    s = h.neighbor_totals()
    diagonal = np.concatenate(
        [np.full(c.order, alpha * (c.degree + s[j])) for j, c in enumerate(h.components)]
    )
    np.fill_diagonal(a, diagonal)
    return a


def complete_graph_alpha_spectrum(m, alpha) -> Spectrum:
    """A_alpha spectrum of K_m: {m-1 simple, alpha*m-1 with multiplicity m-1}."""
    m = _check_int("m", m)
    alpha = check_alpha(alpha)
    if m < 1:
        raise ValueError(f"complete graph order must be >= 1, got {m}")
    if m == 1:
        return Spectrum((SpectrumEntry(0.0, 1, CLOSED_FORM),))
    return Spectrum.from_entries(
        [
            SpectrumEntry(alpha * m - 1.0, m - 1, CLOSED_FORM),
            SpectrumEntry(float(m - 1), 1, CLOSED_FORM),
        ]
    )
