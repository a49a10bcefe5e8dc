"""Volumes of (virtual) zonotopes.

For segments s_i with defining vectors v_i and real dilations l_i in R^d,

    Vol(sum l_i s_i) = sum_{|I| = d} prod_{i in I} l_i * |det(v_I)|,

a polynomial in the dilations.  Negative dilations give the volume of a
virtual zonotope.  When every v_i lies in the hyperplane sum(x) = 0 the
(d-1)-volume is obtained by adjoining e = (1, ..., 1) and dividing by
|e| = sqrt(d); we report the integer coefficient in front of 1/sqrt(d).
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import bareiss_det

# sum over C(C(n,2)+n, n-1) subsets: n = 7 is ~3.8e5 determinants
MAX_VOLUME_N = 9


@dataclass(frozen=True)
class Segment:
    vector: tuple[int, ...]
    dilation: int | Fraction = 1
    tag: str = ""


@dataclass
class SegmentFamily:
    dim: int
    segments: list[Segment] = field(default_factory=list)

    def __post_init__(self) -> None:
        for s in self.segments:
            if len(s.vector) != self.dim:
                raise ValueError(f"segment {s.tag or s.vector} has length {len(s.vector)}, expected {self.dim}")

    @property
    def in_hyperplane(self) -> bool:
        return all(sum(s.vector) == 0 for s in self.segments)


@dataclass(frozen=True)
class VolumeCoefficient:
    """Vol = coefficient / sqrt(n); the square root is never evaluated."""

    n: int
    coefficient: int | Fraction

    def __str__(self) -> str:
        return f"{self.coefficient}/sqrt({self.n})"


@dataclass(frozen=True)
class VolumeResult:
    n: int
    route: str
    coefficient: int
    terms_evaluated: int


def q_vector(n: int, i: int, j: int) -> tuple[int, ...]:
    """Defining vector of q_ij = [e_i, e_j], i < j, fixed as e_j - e_i."""
    v = [0] * n
    v[j - 1] += 1
    v[i - 1] -= 1
    return tuple(v)


def r_vector(n: int, i: int) -> tuple[int, ...]:
    """R_i: -1 everywhere except n - 1 in slot i."""
    v = [-1] * n
    v[i - 1] = n - 1
    return tuple(v)


def permutohedron_family(n: int) -> SegmentFamily:
    return SegmentFamily(
        n, [Segment(q_vector(n, i, j), 1, f"q{i}{j}") for i, j in itertools.combinations(range(1, n + 1), 2)]
    )


def cyclopermutohedron_family(n: int) -> SegmentFamily:
    """All q_ij with dilation +1 and all r_i with dilation -1."""
    fam = permutohedron_family(n)
    fam.segments.extend(Segment(r_vector(n, i), -1, f"r{i}") for i in range(1, n + 1))
    return fam


def zonotope_volume_polynomial(
    family: SegmentFamily, hyperplane: bool | None = None
) -> dict[tuple[int, ...], int]:
    """Multilinear volume polynomial: subset of segment indices -> |det|, non-zero terms only."""
    if hyperplane is None:
        hyperplane = family.in_hyperplane
    d = family.dim
    e = (1,) * d
    k = d - 1 if hyperplane else d
    vecs = [s.vector for s in family.segments]
    out = {}
    for idx in itertools.combinations(range(len(vecs)), k):
        cols = [vecs[i] for i in idx] + ([e] if hyperplane else [])
        det = abs(bareiss_det([list(r) for r in zip(*cols)]))
        if det:
            out[idx] = det
    return out


def zonotope_volume(family: SegmentFamily, hyperplane: bool | None = None) -> Fraction | VolumeCoefficient:
    """Exact volume, or a :class:`VolumeCoefficient` for hyperplane-confined families."""
    if hyperplane is None:
        hyperplane = family.in_hyperplane
    total = Fraction(0)
    for idx, det in zonotope_volume_polynomial(family, hyperplane).items():
        w = Fraction(1)
        for i in idx:
            w *= family.segments[i].dilation
        total += w * det
    if hyperplane:
        c = total.numerator if total.denominator == 1 else total
        return VolumeCoefficient(family.dim, c)
    return total


# ------------------------------------------------------ cyclopermutohedron

def _edge_set_has_cycle(edges: Iterable[tuple[int, int]], n: int) -> bool:
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri == rj:
            return True
        parent[ri] = rj
    return False


def _cp_segments(n: int) -> list[tuple[str, tuple[int, ...], tuple[int, int] | None]]:
    segs = [("q", q_vector(n, i, j), (i, j)) for i, j in itertools.combinations(range(1, n + 1), 2)]
    segs += [("r", r_vector(n, i), None) for i in range(1, n + 1)]
    return segs


def _det_route_chunk(args: tuple[int, int, bool]) -> tuple[int, int]:
    """Summands whose smallest segment index is ``first``."""
    n, first, prune = args
    segs = _cp_segments(n)
    e = (1,) * n
    total = 0
    terms = 0
    for tail in itertools.combinations(range(first + 1, len(segs)), n - 2):
        idx = (first,) + tail
        edges = [segs[i][2] for i in idx if segs[i][0] == "q"]
        # dependent q-columns force a zero determinant
        if prune and _edge_set_has_cycle(edges, n):
            continue
        marks = len(idx) - len(edges)
        cols = [segs[i][1] for i in idx] + [e]
        det = abs(bareiss_det([list(r) for r in zip(*cols)]))
        terms += 1
        total += -det if marks % 2 else det
    return total, terms


def default_workers() -> int:
    env = os.environ.get("CYCLOTOPE_THREADS")
    return max(1, int(env)) if env else 1


def cp_volume_determinant_route(n: int, workers: int | None = None, prune: bool = True) -> VolumeResult:
    """sum_{|I|+|M| = n-1} (-1)^|M| |det(q_I, r_M, e)|: the coefficient of 1/sqrt(n)."""
    if not isinstance(n, int) or n < 3:
        raise ValueError(f"need n >= 3, got {n!r}")
    if n > MAX_VOLUME_N:
        raise ValueError(f"n={n} exceeds the volume cap {MAX_VOLUME_N}")
    workers = default_workers() if workers is None else workers
    nseg = n * (n - 1) // 2 + n
    jobs = [(n, first, prune) for first in range(nseg - (n - 2))]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_det_route_chunk, jobs))
    else:
        parts = [_det_route_chunk(j) for j in jobs]
    return VolumeResult(n, "det", sum(p[0] for p in parts), sum(p[1] for p in parts))


def convex_hull_volume(family: SegmentFamily) -> float:
    """Floating-point volume of a convex zonotope (positive dilations) via its vertex hull."""
    from scipy.spatial import ConvexHull

    gens = [[float(s.dilation) * x for x in s.vector] for s in family.segments]
    pts = set()
    for choice in itertools.product((0, 1), repeat=len(gens)):
        pts.add(tuple(sum(c * g[k] for c, g in zip(choice, gens)) for k in range(family.dim)))
    return float(ConvexHull(sorted(pts)).volume)


def matrix_of(columns: Sequence[Sequence[int]]) -> list[list[int]]:
    return [list(r) for r in zip(*columns)]
