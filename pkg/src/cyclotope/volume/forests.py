"""Decorated forests: acyclic graphs on [n] with marked vertices.

A decorated forest has |marks| + |edges| = n - 1 and at most one mark per
component, so exactly one component (the free tree) is unmarked.  The
determinant |det(q_ij, r_k, e)| of its segment collection is n^|M| * N(F),
where N(F) is the size of the free tree.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .linalg import bareiss_det
from .zonotope import VolumeResult, q_vector, r_vector


def _components(n: int, edges: Iterable[tuple[int, int]]) -> list[frozenset[int]]:
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    seen: set[int] = set()
    out = []
    for v in range(1, n + 1):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        out.append(frozenset(comp))
    return out


@dataclass(frozen=True)
class DecoratedForest:
    n: int
    edges: tuple[tuple[int, int], ...]
    marked: tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_decorated_forest(self.n, self.edges, self.marked):
            raise ValueError(f"not a decorated forest: edges={self.edges} marks={self.marked}")

    @cached_property
    def components(self) -> list[frozenset[int]]:
        return _components(self.n, self.edges)

    @property
    def free_tree(self) -> frozenset[int]:
        marks = set(self.marked)
        return next(c for c in self.components if not c & marks)

    @property
    def free_size(self) -> int:
        """N(F)."""
        return len(self.free_tree)


def is_decorated_forest(n: int, edges: Sequence[tuple[int, int]], marks: Sequence[int]) -> bool:
    if len(edges) + len(marks) != n - 1 or len(set(marks)) != len(marks):
        return False
    comps = _components(n, edges)
    # acyclic iff #components = n - #edges
    if len(comps) != n - len(edges):
        return False
    ms = set(marks)
    return all(len(c & ms) <= 1 for c in comps)


def enumerate_forests(n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Acyclic edge sets on [n] in lexicographic edge-subset order (DFS with union-find)."""
    all_edges = list(itertools.combinations(range(1, n + 1), 2))

    def find(parent: list[int], x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(start: int, chosen: list[tuple[int, int]], parent: list[int]) -> Iterator[tuple[tuple[int, int], ...]]:
        yield tuple(chosen)
        for k in range(start, len(all_edges)):
            i, j = all_edges[k]
            ri, rj = find(parent, i), find(parent, j)
            if ri == rj:
                continue
            p2 = parent.copy()
            p2[ri] = rj
            chosen.append((i, j))
            yield from rec(k + 1, chosen, p2)
            chosen.pop()

    yield from rec(0, [], list(range(n + 1)))


def enumerate_decorated_forests(n: int) -> Iterator[DecoratedForest]:
    """Every decorated forest on [n] once: forests in edge-subset order, then free tree, then marks."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    for edges in enumerate_forests(n):
        comps = sorted(_components(n, edges), key=min)
        for free in range(len(comps)):
            rooted = [sorted(c) for k, c in enumerate(comps) if k != free]
            for roots in itertools.product(*rooted):
                yield DecoratedForest(n, edges, tuple(sorted(roots)))


def reduce_forest(f: DecoratedForest, rng: random.Random | None = None) -> DecoratedForest:
    """Marked vertices kill incident edges and mark the far ends, until nothing moves.

    With ``rng`` the (mark, edge) step is chosen at random; the result does not
    depend on the choice.
    """
    edges = set(f.edges)
    marked = set(f.marked)
    while True:
        moves = sorted((i, e) for e in edges for i in e if i in marked)
        if not moves:
            break
        i, e = rng.choice(moves) if rng is not None else moves[0]
        edges.discard(e)
        marked.add(e[0] if e[1] == i else e[1])
    return DecoratedForest(f.n, tuple(sorted(edges)), tuple(sorted(marked)))


def collection_matrix(n: int, edges: Sequence[tuple[int, int]], marks: Sequence[int]) -> list[list[int]]:
    cols = [q_vector(n, i, j) for i, j in edges] + [r_vector(n, k) for k in marks] + [(1,) * n]
    if len(cols) != n:
        raise ValueError(f"{len(cols)} columns for an {n}x{n} determinant")
    return [list(r) for r in zip(*cols)]


def collection_determinant(n: int, edges: Sequence[tuple[int, int]], marks: Sequence[int]) -> int:
    """|det(q_ij, r_k, e)| for any collection, decorated forest or not."""
    return abs(bareiss_det(collection_matrix(n, edges, marks)))


def forest_determinant(f: DecoratedForest) -> int:
    return collection_determinant(f.n, f.edges, f.marked)


def forest_determinant_closed_form(f: DecoratedForest) -> int:
    return f.n ** len(f.marked) * f.free_size


def cp_volume_forest_route(n: int) -> VolumeResult:
    """sum_F (-n)^|M(F)| N(F) over decorated forests: the coefficient of 1/sqrt(n)."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    total = 0
    terms = 0
    for f in enumerate_decorated_forests(n):
        total += (-n) ** len(f.marked) * f.free_size
        terms += 1
    return VolumeResult(n, "forest", total, terms)
