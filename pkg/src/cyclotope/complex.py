"""Face complexes of the cyclopermutohedron and the permutohedron.

Only codimension-1 incidence is stored.  Cell ids are dense and assigned by
sorting on (dimension, canonical label), so they do not depend on the order
in which cells were generated.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

from .partitions import (
    CyclicLabel,
    LabelError,
    OrderedPartition,
    elements_of,
    enumerate_labels,
    ordered_partitions,
    permutation_to_vertex,
    vertex_to_permutation,
)

# CP_{n+1} for n = 7 already has ~9.4e4 cells
MAX_COMPLEX_N = 7

Label = Union[CyclicLabel, OrderedPartition]


@dataclass(frozen=True)
class Cell:
    id: int
    label: Label
    dim: int


@dataclass
class CellComplex:
    """A face poset with facet lists; ``kind`` is ``"cyclic"`` or ``"linear"``."""

    n: int
    kind: str
    labels: list[Label]
    facets: list[tuple[int, ...]]
    index: dict[Label, int] = field(repr=False)
    by_dim: list[list[int]] = field(repr=False)
    cofaces: list[tuple[int, ...]] = field(repr=False)

    def __len__(self) -> int:
        return len(self.labels)

    def cell(self, cid: int) -> Cell:
        lab = self.labels[cid]
        return Cell(cid, lab, lab.dim)

    def cells(self, dim: int | None = None) -> Iterator[Cell]:
        ids = range(len(self.labels)) if dim is None else self.by_dim[dim]
        for i in ids:
            yield self.cell(i)

    def dim_of(self, cid: int) -> int:
        return self.labels[cid].dim

    @property
    def top_dim(self) -> int:
        return len(self.by_dim) - 1

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(ids) for ids in self.by_dim)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.f_vector()))

    def faces(self, cid: int) -> set[int]:
        """All proper faces of a cell, composed from facet steps."""
        out: set[int] = set()
        stack = list(self.facets[cid])
        while stack:
            f = stack.pop()
            if f not in out:
                out.add(f)
                stack.extend(self.facets[f])
        return out


def _assemble(n: int, kind: str, labels: list[Label], facet_fn) -> CellComplex:
    labels = sorted(labels, key=lambda lab: (lab.dim, lab.sort_key()))
    index = {lab: i for i, lab in enumerate(labels)}
    top = max(lab.dim for lab in labels)
    by_dim: list[list[int]] = [[] for _ in range(top + 1)]
    for i, lab in enumerate(labels):
        by_dim[lab.dim].append(i)
    facets = []
    cof: list[list[int]] = [[] for _ in labels]
    for i, lab in enumerate(labels):
        fs = tuple(sorted(index[f] for f in facet_fn(lab)))
        facets.append(fs)
        for f in fs:
            cof[f].append(i)
    return CellComplex(n, kind, labels, facets, index, by_dim, [tuple(c) for c in cof])


def _nonempty_proper_submasks(mask: int) -> Iterator[int]:
    sub = (mask - 1) & mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def cyclic_facet_labels(label: CyclicLabel) -> list[CyclicLabel]:
    """Split one block into two consecutive non-empty blocks, in every way."""
    n = label.n
    masks = label.masks
    top = 1 << (n + 1)
    out = []
    for j, block in enumerate(masks):
        for a in _nonempty_proper_submasks(block):
            b = block ^ a
            new = masks[:j] + (a, b) + masks[j + 1:]
            if a & top:
                # n+1 went to the first piece; the second piece wraps to the front
                new = (b,) + masks[:j] + (a,)
            out.append(CyclicLabel(n, new))
    return out


def linear_facet_labels(label: OrderedPartition) -> list[OrderedPartition]:
    masks = label.masks
    out = []
    for j, block in enumerate(masks):
        for a in _nonempty_proper_submasks(block):
            out.append(OrderedPartition(label.n, masks[:j] + (a, block ^ a) + masks[j + 1:]))
    return out


def build_cp(n: int) -> CellComplex:
    """The regular cell complex CP_{n+1}: cyclic partitions of [n+1] into >= 3 blocks."""
    if not isinstance(n, int) or n < 3:
        raise LabelError(f"CP_(n+1) needs n >= 3, got {n!r}")
    if n > MAX_COMPLEX_N:
        raise LabelError(f"n={n} exceeds the complex size cap {MAX_COMPLEX_N}")
    labels: list[Label] = []
    for m in range(3, n + 2):
        labels.extend(enumerate_labels(n, m))
    return _assemble(n, "cyclic", labels, lambda lab: cyclic_facet_labels(lab) if lab.dim else [])


def build_permutohedron(n: int, boundary: bool = False) -> CellComplex:
    """Face complex of the permutohedron on [n]; ``boundary`` drops the top cell."""
    if not isinstance(n, int) or n < 2:
        raise LabelError(f"the permutohedron needs n >= 2, got {n!r}")
    if n > MAX_COMPLEX_N + 1:
        raise LabelError(f"n={n} exceeds the complex size cap {MAX_COMPLEX_N + 1}")
    labels: list[Label] = []
    lowest = 2 if boundary else 1
    for m in range(lowest, n + 1):
        labels.extend(OrderedPartition(n, masks) for masks in ordered_partitions(range(1, n + 1), m))
    return _assemble(n, "linear", labels, lambda lab: linear_facet_labels(lab) if lab.dim else [])


def check_diamond(cx: CellComplex) -> list[tuple[int, int]]:
    """Return (cell, codim-2 face) pairs that do NOT lie under exactly two facets."""
    bad = []
    for c in range(len(cx)):
        counts: dict[int, int] = {}
        for f in cx.facets[c]:
            for g in cx.facets[f]:
                counts[g] = counts.get(g, 0) + 1
        bad.extend((c, g) for g, k in counts.items() if k != 2)
    return bad


# ------------------------------------------------------------ order complex

@dataclass
class SimplicialComplex:
    """Simplices as sorted vertex-id tuples, grouped by dimension."""

    simplices: list[list[tuple[int, ...]]]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.simplices)


def order_complex(cx: CellComplex) -> SimplicialComplex:
    """Chains of the face poset under strict face containment.

    Cell ids grow with dimension, so each chain read bottom-up is already
    sorted.
    """
    below = [cx.faces(i) for i in range(len(cx))]
    by_len: dict[int, list[tuple[int, ...]]] = {}

    def extend(chain: tuple[int, ...]) -> None:
        by_len.setdefault(len(chain), []).append(chain)
        for f in below[chain[0]]:
            extend((f,) + chain)

    for i in range(len(cx)):
        extend((i,))
    top = max(by_len)
    return SimplicialComplex([sorted(by_len[k]) for k in range(1, top + 1)])


def cellular_chain_complex(sc: SimplicialComplex):
    """Simplicial boundary matrices with alternating signs over sorted simplices."""
    from .homology import ChainComplex, IntMatrix

    index = [{s: i for i, s in enumerate(level)} for level in sc.simplices]
    maps = []
    for k in range(1, len(sc.simplices)):
        lower = index[k - 1]
        entries = {}
        for col, s in enumerate(sc.simplices[k]):
            for drop in range(len(s)):
                face = s[:drop] + s[drop + 1:]
                entries[(lower[face], col)] = -1 if drop % 2 else 1
        maps.append(IntMatrix(len(sc.simplices[k - 1]), len(sc.simplices[k]), entries))
    return ChainComplex([len(level) for level in sc.simplices], maps)


# ------------------------------------------------------------------ exports

def _parts(lab: Label) -> list[list[int]]:
    return [list(p) for p in lab.parts]


def to_json(cx: CellComplex) -> str:
    doc = {
        "n": cx.n,
        "kind": cx.kind,
        "cells": [{"id": i, "dim": lab.dim, "parts": _parts(lab)} for i, lab in enumerate(cx.labels)],
        "facets": [list(f) for f in cx.facets],
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"


def to_dot(cx: CellComplex) -> str:
    """1-skeleton; cyclic vertices are named by their permutation of [n]."""
    lines = ["graph skeleton {"]
    for v in cx.by_dim[0]:
        lab = cx.labels[v]
        if isinstance(lab, CyclicLabel):
            name = "".join(map(str, vertex_to_permutation(lab)))
        else:
            name = "".join(str(p[0]) for p in lab.parts)
        lines.append(f'  v{v} [label="{name}"];')
    if cx.top_dim >= 1:
        for e in cx.by_dim[1]:
            a, b = cx.facets[e]
            lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_csv(cx: CellComplex) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["dim", "count"])
    for k, c in enumerate(cx.f_vector()):
        w.writerow([k, c])
    return buf.getvalue()


def vertex_of_permutation(cx: CellComplex, perm: Sequence[int]) -> int:
    return cx.index[permutation_to_vertex(perm)]


__all__ = [
    "Cell",
    "CellComplex",
    "SimplicialComplex",
    "build_cp",
    "build_permutohedron",
    "cellular_chain_complex",
    "check_diamond",
    "cyclic_facet_labels",
    "elements_of",
    "order_complex",
    "to_csv",
    "to_dot",
    "to_json",
]
