"""The discrete Morse function on CP_{n+1}.

Pairing: find the minimal movable entry of a cell and move it forward into
the next block (the partner is one dimension up) or backward out of its
block (one dimension down).  Critical cells are exactly the labels without
movable entries.

Orientation: a cell is a product of permutohedra, one per block.  At a
vertex V the frame is the list of edges obtained by swapping adjacent
entries of the same block, read left to right in the *cell's* canonical
form.  Relative to the principal vertex the frame changes by the sign of the
within-block permutation taking PR(cell) to V.
"""

from __future__ import annotations

import graphlib
import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

from .complex import CellComplex
from .homology import ChainComplex, IntMatrix
from .partitions import CyclicLabel, LabelError, elements_of, from_masks, refines

UP = "up"
DOWN = "down"


class MorseError(RuntimeError):
    """The pairing broke one of its structural invariants."""


@dataclass(frozen=True)
class MovableEntry:
    entry: int
    kind: str  # "forward" | "backward"
    part: int  # block holding the entry
    neighbor: int  # block moved into (forward) or the cyclic predecessor (backward)


def _is_singleton(mask: int) -> bool:
    return mask & (mask - 1) == 0


def _min_elem(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def movable_entries(label: CyclicLabel) -> list[MovableEntry]:
    """Forward- and backward-movable entries, sorted by entry."""
    n = label.n
    top = 1 << (n + 1)
    masks = label.masks
    m = len(masks)
    out = []
    for t, block in enumerate(masks):
        if block & top:
            continue
        if _is_singleton(block):
            # forward: more than three blocks, {k} followed by I with k < I, n+1 not in I
            if m <= 3:
                continue
            k = _min_elem(block)
            nxt = masks[t + 1]
            if not nxt & top and _min_elem(nxt) > k:
                out.append(MovableEntry(k, "forward", t, t + 1))
        else:
            # backward: k = min(J), J non-singleton without n+1, and a suitable predecessor
            k = _min_elem(block)
            p = t - 1 if t > 0 else m - 1
            prev = masks[p]
            if not _is_singleton(prev) or _min_elem(prev) > k or prev & top:
                out.append(MovableEntry(k, "backward", t, p))
    out.sort(key=lambda e: e.entry)
    kinds: dict[int, str] = {}
    for e in out:
        if kinds.setdefault(e.entry, e.kind) != e.kind:
            raise MorseError(f"entry {e.entry} is both forward- and backward-movable in {label}")
    return out


def move(label: CyclicLabel, entry: MovableEntry) -> CyclicLabel:
    masks = label.masks
    t = entry.part
    if entry.kind == "forward":
        new = masks[:t] + (masks[t] | masks[t + 1],) + masks[t + 2:]
    else:
        bit = 1 << entry.entry
        new = masks[:t] + (bit, masks[t] ^ bit) + masks[t + 1:]
    return CyclicLabel(label.n, new)


def pair_label(label: CyclicLabel) -> tuple[CyclicLabel, str] | None:
    """Partner of ``label`` and the direction to it, or None if the cell is critical."""
    entries = movable_entries(label)
    if not entries:
        return None
    e = entries[0]
    return move(label, e), (UP if e.kind == "forward" else DOWN)


def pair_of(cx: CellComplex, cid: int) -> tuple[int, str] | None:
    res = pair_label(cx.labels[cid])
    if res is None:
        return None
    lab, direction = res
    return cx.index[lab], direction


# ------------------------------------------------------------ classification

TYPE1 = "type1"
TYPE2 = "type2"
NOT_CRITICAL = "not-critical"


def classify_critical(label: CyclicLabel) -> str:
    """Type 1: decreasing singletons then the (n+1)-block.  Type 2: ({i} I (n+1)-block), i < I."""
    masks = label.masks
    head = masks[:-1]
    if all(_is_singleton(b) for b in head):
        elems = [_min_elem(b) for b in head]
        if all(a > b for a, b in zip(elems, elems[1:])):
            return TYPE1
    if len(masks) == 3 and _is_singleton(masks[0]) and _min_elem(masks[1]) > _min_elem(masks[0]):
        return TYPE2
    return NOT_CRITICAL


def critical_count_formula(n: int, k: int) -> int:
    if not 0 <= k <= n - 2:
        raise ValueError(f"dimension k={k} outside [0, {n - 2}]")
    if k == n - 2:
        return 2**n + (n * n - 3 * n - 2) // 2
    return comb(n, k)


def enumerate_critical_labels(n: int) -> Iterator[CyclicLabel]:
    """Critical cells straight from the two types, without building the complex."""
    top = 1 << (n + 1)
    ground = list(range(1, n + 1))
    # type 1: choose the singleton string (>= 2 entries), order it decreasingly
    for size in range(2, n + 1):
        for chosen in itertools.combinations(ground, size):
            rest = top
            for x in ground:
                if x not in chosen:
                    rest |= 1 << x
            yield CyclicLabel(n, tuple(1 << x for x in sorted(chosen, reverse=True)) + (rest,))
    # type 2: ({i} I R) with i < I and n+1 in R
    for i in ground:
        larger = [x for x in ground if x > i]
        others = [x for x in ground if x != i]
        for size in range(1, len(larger) + 1):
            for chosen in itertools.combinations(larger, size):
                block = sum(1 << x for x in chosen)
                rest = top | sum(1 << x for x in others if x not in chosen)
                yield CyclicLabel(n, (1 << i, block, rest))


# ---------------------------------------------------------------- matching

@dataclass
class Matching:
    complex: CellComplex
    partner: list[int | None]
    direction: list[str | None]
    order: list[int]  # topological order of the modified Hasse diagram

    @property
    def critical(self) -> list[int]:
        return [i for i, p in enumerate(self.partner) if p is None]

    def critical_by_dim(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.complex.by_dim]
        for i in self.critical:
            out[self.complex.dim_of(i)].append(i)
        return out

    def critical_counts(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.critical_by_dim())

    def is_critical(self, cid: int) -> bool:
        return self.partner[cid] is None

    def pairs(self) -> list[tuple[int, int]]:
        """(lower, upper) id pairs, sorted."""
        return sorted((i, p) for i, p in enumerate(self.partner) if p is not None and self.direction[i] == UP)


def modified_hasse_graph(cx: CellComplex, partner: Sequence[int | None]) -> dict[int, set[int]]:
    """Predecessor sets: facet edges point down except matched ones, which point up."""
    preds: dict[int, set[int]] = {i: set() for i in range(len(cx))}
    for b in range(len(cx)):
        for a in cx.facets[b]:
            if partner[a] == b:
                preds[b].add(a)  # a -> b
            else:
                preds[a].add(b)  # b -> a
    return preds


def build_matching(cx: CellComplex, verify: bool = True) -> Matching:
    if cx.kind != "cyclic":
        raise MorseError("the pairing is defined on CP_{n+1} only")
    partner: list[int | None] = [None] * len(cx)
    direction: list[str | None] = [None] * len(cx)
    for i in range(len(cx)):
        res = pair_of(cx, i)
        if res is not None:
            partner[i], direction[i] = res
    if verify:
        for i, p in enumerate(partner):
            if p is None:
                continue
            if partner[p] != i or direction[p] == direction[i]:
                raise MorseError(f"pairing is not an involution at {cx.labels[i]}")
            lo, hi = (i, p) if direction[i] == UP else (p, i)
            if lo not in cx.facets[hi]:
                raise MorseError(f"{cx.labels[lo]} is not a facet of {cx.labels[hi]}")
    try:
        order = list(graphlib.TopologicalSorter(modified_hasse_graph(cx, partner)).static_order())
    except graphlib.CycleError as exc:
        raise MorseError(f"closed gradient path through {exc.args[1][:4]}") from exc
    return Matching(cx, partner, direction, order)


def is_acyclic(cx: CellComplex, partner: Sequence[int | None]) -> bool:
    try:
        graphlib.TopologicalSorter(modified_hasse_graph(cx, partner)).prepare()
    except graphlib.CycleError:
        return False
    return True


# --------------------------------------------------------------- orientation

def principal_vertex(label: CyclicLabel) -> CyclicLabel:
    masks = tuple(1 << e for b in label.masks for e in elements_of(b))
    return CyclicLabel(label.n, masks)


def vertex_word(v: CyclicLabel) -> list[int]:
    return [_min_elem(b) for b in v.masks]


def cut_word(cell: CyclicLabel, v: CyclicLabel) -> list[list[int]]:
    """The entries of ``v`` grouped by the blocks of ``cell``, in the cell's canonical order."""
    if not v.is_vertex or v.n != cell.n:
        raise LabelError(f"{v} is not a vertex of CP_{cell.n + 1}")
    if not refines(v, cell):
        raise LabelError(f"{v} is not a vertex of {cell}")
    w = vertex_word(v)
    pos = {e: i for i, e in enumerate(w)}
    size = len(w)
    out = []
    for block in cell.masks:
        elems = elements_of(block)
        start = next(e for e in elems if not block >> w[(pos[e] - 1) % size] & 1)
        i = pos[start]
        out.append([w[(i + j) % size] for j in range(len(elems))])
    return out


def _swaps(groups: list[list[int]]) -> list[tuple[int, int]]:
    return [(g[i], g[i + 1]) for g in groups for i in range(len(g) - 1)]


def _parity(seq: Sequence[int]) -> int:
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


@dataclass(frozen=True)
class OrientationFrame:
    cell: CyclicLabel
    base: CyclicLabel
    swaps: tuple[tuple[int, int], ...]
    neighbors: tuple[CyclicLabel, ...]


def _swap_vertex(v: CyclicLabel, x: int, y: int) -> CyclicLabel:
    bx, by = 1 << x, 1 << y
    return from_masks([by if b == bx else bx if b == by else b for b in v.masks], v.n)


def neighbor_frame(cell: CyclicLabel, v: CyclicLabel) -> OrientationFrame:
    swaps = tuple(_swaps(cut_word(cell, v)))
    return OrientationFrame(cell, v, swaps, tuple(_swap_vertex(v, x, y) for x, y in swaps))


def orientation_sign(cell: CyclicLabel, v: CyclicLabel) -> int:
    """+1 iff the frame at ``v`` induces the canonical orientation of ``cell``."""
    s = 1
    for g in cut_word(cell, v):
        s *= _parity(g)
    return s


def _perm_sign(a: Sequence, b: Sequence) -> int:
    where = {x: i for i, x in enumerate(b)}
    return _parity([where[x] for x in a])


def incidence(beta: CyclicLabel, alpha: CyclicLabel) -> int:
    """[beta : alpha] for a facet alpha of beta, under canonical orientations.

    Compared at V = PR(alpha).  The one beta-edge at V that leaves alpha points
    inward; putting the outward normal first, the induced orientation of alpha
    matches its canonical one iff the returned value is +1.
    """
    if beta.dim != alpha.dim + 1 or not refines(alpha, beta):
        raise LabelError(f"{alpha} is not a facet of {beta}")
    v = principal_vertex(alpha)
    gb = cut_word(beta, v)
    ga = cut_word(alpha, v)
    sb = _swaps(gb)
    sa = _swaps(ga)
    inward = next(s for s in sb if s not in set(sa))
    eps_b = 1
    for g in gb:
        eps_b *= _parity(g)
    eps_a = 1
    for g in ga:
        eps_a *= _parity(g)
    return -_perm_sign([inward] + sa, sb) * eps_b * eps_a


def cellular_complex(cx: CellComplex) -> ChainComplex:
    """Cellular chain complex of CP_{n+1} with canonical orientations."""
    maps = []
    for k in range(1, cx.top_dim + 1):
        rows = {c: i for i, c in enumerate(cx.by_dim[k - 1])}
        entries = {}
        for j, b in enumerate(cx.by_dim[k]):
            for a in cx.facets[b]:
                entries[(rows[a], j)] = incidence(cx.labels[b], cx.labels[a])
        maps.append(IntMatrix(len(cx.by_dim[k - 1]), len(cx.by_dim[k]), entries))
    return ChainComplex(list(cx.f_vector()), maps)


# ------------------------------------------------------------ gradient paths

@dataclass(frozen=True)
class GradientPath:
    """beta_0, alpha_1, beta_1, ..., alpha_m, beta_m, alpha_{m+1} as ids and labels."""

    ids: tuple[int, ...]
    labels: tuple[CyclicLabel, ...]

    def __len__(self) -> int:
        return len(self.ids)

    def to_text(self) -> str:
        return "\n".join(str(lab) for lab in self.labels)


def _paths_from(m: Matching, src: int) -> Iterator[tuple[int, ...]]:
    cx = m.complex
    stack = [(src, (src,))]
    while stack:
        b, path = stack.pop()
        came_from = path[-2] if len(path) > 1 else None
        for a in reversed(cx.facets[b]):
            if a == came_from:
                continue
            p = m.partner[a]
            if p is None:
                yield path + (a,)
            elif m.direction[a] == UP:
                stack.append((p, path + (a, p)))


def gradient_paths(m: Matching, src: int, dst: int) -> list[GradientPath]:
    """All gradient paths from critical ``src`` down to critical ``dst`` (adjacent dims)."""
    cx = m.complex
    if cx.dim_of(src) != cx.dim_of(dst) + 1:
        raise ValueError("gradient paths join cells of adjacent dimensions")
    if not (m.is_critical(src) and m.is_critical(dst)):
        raise ValueError("both ends must be critical")
    out = []
    for ids in _paths_from(m, src):
        if ids[-1] == dst:
            out.append(GradientPath(ids, tuple(cx.labels[i] for i in ids)))
    out.sort(key=lambda p: (len(p.ids), p.ids))
    return out


def paths_by_target(m: Matching, src: int) -> dict[int, list[GradientPath]]:
    cx = m.complex
    out: dict[int, list[GradientPath]] = {}
    for ids in _paths_from(m, src):
        out.setdefault(ids[-1], []).append(GradientPath(ids, tuple(cx.labels[i] for i in ids)))
    return out


def path_sign(p: GradientPath) -> int:
    """[b0:a1] * prod_i ( -[b_i:a_i] [b_i:a_{i+1}] )."""
    labs = p.labels
    s = incidence(labs[0], labs[1])
    for i in range(2, len(labs) - 1, 2):
        b = labs[i]
        s *= -incidence(b, labs[i - 1]) * incidence(b, labs[i + 1])
    return s


def morse_boundary(m: Matching, k: int) -> IntMatrix:
    """Signed path counts from critical k-cells (columns) to critical (k-1)-cells (rows)."""
    crit = m.critical_by_dim()
    if not 1 <= k < len(crit):
        return IntMatrix(len(crit[k - 1]) if 0 < k <= len(crit) else 0, len(crit[k]) if 0 <= k < len(crit) else 0)
    cx = m.complex
    rows = {c: i for i, c in enumerate(crit[k - 1])}
    inc_cache: dict[tuple[int, int], int] = {}

    def inc(b: int, a: int) -> int:
        key = (b, a)
        if key not in inc_cache:
            inc_cache[key] = incidence(cx.labels[b], cx.labels[a])
        return inc_cache[key]

    # flow[a]: signed V-path counts from (k-1)-cell a to critical (k-1)-cells
    flow: dict[int, dict[int, int]] = {}
    for a in reversed(m.order):
        if cx.dim_of(a) != k - 1:
            continue
        p = m.partner[a]
        if p is None:
            flow[a] = {a: 1}
        elif m.direction[a] == DOWN:
            flow[a] = {}
        else:
            acc: dict[int, int] = {}
            base = -inc(p, a)
            for a2 in cx.facets[p]:
                if a2 == a:
                    continue
                w = base * inc(p, a2)
                for t, c in flow[a2].items():
                    acc[t] = acc.get(t, 0) + w * c
            flow[a] = {t: c for t, c in acc.items() if c}
    entries: dict[tuple[int, int], int] = {}
    for j, b in enumerate(crit[k]):
        for a in cx.facets[b]:
            w = inc(b, a)
            for t, c in flow[a].items():
                key = (rows[t], j)
                entries[key] = entries.get(key, 0) + w * c
    return IntMatrix(len(crit[k - 1]), len(crit[k]), entries)


def morse_complex(m: Matching) -> ChainComplex:
    crit = m.critical_by_dim()
    return ChainComplex([len(c) for c in crit], [morse_boundary(m, k) for k in range(1, len(crit))])
