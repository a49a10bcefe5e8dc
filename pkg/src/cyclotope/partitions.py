"""Cyclically ordered set partitions of [n+1].

A label is stored in canonical linear form: the block holding ``n + 1`` is
the last one, and each block is an integer bitmask (bit ``i`` <=> element
``i``).  Blocks carry no internal order.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

# bit i stands for element i, so n + 1 must fit below bit 63
MAX_N = 61


class LabelError(ValueError):
    """Raised for input that is not a cyclically ordered partition."""


class NotACellError(LabelError):
    """A valid partition with fewer than three blocks."""


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise LabelError(f"n must be a positive integer, got {n!r}")
    if n > MAX_N:
        raise LabelError(f"n={n} exceeds the supported maximum {MAX_N}")


def _validate_masks(masks: Sequence[int], n: int) -> None:
    full = mask_of(range(1, n + 2))
    seen = 0
    for idx, m in enumerate(masks):
        if m == 0:
            raise LabelError(f"block {idx} is empty")
        if m & seen:
            overlap = elements_of(m & seen)
            raise LabelError(f"blocks overlap on {list(overlap)}")
        if m & ~full:
            raise LabelError(f"elements {list(elements_of(m & ~full))} lie outside [1, {n + 1}]")
        seen |= m
    if seen != full:
        raise LabelError(f"elements {list(elements_of(full & ~seen))} are missing (gap)")
    if len(masks) < 3:
        raise NotACellError(f"a cell needs at least 3 blocks, got {len(masks)}")


@dataclass(frozen=True)
class CyclicLabel:
    """A cyclically ordered partition of [n+1] with the (n+1)-block last."""

    n: int
    masks: tuple[int, ...]

    @cached_property
    def parts(self) -> tuple[tuple[int, ...], ...]:
        return tuple(elements_of(m) for m in self.masks)

    @property
    def size(self) -> int:
        """Number of blocks."""
        return len(self.masks)

    @property
    def dim(self) -> int:
        return self.n + 1 - len(self.masks)

    @property
    def is_vertex(self) -> bool:
        return len(self.masks) == self.n + 1

    def sort_key(self) -> tuple[tuple[int, ...], ...]:
        return self.parts

    def __lt__(self, other: CyclicLabel) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"CyclicLabel(n={self.n}, {to_text(self)})"


def _rotate_to_canonical(masks: Sequence[int], n: int) -> tuple[int, ...]:
    top = 1 << (n + 1)
    for i, m in enumerate(masks):
        if m & top:
            return tuple(masks[i + 1:]) + tuple(masks[: i + 1])
    raise LabelError(f"no block contains {n + 1}")


def canonicalize(parts: Sequence[Iterable[int]], n: int) -> CyclicLabel:
    """Validate ``parts`` and rotate them so the block containing ``n + 1`` is last."""
    _check_n(n)
    masks = []
    for p in parts:
        p = list(p)
        if len(set(p)) != len(p):
            raise LabelError(f"block {p} repeats an element")
        masks.append(mask_of(p))
    _validate_masks(masks, n)
    return CyclicLabel(n, _rotate_to_canonical(masks, n))


def from_masks(masks: Sequence[int], n: int, validate: bool = False) -> CyclicLabel:
    """Fast constructor for internal callers that already hold bitmasks."""
    if validate:
        _check_n(n)
        _validate_masks(masks, n)
    return CyclicLabel(n, _rotate_to_canonical(masks, n))


def rotations(label: CyclicLabel) -> Iterator[tuple[int, ...]]:
    m = label.masks
    for i in range(len(m)):
        yield m[i:] + m[:i]


def refines(fine: CyclicLabel, coarse: CyclicLabel) -> bool:
    """Order-preserving cyclic refinement: can ``coarse`` be split into ``fine``?

    Every block of ``fine`` must sit inside a block of ``coarse``; going once
    around the circle of ``fine`` the owning coarse block may only advance to
    its cyclic successor, and each coarse block is visited in one run.
    """
    if fine.n != coarse.n:
        raise LabelError(f"labels live on different ground sets (n={fine.n} vs n={coarse.n})")
    owner = []
    for f in fine.masks:
        for j, c in enumerate(coarse.masks):
            if f & c == f:
                owner.append(j)
                break
        else:
            return False
    b = len(coarse.masks)
    changes = 0
    for i in range(len(owner)):
        a, nxt = owner[i], owner[(i + 1) % len(owner)]
        if a != nxt:
            if nxt != (a + 1) % b:
                return False
            changes += 1
    return changes == b if b > 1 else True


def vertex_to_permutation(v: CyclicLabel) -> tuple[int, ...]:
    """Read a vertex label as a permutation of [n] (drop the trailing {n+1})."""
    if not v.is_vertex:
        raise LabelError(f"{to_text(v)} is not a vertex label")
    return tuple(p[0] for p in v.parts[:-1])


def permutation_to_vertex(perm: Sequence[int]) -> CyclicLabel:
    n = len(perm)
    return canonicalize([[x] for x in perm] + [[n + 1]], n)


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind by the standard recurrence."""
    row = [1] + [0] * k
    for i in range(1, n + 1):
        new = [0] * (k + 1)
        for j in range(1, min(i, k) + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[k]


def set_partitions(elements: Sequence[int], m: int) -> Iterator[list[int]]:
    """Unordered partitions of ``elements`` into exactly ``m`` blocks, as mask lists."""
    elements = list(elements)
    if m == 0:
        if not elements:
            yield []
        return
    if len(elements) < m:
        return
    first, rest = elements[0], elements[1:]
    # first joins an existing block, or opens a new one
    for blocks in set_partitions(rest, m):
        for i in range(len(blocks)):
            yield blocks[:i] + [blocks[i] | (1 << first)] + blocks[i + 1:]
    for blocks in set_partitions(rest, m - 1):
        yield [1 << first] + blocks


def ordered_partitions(elements: Sequence[int], m: int) -> Iterator[tuple[int, ...]]:
    for blocks in set_partitions(elements, m):
        yield from itertools.permutations(blocks)


def enumerate_labels(n: int, m: int) -> list[CyclicLabel]:
    """All cyclically ordered partitions of [n+1] into ``m`` blocks.

    Sorted lexicographically on the canonical form (blocks as ascending tuples).
    There are S(n+1, m) * (m-1)! of them.
    """
    _check_n(n)
    if not 3 <= m <= n + 1:
        raise LabelError(f"part count m={m} outside [3, {n + 1}]")
    top = 1 << (n + 1)
    out = []
    for blocks in set_partitions(range(1, n + 2), m):
        last = next(b for b in blocks if b & top)
        rest = [b for b in blocks if b != last]
        for order in itertools.permutations(rest):
            out.append(CyclicLabel(n, tuple(order) + (last,)))
    out.sort(key=CyclicLabel.sort_key)
    return out


# ---------------------------------------------------------------- text / json

def to_text(label: CyclicLabel) -> str:
    return "(" + "|".join("{" + ",".join(map(str, p)) + "}" for p in label.parts) + ")"


_BLOCK = re.compile(r"\{([^{}]*)\}")


def from_text(text: str, n: int | None = None) -> CyclicLabel:
    """Parse ``({a,b}|{c}|...)``; separators between blocks may be ``|``, ``,`` or spaces."""
    blocks = [[int(x) for x in b.replace(" ", "").split(",") if x] for b in _BLOCK.findall(text)]
    if not blocks:
        raise LabelError(f"no blocks found in {text!r}")
    if n is None:
        n = max(max(b) for b in blocks if b) - 1
    return canonicalize(blocks, n)


def to_json(label: CyclicLabel) -> str:
    return json.dumps([list(p) for p in label.parts])


def from_json(text: str, n: int | None = None) -> CyclicLabel:
    blocks = json.loads(text)
    if n is None:
        n = max(max(b) for b in blocks if b) - 1
    return canonicalize(blocks, n)


# ------------------------------------------------- linear ordered partitions

@dataclass(frozen=True)
class OrderedPartition:
    """A linearly ordered partition of [n]; labels the faces of the permutohedron."""

    n: int
    masks: tuple[int, ...]

    @cached_property
    def parts(self) -> tuple[tuple[int, ...], ...]:
        return tuple(elements_of(m) for m in self.masks)

    @property
    def dim(self) -> int:
        return self.n - len(self.masks)

    def sort_key(self) -> tuple[tuple[int, ...], ...]:
        return self.parts

    def __str__(self) -> str:
        return "(" + "|".join("{" + ",".join(map(str, p)) + "}" for p in self.parts) + ")"


def linear_refines(fine: OrderedPartition, coarse: OrderedPartition) -> bool:
    j = 0
    acc = 0
    for f in fine.masks:
        if j >= len(coarse.masks) or f & coarse.masks[j] != f:
            return False
        acc |= f
        if acc == coarse.masks[j]:
            j += 1
            acc = 0
    return j == len(coarse.masks) and acc == 0
