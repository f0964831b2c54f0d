"""Set partitions of ``{1..m}``: the lattices Part, NC, Int and NC_{1,2}.

Noncrossing partitions carry a nesting order: block ``U`` lies under ``V``
when the span of ``V`` covers ``U``.  The *depth* of a block counts the blocks
it lies under, and its *derivative* is the block directly above it.  Labelled
partitions attach to each block ``V`` an integer ``0 <= kappa(V) <= depth(V)``
linking ``V`` to its first ``kappa(V)`` derivatives; the connected labellings
are the index set of the Jacobi-to-cumulant expansion in :mod:`ncjacobi.transforms`.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import BudgetExceededError, CrossingPartitionError, DomainError


class Family(enum.Enum):
    ALL = "all"
    NC = "nc"
    INT = "int"
    NC12 = "nc12"


@dataclass
class EnumerationCaps:
    """Largest ground-set size each enumerator accepts."""

    all: int = 14
    nc: int = 20
    int: int = 20
    nc12: int = 20
    labelled: int = 14

    def for_family(self, family: Family) -> int:
        return getattr(self, family.value)


CAPS = EnumerationCaps()

Block = tuple[int, ...]


@dataclass(frozen=True, order=True)
class Partition:
    """A partition of ``{1..m}`` in canonical form (blocks sorted by minimum)."""

    m: int
    blocks: tuple[Block, ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        seen = [x for b in blocks for x in b]
        if any(not b for b in blocks) or sorted(seen) != list(range(1, self.m + 1)):
            raise DomainError(f"not a partition of 1..{self.m}: {blocks}")

    @classmethod
    def of(cls, blocks: Sequence[Sequence[int]]) -> "Partition":
        blocks = [tuple(b) for b in blocks]
        return cls(sum(len(b) for b in blocks), tuple(blocks))

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]


def blocks_cross(v: Block, w: Block) -> bool:
    """Four-point test: ``a < b < c < d`` with ``a, c`` in one block and ``b, d`` in the other."""
    for a, c in itertools.combinations(v, 2):
        inside = [x for x in w if a < x < c]
        if inside and len(inside) < len(w):
            return True
    return False


def is_noncrossing(p: Partition) -> bool:
    return not any(blocks_cross(v, w) for v, w in itertools.combinations(p.blocks, 2))


def _require_nc(p: Partition):
    if not is_noncrossing(p):
        raise CrossingPartitionError("depth defined only for noncrossing partitions")


def _under(u: Block, v: Block) -> bool:
    """``u`` precedes ``v`` in the nesting order (``u`` within the span of ``v``)."""
    return v[0] <= u[0] and u[-1] <= v[-1]


def depth(p: Partition, v: Block) -> int:
    _require_nc(p)
    v = tuple(v)
    if v not in p.blocks:
        raise DomainError(f"{v} is not a block of the partition")
    return sum(1 for w in p.blocks if w != v and _under(v, w))


def derivative(p: Partition, v: Block, k: int = 1) -> Block:
    """``v`` differentiated ``k`` times: the block ``k`` levels above ``v``."""
    d = depth(p, v)
    if k < 0 or k > d:
        raise DomainError(f"derivative of order {k} undefined for block of depth {d}")
    v = tuple(v)
    for _ in range(k):
        above = [w for w in p.blocks if w != v and _under(v, w)]
        # the innermost covering block has the largest minimum
        v = max(above, key=lambda w: w[0])
    return v


def outer_inner_split(p: Partition) -> tuple[list[Block], list[Block]]:
    _require_nc(p)
    outer, inner = [], []
    for v in p.blocks:
        (outer if not any(w != v and _under(v, w) for w in p.blocks) else inner).append(v)
    return outer, inner


def _set_partitions(m: int) -> Iterator[list[list[int]]]:
    # restricted growth strings
    if m == 0:
        yield []
        return
    a = [0] * m

    def rec(i, top):
        if i == m:
            blocks = [[] for _ in range(top + 1)]
            for x, b in enumerate(a, start=1):
                blocks[b].append(x)
            yield blocks
            return
        for b in range(top + 2):
            a[i] = b
            yield from rec(i + 1, max(top, b))

    a[0] = 0
    yield from rec(1, 0)


def _noncrossing(m: int, max_block: int | None = None) -> Iterator[list[list[int]]]:
    # first-block decomposition: the block of 1 splits the rest into gaps
    def rec(lo: int, hi: int) -> Iterator[list[list[int]]]:
        if lo > hi:
            yield []
            return
        n = hi - lo + 1
        limit = n if max_block is None else min(n, max_block)
        for size in range(1, limit + 1):
            for rest in itertools.combinations(range(lo + 1, hi + 1), size - 1):
                block = [lo, *rest]
                bounds = block + [hi + 1]
                parts = [list(rec(bounds[i] + 1, bounds[i + 1] - 1)) for i in range(size)]
                for combo in itertools.product(*parts):
                    yield [block] + [b for part in combo for b in part]

    yield from rec(1, m)


def _interval(m: int) -> Iterator[list[list[int]]]:
    if m == 0:
        yield []
        return
    for cuts in itertools.product((False, True), repeat=m - 1):
        blocks, cur = [], [1]
        for x, cut in zip(range(2, m + 1), cuts):
            if cut:
                blocks.append(cur)
                cur = []
            cur.append(x)
        blocks.append(cur)
        yield blocks


def iter_partitions(m: int, family: Family | str = Family.ALL) -> Iterator[Partition]:
    """Lazily generate a partition family (no particular order)."""
    family = Family(family)
    if m < 0:
        raise DomainError("m must be non-negative")
    if m > CAPS.for_family(family):
        raise BudgetExceededError(f"enumeration budget exceeded: m={m} > cap {CAPS.for_family(family)} for {family.name}")
    gen = {
        Family.ALL: _set_partitions(m),
        Family.NC: _noncrossing(m),
        Family.INT: _interval(m),
        Family.NC12: _noncrossing(m, max_block=2),
    }[family]
    for blocks in gen:
        yield Partition(m, tuple(tuple(b) for b in blocks))


def enumerate_partitions(m: int, family: Family | str = Family.ALL) -> list[Partition]:
    """All partitions of the family, in canonical lexicographic order."""
    return sorted(iter_partitions(m, family), key=lambda p: p.blocks)


@dataclass(frozen=True)
class LabelledPartition:
    """An NC_{1,2} partition with a labelling ``kappa`` (one label per block, in block order)."""

    base: Partition
    labels: tuple[int, ...]
    depths: tuple[int, ...] = field(compare=False, repr=False, default=())
    connected: bool = field(compare=False, default=False)

    def label(self, v: Block) -> int:
        return self.labels[self.base.blocks.index(tuple(v))]


def nesting_structure(p: Partition) -> tuple[list[int], list[int]]:
    """Depth of each block and index of its derivative (-1 for outer blocks)."""
    _require_nc(p)
    blocks = p.blocks
    depths, parent = [], []
    for v in blocks:
        above = [i for i, w in enumerate(blocks) if w != v and _under(v, w)]
        depths.append(len(above))
        parent.append(max(above, key=lambda i: blocks[i][0]) if above else -1)
    return depths, parent


def labelling_connected(parent: Sequence[int], labels: Sequence[int]) -> bool:
    """Union-find over the pairs ``(V^(i), V^(j))``, ``0 <= i, j <= kappa(V)``."""
    root = list(range(len(parent)))

    def find(x):
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    for v, k in enumerate(labels):
        w = v
        for _ in range(k):
            w = parent[w]
            root[find(w)] = find(v)
    if not root:
        return True
    r = find(0)
    return all(find(v) == r for v in range(len(root)))


def labellings(p: Partition) -> Iterator[LabelledPartition]:
    """Every labelling of a noncrossing partition, connected or not."""
    depths, parent = nesting_structure(p)
    for labels in itertools.product(*(range(d + 1) for d in depths)):
        yield LabelledPartition(p, labels, tuple(depths), labelling_connected(parent, labels))


def enumerate_connected_labellings(m: int) -> list[LabelledPartition]:
    """All ``(sigma, kappa)`` with ``sigma`` in NC_{1,2}(m) whose linking relation is total."""
    if m > CAPS.labelled:
        raise BudgetExceededError(f"enumeration budget exceeded: m={m} > labelled cap {CAPS.labelled}")
    out = []
    for p in enumerate_partitions(m, Family.NC12):
        out.extend(lp for lp in labellings(p) if lp.connected)
    return out
