"""Pure-Python labelled-partition kernel (reference and fallback).

Must stay step-for-step equivalent to ``_labelled.pyx``.
"""

import itertools


def _one_outer_nc12(m):
    """Yield ``(sizes, depths, parents)`` for every NC_{1,2}(m) with one outer block.

    Block 0 is the outer block; blocks are numbered by their minimum.
    """
    if m == 1:
        yield [1], [0], [-1]
        return
    if m < 1:
        return
    inner = m - 2
    sizes, depths, parents, stack = [2], [0], [-1], []

    def rec(i):
        if i == inner:
            if not stack:
                yield sizes, depths, parents
            return
        top = stack[-1] if stack else 0
        d = len(stack) + 1
        if len(stack) < inner - i:
            # singleton
            sizes.append(1)
            depths.append(d)
            parents.append(top)
            yield from rec(i + 1)
            sizes.pop()
            depths.pop()
            parents.pop()
            # open a pair
            if len(stack) + 1 <= inner - i - 1:
                sizes.append(2)
                depths.append(d)
                parents.append(top)
                stack.append(len(sizes) - 1)
                yield from rec(i + 1)
                stack.pop()
                sizes.pop()
                depths.pop()
                parents.pop()
        if stack:
            b = stack.pop()
            yield from rec(i + 1)
            stack.append(b)

    yield from rec(0)


def _connected(parents, labels):
    n = len(parents)
    root = list(range(n))

    def find(x):
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    for v in range(n):
        w = v
        for _ in range(labels[v]):
            w = parents[w]
            a, b = find(v), find(w)
            if a != b:
                root[b] = a
    r = find(0)
    for v in range(1, n):
        if find(v) != r:
            return False
    return True


def labelled_table(m):
    """Count connected labellings of NC_{1,2}(m) by weight monomial.

    Each block contributes the code ``4*k + 2*(k == depth) + (size - 1)``
    where ``k`` is its label; a monomial is the sorted tuple of its codes.
    """
    table = {}
    for sizes, depths, parents in _one_outer_nc12(m):
        ranges = [range(1)] + [range(d + 1) for d in depths[1:]]
        for labels in itertools.product(*ranges):
            if not _connected(parents, labels):
                continue
            key = tuple(sorted(4 * k + 2 * (k == d) + (s - 1) for k, d, s in zip(labels, depths, sizes)))
            table[key] = table.get(key, 0) + 1
    return table


def count_labellings(m):
    """``(partitions, labellings, connected)`` over NC_{1,2}(m) with one outer block."""
    np_ = nl = nc = 0
    for sizes, depths, parents in _one_outer_nc12(m):
        np_ += 1
        ranges = [range(1)] + [range(d + 1) for d in depths[1:]]
        for labels in itertools.product(*ranges):
            nl += 1
            nc += _connected(parents, labels)
    return np_, nl, nc
