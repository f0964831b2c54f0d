# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled labelled-partition kernel; mirrors ``_labelled_py``."""

from cpython.bytes cimport PyBytes_FromStringAndSize

cdef enum:
    MAXB = 64

cdef struct State:
    int m
    int inner
    int nb
    int size[MAXB]
    int depth[MAXB]
    int parent[MAXB]
    int stack[MAXB]
    int sp
    long long n_partitions
    long long n_labellings
    long long n_connected


cdef inline int _find(int* root, int x) nogil:
    while root[x] != x:
        root[x] = root[root[x]]
        x = root[x]
    return x


cdef int _connected(State* st, int* labels) nogil:
    cdef int root[MAXB]
    cdef int v, w, j, a, b, r
    for v in range(st.nb):
        root[v] = v
    for v in range(st.nb):
        w = v
        for j in range(labels[v]):
            w = st.parent[w]
            a = _find(root, v)
            b = _find(root, w)
            if a != b:
                root[b] = a
    r = _find(root, 0)
    for v in range(1, st.nb):
        if _find(root, v) != r:
            return 0
    return 1


cdef void _process(State* st, dict table, bint count_only):
    cdef int labels[MAXB]
    cdef char codes[MAXB]
    cdef int v, i, j, nb = st.nb
    cdef char c
    st.n_partitions += 1
    for v in range(nb):
        labels[v] = 0
    while True:
        st.n_labellings += 1
        if _connected(st, labels):
            st.n_connected += 1
            if not count_only:
                for v in range(nb):
                    codes[v] = 4 * labels[v] + 2 * (labels[v] == st.depth[v]) + (st.size[v] - 1)
                # insertion sort
                for i in range(1, nb):
                    c = codes[i]
                    j = i - 1
                    while j >= 0 and codes[j] > c:
                        codes[j + 1] = codes[j]
                        j -= 1
                    codes[j + 1] = c
                key = PyBytes_FromStringAndSize(codes, nb)
                table[key] = table.get(key, 0) + 1
        # odometer over blocks 1..nb-1 (the outer block keeps label 0)
        v = 1
        while v < nb:
            if labels[v] < st.depth[v]:
                labels[v] += 1
                break
            labels[v] = 0
            v += 1
        if v >= nb:
            return


cdef void _rec(State* st, int i, dict table, bint count_only):
    cdef int top, d, b
    if i == st.inner:
        if st.sp == 0:
            _process(st, table, count_only)
        return
    top = st.stack[st.sp - 1] if st.sp > 0 else 0
    d = st.sp + 1
    if st.sp < st.inner - i:
        b = st.nb
        st.size[b] = 1
        st.depth[b] = d
        st.parent[b] = top
        st.nb += 1
        _rec(st, i + 1, table, count_only)
        st.nb -= 1
        if st.sp + 1 <= st.inner - i - 1:
            b = st.nb
            st.size[b] = 2
            st.depth[b] = d
            st.parent[b] = top
            st.nb += 1
            st.stack[st.sp] = b
            st.sp += 1
            _rec(st, i + 1, table, count_only)
            st.sp -= 1
            st.nb -= 1
    if st.sp > 0:
        st.sp -= 1
        b = st.stack[st.sp]
        _rec(st, i + 1, table, count_only)
        st.stack[st.sp] = b
        st.sp += 1


cdef State _run(int m, dict table, bint count_only) except *:
    cdef State st
    if m >= MAXB:
        raise ValueError("m too large for compiled kernel")
    st.m = m
    st.n_partitions = 0
    st.n_labellings = 0
    st.n_connected = 0
    st.sp = 0
    if m < 1:
        return st
    if m == 1:
        st.inner = 0
        st.nb = 1
        st.size[0] = 1
        st.depth[0] = 0
        st.parent[0] = -1
        _process(&st, table, count_only)
        return st
    st.inner = m - 2
    st.nb = 1
    st.size[0] = 2
    st.depth[0] = 0
    st.parent[0] = -1
    _rec(&st, 0, table, count_only)
    return st


def labelled_table(int m):
    """Count connected labellings of NC_{1,2}(m) by weight monomial (see ``_labelled_py``)."""
    cdef dict raw = {}
    _run(m, raw, False)
    return {tuple(key): n for key, n in raw.items()}


def count_labellings(int m):
    cdef State st = _run(m, {}, True)
    return st.n_partitions, st.n_labellings, st.n_connected
