# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels. Mirrors ``_pykernels`` function by function."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


def conjugacy_labels(const i64[:, ::1] mul, const i64[::1] inv):
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t x, g, y
    cdef i64 nxt = 0
    out = np.full(n, -1, dtype=np.int64)
    cdef i64[::1] lab = out
    for x in range(n):
        if lab[x] >= 0:
            continue
        for g in range(n):
            y = mul[mul[g, x], inv[g]]
            lab[y] = nxt
        nxt += 1
    return out


def class_coefficients(const i64[:, ::1] mul, const i64[::1] inv,
                       const i64[::1] class_of, const i64[::1] reps):
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t r = reps.shape[0]
    cdef Py_ssize_t k, x
    cdef i64 z, y
    out = np.zeros((r, r, r), dtype=np.int64)
    cdef i64[:, :, ::1] a = out
    for k in range(r):
        z = reps[k]
        for x in range(n):
            y = mul[inv[x], z]
            a[class_of[x], class_of[y], k] += 1
    return out


def first_nonassociative(const i64[:, ::1] mul, triples=None):
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t x, y, z, t, m
    cdef i64[:, ::1] tr
    if triples is None:
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if mul[mul[x, y], z] != mul[x, mul[y, z]]:
                        return (int(x), int(y), int(z))
        return None
    tr = np.ascontiguousarray(triples, dtype=np.int64)
    m = tr.shape[0]
    for t in range(m):
        x = tr[t, 0]
        y = tr[t, 1]
        z = tr[t, 2]
        if mul[mul[x, y], z] != mul[x, mul[y, z]]:
            return (int(x), int(y), int(z))
    return None


cdef inline i64 _find(i64[::1] parent, i64 x) noexcept nogil:
    cdef i64 root = x
    cdef i64 nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


cdef inline bint _union(i64[::1] parent, i64[::1] size, i64 a, i64 b) noexcept nogil:
    a = _find(parent, a)
    b = _find(parent, b)
    if a == b:
        return False
    if size[a] < size[b]:
        a, b = b, a
    parent[b] = a
    size[a] += size[b]
    return True


def fixpoint_closure(Py_ssize_t n, const i64[::1] ptr, const i64[::1] targets):
    parent_arr = np.arange(n, dtype=np.int64)
    size_arr = np.ones(n, dtype=np.int64)
    rep_arr = np.empty(n * n, dtype=np.int64)
    cdef i64[::1] parent = parent_arr
    cdef i64[::1] size = size_arr
    cdef i64[::1] rep = rep_arr
    cdef Py_ssize_t p, q, i, j
    cdef i64 key, t0
    cdef bint changed = True
    cdef int passes = 0
    with nogil:
        while changed:
            changed = False
            passes += 1
            rep[:] = -1
            for p in range(n * n):
                if ptr[p] == ptr[p + 1]:
                    continue
                i = p // n
                j = p % n
                key = _find(parent, i) * n + _find(parent, j)
                t0 = targets[ptr[p]]
                if rep[key] < 0:
                    rep[key] = t0
                elif _union(parent, size, rep[key], t0):
                    changed = True
                for q in range(ptr[p] + 1, ptr[p + 1]):
                    if _union(parent, size, t0, targets[q]):
                        changed = True
    roots = np.array([_find(parent, i) for i in range(n)], dtype=np.int64)
    return _smallest_member_labels(roots), passes


def _smallest_member_labels(roots):
    first = {}
    out = np.empty(roots.shape[0], dtype=np.int64)
    for i, r in enumerate(roots.tolist()):
        out[i] = first.setdefault(r, i)
    return out
