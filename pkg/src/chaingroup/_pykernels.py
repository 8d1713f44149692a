"""Pure-Python/numpy versions of the compiled kernels in ``_ckernels``."""

import numpy as np


def conjugacy_labels(mul, inv):
    n = mul.shape[0]
    lab = np.full(n, -1, dtype=np.int64)
    nxt = 0
    for x in range(n):
        if lab[x] >= 0:
            continue
        # g x g^-1 over all g at once
        lab[mul[mul[:, x], inv]] = nxt
        nxt += 1
    return lab


def class_coefficients(mul, inv, class_of, reps):
    r = len(reps)
    a = np.zeros((r, r, r), dtype=np.int64)
    cx = class_of
    for k, z in enumerate(reps):
        cy = class_of[mul[inv, z]]
        np.add.at(a[:, :, k], (cx, cy), 1)
    return a


def first_nonassociative(mul, triples=None):
    if triples is None:
        for x in range(mul.shape[0]):
            left = mul[mul[x]]  # (xy)z indexed [y, z]
            right = mul[x][mul]  # x(yz) indexed [y, z]
            bad = np.argwhere(left != right)
            if len(bad):
                y, z = bad[0]
                return (int(x), int(y), int(z))
        return None
    tr = np.asarray(triples, dtype=np.int64)
    x, y, z = tr[:, 0], tr[:, 1], tr[:, 2]
    bad = np.flatnonzero(mul[mul[x, y], z] != mul[x, mul[y, z]])
    if len(bad):
        return tuple(int(v) for v in tr[bad[0]])
    return None


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]
        return True


def fixpoint_closure(n, ptr, targets):
    uf = _UnionFind(n)
    ptr = ptr.tolist()
    targets = targets.tolist()
    pairs = [p for p in range(n * n) if ptr[p] != ptr[p + 1]]
    changed = True
    passes = 0
    while changed:
        changed = False
        passes += 1
        rep = {}
        find, union = uf.find, uf.union
        for p in pairs:
            i, j = divmod(p, n)
            key = (find(i), find(j))
            lo, hi = ptr[p], ptr[p + 1]
            t0 = targets[lo]
            seen = rep.setdefault(key, t0)
            if seen != t0 and union(seen, t0):
                changed = True
            for q in range(lo + 1, hi):
                if union(t0, targets[q]):
                    changed = True
    first = {}
    labels = np.array([first.setdefault(uf.find(i), i) for i in range(n)], dtype=np.int64)
    return labels, passes
