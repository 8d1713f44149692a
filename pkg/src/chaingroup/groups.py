"""Finite groups as explicit multiplication tables.

Elements are the integers ``0 .. order-1``; ``mul[x, y]`` is the index of the
product ``x*y``. Permutations compose right to left: ``(p*q)[i] = p[q[i]]``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .errors import ClosureCapExceeded, NotAGroup, ParseError

DEFAULT_CAP = 10_000
EXHAUSTIVE_ASSOC_ORDER = 64
SAMPLED_ASSOC_TRIPLES = 10_000


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Immutable multiplication-table group with conjugacy data."""

    mul: np.ndarray
    identity: int
    inv: np.ndarray
    names: tuple[str, ...]
    class_of: np.ndarray
    classes: tuple[tuple[int, ...], ...]
    label: str = "G"
    family: tuple | None = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    @property
    def class_sizes(self) -> np.ndarray:
        return np.array([len(c) for c in self.classes], dtype=np.int64)

    @property
    def class_reps(self) -> np.ndarray:
        return np.array([c[0] for c in self.classes], dtype=np.int64)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = int(self.mul[y, x])
            k += 1
        return k

    def power(self, x: int, k: int) -> int:
        y = self.identity
        for _ in range(k % self.element_order(x)):
            y = int(self.mul[y, x])
        return y

    def conjugate(self, g: int, x: int) -> int:
        """Return ``g x g^-1``."""
        return int(self.mul[self.mul[g, x], self.inv[g]])

    def to_json(self) -> dict:
        return {"order": self.order, "mul": self.mul.tolist(), "names": list(self.names)}

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label}, order={self.order}, classes={self.num_classes})"


def _frozen(a) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


def from_table(mul, names: Sequence[str] | None = None, *, label: str = "G",
               family: tuple | None = None, seed: int = 0) -> FiniteGroup:
    """Build a group from a multiplication table, checking the group axioms.

    Raises :class:`NotAGroup` if the table has no identity, lacks inverses,
    or fails associativity (exhaustively up to order 64, otherwise on
    10 000 random triples drawn with ``seed``).
    """
    mul = np.ascontiguousarray(np.asarray(mul, dtype=np.int64))
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise NotAGroup("multiplication table must be a non-empty square array")
    n = mul.shape[0]
    if mul.min() < 0 or mul.max() >= n:
        raise NotAGroup("table entries out of range")
    ar = np.arange(n)
    ids = [e for e in range(n) if np.array_equal(mul[e], ar) and np.array_equal(mul[:, e], ar)]
    if not ids:
        raise NotAGroup("no two-sided identity")
    e = ids[0]
    # Latin square rows/columns <=> unique solvability of ax=b, xa=b
    sorted_rows = np.sort(mul, axis=1)
    sorted_cols = np.sort(mul, axis=0)
    if not (sorted_rows == ar).all() or not (sorted_cols == ar[:, None]).all():
        raise NotAGroup("table is not a Latin square (missing inverses)")
    inv = np.argmax(mul == e, axis=1)
    if not (mul[inv, ar] == e).all():
        raise NotAGroup("left and right inverses differ")
    if n <= EXHAUSTIVE_ASSOC_ORDER:
        bad = kernels.first_nonassociative(mul)
    else:
        rng = np.random.default_rng(seed)
        bad = kernels.first_nonassociative(mul, rng.integers(0, n, size=(SAMPLED_ASSOC_TRIPLES, 3)))
    if bad is not None:
        raise NotAGroup(f"associativity fails on triple {bad}")
    if names is None:
        names = [f"g{i}" for i in range(n)]
    if len(names) != n:
        raise NotAGroup("names length differs from order")
    return _assemble(mul, e, inv, names, label, family)


def _assemble(mul, identity, inv, names, label, family) -> FiniteGroup:
    mul = _frozen(mul)
    inv = _frozen(inv)
    class_of = kernels.conjugacy_labels(mul, inv)
    buckets: list[list[int]] = [[] for _ in range(int(class_of.max()) + 1)]
    for x, c in enumerate(class_of.tolist()):
        buckets[c].append(x)
    # labels are assigned in order of first element, so identity's class comes first
    # only when identity == 0; reorder by smallest member to be safe
    order = sorted(range(len(buckets)), key=lambda c: (c != class_of[identity], buckets[c][0]))
    relabel = np.empty(len(order), dtype=np.int64)
    relabel[order] = np.arange(len(order))
    classes = tuple(tuple(buckets[c]) for c in order)
    return FiniteGroup(mul=mul, identity=int(identity), inv=inv, names=tuple(names),
                       class_of=_frozen(relabel[class_of]), classes=classes,
                       label=label, family=family)


# --- permutations -------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> tuple[int, ...]:
    """Parse 1-based cycle notation such as ``"(1 2)(3 4)"`` into an image tuple.

    ``"()"`` or ``""`` is the identity. The degree defaults to the largest
    point mentioned.
    """
    text = text.strip()
    if _CYCLE_RE.sub("", text).strip():
        raise ParseError(f"not a product of cycles: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        pts = [p for p in re.split(r"[\s,]+", body.strip()) if p]
        try:
            pts = [int(p) for p in pts]
        except ValueError:
            raise ParseError(f"non-integer point in cycle ({body})") from None
        if any(p < 1 for p in pts) or len(set(pts)) != len(pts):
            raise ParseError(f"bad cycle ({body})")
        cycles.append(pts)
    top = max((max(c) for c in cycles if c), default=1)
    degree = max(degree or 0, top)
    img = list(range(degree))
    for c in reversed(cycles):  # rightmost cycle acts first
        mapping = {a - 1: b - 1 for a, b in zip(c, c[1:] + c[:1])}
        img = [mapping.get(v, v) for v in img]
    return tuple(img)


def _as_perm(g, degree: int | None) -> tuple[int, ...]:
    if isinstance(g, str):
        return parse_cycles(g, degree)
    p = tuple(int(v) for v in g)
    if sorted(p) != list(range(len(p))):
        raise ParseError(f"not a permutation of 0..{len(p) - 1}: {p}")
    return p


def _pad(p: tuple[int, ...], degree: int) -> tuple[int, ...]:
    return p + tuple(range(len(p), degree))


def from_permutations(generators, *, cap: int = DEFAULT_CAP, label: str = "G",
                      family: tuple | None = None,
                      generator_names: Sequence[str] | None = None) -> FiniteGroup:
    """Closure of a list of permutations under composition.

    Generators may be image tuples on ``0..d-1`` or cycle strings. Element 0
    is the identity; the rest are numbered breadth-first by generator words
    and named by those words. Raises :class:`ClosureCapExceeded` beyond ``cap``.
    """
    perms = [_as_perm(g, None) for g in generators]
    degree = max((len(p) for p in perms), default=1)
    perms = [_pad(p, degree) for p in perms]
    if generator_names is None:
        generator_names = [f"g{i + 1}" for i in range(len(perms))]
    ident = tuple(range(degree))
    elements = [ident]
    names = ["e"]
    index = {ident: 0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        px = elements[x]
        for s, gname in zip(perms, generator_names):
            y = tuple(px[v] for v in s)
            if y not in index:
                if len(elements) >= cap:
                    raise ClosureCapExceeded(f"closure exceeds cap of {cap} elements")
                index[y] = len(elements)
                elements.append(y)
                names.append(gname if x == 0 else f"{names[x]}*{gname}")
                queue.append(index[y])
    P = np.array(elements, dtype=np.int64)
    n = len(elements)
    mul = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        comp = P[i][P]  # row j = p_i o p_j
        mul[i] = [index[tuple(row)] for row in comp.tolist()]
    inv = np.argmax(mul == 0, axis=1)
    return _assemble(mul, 0, inv, names, label, family)


# --- families -------------------------------------------------------------

def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    i = np.arange(n)
    mul = (i[:, None] + i[None, :]) % n
    names = ["e"] + [f"a^{k}" if k > 1 else "a" for k in range(1, n)]
    return _assemble(mul, 0, (-i) % n, names, f"Z{n}", ("cyclic", n))


def _ab_name(i: int, j: int) -> str:
    a = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
    b = "" if j == 0 else "b"
    return (a + b) or "e"


def dihedral(m: int) -> FiniteGroup:
    """Dihedral group of order ``2m``: ``a^m = b^2 = e``, ``bab = a^(m-1)``.

    Element ``a^i b^j`` has index ``i + m*j``.
    """
    if m < 2:
        raise ValueError("dihedral group needs m >= 2")
    n = 2 * m
    mul = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        i, j = x % m, x // m
        for y in range(n):
            k, l = y % m, y // m
            # b a^k = a^-k b
            mul[x, y] = (i + (-k if j else k)) % m + m * ((j + l) % 2)
    names = [_ab_name(x % m, x // m) for x in range(n)]
    inv = np.argmax(mul == 0, axis=1)
    return _assemble(mul, 0, inv, names, f"D{n}", ("dihedral", m))


def quaternion(m: int) -> FiniteGroup:
    """Generalized quaternion group of order ``4m``.

    Relations ``a^(2m) = b^4 = e``, ``b^2 = a^m``, ``b a b^-1 = a^-1``;
    element ``a^i b^j`` (``0 <= i < 2m``) has index ``i + 2m*j``.
    """
    if m < 2:
        raise ValueError("quaternion group needs m >= 2")
    h = 2 * m
    n = 2 * h
    mul = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        i, j = x % h, x // h
        for y in range(n):
            k, l = y % h, y // h
            e = i + (-k if j else k)
            if j and l:
                mul[x, y] = (e + m) % h
            else:
                mul[x, y] = e % h + h * (j + l)
    names = [_ab_name(x % h, x // h) for x in range(n)]
    inv = np.argmax(mul == 0, axis=1)
    return _assemble(mul, 0, inv, names, f"Q{n}", ("quaternion", m))


def symmetric(n: int, *, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if n < 1:
        raise ValueError("symmetric group needs n >= 1")
    if n == 1:
        gens = [(0,)]
    elif n == 2:
        gens = [(1, 0)]
    else:
        gens = [_as_perm("(1 2)", n), _as_perm("(" + " ".join(map(str, range(1, n + 1))) + ")", n)]
    return from_permutations(gens, cap=cap, label=f"S{n}", family=("symmetric", n))


def alternating(n: int, *, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if n < 1:
        raise ValueError("alternating group needs n >= 1")
    if n < 3:
        gens = [tuple(range(n))]
    else:
        gens = [parse_cycles(f"(1 2 {k})", n) for k in range(3, n + 1)]
    return from_permutations(gens, cap=cap, label=f"A{n}", family=("alternating", n))


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """``G x H`` with ``(g, h)`` at index ``g*|H| + h``."""
    ng, nh = G.order, H.order
    g = np.repeat(np.arange(ng), nh)
    h = np.tile(np.arange(nh), ng)
    mul = G.mul[g[:, None], g[None, :]] * nh + H.mul[h[:, None], h[None, :]]
    inv = G.inv[g] * nh + H.inv[h]
    names = [f"({G.names[a]},{H.names[b]})" for a, b in zip(g.tolist(), h.tolist())]
    identity = G.identity * nh + H.identity
    fam = ("product", G.family, H.family)
    return _assemble(mul, identity, inv, names, f"{G.label}x{H.label}", fam)


def subgroup(G: FiniteGroup, elements: Sequence[int], label: str | None = None) -> FiniteGroup:
    """Restrict ``G`` to a subset closed under multiplication (checked)."""
    elements = sorted(set(int(x) for x in elements))
    if G.identity not in elements:
        raise NotAGroup("subset does not contain the identity")
    pos = {x: i for i, x in enumerate(elements)}
    try:
        mul = [[pos[int(G.mul[x, y])] for y in elements] for x in elements]
    except KeyError:
        raise NotAGroup("subset is not closed under multiplication") from None
    names = [G.names[x] for x in elements]
    inv = [pos[int(G.inv[x])] for x in elements]
    return _assemble(np.array(mul), pos[G.identity], np.array(inv), names,
                     label or f"sub({G.label})", None)


def center(G: FiniteGroup) -> list[int]:
    """Sorted elements commuting with every element."""
    return [int(x) for x in np.flatnonzero((G.mul == G.mul.T).all(axis=1))]


def from_json(obj: dict, *, label: str = "G") -> FiniteGroup:
    """Accept ``{"order": n, "mul": [[...]], "names": [...]}``."""
    try:
        mul = obj["mul"]
    except (KeyError, TypeError):
        raise ParseError("group JSON needs a 'mul' table") from None
    G = from_table(mul, obj.get("names"), label=obj.get("label", label))
    if "order" in obj and int(obj["order"]) != G.order:
        raise ParseError(f"declared order {obj['order']} differs from table size {G.order}")
    return G
