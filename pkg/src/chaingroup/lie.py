"""Fusion rules and chain classes for SU(2), SO(3), O(3) and U(2).

Spins are stored doubled (``two_l = 2l``) so all arithmetic is exact. The
infinite dual is cut to a window ``l <= lmax`` (and ``|m| <= 2 lmax`` for
U(2)); the fixpoint closure runs on the window and the result is checked
against a closed-form class invariant for each family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .chain import classify_abelian, closure_from_supports, structure_name
from .errors import FamilyMismatch, ParseError, WindowTooSmall

FAMILIES = ("SU2", "SO3", "O3", "U2")


@dataclass(frozen=True, order=True)
class LieLabel:
    family: str
    two_l: int
    eps: int = 0
    m: int = 0

    def __post_init__(self):
        f = self.family
        if f not in FAMILIES:
            raise ParseError(f"unknown family {f!r}; expected one of {FAMILIES}")
        if self.two_l < 0:
            raise ParseError("spin must be nonnegative")
        if f in ("SO3", "O3") and self.two_l % 2:
            raise ParseError(f"{f} labels have integer l")
        if f == "O3" and self.eps not in (0, 1):
            raise ParseError("O3 parity must be 0 or 1")
        if f != "O3" and self.eps:
            raise ParseError(f"{f} labels carry no parity")
        if f == "U2" and (self.m + self.two_l) % 2:
            raise ParseError("U2 labels need m + 2l even")
        if f != "U2" and self.m:
            raise ParseError(f"{f} labels carry no charge m")

    @property
    def l(self) -> Fraction:
        return Fraction(self.two_l, 2)

    def __str__(self) -> str:
        ls = str(self.l)
        if self.family == "O3":
            return f"({self.eps},{ls})"
        if self.family == "U2":
            return f"({self.m},{ls})"
        return ls

    @classmethod
    def parse(cls, family: str, text: str) -> "LieLabel":
        """Parse ``"1/2"`` (SU2, SO3), ``"(eps,l)"`` (O3) or ``"(m,l)"`` (U2)."""
        family = family.upper()
        t = text.strip().strip("()")
        parts = [p.strip() for p in t.split(",")]
        try:
            if family in ("SU2", "SO3"):
                if len(parts) != 1:
                    raise ValueError
                return cls(family, _two(parts[0]))
            if len(parts) != 2:
                raise ValueError
            if family == "O3":
                return cls(family, _two(parts[1]), eps=int(parts[0]))
            return cls(family, _two(parts[1]), m=int(parts[0]))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"cannot parse {family} label {text!r}") from None


def _two(s: str) -> int:
    f = Fraction(s)
    if (2 * f).denominator != 1:
        raise ValueError
    return int(2 * f)


def lie_fusion(a: LieLabel, b: LieLabel) -> list[LieLabel]:
    """Clebsch-Gordan range ``|l-l'|, ..., l+l'``, with parities added mod 2
    (O3) and charges added (U2)."""
    if a.family != b.family:
        raise FamilyMismatch(f"cannot fuse {a.family} with {b.family}")
    lo, hi = abs(a.two_l - b.two_l), a.two_l + b.two_l
    return [LieLabel(a.family, t, (a.eps + b.eps) % 2, a.m + b.m) for t in range(lo, hi + 1, 2)]


def window(family: str, lmax: int) -> list[LieLabel]:
    """All labels with ``l <= lmax`` (and ``|m| <= 2 lmax`` for U2), sorted."""
    family = family.upper()
    L2 = 2 * lmax
    if family == "SU2":
        return [LieLabel(family, t) for t in range(L2 + 1)]
    if family == "SO3":
        return [LieLabel(family, t) for t in range(0, L2 + 1, 2)]
    if family == "O3":
        return [LieLabel(family, t, e) for e in (0, 1) for t in range(0, L2 + 1, 2)]
    if family == "U2":
        return [LieLabel(family, t, m=m) for m in range(-L2, L2 + 1)
                for t in range(abs(m) % 2, L2 + 1, 2)]
    raise ParseError(f"unknown family {family!r}; expected one of {FAMILIES}")


def class_invariant(lab: LieLabel) -> int:
    """Closed-form chain-class key: ``2l mod 2`` (SU2), 0 (SO3), parity (O3), ``m`` (U2)."""
    return {"SU2": lab.two_l % 2, "SO3": 0, "O3": lab.eps, "U2": lab.m}[lab.family]


INVARIANT_TEXT = {
    "SU2": "2l mod 2 (integer vs half-integer spin)",
    "SO3": "constant (single class)",
    "O3": "parity eps",
    "U2": "charge m",
}
TARGET_GROUP = {"SU2": (2,), "SO3": (), "O3": (2,), "U2": None}


def _window_supports(labels: list[LieLabel]):
    """CSR supports of in-window fusion outputs, vectorized over all pairs."""
    n = len(labels)
    tl = np.array([x.two_l for x in labels], dtype=np.int64)
    ep = np.array([x.eps for x in labels], dtype=np.int64)
    mm = np.array([x.m for x in labels], dtype=np.int64)
    L2 = int(tl.max())
    M = int(np.abs(mm).max())
    lookup = np.full((2, 2 * M + 1, L2 + 1), -1, dtype=np.int64)
    lookup[ep, mm + M, tl] = np.arange(n)

    I = np.repeat(np.arange(n), n)
    J = np.tile(np.arange(n), n)
    lo = np.abs(tl[I] - tl[J])
    hi = np.minimum(tl[I] + tl[J], L2)
    count = np.where(hi >= lo, (hi - lo) // 2 + 1, 0)
    mo = mm[I] + mm[J]
    in_m = np.abs(mo) <= M
    count = np.where(in_m, count, 0)
    eo = (ep[I] + ep[J]) % 2
    ptr = np.zeros(n * n + 1, dtype=np.int64)
    np.cumsum(count, out=ptr[1:])
    pair = np.repeat(np.arange(n * n), count)
    step = np.arange(ptr[-1]) - ptr[pair]
    t_out = lo[pair] + 2 * step
    targets = lookup[eo[pair], mo[pair] + M, t_out]
    return ptr, targets, pair


@dataclass(frozen=True, eq=False)
class TruncatedChainReport:
    family: str
    lmax: int
    labels: list[LieLabel]
    partition: np.ndarray
    classes: list[list[LieLabel]]
    class_keys: list[int]
    invariant: str
    structure: str
    stable: bool
    invariant_homomorphism: bool
    product: dict = field(default_factory=dict, repr=False)

    def class_of(self, lab: LieLabel) -> int:
        return int(self.partition[self.labels.index(lab)])

    def summary(self) -> str:
        k = len(self.classes)
        return f"{k} class{'es' if k != 1 else ''} keyed by {self.invariant}; group {self.structure}"

    def to_json(self) -> dict:
        shown = [[str(x) for x in c[:6]] + (["..."] if len(c) > 6 else []) for c in self.classes]
        return {
            "family": self.family, "lmax": self.lmax, "num_labels": len(self.labels),
            "num_classes": len(self.classes), "class_keys": self.class_keys,
            "classes": shown, "invariant": self.invariant, "structure": self.structure,
            "stable": self.stable, "invariant_homomorphism": self.invariant_homomorphism,
        }


def lie_chain_classes(family: str, lmax: int) -> TruncatedChainReport:
    """Run the chain fixpoint on the window and certify it against the
    closed-form class invariant.

    Raises :class:`WindowTooSmall` if the fixpoint merges labels the invariant
    separates, or leaves split labels the invariant identifies.
    """
    family = family.upper()
    if lmax < 2:
        raise WindowTooSmall("lmax must be at least 2")
    labels = window(family, lmax)
    n = len(labels)
    ptr, targets, pair = _window_supports(labels)
    lab = closure_from_supports(n, ptr, targets)
    reps = sorted(set(lab.tolist()))
    pos = {r: k for k, r in enumerate(reps)}
    part = np.array([pos[x] for x in lab.tolist()], dtype=np.int64)
    classes: list[list[LieLabel]] = [[] for _ in reps]
    for x, c in zip(labels, part.tolist()):
        classes[c].append(x)

    inv = np.array([class_invariant(x) for x in labels], dtype=np.int64)
    keys = []
    for c in range(len(classes)):
        vals = set(inv[part == c].tolist())
        if len(vals) != 1:
            raise WindowTooSmall(f"class {c} mixes invariant values {sorted(vals)}")
        keys.append(vals.pop())
    if len(set(keys)) != len(keys):
        raise WindowTooSmall("fixpoint left labels with equal invariant in different classes")

    # stability: every in-window output of (a, b) lies in one class and that
    # class depends only on (class(a), class(b))
    I = pair // n
    J = pair % n
    ca, cb, co = part[I], part[J], part[targets]
    k = len(classes)
    first = np.full(k * k, -1, dtype=np.int64)
    flat = ca * k + cb
    # first-seen output class per class pair
    order = np.argsort(flat, kind="stable")
    uniq, idx = np.unique(flat[order], return_index=True)
    first[uniq] = co[order][idx]
    stable = bool((first[flat] == co).all())
    if TARGET_GROUP[family] is None:  # Z: additive charge
        hom = bool((inv[targets] == inv[I] + inv[J]).all())
    else:
        mod = max(TARGET_GROUP[family] or (1,))
        hom = bool(((inv[targets] - inv[I] - inv[J]) % mod == 0).all())
    product = {(int(p // k), int(p % k)): int(first[p]) for p in uniq.tolist()}

    if TARGET_GROUP[family] is None:
        structure = "Z"
    else:
        table = np.array([[product[(p, q)] for q in range(k)] for p in range(k)])
        structure = structure_name(classify_abelian(table))
    return TruncatedChainReport(family, lmax, labels, part, classes, keys,
                                INVARIANT_TEXT[family], structure, stable, hom, product)


def monotone_stability(family: str, lmaxes=(4, 8, 12)) -> bool:
    """True if enlarging the window never changes how earlier labels are grouped."""
    reports = [lie_chain_classes(family, L) for L in sorted(lmaxes)]
    for small, big in zip(reports, reports[1:]):
        pos = {x: i for i, x in enumerate(big.labels)}
        restricted = big.partition[[pos[x] for x in small.labels]]
        # same set partition: the class maps agree up to relabeling, both ways
        pairs = set(zip(small.partition.tolist(), restricted.tolist()))
        if len({a for a, _ in pairs}) != len(pairs) or len({b for _, b in pairs}) != len(pairs):
            return False
        # class keys must agree as well
        for x in small.labels:
            if small.class_keys[small.class_of(x)] != big.class_keys[big.class_of(x)]:
                return False
    return True
