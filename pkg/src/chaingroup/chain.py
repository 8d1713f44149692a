"""Chain equivalence on the dual, the chain group, and its identification
with the character group of the center.

Two irreps are chain equivalent when both occur in one iterated tensor product
of irreps. The equivalence is computed as a union-find fixpoint: for every
pair of current classes, everything occurring in products of their members is
merged, until a full pass merges nothing. Each merge is witnessed by a chain,
and by induction on chain length every chain lands in one fixpoint class, so
the result is exactly the chain equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .chartable import CharacterTable, central_character_matrix, character_table, dual_of_center
from .errors import NotAGroup, TheoremViolation, WellDefinednessViolation
from .fusion import FusionRing, fusion_coefficients
from .groups import FiniteGroup, center, from_table

UNIT_TOL = 1e-9


def closure_from_supports(n: int, ptr: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Fixpoint partition of ``0..n-1`` from pair supports in CSR form.

    The outputs of pair ``(i, j)`` are ``targets[ptr[i*n + j] : ptr[i*n + j + 1]]``.
    Returns labels where each element maps to the smallest member of its class.
    """
    ptr = np.ascontiguousarray(ptr, dtype=np.int64)
    targets = np.ascontiguousarray(targets, dtype=np.int64)
    if ptr.shape[0] != n * n + 1:
        raise ValueError("ptr must have n*n + 1 entries")
    labels, _ = kernels.fixpoint_closure(n, ptr, targets)
    return labels


def supports_csr(N: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    r = N.shape[0]
    rows, cols = np.nonzero(N.reshape(r * r, r))
    ptr = np.zeros(r * r + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=r * r), out=ptr[1:])
    return ptr, cols.astype(np.int64)


def _classes_from_labels(labels: np.ndarray) -> tuple[np.ndarray, list[list[int]]]:
    reps = sorted(set(labels.tolist()))
    pos = {rep: k for k, rep in enumerate(reps)}
    part = np.array([pos[x] for x in labels.tolist()], dtype=np.int64)
    classes: list[list[int]] = [[] for _ in reps]
    for i, k in enumerate(part.tolist()):
        classes[k].append(i)
    return part, classes


def chain_partition(R: FusionRing) -> np.ndarray:
    """Map irrep index to chain class index.

    Classes are numbered by their smallest member, so the trivial irrep is
    always in class 0.
    """
    ptr, targets = supports_csr(R.N)
    labels = closure_from_supports(R.rank, ptr, targets)
    part, _ = _classes_from_labels(labels)
    return part


@dataclass(frozen=True, eq=False)
class ChainGroup:
    ring: FusionRing
    partition: np.ndarray
    classes: tuple[tuple[int, ...], ...]
    product: np.ndarray
    inverse: np.ndarray
    invariant_factors: tuple[int, ...]
    identity_class: int = 0

    @property
    def order(self) -> int:
        return len(self.classes)

    @property
    def structure(self) -> str:
        return structure_name(self.invariant_factors)

    def class_of(self, irrep: int) -> int:
        return int(self.partition[self.ring.check_index(irrep)])

    def class_names(self) -> list[list[str]]:
        return [[self.ring.name(i) for i in c] for c in self.classes]

    def to_json(self) -> dict:
        return {
            "classes": [list(c) for c in self.classes],
            "class_names": self.class_names(),
            "product": self.product.tolist(),
            "inverse": self.inverse.tolist(),
            "invariant_factors": list(self.invariant_factors),
            "structure": self.structure,
        }


def chain_group(R: FusionRing) -> ChainGroup:
    """Chain classes with the induced product ``[A][B] = [any element of A x B]``.

    Well-definedness is checked, not assumed: every product of members of two
    classes must land in a single class.
    """
    part = chain_partition(R)
    k = int(part.max()) + 1
    classes: list[list[int]] = [[] for _ in range(k)]
    for i, c in enumerate(part.tolist()):
        classes[c].append(i)
    r = R.rank
    onehot = np.zeros((r, k))
    onehot[np.arange(r), part] = 1.0
    # hits[p, q, c] = number of (A in p, B in q, C in c) with N[A, B, C] > 0;
    # three float matmuls instead of one einsum so BLAS does the work
    x = (onehot.T @ (R.N > 0).reshape(r, r * r).astype(float)).reshape(k, r, r)
    x = (x.transpose(0, 2, 1).reshape(k * r, r) @ onehot).reshape(k, r, k)
    hits = (x.transpose(0, 2, 1).reshape(k * k, r) @ onehot).reshape(k, k, k)
    landed = (hits > 0).sum(axis=2)
    if (landed != 1).any():
        p, q = np.argwhere(landed != 1)[0]
        raise WellDefinednessViolation(
            f"product of classes {p} and {q} meets classes {np.flatnonzero(hits[p, q]).tolist()}")
    product = np.argmax(hits > 0, axis=2).astype(np.int64)
    inverse = np.empty(k, dtype=np.int64)
    for p, P in enumerate(classes):
        landed = set(part[R.conj[P]].tolist())
        if len(landed) != 1:
            raise WellDefinednessViolation(f"conjugates of class {p} straddle {sorted(landed)}")
        inverse[p] = landed.pop()
    try:
        factors = classify_abelian(product)
    except NotAGroup as exc:
        raise TheoremViolation(f"chain classes do not form an abelian group: {exc}") from exc
    if not (product[np.arange(k), inverse] == part[0]).all():
        raise TheoremViolation("class of conjugates is not the inverse class")
    for a in (product, inverse, part):
        a.setflags(write=False)
    return ChainGroup(R, part, tuple(tuple(c) for c in classes), product, inverse,
                      tuple(factors), int(part[0]))


def structure_name(factors) -> str:
    factors = list(factors)
    return "trivial" if not factors else " x ".join(f"Z{d}" for d in factors)


def classify_abelian(table) -> list[int]:
    """Invariant factors ``d1 | d2 | ...`` of a finite abelian group table.

    Repeatedly splits off a cyclic factor generated by an element of maximal
    order in the current quotient. Raises :class:`NotAGroup` if the table is
    not an abelian group.
    """
    G = from_table(table)
    if not G.is_abelian():
        raise NotAGroup("table is not commutative")
    n = G.order
    mul = G.mul
    e = G.identity
    H = {e}
    factors = []
    while len(H) < n:
        best, best_k = None, 0
        for x in range(n):
            if x in H:
                continue
            y, k = x, 1
            while y not in H:
                y = int(mul[y, x])
                k += 1
            if k > best_k:
                best, best_k = x, k
        factors.append(best_k)
        # H <- H * <best>
        new = set(H)
        y = best
        for _ in range(best_k - 1):
            new |= {int(mul[h, y]) for h in H}
            y = int(mul[y, best])
        H = new
    factors.reverse()
    for a, b in zip(factors, factors[1:]):
        if b % a:
            raise TheoremViolation(f"invariant factors {factors} fail divisibility")
    return factors


def partition_by_central_character(T: CharacterTable, atol: float = UNIT_TOL) -> np.ndarray:
    """Partition of the dual by the scalar each irrep assigns to the center.

    Independent of the fusion fixpoint; used as a cross-check oracle.
    Classes are numbered by smallest member.
    """
    Z = center(T.group)
    U = central_character_matrix(T, Z)
    labels = np.empty(T.rank, dtype=np.int64)
    reps: list[int] = []
    for D in range(T.rank):
        for r in reps:
            if np.abs(U[D] - U[r]).max() <= atol:
                labels[D] = r
                break
        else:
            reps.append(D)
            labels[D] = D
    part, _ = _classes_from_labels(labels)
    return part


@dataclass(frozen=True, eq=False)
class EtaCertificate:
    """Pairing of chain classes with central elements and the checks passed.

    ``pairing[p, j]`` is the central character of class ``p`` at ``center[j]``;
    ``image[p]`` is the index of that character in the dual of the center.
    """

    group: str
    center: tuple[int, ...]
    center_names: tuple[str, ...]
    class_names: list[list[str]]
    pairing: np.ndarray
    image: tuple[int, ...]
    checks: dict = field(default_factory=dict)
    chain: ChainGroup | None = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "center": list(self.center_names),
            "classes": self.class_names,
            "pairing": [[[round(float(z.real), 12) + 0.0, round(float(z.imag), 12) + 0.0]
                         for z in row] for row in self.pairing],
            "image": list(self.image),
            "checks": dict(self.checks),
        }


def eta_check(G: FiniteGroup, *, seed: int = 0, atol: float = UNIT_TOL,
              table: CharacterTable | None = None) -> EtaCertificate:
    """Verify that ``[D] -> Upsilon_D`` is a well-defined isomorphism from the
    chain group onto the character group of the center.

    Raises :class:`TheoremViolation` if constancy on classes, the homomorphism
    property, surjectivity, or injectivity fails.
    """
    T = table if table is not None else character_table(G, seed=seed)
    R = fusion_coefficients(T)
    C = chain_group(R)
    dual = dual_of_center(G, seed=seed)
    Z = list(dual.center)
    U = central_character_matrix(T, Z)
    checks = {}
    checks["unit_modulus"] = bool(np.abs(np.abs(U) - 1).max() <= atol)
    const = all(np.abs(U[list(P)] - U[P[0]]).max() <= atol for P in C.classes)
    checks["constant_on_classes"] = bool(const)
    pairing = np.array([U[P[0]] for P in C.classes])
    image = [dual.index_of(row, atol) for row in pairing]
    checks["lands_in_dual"] = all(k is not None for k in image)
    hom = checks["lands_in_dual"] and all(
        image[int(C.product[p, q])] == int(dual.group.mul[image[p], image[q]])
        for p in range(C.order) for q in range(C.order))
    checks["homomorphism"] = bool(hom)
    checks["injective"] = len(set(image)) == len(image)
    checks["surjective"] = set(image) == set(range(dual.group.order))
    cert = EtaCertificate(G.label, tuple(Z), tuple(G.names[c] for c in Z), C.class_names(),
                          pairing, tuple(-1 if k is None else k for k in image), checks, C)
    if not cert.ok:
        failed = [k for k, v in checks.items() if not v]
        raise TheoremViolation(f"eta certificate failed for {G.label}: {failed}")
    return cert
